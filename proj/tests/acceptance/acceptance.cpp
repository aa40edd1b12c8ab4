// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "axm/verify.hpp"

int main(int argc, char** argv) {
  axm::verify::Options opts;
  if (const char* t = std::getenv("AXM_NUM_THREADS")) opts.threads = static_cast<unsigned>(std::max(1, std::atoi(t)));
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  if (only.empty())
    for (int id = 1; id <= 11; ++id) only.push_back(id);

  int failed = 0;
  axm::verify::run_all(
      opts,
      [&](const axm::verify::CheckResult& r) {
        if (!r.passed) ++failed;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        std::fflush(stdout);
      },
      only);
  std::printf("%s: %zu criteria, %d failed\n", failed ? "FAIL" : "PASS", only.size(), failed);
  return failed ? 1 : 0;
}
