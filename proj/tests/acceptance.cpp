// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <cstdio>
#include <cstring>

#include "qoct/verify.hpp"

int main(int argc, char** argv) {
  const bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;
  const int failed = qoct::run_acceptance(fast, [](const qoct::CriterionResult& r) {
    std::printf("criterion %2d %s  %s (%.2fs): %s\n", r.id, r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
