// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "wgb/acceptance.hpp"

#include <cstdio>
#include <cstdlib>

int main() {
  wgb::SuiteOptions opt;
  if (const char* t = std::getenv("WGB_THREADS")) opt.threads = std::max(1, std::atoi(t));
  bool all = true;
  for (const auto& r : wgb::run_acceptance(opt)) {
    std::printf("%s criterion %d: %s | %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.detail.c_str(), r.seconds);
    all &= r.passed;
  }
  return all ? 0 : 1;
}
