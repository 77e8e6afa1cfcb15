// Acceptance gate: runs the twelve criteria and prints one line per
// criterion. Exit status 0 only when every criterion passes.

#include <cstdio>

#include "mkr/selftest.hpp"

int main() {
  auto results = mkr::run_selftest();
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-4s %s  %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                r.name.c_str());
    std::printf("     %s  [%.0f ms]\n", r.detail.c_str(), r.ms);
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "acceptance: all 12 criteria passed"
                          : "acceptance: FAILURES PRESENT");
  return all ? 0 : 1;
}
