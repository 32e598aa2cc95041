// Acceptance runner: executes every pinned workbench criterion at its
// pinned expected values and prints one PASS/FAIL/SKIPPED line per item.
// Exit code 0 iff nothing failed.

#include <cstdio>
#include <string>

#include "invgen/verify.hpp"

int main() {
  auto results = invgen::verify_paper("all");
  bool all_ok = true;
  for (const auto& r : results) {
    const char* status = r.status == invgen::CheckResult::pass    ? "PASS"
                         : r.status == invgen::CheckResult::fail ? "FAIL"
                                                                 : "SKIPPED";
    std::printf("%-7s %-5s %s [%s] (%ld ms)\n", status, r.id.c_str(), r.description.c_str(),
                r.detail.c_str(), r.millis);
    if (r.status == invgen::CheckResult::fail) all_ok = false;
  }
  std::printf("%s: %zu checks\n", all_ok ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return all_ok ? 0 : 1;
}
