// Acceptance battery: one pass/fail line per criterion record, nonzero exit
// on any failure.  Tolerances are pinned inside acceptance_criteria().
#include <cstdio>

#include "hcs/checks.hpp"

int main() {
  hcs::Records recs = hcs::acceptance_criteria();
  int failed = 0;
  for (const auto& r : recs) {
    std::printf("%s  %-48s  residual=%.3e  tol=%.1e  [%s]%s%s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual, r.tol,
                r.anchor.c_str(), r.note.empty() ? "" : "  ", r.note.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", recs.size(), failed);
  return failed == 0 ? 0 : 1;
}
