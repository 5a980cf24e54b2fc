#pragma once

#include <string>
#include <vector>

namespace allmach {

// Double Butcher tableau: explicit (At, bt, ct) and diagonally implicit
// (A, b, c), both s x s, row-major. The step update uses b only.
struct ButcherPair {
  std::string name;
  int s = 0;
  std::vector<double> At, bt, ct;
  std::vector<double> A, b, c;

  double at(int i, int j) const { return At[i * s + j]; }
  double a(int i, int j) const { return A[i * s + j]; }
};

struct TableauReport {
  std::vector<std::string> violations;
  int order = 0;  // highest order whose conditions all hold
  bool ok() const { return violations.empty(); }
};

// Text format: stage count, then At, bt, ct, A, b, c in row-major order.
// Entries may be decimals or fractions like 11/18; '#' starts a comment.
ButcherPair parse_tableau(const std::string& text, const std::string& name);
ButcherPair load_tableau(const std::string& path);

// Built-in tableaux (same data as the shipped files).
ButcherPair tableau_imex1();
ButcherPair tableau_ars443();
ButcherPair tableau_by_name(const std::string& name);

// Row sums, strictly lower explicit part, stiff accuracy and the coupled
// order conditions up to `order` (at most 3), all to `tol`.
TableauReport validate_tableau(const ButcherPair& t, int order = 3, double tol = 1e-14);

}  // namespace allmach
