#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2r/closed_forms.hpp"
#include "sl2r/coupling.hpp"
#include "sl2r/report.hpp"

namespace sl2r {

class CGTable {
 public:
  enum class Source { Decomposition, ClosedForm };

  static CGTable from_decomposition(DecompositionResult d);
  // gamma in {1/2, 1}; A and B both taken from the tabulated formulas.
  static CGTable closed_form(const CouplingSpec& spec);

  HalfInt gamma() const { return data_.spec.gamma; }
  const RepLabel& inner() const { return data_.spec.inner; }
  const std::vector<RepLabel>& labels() const { return data_.labels; }
  HalfInt M_min() const { return data_.M_min; }
  HalfInt M_max() const { return data_.M_max; }
  bool covers(HalfInt M) const { return data_.block(M) != nullptr; }
  Source source() const { return source_; }
  const DecompositionResult& data() const { return data_; }

  // Zero when the selection rules fail; OutOfRange when M is not emitted.
  Complex A(HalfInt mu, HalfInt m, Complex J, HalfInt M) const;
  Complex B(Complex J, HalfInt M, HalfInt mu, HalfInt m) const;
  // As above but zero (not an error) outside the emitted range.
  Complex A_or_zero(HalfInt mu, HalfInt m, Complex J, HalfInt M) const;
  Complex B_or_zero(Complex J, HalfInt M, HalfInt mu, HalfInt m) const;

  // Copy with A^M(row, col) shifted by delta; B is left untouched.
  CGTable with_perturbation(HalfInt M, Eigen::Index row, Eigen::Index col, Complex delta) const;

 private:
  CGTable(DecompositionResult d, Source s) : data_(std::move(d)), source_(s) {}
  std::optional<std::pair<Eigen::Index, Eigen::Index>> locate(HalfInt mu, HalfInt m, Complex J, HalfInt M) const;

  DecompositionResult data_;
  Source source_;
};

// Accessors that also check the table was built for (gamma, j).
Complex cg(const CGTable& t, HalfInt gamma, HalfInt mu, Complex j, HalfInt m, Complex J, HalfInt M);
Complex inverse_cg(const CGTable& t, Complex J, HalfInt M, HalfInt gamma, HalfInt mu, Complex j, HalfInt m);
// Coefficient for the reversed ordering rho_j (x) F_gamma.
Complex swap(const CGTable& t, Complex J, HalfInt M, Complex j, HalfInt m, HalfInt gamma, HalfInt mu);

VerificationReport verify_orthogonality(const CGTable& t, double tol = 1e-10);
VerificationReport verify_recursion(const CGTable& t, double tol = 1e-9);

struct RatioFit {
  Complex J;
  Complex alpha;
  double spread = 0.0;
  int samples = 0;
  int skipped = 0;
};

std::vector<RatioFit> fit_ratio(const CGTable& t);
VerificationReport verify_ratio(const CGTable& t, double tol = 1e-8);

}  // namespace sl2r
