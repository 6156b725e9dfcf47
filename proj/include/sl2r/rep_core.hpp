#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sl2r/report.hpp"
#include "sl2r/spin.hpp"

namespace sl2r {

enum class RepClass { Finite, DiscretePos, DiscreteNeg, Continuous };

std::string_view to_string(RepClass c);
// Accepts finite, dplus, dminus, continuous (and a few aliases).
RepClass parse_rep_class(std::string_view text);

struct RepLabel {
  RepClass cls = RepClass::Finite;
  Complex j{0.0, 0.0};
  HalfInt epsilon{};  // continuous only

  static RepLabel finite(HalfInt j);
  static RepLabel discrete_pos(HalfInt j);
  static RepLabel discrete_neg(HalfInt j);
  static RepLabel continuous(Complex j, HalfInt epsilon);

  bool is_discrete() const { return cls == RepClass::DiscretePos || cls == RepClass::DiscreteNeg; }
  // Spin as an exact half-integer; throws for non-real-half-integer spins.
  HalfInt spin() const;
  std::optional<HalfInt> spin_if_half_integer() const { return as_half_integer(j); }
  std::string str() const;
};

// Throws InvalidLabel when the label violates its class invariants.
void validate(const RepLabel& label);
bool is_valid(const RepLabel& label);
bool same_label(const RepLabel& a, const RepLabel& b, double tol = 1e-12);
// j <-> -j-1 for continuous labels: representative with Re j >= -1/2, ties keep Im j >= 0.
RepLabel canonical(const RepLabel& label);
// Weights of the label live on lattice_offset + Z.
HalfInt lattice_offset(const RepLabel& label);
std::optional<HalfInt> natural_min(const RepLabel& label);
std::optional<HalfInt> natural_max(const RepLabel& label);
bool in_weight_set(const RepLabel& label, HalfInt m);

struct WeightWindow {
  HalfInt m_min{};
  HalfInt m_max{};
  int interior_margin = 0;
};

// Window of `count` weights starting at the natural bottom (D+) or top (D-),
// or centred on the lattice for continuous labels. Finite returns the full set.
WeightWindow default_window(const RepLabel& label, int count, int margin);
// Clips a window to the natural weights of the label.
WeightWindow clip_window(const RepLabel& label, WeightWindow w);
// Grows both truncated sides by delta and clips to the natural weights.
WeightWindow expand_window(const RepLabel& label, const WeightWindow& w, HalfInt delta);

std::vector<HalfInt> weight_set(const RepLabel& label, const WeightWindow& window);

Complex ladder_coeff(Complex j, Complex m, int sign);
inline Complex c_plus(Complex j, Complex m) { return ladder_coeff(j, m, +1); }
inline Complex c_minus(Complex j, Complex m) { return ladder_coeff(j, m, -1); }
inline Complex c_plus(Complex j, HalfInt m) { return ladder_coeff(j, m.complex(), +1); }
inline Complex c_minus(Complex j, HalfInt m) { return ladder_coeff(j, m.complex(), -1); }
inline Complex c_plus(HalfInt j, HalfInt m) { return ladder_coeff(j.complex(), m.complex(), +1); }
inline Complex c_minus(HalfInt j, HalfInt m) { return ladder_coeff(j.complex(), m.complex(), -1); }

Complex casimir_eigenvalue(Complex j);
bool is_unitary(const RepLabel& label);

class TruncatedRep {
 public:
  TruncatedRep(RepLabel label, WeightWindow window, std::vector<HalfInt> weights);

  const RepLabel& label() const { return label_; }
  const WeightWindow& window() const { return window_; }
  const std::vector<HalfInt>& weights() const { return weights_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(weights_.size()); }
  std::optional<Eigen::Index> index_of(HalfInt m) const;

  bool truncated_below() const { return truncated_below_; }
  bool truncated_above() const { return truncated_above_; }
  // Indices at distance >= max(declared margin, min_margin) from truncated edges.
  std::vector<Eigen::Index> interior(int min_margin = 0) const;
  bool is_interior(Eigen::Index i, int min_margin = 0) const;

  Eigen::MatrixXcd J0, Jp, Jm, Q;

 private:
  RepLabel label_;
  WeightWindow window_;
  std::vector<HalfInt> weights_;
  bool truncated_below_ = false;
  bool truncated_above_ = false;
};

TruncatedRep realize(const RepLabel& label, const WeightWindow& window);

// Max |R(r, c)| over all rows r and the given columns.
double max_abs_cols(const Eigen::MatrixXcd& r, const std::vector<Eigen::Index>& cols);

VerificationReport check_structure(const TruncatedRep& rep, double tol = 1e-12);
VerificationReport real_form_check(const TruncatedRep& rep, double tol = 1e-12);
// Residual of J+^dagger = J- on the interior (zero for unitary real labels).
double hermiticity_residual(const TruncatedRep& rep);

RepLabel dual(const RepLabel& label);

struct DualState {
  Complex phase;
  HalfInt m;
};
// |j,m> -> e^{i pi m} |j,-m>.
DualState dual_state(Complex j, HalfInt m);

}  // namespace sl2r
