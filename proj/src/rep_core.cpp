#include "sl2r/rep_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sl2r {

std::string_view to_string(RepClass c) {
  switch (c) {
    case RepClass::Finite: return "finite";
    case RepClass::DiscretePos: return "dplus";
    case RepClass::DiscreteNeg: return "dminus";
    case RepClass::Continuous: return "continuous";
  }
  return "unknown";
}

RepClass parse_rep_class(std::string_view text) {
  if (text == "finite" || text == "F") return RepClass::Finite;
  if (text == "dplus" || text == "D+" || text == "discrete+") return RepClass::DiscretePos;
  if (text == "dminus" || text == "D-" || text == "discrete-") return RepClass::DiscreteNeg;
  if (text == "continuous" || text == "C") return RepClass::Continuous;
  throw Error(ErrorKind::Parse, "unknown representation class '" + std::string(text) + "'");
}

RepLabel RepLabel::finite(HalfInt j) {
  RepLabel l{RepClass::Finite, j.complex(), HalfInt{}};
  validate(l);
  return l;
}

RepLabel RepLabel::discrete_pos(HalfInt j) {
  RepLabel l{RepClass::DiscretePos, j.complex(), HalfInt{}};
  validate(l);
  return l;
}

RepLabel RepLabel::discrete_neg(HalfInt j) {
  RepLabel l{RepClass::DiscreteNeg, j.complex(), HalfInt{}};
  validate(l);
  return l;
}

RepLabel RepLabel::continuous(Complex j, HalfInt epsilon) {
  RepLabel l{RepClass::Continuous, j, epsilon};
  validate(l);
  return l;
}

HalfInt RepLabel::spin() const {
  auto h = as_half_integer(j);
  if (!h) throw Error(ErrorKind::Precondition, "spin is not a real half-integer: " + format_complex(j));
  return *h;
}

std::string RepLabel::str() const {
  std::ostringstream os;
  auto h = as_half_integer(j);
  std::string js = h ? h->str() : format_complex(j);
  switch (cls) {
    case RepClass::Finite: os << "F_" << js; break;
    case RepClass::DiscretePos: os << "D+_" << js; break;
    case RepClass::DiscreteNeg: os << "D-_" << js; break;
    case RepClass::Continuous: os << "C^" << epsilon.str() << "_" << js; break;
  }
  return os.str();
}

void validate(const RepLabel& l) {
  auto h = as_half_integer(l.j);
  switch (l.cls) {
    case RepClass::Finite:
      if (!h || h->twice() < 0) throw Error(ErrorKind::InvalidLabel, "finite spin must be in {0, 1/2, 1, ...}");
      break;
    case RepClass::DiscretePos:
    case RepClass::DiscreteNeg:
      if (!h || h->twice() < -1) {
        throw Error(ErrorKind::InvalidLabel, "discrete spin must be in {-1/2, 0, 1/2, ...}");
      }
      break;
    case RepClass::Continuous:
      if (l.epsilon.twice() != 0 && l.epsilon.twice() != 1) {
        throw Error(ErrorKind::InvalidLabel, "continuous parity must be 0 or 1/2");
      }
      if (!std::isfinite(l.j.real()) || !std::isfinite(l.j.imag())) {
        throw Error(ErrorKind::InvalidLabel, "continuous spin must be finite");
      }
      if (h && (*h - l.epsilon).is_integer()) {
        throw Error(ErrorKind::InvalidLabel, "continuous label with j - epsilon integer is reducible");
      }
      break;
  }
}

bool is_valid(const RepLabel& label) {
  try {
    validate(label);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool same_label(const RepLabel& a, const RepLabel& b, double tol) {
  if (a.cls != b.cls) return false;
  if (std::abs(a.j - b.j) > tol) return false;
  return a.cls != RepClass::Continuous || a.epsilon == b.epsilon;
}

RepLabel canonical(const RepLabel& label) {
  if (label.cls != RepClass::Continuous) return label;
  const double tie = 1e-12;
  double re = label.j.real();
  bool flip = re < -0.5 - tie || (std::abs(re + 0.5) <= tie && label.j.imag() < 0.0);
  if (!flip) return label;
  RepLabel out = label;
  out.j = -label.j - 1.0;
  return out;
}

HalfInt lattice_offset(const RepLabel& label) {
  if (label.cls == RepClass::Continuous) return label.epsilon;
  return HalfInt::from_twice(label.spin().twice() & 1);
}

std::optional<HalfInt> natural_min(const RepLabel& label) {
  switch (label.cls) {
    case RepClass::Finite: return -label.spin();
    case RepClass::DiscretePos: return label.spin() + 1;
    default: return std::nullopt;
  }
}

std::optional<HalfInt> natural_max(const RepLabel& label) {
  switch (label.cls) {
    case RepClass::Finite: return label.spin();
    case RepClass::DiscreteNeg: return -label.spin() - 1;
    default: return std::nullopt;
  }
}

bool in_weight_set(const RepLabel& label, HalfInt m) {
  if (!(m - lattice_offset(label)).is_integer()) return false;
  if (auto lo = natural_min(label); lo && m < *lo) return false;
  if (auto hi = natural_max(label); hi && m > *hi) return false;
  return true;
}

WeightWindow default_window(const RepLabel& label, int count, int margin) {
  switch (label.cls) {
    case RepClass::Finite: return {-label.spin(), label.spin(), 0};
    case RepClass::DiscretePos: {
      HalfInt lo = label.spin() + 1;
      return {lo, lo + (count - 1), margin};
    }
    case RepClass::DiscreteNeg: {
      HalfInt hi = -label.spin() - 1;
      return {hi - (count - 1), hi, margin};
    }
    case RepClass::Continuous: {
      HalfInt lo = label.epsilon - count / 2;
      return {lo, lo + (count - 1), margin};
    }
  }
  return {};
}

WeightWindow clip_window(const RepLabel& label, WeightWindow w) {
  if (label.cls == RepClass::Finite) return {-label.spin(), label.spin(), 0};
  if (auto lo = natural_min(label); lo && w.m_min < *lo) w.m_min = *lo;
  if (auto hi = natural_max(label); hi && w.m_max > *hi) w.m_max = *hi;
  return w;
}

WeightWindow expand_window(const RepLabel& label, const WeightWindow& w, HalfInt delta) {
  WeightWindow out{w.m_min - delta, w.m_max + delta, w.interior_margin};
  return clip_window(label, out);
}

namespace {

void check_window_shape(const WeightWindow& w) {
  if (w.m_max < w.m_min) throw Error(ErrorKind::EmptyDomain, "window has m_max < m_min");
  if (!(w.m_max - w.m_min).is_integer()) throw Error(ErrorKind::EmptyDomain, "window endpoints differ by a non-integer");
  if (w.interior_margin < 0) throw Error(ErrorKind::Precondition, "negative interior margin");
  if (2 * w.interior_margin > steps_between(w.m_min, w.m_max)) {
    throw Error(ErrorKind::Precondition, "interior margin exceeds half the window");
  }
}

}  // namespace

std::vector<HalfInt> weight_set(const RepLabel& label, const WeightWindow& window) {
  validate(label);
  std::vector<HalfInt> out;
  if (label.cls == RepClass::Finite) {
    for (HalfInt m = -label.spin(); m <= label.spin(); m += 1) out.push_back(m);
    return out;
  }
  check_window_shape(window);
  if (!(window.m_min - lattice_offset(label)).is_integer()) {
    throw Error(ErrorKind::EmptyDomain, "window weights are not in the weight lattice of " + label.str());
  }
  for (HalfInt m = window.m_min; m <= window.m_max; m += 1) {
    if (in_weight_set(label, m)) out.push_back(m);
  }
  if (out.empty()) throw Error(ErrorKind::EmptyDomain, "window contains no weights of " + label.str());
  return out;
}

Complex ladder_coeff(Complex j, Complex m, int sign) {
  double s = sign >= 0 ? 1.0 : -1.0;
  return Complex(0.0, 1.0) * principal_sqrt(j - s * m) * principal_sqrt(j + s * m + 1.0);
}

Complex casimir_eigenvalue(Complex j) { return -j * (j + 1.0); }

bool is_unitary(const RepLabel& label) {
  validate(label);
  const double tol = 1e-12;
  switch (label.cls) {
    case RepClass::DiscretePos:
    case RepClass::DiscreteNeg: return true;
    case RepClass::Finite: return label.spin().twice() == 0;
    case RepClass::Continuous: {
      bool critical = std::abs(label.j.real() + 0.5) <= tol && std::abs(label.j.imag()) > tol;
      if (label.epsilon.twice() == 0) {
        bool strip = std::abs(label.j.imag()) <= tol && label.j.real() > -1.0 && label.j.real() < 0.0;
        return strip || critical;
      }
      return critical;
    }
  }
  return false;
}

TruncatedRep::TruncatedRep(RepLabel label, WeightWindow window, std::vector<HalfInt> weights)
    : label_(std::move(label)), window_(window), weights_(std::move(weights)) {
  auto lo = natural_min(label_);
  auto hi = natural_max(label_);
  truncated_below_ = !lo || weights_.front() > *lo;
  truncated_above_ = !hi || weights_.back() < *hi;
}

std::optional<Eigen::Index> TruncatedRep::index_of(HalfInt m) const {
  if (weights_.empty() || m < weights_.front() || m > weights_.back()) return std::nullopt;
  int k = steps_between(weights_.front(), m);
  return static_cast<Eigen::Index>(k);
}

bool TruncatedRep::is_interior(Eigen::Index i, int min_margin) const {
  int margin = std::max(window_.interior_margin, min_margin);
  if (truncated_below_ && i < margin) return false;
  if (truncated_above_ && i >= dim() - margin) return false;
  return i >= 0 && i < dim();
}

std::vector<Eigen::Index> TruncatedRep::interior(int min_margin) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (is_interior(i, min_margin)) out.push_back(i);
  }
  return out;
}

TruncatedRep realize(const RepLabel& label, const WeightWindow& window) {
  WeightWindow w = label.cls == RepClass::Finite ? clip_window(label, window) : window;
  auto weights = weight_set(label, w);
  if (label.cls != RepClass::Finite) {
    w.m_min = weights.front();
    w.m_max = weights.back();
    w.interior_margin = std::min(w.interior_margin, static_cast<int>(weights.size() - 1) / 2);
  }
  TruncatedRep rep(label, w, weights);
  const Eigen::Index n = rep.dim();
  rep.J0 = Eigen::MatrixXcd::Zero(n, n);
  rep.Jp = Eigen::MatrixXcd::Zero(n, n);
  rep.Jm = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    HalfInt m = weights[static_cast<std::size_t>(i)];
    rep.J0(i, i) = m.value();
    if (i + 1 < n) rep.Jp(i + 1, i) = c_plus(label.j, m);
    if (i > 0) rep.Jm(i - 1, i) = c_minus(label.j, m);
  }
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  rep.Q = -rep.J0 * (rep.J0 + id) + rep.Jm * rep.Jp;
  return rep;
}

double max_abs_cols(const Eigen::MatrixXcd& r, const std::vector<Eigen::Index>& cols) {
  double m = 0.0;
  for (Eigen::Index c : cols) {
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      double a = std::abs(r(i, c));
      if (std::isnan(a)) return a;
      m = std::max(m, a);
    }
  }
  return m;
}

VerificationReport check_structure(const TruncatedRep& rep, double tol) {
  VerificationReport report("structure " + rep.label().str());
  const auto cols = rep.interior(1);
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const auto& J0 = rep.J0;
  const auto& Jp = rep.Jp;
  const auto& Jm = rep.Jm;
  Complex q = casimir_eigenvalue(rep.label().j);
  report.add("[J0,J+]-J+", max_abs_cols(J0 * Jp - Jp * J0 - Jp, cols), tol);
  report.add("[J0,J-]+J-", max_abs_cols(J0 * Jm - Jm * J0 + Jm, cols), tol);
  report.add("[J+,J-]+2J0", max_abs_cols(Jp * Jm - Jm * Jp + 2.0 * J0, cols), tol);
  Eigen::MatrixXcd q2 = -J0 * (J0 - id) + Jp * Jm;
  report.add("Q-scalar", max_abs_cols(rep.Q - q * id, cols), tol);
  report.add("Q-second-form", max_abs_cols(q2 - rep.Q, cols), tol);
  report.note("label", rep.label().str());
  report.note("window", rep.window().m_min.str() + ":" + rep.window().m_max.str());
  report.note("interior_columns", std::to_string(cols.size()));
  return report;
}

VerificationReport real_form_check(const TruncatedRep& rep, double tol) {
  VerificationReport report("real form " + rep.label().str());
  const auto cols = rep.interior(1);
  const Complex I(0.0, 1.0);
  Eigen::MatrixXcd X0 = I * rep.J0;
  Eigen::MatrixXcd X1 = I * (rep.Jp + rep.Jm) / 2.0;
  Eigen::MatrixXcd X2 = (rep.Jp - rep.Jm) / 2.0;
  auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd { return a * b - b * a; };
  report.add("[X0,X1]+X2", max_abs_cols(comm(X0, X1) + X2, cols), tol);
  report.add("[X1,X2]-X0", max_abs_cols(comm(X1, X2) - X0, cols), tol);
  report.add("[X2,X0]+X1", max_abs_cols(comm(X2, X0) + X1, cols), tol);
  report.add("Q-X-form", max_abs_cols(X0 * X0 - X1 * X1 - X2 * X2 - rep.Q, cols), tol);
  report.note("label", rep.label().str());
  return report;
}

double hermiticity_residual(const TruncatedRep& rep) {
  return max_abs_cols(rep.Jp.adjoint() - rep.Jm, rep.interior(1));
}

RepLabel dual(const RepLabel& label) {
  validate(label);
  switch (label.cls) {
    case RepClass::DiscretePos: return RepLabel::discrete_neg(label.spin());
    case RepClass::DiscreteNeg: return RepLabel::discrete_pos(label.spin());
    case RepClass::Finite: return label;
    case RepClass::Continuous: break;
  }
  throw Error(ErrorKind::Unsupported, "duality is defined for discrete and finite labels only");
}

DualState dual_state(Complex /*j*/, HalfInt m) {
  static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int k = ((m.twice() % 4) + 4) % 4;
  return {phases[k], -m};
}

}  // namespace sl2r
