#include "sl2r/jordan_schwinger.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sl2r/closed_forms.hpp"

namespace sl2r {

namespace {

const Complex kI(0.0, 1.0);

Complex default_norm(Complex j) { return principal_sqrt(2.0 * j + 1.0); }

// Factor multiplying the bare square-root actions.
Complex norm_factor(const std::optional<JSNormalization>& norm, Complex j, bool tilde) {
  if (!norm) return 1.0;
  const auto& fn = tilde ? norm->f_tilde : norm->f;
  return fn(j) / default_norm(j);
}

// Spaces j + s for s in {-1, -1/2, 0, 1/2, 1}; the window of j + s is the base
// window grown by |s|, so every composite used below is exact on the base window.
class Chain {
 public:
  Chain(const RepLabel& base, const WeightWindow& window, std::optional<JSNormalization> norm)
      : base_(base), norm_(std::move(norm)) {
    auto rep = realize(base, window);
    window_ = rep.window();
    for (int t = -2; t <= 2; ++t) {
      HalfInt s = HalfInt::from_twice(t);
      Space sp;
      sp.label = shift_label(base, s);
      if (sp.label) {
        HalfInt grow = HalfInt::from_twice(std::abs(t));
        sp.window = t == 0 ? window_ : expand_window(*sp.label, window_, grow);
        sp.weights = weight_set(*sp.label, sp.window);
      }
      spaces_[t] = sp;
    }
  }

  struct Space {
    std::optional<RepLabel> label;
    WeightWindow window;
    std::vector<HalfInt> weights;
  };

  const Space& space(int twice_shift) const { return spaces_.at(twice_shift); }
  const WeightWindow& window() const { return window_; }

  // T_sign from j + s to j + s + 1/2.
  Eigen::MatrixXcd T(int sign, int from) const { return build(sign, from, from + 1, false); }
  // T~_sign from j + s to j + s - 1/2.
  Eigen::MatrixXcd Tt(int sign, int from) const { return build(sign, from, from - 1, true); }

  // True when T~ leaving j + s has a nonzero element although j + s - 1/2 is invalid.
  bool tilde_blocked(int from) const {
    const Space& src = space(from);
    if (!src.label || space(from - 1).label) return false;
    const Complex j = src.label->j;
    for (HalfInt m : src.weights) {
      if (std::abs(principal_sqrt(j + m.value())) > 0.0 || std::abs(principal_sqrt(j - m.value())) > 0.0) {
        return true;
      }
    }
    return false;
  }

 private:
  Eigen::MatrixXcd build(int sign, int from, int to, bool tilde) const {
    const Space& src = space(from);
    const Space& tgt = space(to);
    const auto ncols = static_cast<Eigen::Index>(src.weights.size());
    const auto nrows = static_cast<Eigen::Index>(tgt.weights.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nrows, ncols);
    if (!src.label || !tgt.label || nrows == 0) return out;
    const Complex j = src.label->j;
    const Complex scale = norm_factor(norm_, j, tilde);
    const HalfInt shift = sign > 0 ? kHalf : -kHalf;
    for (Eigen::Index c = 0; c < ncols; ++c) {
      HalfInt m = src.weights[static_cast<std::size_t>(c)];
      HalfInt mt = m + shift;
      if (tgt.weights.empty() || mt < tgt.weights.front() || mt > tgt.weights.back()) continue;
      auto r = static_cast<Eigen::Index>(steps_between(tgt.weights.front(), mt));
      const double mv = m.value();
      Complex v;
      if (!tilde) {
        v = sign > 0 ? principal_sqrt(j + mv + 1.0) : principal_sqrt(j - mv + 1.0);
      } else {
        v = sign > 0 ? principal_sqrt(j - mv) : -principal_sqrt(j + mv);
      }
      out(r, c) = scale * v;
    }
    return out;
  }

  RepLabel base_;
  std::optional<JSNormalization> norm_;
  WeightWindow window_;
  std::map<int, Space> spaces_;
};

Chain chain_of(const JSPair& p) { return Chain(p.base, p.window, p.normalization); }

}  // namespace

Complex normalization_constraint(const std::optional<JSNormalization>& norm, Complex j) {
  Complex f = norm ? norm->f(j - 0.5) : default_norm(j - 0.5);
  Complex ft = norm ? norm->f_tilde(j) : default_norm(j);
  return f * ft - principal_sqrt(2.0 * j) * principal_sqrt(2.0 * j + 1.0);
}

std::optional<RepLabel> shift_label(const RepLabel& base, HalfInt delta) {
  RepLabel out = base;
  out.j = base.j + delta.value();
  if (base.cls == RepClass::Continuous) out.epsilon = HalfInt::from_twice((base.epsilon + delta).twice() & 1);
  if (!is_valid(out)) return std::nullopt;
  return out;
}

JSPair js_pair(const RepLabel& base, const WeightWindow& window, std::optional<JSNormalization> norm) {
  validate(base);
  Chain ch(base, window, norm);
  if (ch.tilde_blocked(0)) {
    throw Error(ErrorKind::Precondition, "domain boundary: T~ on " + base.str() + " needs an invalid label j-1/2");
  }
  JSPair p;
  p.base = base;
  p.window = ch.window();
  p.normalization = std::move(norm);
  p.up = {*ch.space(1).label, ch.space(1).window};
  if (ch.space(-1).label) p.down = OperatorSpace{*ch.space(-1).label, ch.space(-1).window};
  p.Tm = ch.T(-1, 0);
  p.Tp = ch.T(+1, 0);
  p.Ttm = ch.Tt(-1, 0);
  p.Ttp = ch.Tt(+1, 0);
  return p;
}

TensorOperator js_tensor_T(const JSPair& p) {
  return TensorOperator{kHalf, {p.base, p.window}, p.up, {p.Tm, p.Tp}};
}

TensorOperator js_tensor_Ttilde(const JSPair& p) {
  if (!p.down) throw Error(ErrorKind::Precondition, "T~ of " + p.base.str() + " has no target space");
  return TensorOperator{kHalf, {p.base, p.window}, *p.down, {p.Ttm, p.Ttp}};
}

VerificationReport reconstruct_generators(const JSPair& p, double tol) {
  Chain ch = chain_of(p);
  auto rep = realize(p.base, p.window);
  const auto cols = rep.interior(1);
  VerificationReport report("generator reconstruction " + p.base.str());
  Eigen::MatrixXcd Jp = kI * ch.T(+1, -1) * ch.Tt(+1, 0);
  Eigen::MatrixXcd Jm = -kI * ch.T(-1, -1) * ch.Tt(-1, 0);
  Eigen::MatrixXcd J0 = -0.5 * (ch.T(-1, -1) * ch.Tt(+1, 0) + ch.T(+1, -1) * ch.Tt(-1, 0));
  report.add("J+ = i T+ T~+", max_abs_cols(Jp - rep.Jp, cols), tol);
  report.add("J- = -i T- T~-", max_abs_cols(Jm - rep.Jm, cols), tol);
  report.add("J0 = -(T- T~+ + T+ T~-)/2", max_abs_cols(J0 - rep.J0, cols), tol);
  report.add("normalization constraint", std::abs(normalization_constraint(p.normalization, p.base.j)), tol);
  report.note("label", p.base.str());
  return report;
}

VerificationReport heisenberg_check(const JSPair& p, double tol) {
  Chain ch = chain_of(p);
  auto rep = realize(p.base, p.window);
  const auto cols = rep.interior(1);
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  VerificationReport report("heisenberg " + p.base.str());
  Eigen::MatrixXcd u1 = ch.T(+1, -1) * ch.Tt(-1, 0) - ch.Tt(-1, 1) * ch.T(+1, 0);
  Eigen::MatrixXcd u2 = ch.Tt(+1, 1) * ch.T(-1, 0) - ch.T(-1, -1) * ch.Tt(+1, 0);
  report.add("[T+,T~-] - 1", max_abs_cols(u1 - id, cols), tol);
  report.add("[T~+,T-] - 1", max_abs_cols(u2 - id, cols), tol);
  Eigen::MatrixXcd z1 = ch.T(+1, 1) * ch.T(-1, 0) - ch.T(-1, 1) * ch.T(+1, 0);
  report.add("[T+,T-]", max_abs_cols(z1, cols), tol);
  if (ch.tilde_blocked(-1)) {
    report.note("[T~+,T~-]", "skipped: domain boundary, j-1 is not a valid label");
  } else {
    Eigen::MatrixXcd z2 = ch.Tt(+1, -1) * ch.Tt(-1, 0) - ch.Tt(-1, -1) * ch.Tt(+1, 0);
    report.add("[T~+,T~-]", max_abs_cols(z2, cols), tol);
  }
  Eigen::MatrixXcd z3 = ch.T(+1, -1) * ch.Tt(+1, 0) - ch.Tt(+1, 1) * ch.T(+1, 0);
  Eigen::MatrixXcd z4 = ch.T(-1, -1) * ch.Tt(-1, 0) - ch.Tt(-1, 1) * ch.T(-1, 0);
  report.add("[T+,T~+]", max_abs_cols(z3, cols), tol);
  report.add("[T-,T~-]", max_abs_cols(z4, cols), tol);
  report.note("label", p.base.str());
  return report;
}

namespace {

Obstruction find_obstruction(const JSPair& p) {
  const Complex j = p.base.j;
  const double tol = 1e-12;
  auto not_real = [&](Complex x) { return std::abs(x.imag()) > tol * std::max(1.0, std::abs(x)); };
  auto not_imag = [&](Complex x) { return std::abs(x.real()) > tol * std::max(1.0, std::abs(x)); };
  auto element = [&](int sign, HalfInt m) {
    return sign > 0 ? principal_sqrt(j + m.value() + 1.0) : principal_sqrt(j - m.value() + 1.0);
  };
  auto scan = [&](int sign, HalfInt lo, HalfInt hi, Obstruction& o) {
    bool have_r = false, have_i = false;
    for (HalfInt m = lo; m <= hi; m += 1) {
      Complex x = element(sign, m);
      if (!have_r && not_real(x)) {
        o.m_not_real = m;
        o.value_not_real = x;
        have_r = true;
      }
      if (!have_i && not_imag(x)) {
        o.m_not_imaginary = m;
        o.value_not_imaginary = x;
        have_i = true;
      }
    }
    return have_r && have_i;
  };
  const HalfInt lo = p.window.m_min, hi = p.window.m_max;
  for (int widen : {0, 16, 256, 4096}) {
    for (int sign : {+1, -1}) {
      Obstruction o;
      o.component = sign > 0 ? "T+" : "T-";
      o.within_window = widen == 0;
      if (scan(sign, lo - widen, hi + widen, o)) return o;
    }
  }
  throw Error(ErrorKind::Inconsistency, "no reality witness found for " + p.base.str());
}

}  // namespace

OscillatorResult oscillator_form(const JSPair& p, double tol) {
  if (p.base.cls == RepClass::Continuous) return find_obstruction(p);
  const HalfInt j = p.base.spin();
  if (p.base.cls == RepClass::Finite && j.twice() < 1) {
    throw Error(ErrorKind::Precondition, "oscillator form needs a finite label with j >= 1/2");
  }
  if (p.base.is_discrete() && j.twice() < 0) {
    throw Error(ErrorKind::Precondition, "oscillator form needs a discrete label with j >= 0");
  }
  Chain ch = chain_of(p);
  auto rep = realize(p.base, p.window);
  const auto cols = rep.interior(1);
  const Eigen::Index n = rep.dim();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& Tp = p.Tp;
  const Eigen::MatrixXcd& Tm = p.Tm;
  const Eigen::MatrixXcd& Ttm = p.Ttm;
  const Eigen::MatrixXcd& Ttp = p.Ttp;
  Eigen::MatrixXcd Ttm_up = ch.Tt(-1, 1);
  Eigen::MatrixXcd Ttp_up = ch.Tt(+1, 1);

  OscillatorRealization out;
  VerificationReport& r = out.report;
  Eigen::MatrixXcd Jp, Jm, J0, naa, nbb;
  switch (p.base.cls) {
    case RepClass::Finite:
      out.kind = OscillatorRealization::Kind::Finite;
      r.set_subject("oscillator (a = T~-, b = -T~+) " + p.base.str());
      r.add("T+ + T~-^dagger", max_abs_cols(Tp + Ttm_up.adjoint(), cols), tol);
      r.add("T- - T~+^dagger", max_abs_cols(Tm - Ttp_up.adjoint(), cols), tol);
      Jp = -kI * Ttm.adjoint() * Ttp;
      Jm = -kI * Ttp.adjoint() * Ttm;
      J0 = 0.5 * (Ttm.adjoint() * Ttm - Ttp.adjoint() * Ttp);
      naa = Ttm_up * Ttm_up.adjoint() - Ttm.adjoint() * Ttm;
      nbb = Ttp_up * Ttp_up.adjoint() - Ttp.adjoint() * Ttp;
      r.add("J+ = i a^dagger b", max_abs_cols(Jp - rep.Jp, cols), tol);
      r.add("J- = i b^dagger a", max_abs_cols(Jm - rep.Jm, cols), tol);
      r.add("J0 = (a^dagger a - b^dagger b)/2", max_abs_cols(J0 - rep.J0, cols), tol);
      break;
    case RepClass::DiscretePos:
      out.kind = OscillatorRealization::Kind::DiscretePos;
      r.set_subject("oscillator (a = T~-, T~+ = i b^dagger) " + p.base.str());
      r.add("T+ + T~-^dagger", max_abs_cols(Tp + Ttm_up.adjoint(), cols), tol);
      r.add("T- + T~+^dagger", max_abs_cols(Tm + Ttp_up.adjoint(), cols), tol);
      Jp = Ttm.adjoint() * (-kI * Ttp);
      Jm = Ttm_up * (kI * Ttp_up.adjoint());
      J0 = 0.5 * (Ttm.adjoint() * Ttm + Ttp_up * Ttp_up.adjoint() + id);
      naa = Ttm_up * Ttm_up.adjoint() - Ttm.adjoint() * Ttm;
      nbb = Ttp.adjoint() * Ttp - Ttp_up * Ttp_up.adjoint();
      r.add("J+ = a^dagger b^dagger", max_abs_cols(Jp - rep.Jp, cols), tol);
      r.add("J- = a b", max_abs_cols(Jm - rep.Jm, cols), tol);
      r.add("J0 = (a^dagger a + b^dagger b + 1)/2", max_abs_cols(J0 - rep.J0, cols), tol);
      break;
    case RepClass::DiscreteNeg:
      out.kind = OscillatorRealization::Kind::DiscreteNeg;
      r.set_subject("oscillator (a^dagger = T~-, T~+ = -i b) " + p.base.str());
      r.add("T+ - T~-^dagger", max_abs_cols(Tp - Ttm_up.adjoint(), cols), tol);
      r.add("T- - T~+^dagger", max_abs_cols(Tm - Ttp_up.adjoint(), cols), tol);
      Jp = Ttm.adjoint() * (kI * Ttp);
      Jm = Ttm_up * (-kI * Ttp_up.adjoint());
      J0 = -0.5 * (Ttm_up * Ttm_up.adjoint() + Ttp.adjoint() * Ttp + id);
      naa = Ttm.adjoint() * Ttm - Ttm_up * Ttm_up.adjoint();
      nbb = Ttp_up * Ttp_up.adjoint() - Ttp.adjoint() * Ttp;
      r.add("J+ = a b", max_abs_cols(Jp - rep.Jp, cols), tol);
      r.add("J- = a^dagger b^dagger", max_abs_cols(Jm - rep.Jm, cols), tol);
      r.add("J0 = -(a^dagger a + b^dagger b + 1)/2", max_abs_cols(J0 - rep.J0, cols), tol);
      break;
    case RepClass::Continuous: break;
  }
  r.add("[a,a^dagger] - 1", max_abs_cols(naa - id, cols), tol);
  r.add("[b,b^dagger] - 1", max_abs_cols(nbb - id, cols), tol);
  r.note("label", p.base.str());
  return out;
}

TensorOperator vector_op_contract(const JSPair& p) {
  Chain ch = chain_of(p);
  const Eigen::Index n = static_cast<Eigen::Index>(ch.space(0).weights.size());
  OperatorSpace space{p.base, p.window};
  TensorOperator v{HalfInt(1), space, space, {}};
  for (HalfInt mu = HalfInt(-1); mu <= HalfInt(1); mu += 1) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int s1 : {-1, +1}) {
      for (int s2 : {-1, +1}) {
        HalfInt mu1 = HalfInt::from_twice(s1), mu2 = HalfInt::from_twice(s2);
        double c = su2_cg(kHalf, mu1, kHalf, mu2, HalfInt(1), mu);
        if (c == 0.0) continue;
        acc += c * ch.T(s1, -1) * ch.Tt(s2, 0);
      }
    }
    v.components.push_back(acc);
  }
  return v;
}

}  // namespace sl2r
