#include "sl2r/wigner_eckart.hpp"

#include <algorithm>
#include <cmath>

namespace sl2r {

const Eigen::MatrixXcd& TensorOperator::component(HalfInt mu) const {
  int k = steps_between(-gamma, mu);
  if (k < 0 || k >= static_cast<int>(components.size())) throw Error(ErrorKind::OutOfRange, "component index");
  return components[static_cast<std::size_t>(k)];
}

Eigen::MatrixXcd& TensorOperator::component(HalfInt mu) {
  return const_cast<Eigen::MatrixXcd&>(static_cast<const TensorOperator&>(*this).component(mu));
}

int operator_margin(HalfInt gamma) { return (gamma.twice() + 1) / 2 + 1; }

namespace {

TruncatedRep realize_space(const OperatorSpace& s) { return realize(s.label, s.window); }

void check_shapes(const TensorOperator& t, const TruncatedRep& src, const TruncatedRep& tgt) {
  if (static_cast<int>(t.components.size()) != t.gamma.twice() + 1) {
    throw Error(ErrorKind::ShapeMismatch, "expected 2 gamma + 1 components");
  }
  for (const auto& c : t.components) {
    if (c.rows() != tgt.dim() || c.cols() != src.dim()) {
      throw Error(ErrorKind::ShapeMismatch, "component shape differs from target x source");
    }
  }
}

double max_abs_sub(const Eigen::MatrixXcd& m, const std::vector<Eigen::Index>& rows,
                   const std::vector<Eigen::Index>& cols) {
  double out = 0.0;
  for (auto r : rows) {
    for (auto c : cols) {
      double a = std::abs(m(r, c));
      if (std::isnan(a)) return a;
      out = std::max(out, a);
    }
  }
  return out;
}

bool is_table_label(const CGTable& table, std::size_t k, const RepLabel& other) {
  return same_label(table.labels()[k], other, 1e-9);
}

}  // namespace

TensorOperator zero_operator(HalfInt gamma, const OperatorSpace& source, const OperatorSpace& target) {
  auto src = realize_space(source);
  auto tgt = realize_space(target);
  TensorOperator t{gamma, {source.label, src.window()}, {target.label, tgt.window()}, {}};
  for (int k = 0; k <= gamma.twice(); ++k) t.components.push_back(Eigen::MatrixXcd::Zero(tgt.dim(), src.dim()));
  return t;
}

VerificationReport check_tensor_op(const TensorOperator& t, double tol) {
  auto src = realize_space(t.source);
  auto tgt = realize_space(t.target);
  check_shapes(t, src, tgt);
  const int margin = operator_margin(t.gamma);
  const auto rows = tgt.interior(margin);
  const auto cols = src.interior(margin);
  double r0 = 0.0, rp = 0.0, rm = 0.0;
  for (HalfInt mu = -t.gamma; mu <= t.gamma; mu += 1) {
    const auto& T = t.component(mu);
    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(T.rows(), T.cols());
    const Eigen::MatrixXcd& up = mu < t.gamma ? t.component(mu + 1) : zero;
    const Eigen::MatrixXcd& down = mu > -t.gamma ? t.component(mu - 1) : zero;
    r0 = std::max(r0, max_abs_sub(tgt.J0 * T - T * src.J0 - mu.value() * T, rows, cols));
    rp = std::max(rp, max_abs_sub(tgt.Jp * T - T * src.Jp - c_plus(t.gamma, mu) * up, rows, cols));
    rm = std::max(rm, max_abs_sub(tgt.Jm * T - T * src.Jm - c_minus(t.gamma, mu) * down, rows, cols));
  }
  VerificationReport report("tensor operator rank " + t.gamma.str());
  report.add("[J0,T]-mu T", r0, tol);
  report.add("[J+,T]-C+ T", rp, tol);
  report.add("[J-,T]-C- T", rm, tol);
  report.note("source", t.source.label.str());
  report.note("target", t.target.label.str());
  report.note("interior_rows", std::to_string(rows.size()));
  report.note("interior_cols", std::to_string(cols.size()));
  return report;
}

TensorOperator generator_vector_operator(const RepLabel& label, const WeightWindow& window) {
  auto rep = realize(label, window);
  const Complex I(0.0, 1.0);
  OperatorSpace space{label, rep.window()};
  TensorOperator t{HalfInt(1), space, space, {}};
  t.components.push_back(I * rep.Jm);
  t.components.push_back(-std::sqrt(2.0) * rep.J0);
  t.components.push_back(-I * rep.Jp);
  return t;
}

CGTable table_for(const TensorOperator& t) {
  WeightWindow w{};
  if (t.source.label.cls != RepClass::Finite) {
    auto src = realize_space(t.source);
    w = src.window();
    w.interior_margin = 0;
    auto tgt = realize_space(t.target);
    HalfInt lo = tgt.weights().front() - t.gamma;
    HalfInt hi = tgt.weights().back() + t.gamma;
    if ((lo - lattice_offset(t.source.label)).is_integer()) {
      w.m_min = std::min(w.m_min, lo);
      w.m_max = std::max(w.m_max, hi);
    }
    w = clip_window(t.source.label, w);
  }
  CouplingSpec spec{t.gamma, t.source.label, w};
  return CGTable::from_decomposition(decompose(spec));
}

Eigen::VectorXcd psi_vector(const TensorOperator& t, const CGTable& table, Complex j2, HalfInt m2) {
  if (!table.data().label_index(j2)) throw Error(ErrorKind::OutOfRange, "j'' is not a component label");
  if (table.gamma() != t.gamma || !same_label(table.inner(), t.source.label, 1e-9)) {
    throw Error(ErrorKind::ShapeMismatch, "table does not match the operator's coupling");
  }
  auto src = realize_space(t.source);
  auto tgt = realize_space(t.target);
  check_shapes(t, src, tgt);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(tgt.dim());
  for (HalfInt mu = -t.gamma; mu <= t.gamma; mu += 1) {
    HalfInt m = m2 - mu;
    if (!in_weight_set(t.source.label, m)) continue;
    auto col = src.index_of(m);
    if (!col) throw Error(ErrorKind::OutOfRange, "source window lacks weight " + m.str());
    Complex a = table.A(mu, m, j2, m2);
    if (a != Complex(0.0)) psi += a * t.component(mu).col(*col);
  }
  return psi;
}

std::vector<HalfInt> extraction_weights(const TensorOperator& t, const CGTable& table, Complex j2) {
  std::vector<HalfInt> out;
  auto k = table.data().label_index(j2);
  if (!k) return out;
  auto src = realize_space(t.source);
  auto tgt = realize_space(t.target);
  const int margin = operator_margin(t.gamma);
  const auto& comp = table.labels()[*k];
  for (Eigen::Index i = 0; i < tgt.dim(); ++i) {
    HalfInt m2 = tgt.weights()[static_cast<std::size_t>(i)];
    if (!tgt.is_interior(i, margin) || !table.covers(m2) || !label_present_at(comp, m2)) continue;
    bool ok = false;
    for (HalfInt mu = -t.gamma; mu <= t.gamma; mu += 1) {
      HalfInt m = m2 - mu;
      if (!in_weight_set(t.source.label, m)) continue;
      auto col = src.index_of(m);
      if (!col || !src.is_interior(*col, margin)) {
        ok = false;
        break;
      }
      ok = true;
    }
    if (ok) out.push_back(m2);
  }
  return out;
}

ReducedElement estimate_reduced_element(const TensorOperator& t, const CGTable& table, Complex j2) {
  auto k = table.data().label_index(j2);
  if (!k) throw Error(ErrorKind::OutOfRange, "j'' = " + format_complex(j2) + " is not a component label");
  auto weights = extraction_weights(t, table, j2);
  if (weights.empty()) throw Error(ErrorKind::WindowTooSmall, "no interior weights for extraction");
  auto tgt = realize_space(t.target);
  const bool same = is_table_label(table, *k, t.target.label);
  std::vector<Complex> values;
  ReducedElement out;
  for (HalfInt m2 : weights) {
    Eigen::VectorXcd psi = psi_vector(t, table, j2, m2);
    Complex n(0.0);
    if (same) {
      auto idx = tgt.index_of(m2);
      n = psi(*idx);
      psi(*idx) -= n;
    }
    out.off_axis = std::max(out.off_axis, psi.size() ? psi.cwiseAbs().maxCoeff() : 0.0);
    values.push_back(n);
  }
  Complex mean(0.0);
  for (Complex v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (Complex v : values) out.spread = std::max(out.spread, std::abs(v - mean));
  out.value = mean;
  out.samples = static_cast<int>(values.size());
  return out;
}

ReducedElement reduced_matrix_element(const TensorOperator& t, const CGTable& table, Complex j2,
                                      const WEOptions& opts) {
  auto r = estimate_reduced_element(t, table, j2);
  double scale = std::max(1.0, std::abs(r.value));
  if (r.spread > opts.inconsistency_tol * scale || r.off_axis > opts.inconsistency_tol * scale) {
    throw Error(ErrorKind::Inconsistency, "reduced element depends on m'' (spread " + std::to_string(r.spread) +
                                              ", off-axis " + std::to_string(r.off_axis) + ")");
  }
  return r;
}

VerificationReport we_reconstruct(const TensorOperator& t, const CGTable& table, double tol) {
  auto src = realize_space(t.source);
  auto tgt = realize_space(t.target);
  check_shapes(t, src, tgt);
  VerificationReport report("wigner-eckart " + t.source.label.str() + " -> " + t.target.label.str());
  std::optional<std::size_t> k;
  for (std::size_t i = 0; i < table.labels().size(); ++i) {
    if (is_table_label(table, i, t.target.label)) k = i;
  }
  Complex N(0.0);
  if (k) {
    N = estimate_reduced_element(t, table, table.labels()[*k].j).value;
    report.note("reduced_element", format_complex(N));
  } else {
    report.note("reduced_element", "target outside the decomposition; matrix elements must vanish");
  }
  const int margin = operator_margin(t.gamma);
  const auto rows = tgt.interior(margin);
  const auto cols = src.interior(margin);
  double worst = 0.0;
  long checked = 0;
  for (HalfInt mu = -t.gamma; mu <= t.gamma; mu += 1) {
    const auto& T = t.component(mu);
    for (auto r : rows) {
      HalfInt m2 = tgt.weights()[static_cast<std::size_t>(r)];
      if (k && !table.covers(m2)) continue;
      for (auto c : cols) {
        HalfInt m = src.weights()[static_cast<std::size_t>(c)];
        Complex expect = (k && m + mu == m2) ? N * table.B_or_zero(table.labels()[*k].j, m2, mu, m) : Complex(0.0);
        worst = std::max(worst, std::abs(T(r, c) - expect));
        ++checked;
      }
    }
  }
  report.add("matrix element - N*B", worst, tol);
  report.note("elements_checked", std::to_string(checked));
  return report;
}

TensorOperator synthesize(HalfInt gamma, const OperatorSpace& source, const OperatorSpace& target, Complex N) {
  auto comps = component_labels(gamma, source.label);
  bool member = std::any_of(comps.labels.begin(), comps.labels.end(),
                            [&](const RepLabel& c) { return same_label(c, target.label, 1e-9); });
  if (!member) throw Error(ErrorKind::OutOfRange, target.label.str() + " is not in the decomposition of F_" +
                                                      gamma.str() + " ⊗ " + source.label.str());
  TensorOperator t = zero_operator(gamma, source, target);
  CGTable table = table_for(t);
  auto src = realize_space(t.source);
  auto tgt = realize_space(t.target);
  const Complex J = target.label.j;
  for (HalfInt mu = -gamma; mu <= gamma; mu += 1) {
    auto& T = t.component(mu);
    for (Eigen::Index c = 0; c < src.dim(); ++c) {
      HalfInt m = src.weights()[static_cast<std::size_t>(c)];
      auto r = tgt.index_of(m + mu);
      if (!r) continue;
      T(*r, c) = N * table.B(J, m + mu, mu, m);
    }
  }
  return t;
}

}  // namespace sl2r
