#include "sl2r/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>

namespace sl2r {

CGTable CGTable::from_decomposition(DecompositionResult d) { return CGTable(std::move(d), Source::Decomposition); }

CGTable CGTable::closed_form(const CouplingSpec& spec) {
  if (spec.gamma.twice() != 1 && spec.gamma.twice() != 2) {
    throw Error(ErrorKind::OutOfRange, "closed forms exist for gamma = 1/2 and gamma = 1 only");
  }
  validate(spec);
  DecompositionResult d;
  d.spec = spec;
  d.verdict = is_decomposable(spec.gamma, spec.inner);
  if (!d.verdict.decomposable) throw NotDecomposableError(d.verdict.reason, d.verdict.detail);
  auto comps = component_labels(spec.gamma, spec.inner);
  d.labels = comps.labels;
  d.offsets = comps.offsets;
  d.label_deficit = comps.deficit;
  std::tie(d.M_min, d.M_max) = emitted_range(spec);
  for (HalfInt M = d.M_min; M <= d.M_max; M += 1) {
    BlockCG blk;
    blk.M = M;
    blk.mu = block_basis(spec.gamma, spec.inner, M);
    for (std::size_t k = 0; k < d.labels.size(); ++k) {
      if (label_present_at(d.labels[k], M)) blk.label.push_back(k);
    }
    const auto n = static_cast<Eigen::Index>(blk.mu.size());
    if (static_cast<Eigen::Index>(blk.label.size()) != n) {
      throw Error(ErrorKind::Inconsistency, "label count differs from block dimension at M = " + M.str());
    }
    blk.A.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& J = d.labels[blk.label[static_cast<std::size_t>(c)]].j;
        blk.A(r, c) = cg_closed_form(spec.gamma, blk.mu[static_cast<std::size_t>(r)], spec.inner.j, J, M.complex());
      }
    }
    blk.B = blk.A.transpose();
    d.blocks.push_back(std::move(blk));
  }
  return CGTable(std::move(d), Source::ClosedForm);
}

std::optional<std::pair<Eigen::Index, Eigen::Index>> CGTable::locate(HalfInt mu, HalfInt m, Complex J,
                                                                     HalfInt M) const {
  if (mu + m != M) return std::nullopt;
  const BlockCG* blk = data_.block(M);
  if (!blk) return std::nullopt;
  auto k = data_.label_index(J);
  if (!k) return std::nullopt;
  Eigen::Index row = -1, col = -1;
  for (std::size_t i = 0; i < blk->mu.size(); ++i) {
    if (blk->mu[i] == mu) row = static_cast<Eigen::Index>(i);
  }
  for (std::size_t i = 0; i < blk->label.size(); ++i) {
    if (blk->label[i] == *k) col = static_cast<Eigen::Index>(i);
  }
  if (row < 0 || col < 0) return std::nullopt;
  return std::make_pair(row, col);
}

Complex CGTable::A_or_zero(HalfInt mu, HalfInt m, Complex J, HalfInt M) const {
  auto p = locate(mu, m, J, M);
  return p ? data_.block(M)->A(p->first, p->second) : Complex(0.0);
}

Complex CGTable::B_or_zero(Complex J, HalfInt M, HalfInt mu, HalfInt m) const {
  auto p = locate(mu, m, J, M);
  return p ? data_.block(M)->B(p->second, p->first) : Complex(0.0);
}

namespace {

void require_emitted(const CGTable& t, HalfInt mu, HalfInt m, Complex J, HalfInt M) {
  if (mu + m != M) return;
  if (!t.data().label_index(J)) return;
  if (!t.covers(M)) throw Error(ErrorKind::OutOfRange, "M = " + M.str() + " is outside the emitted range");
}

void require_table(const CGTable& t, HalfInt gamma, Complex j) {
  if (gamma != t.gamma() || std::abs(j - t.inner().j) > 1e-12) {
    throw Error(ErrorKind::ShapeMismatch, "table was built for a different coupling");
  }
}

}  // namespace

Complex CGTable::A(HalfInt mu, HalfInt m, Complex J, HalfInt M) const {
  require_emitted(*this, mu, m, J, M);
  return A_or_zero(mu, m, J, M);
}

Complex CGTable::B(Complex J, HalfInt M, HalfInt mu, HalfInt m) const {
  require_emitted(*this, mu, m, J, M);
  return B_or_zero(J, M, mu, m);
}

CGTable CGTable::with_perturbation(HalfInt M, Eigen::Index row, Eigen::Index col, Complex delta) const {
  CGTable copy = *this;
  const BlockCG* blk = copy.data_.block(M);
  if (!blk || row < 0 || col < 0 || row >= blk->A.rows() || col >= blk->A.cols()) {
    throw Error(ErrorKind::OutOfRange, "perturbation target outside the table");
  }
  copy.data_.blocks[static_cast<std::size_t>(steps_between(copy.data_.M_min, M))].A(row, col) += delta;
  return copy;
}

Complex cg(const CGTable& t, HalfInt gamma, HalfInt mu, Complex j, HalfInt m, Complex J, HalfInt M) {
  require_table(t, gamma, j);
  return t.A(mu, m, J, M);
}

Complex inverse_cg(const CGTable& t, Complex J, HalfInt M, HalfInt gamma, HalfInt mu, Complex j, HalfInt m) {
  require_table(t, gamma, j);
  return t.B(J, M, mu, m);
}

Complex swap(const CGTable& t, Complex J, HalfInt M, Complex j, HalfInt m, HalfInt gamma, HalfInt mu) {
  require_table(t, gamma, j);
  return static_cast<double>(swap_sign(J, j, gamma)) * t.B(J, M, mu, m);
}

VerificationReport verify_orthogonality(const CGTable& t, double tol) {
  VerificationReport report("orthogonality");
  double ab = 0.0, ba = 0.0, sym = 0.0;
  for (const auto& blk : t.data().blocks) {
    const auto n = blk.A.rows();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    ab = std::max(ab, (blk.A * blk.B - id).cwiseAbs().maxCoeff());
    ba = std::max(ba, (blk.B * blk.A - id).cwiseAbs().maxCoeff());
    sym = std::max(sym, (blk.A - blk.B.transpose()).cwiseAbs().maxCoeff());
  }
  report.add("sum_J A*B - delta", ab, tol);
  report.add("sum_mu B*A - delta", ba, tol);
  report.add("A - B^T", sym, tol);
  report.note("blocks", std::to_string(t.data().blocks.size()));
  return report;
}

VerificationReport verify_recursion(const CGTable& t, double tol) {
  VerificationReport report("recursion");
  const HalfInt g = t.gamma();
  const RepLabel& inner = t.inner();
  double worst_a = 0.0, worst_b = 0.0;
  long checked = 0;
  for (const auto& lab : t.labels()) {
    const Complex J = lab.j;
    for (int s : {+1, -1}) {
      for (HalfInt M = t.M_min(); M <= t.M_max(); M += 1) {
        HalfInt Mt = M + s;
        if (!t.covers(Mt)) continue;
        for (HalfInt mu = -g; mu <= g; mu += 1) {
          HalfInt m = Mt - mu;
          if (!in_weight_set(inner, m)) continue;
          Complex cj = ladder_coeff(J, M.complex(), s);
          Complex cg_ = ladder_coeff(g.complex(), (mu - s).complex(), s);
          Complex ci = ladder_coeff(inner.j, (m - s).complex(), s);
          Complex lhs_a = cj * t.A_or_zero(mu, m, J, Mt);
          Complex rhs_a = cg_ * t.A_or_zero(mu - s, m, J, M) + ci * t.A_or_zero(mu, m - s, J, M);
          Complex lhs_b = cj * t.B_or_zero(J, Mt, mu, m);
          Complex rhs_b = cg_ * t.B_or_zero(J, M, mu - s, m) + ci * t.B_or_zero(J, M, mu, m - s);
          worst_a = std::max(worst_a, std::abs(lhs_a - rhs_a));
          worst_b = std::max(worst_b, std::abs(lhs_b - rhs_b));
          ++checked;
        }
      }
    }
  }
  report.add("A recursion", worst_a, tol);
  report.add("B recursion", worst_b, tol);
  report.note("relations_checked", std::to_string(checked));
  return report;
}

std::vector<RatioFit> fit_ratio(const CGTable& t) {
  std::vector<RatioFit> out;
  const HalfInt g = t.gamma();
  const auto& labels = t.labels();
  for (std::size_t k = 0; k + 1 < labels.size(); ++k) {
    const Complex J = labels[k].j;
    const Complex J1 = labels[k + 1].j;
    if (std::abs(J1 - J - 1.0) > 1e-9) continue;
    RatioFit fit;
    fit.J = J;
    std::vector<Complex> alphas;
    std::vector<double> weights;
    for (HalfInt M = t.M_min(); M <= t.M_max(); M += 1) {
      HalfInt m = M + g;
      if (!in_weight_set(t.inner(), m)) continue;
      if (!label_present_at(labels[k], M) || !label_present_at(labels[k + 1], M)) continue;
      Complex b0 = t.B_or_zero(J, M, -g, m);
      Complex b1 = t.B_or_zero(J1, M, -g, m);
      Complex den = principal_sqrt(J - M.value() + 1.0);
      if (std::abs(b0) <= 1e-12 * std::max(1.0, std::abs(b1)) || std::abs(den) <= 1e-14) {
        ++fit.skipped;
        continue;
      }
      alphas.push_back(b1 / b0 * principal_sqrt(J + M.value() + 1.0) / den);
      weights.push_back(std::abs(b0));
    }
    fit.samples = static_cast<int>(alphas.size());
    if (!alphas.empty()) {
      auto best = std::max_element(weights.begin(), weights.end()) - weights.begin();
      fit.alpha = alphas[static_cast<std::size_t>(best)];
      for (Complex a : alphas) fit.spread = std::max(fit.spread, std::abs(a - fit.alpha));
    }
    out.push_back(fit);
  }
  return out;
}

VerificationReport verify_ratio(const CGTable& t, double tol) {
  VerificationReport report("ratio");
  int skipped = 0;
  for (const auto& fit : fit_ratio(t)) {
    std::string key = "alpha(" + format_complex(fit.J) + ")";
    report.add(key + " spread", fit.spread, tol);
    report.note(key, format_complex(fit.alpha));
    skipped += fit.skipped;
  }
  report.note("skipped_rows", std::to_string(skipped));
  return report;
}

}  // namespace sl2r
