#include "sl2r/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <Eigen/SVD>

#include "sl2r/closed_forms.hpp"

namespace sl2r {

void validate(const CouplingSpec& spec) {
  if (spec.gamma.twice() < 1) throw Error(ErrorKind::Precondition, "gamma must be at least 1/2");
  validate(spec.inner);
  if (spec.inner.cls != RepClass::Finite) weight_set(spec.inner, spec.window);
}

std::vector<Eigen::Index> TotalGenerators::interior(int min_margin) const {
  std::vector<Eigen::Index> out;
  const auto inner_idx = inner.interior(min_margin);
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(mu_weights.size()); ++a) {
    for (Eigen::Index i : inner_idx) out.push_back(index(a, i));
  }
  return out;
}

TotalGenerators total_generators(const CouplingSpec& spec) {
  validate(spec);
  auto outer = realize(RepLabel::finite(spec.gamma), WeightWindow{});
  auto inner = realize(spec.inner, spec.window);
  const Eigen::Index na = outer.dim();
  const Eigen::Index nb = inner.dim();
  auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        out.block(r * y.rows(), c * y.cols(), y.rows(), y.cols()) = x(r, c) * y;
      }
    }
    return out;
  };
  Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(na, na);
  Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(nb, nb);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(na * nb, na * nb);
  TotalGenerators t{outer.weights(), inner, {}, {}, {}, {}, {}};
  t.J0 = kron(outer.J0, ib) + kron(ia, inner.J0);
  t.Jp = kron(outer.Jp, ib) + kron(ia, inner.Jp);
  t.Jm = kron(outer.Jm, ib) + kron(ia, inner.Jm);
  t.Q = -t.J0 * (t.J0 + id) + t.Jm * t.Jp;
  t.Q_alt = -t.J0 * (t.J0 - id) + t.Jp * t.Jm;
  return t;
}

std::vector<HalfInt> block_basis(HalfInt gamma, const RepLabel& inner, HalfInt M) {
  std::vector<HalfInt> out;
  for (HalfInt mu = -gamma; mu <= gamma; mu += 1) {
    if (in_weight_set(inner, M - mu)) out.push_back(mu);
  }
  return out;
}

CasimirBlock casimir_block(const CouplingSpec& spec, HalfInt M) {
  auto basis = block_basis(spec.gamma, spec.inner, M);
  if (basis.empty()) throw Error(ErrorKind::EmptyDomain, "V_M is empty at M = " + M.str());
  const Complex j = spec.inner.j;
  const Complex g = spec.gamma.complex();
  const double Mv = M.value();
  std::vector<Complex> a, b, c;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double mu = basis[i].value();
    const HalfInt m = M - basis[i];
    // -M(M+1) + C+(gamma,mu)^2 + C+(j,m)^2 with the O(M^2) terms cancelled by hand.
    b.push_back(-mu * (2.0 * Mv - mu + 1.0) - (g - mu) * (g + mu + 1.0) - j * (j + 1.0));
    if (i > 0) {
      // row i-1, column i
      c.push_back(c_minus(spec.gamma, basis[i]) * c_plus(j, m));
    }
    if (i + 1 < basis.size()) {
      // row i+1, column i
      a.push_back(c_plus(spec.gamma, basis[i]) * c_minus(j, m));
    }
  }
  return {M, std::move(basis), Tridiagonal(std::move(a), std::move(b), std::move(c))};
}

Eigen::VectorXcd raise_in_block(HalfInt gamma, const RepLabel& inner, HalfInt M, const Eigen::VectorXcd& v) {
  const auto from = block_basis(gamma, inner, M);
  const auto to = block_basis(gamma, inner, M + 1);
  if (static_cast<Eigen::Index>(from.size()) != v.size()) throw Error(ErrorKind::ShapeMismatch, "vector/block size");
  auto value = [&](HalfInt mu) -> Complex {
    for (std::size_t k = 0; k < from.size(); ++k) {
      if (from[k] == mu) return v(static_cast<Eigen::Index>(k));
    }
    return 0.0;
  };
  Eigen::VectorXcd w(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < to.size(); ++k) {
    HalfInt mu = to[k];
    w(static_cast<Eigen::Index>(k)) =
        c_plus(gamma, mu - 1) * value(mu - 1) + c_plus(inner.j, M - mu) * value(mu);
  }
  return w;
}

Eigen::VectorXcd lower_in_block(HalfInt gamma, const RepLabel& inner, HalfInt M, const Eigen::VectorXcd& v) {
  const auto from = block_basis(gamma, inner, M);
  const auto to = block_basis(gamma, inner, M - 1);
  if (static_cast<Eigen::Index>(from.size()) != v.size()) throw Error(ErrorKind::ShapeMismatch, "vector/block size");
  auto value = [&](HalfInt mu) -> Complex {
    for (std::size_t k = 0; k < from.size(); ++k) {
      if (from[k] == mu) return v(static_cast<Eigen::Index>(k));
    }
    return 0.0;
  };
  Eigen::VectorXcd w(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < to.size(); ++k) {
    HalfInt mu = to[k];
    w(static_cast<Eigen::Index>(k)) =
        c_minus(gamma, mu + 1) * value(mu + 1) + c_minus(inner.j, M - mu) * value(mu);
  }
  return w;
}

LowestWeightVector lowest_weight_vector(HalfInt gamma, HalfInt j, HalfInt mu) {
  if (gamma.twice() < 1) throw Error(ErrorKind::Precondition, "gamma must be at least 1/2");
  if (std::abs(mu.twice()) > gamma.twice() || !(mu - gamma).is_integer()) {
    throw Error(ErrorKind::OutOfRange, "mu outside {-gamma, ..., gamma}");
  }
  LowestWeightVector out;
  out.M = j + 1 + mu;
  const int n = steps_between(-gamma, mu) + 1;
  out.coeffs.resize(n);
  Complex prod(1.0);
  for (int k = 0; k < n; ++k) {
    HalfInt nu = -gamma + k;
    if (k > 0) {
      HalfInt sigma = nu - 1;
      prod *= c_plus(j, j + mu - sigma) / c_plus(gamma, sigma);
    }
    int sign_exp = (gamma + nu).twice() / 2;
    out.nu.push_back(nu);
    out.coeffs(k) = (sign_exp % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  Complex jm = (j + mu).complex();
  out.eigenvalue = -jm * (jm + 1.0);
  return out;
}

std::string_view to_string(DecompReason r) {
  switch (r) {
    case DecompReason::DiscreteJGreater: return "DiscreteJGreater";
    case DecompReason::DiscreteJTooSmall: return "DiscreteJTooSmall";
    case DecompReason::ContinuousNonHalfInteger: return "ContinuousNonHalfInteger";
    case DecompReason::ContinuousCriterion: return "ContinuousCriterion";
    case DecompReason::FiniteSu2: return "FiniteSu2";
  }
  return "unknown";
}

Decomposability is_decomposable(HalfInt gamma, const RepLabel& label) {
  validate(label);
  if (gamma.twice() < 1) throw Error(ErrorKind::Precondition, "gamma must be at least 1/2");
  switch (label.cls) {
    case RepClass::Finite: return {true, DecompReason::FiniteSu2, "finite ⊗ finite"};
    case RepClass::DiscretePos:
    case RepClass::DiscreteNeg:
      if (label.spin() > gamma - 1) return {true, DecompReason::DiscreteJGreater, "j > γ−1"};
      return {false, DecompReason::DiscreteJTooSmall, "j ≤ γ−1"};
    case RepClass::Continuous: {
      auto h = as_half_integer(label.j);
      if (!h) return {true, DecompReason::ContinuousNonHalfInteger, "j ∉ ℤ/2"};
      if (*h > gamma - 1 || *h < -gamma) {
        return {true, DecompReason::ContinuousCriterion, "j ∈ ℤ/2 with j > γ−1 or j < −γ"};
      }
      return {false, DecompReason::ContinuousCriterion, "j ∈ ℤ/2 with −γ ≤ j ≤ γ−1"};
    }
  }
  return {};
}

ComponentLabels component_labels(HalfInt gamma, const RepLabel& label) {
  ComponentLabels out;
  for (HalfInt nu = -gamma; nu <= gamma; nu += 1) {
    RepLabel c = label;
    c.j = label.j + nu.value();
    if (label.cls == RepClass::Continuous) c.epsilon = HalfInt::from_twice((label.epsilon + gamma).twice() % 2);
    if (label.cls == RepClass::Finite) {
      HalfInt j = label.spin();
      HalfInt lo = j > gamma ? j - gamma : gamma - j;
      if (j + nu < lo) continue;
    }
    if (!is_valid(c)) continue;
    out.labels.push_back(c);
    out.offsets.push_back(nu);
  }
  out.deficit = gamma.twice() + 1 - static_cast<int>(out.labels.size());
  return out;
}

bool label_present_at(const RepLabel& c, HalfInt M) { return in_weight_set(c, M); }

std::pair<HalfInt, HalfInt> emitted_range(const CouplingSpec& spec) {
  validate(spec);
  const HalfInt g = spec.gamma;
  if (spec.inner.cls == RepClass::Finite) {
    HalfInt top = spec.inner.spin() + g;
    return {-top, top};
  }
  auto w = weight_set(spec.inner, spec.window);
  auto lo_nat = natural_min(spec.inner);
  auto hi_nat = natural_max(spec.inner);
  const int margin = spec.window.interior_margin;
  HalfInt lo = (lo_nat && w.front() == *lo_nat) ? w.front() - g : w.front() + g + margin;
  HalfInt hi = (hi_nat && w.back() == *hi_nat) ? w.back() + g : w.back() - g - margin;
  if (hi < lo) {
    throw Error(ErrorKind::WindowTooSmall, "inner window leaves no M after shrinking by gamma + margin");
  }
  return {lo, hi};
}

const BlockCG* DecompositionResult::block(HalfInt M) const {
  if (blocks.empty() || M < M_min || M > M_max || !(M - M_min).is_integer()) return nullptr;
  return &blocks[static_cast<std::size_t>(steps_between(M_min, M))];
}

std::optional<std::size_t> DecompositionResult::label_index(Complex J, double tol) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (std::abs(labels[k].j - J) <= tol) return k;
  }
  return std::nullopt;
}

namespace {

Complex bilinear(const Eigen::VectorXcd& v) { return (v.transpose() * v)(0, 0); }

double symmetric_quality(const Eigen::VectorXcd& v) {
  double n2 = v.squaredNorm();
  return n2 > 0 ? std::abs(bilinear(v)) / n2 : 0.0;
}

Eigen::VectorXcd null_vector(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

Eigen::Index position(const std::vector<HalfInt>& basis, HalfInt mu) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] == mu) return static_cast<Eigen::Index>(k);
  }
  return -1;
}

// Eigenvalues of the block matched against the predicted labels; throws on
// mismatch or ambiguity.
void confirm_spectrum(const CasimirBlock& block, const std::vector<Complex>& predicted, double tol) {
  auto ev = block_eigenvalues(block);
  if (ev.size() != predicted.size()) throw Error(ErrorKind::Inconsistency, "block size differs from label count");
  std::vector<bool> used(ev.size(), false);
  for (Complex q : predicted) {
    double t = tol * std::max(1.0, std::abs(q));
    int best = -1, candidates = 0;
    for (std::size_t k = 0; k < ev.size(); ++k) {
      if (used[k]) continue;
      double d = std::abs(ev[k] - q);
      if (d <= t) {
        ++candidates;
        if (best < 0 || d < std::abs(ev[static_cast<std::size_t>(best)] - q)) best = static_cast<int>(k);
      }
    }
    if (candidates == 0) {
      throw Error(ErrorKind::Conditioning,
                  "no eigenvalue of Q_" + block.M.str() + " matches " + format_complex(q));
    }
    if (candidates > 1) {
      throw Error(ErrorKind::Conditioning, "ambiguous eigenvalue match at M = " + block.M.str());
    }
    used[static_cast<std::size_t>(best)] = true;
  }
}

struct LabelTrack {
  std::vector<HalfInt> Ms;
  std::vector<Eigen::VectorXcd> vecs;  // in block_basis order at each M
};

// Eigenvector chain of one component label over [lo, hi] by exact propagation
// from the lowest weight vector (D+ inner labels only).
LabelTrack lowest_weight_track(const CouplingSpec& spec, HalfInt nu, const RepLabel& comp, HalfInt lo, HalfInt hi) {
  const HalfInt j = spec.inner.spin();
  auto seed = lowest_weight_vector(spec.gamma, j, nu);
  LabelTrack raw;
  Eigen::VectorXcd v = seed.coeffs;
  for (HalfInt M = seed.M; M <= hi; M += 1) {
    if (M >= lo) {
      raw.Ms.push_back(M);
      raw.vecs.push_back(v);
    }
    if (M < hi) v = raise_in_block(spec.gamma, spec.inner, M, v) / c_plus(comp.j, M);
  }
  // The bilinear square is constant along the ladder; take it where it is best conditioned.
  std::size_t anchor = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < raw.vecs.size(); ++k) {
    double s = symmetric_quality(raw.vecs[k]);
    if (s > best) {
      best = s;
      anchor = k;
    }
  }
  Complex scale = 1.0 / principal_sqrt(bilinear(raw.vecs[anchor]));
  for (auto& x : raw.vecs) x *= scale;
  return raw;
}

// Chain for other classes: SVD null directions of Q_M - q, one normalized anchor,
// then ladder propagation projected back onto each direction.
LabelTrack ladder_track(const CouplingSpec& spec, const RepLabel& comp, HalfInt lo, HalfInt hi) {
  const Complex q = casimir_eigenvalue(comp.j);
  LabelTrack t;
  std::vector<Eigen::VectorXcd> dirs;
  for (HalfInt M = lo; M <= hi; M += 1) {
    auto block = casimir_block(spec, M);
    Eigen::MatrixXcd m = block.matrix.dense();
    m -= q * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    t.Ms.push_back(M);
    dirs.push_back(null_vector(m));
  }
  std::size_t anchor = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    double s = symmetric_quality(dirs[k]);
    if (s > best) {
      best = s;
      anchor = k;
    }
  }
  t.vecs.assign(dirs.size(), Eigen::VectorXcd());
  t.vecs[anchor] = dirs[anchor] / principal_sqrt(bilinear(dirs[anchor]));
  auto project = [](const Eigen::VectorXcd& d, const Eigen::VectorXcd& w) -> Eigen::VectorXcd {
    Complex num = d.dot(w);
    return d * (num / d.squaredNorm());
  };
  for (std::size_t k = anchor + 1; k < dirs.size(); ++k) {
    HalfInt M = t.Ms[k - 1];
    Eigen::VectorXcd w = raise_in_block(spec.gamma, spec.inner, M, t.vecs[k - 1]) / c_plus(comp.j, M);
    t.vecs[k] = project(dirs[k], w);
  }
  for (std::size_t k = anchor; k-- > 0;) {
    HalfInt M = t.Ms[k + 1];
    Eigen::VectorXcd w = lower_in_block(spec.gamma, spec.inner, M, t.vecs[k + 1]) / c_minus(comp.j, M);
    t.vecs[k] = project(dirs[k], w);
  }
  return t;
}

// Sign convention: agree with the stretched closed form for the mu = +gamma entry.
void fix_sign(const CouplingSpec& spec, HalfInt nu, LabelTrack& t) {
  Complex acc(0.0);
  for (std::size_t k = 0; k < t.Ms.size(); ++k) {
    auto basis = block_basis(spec.gamma, spec.inner, t.Ms[k]);
    Eigen::Index p = position(basis, spec.gamma);
    if (p < 0) continue;
    Complex ref = stretched_cg(spec.gamma, nu, spec.inner.j, t.Ms[k].complex());
    acc += std::conj(ref) * t.vecs[k](p);
  }
  if (acc.real() < 0.0) {
    for (auto& v : t.vecs) v = -v;
  }
}

// Range of M at which a component is present, intersected with [lo, hi].
std::optional<std::pair<HalfInt, HalfInt>> presence(const RepLabel& comp, HalfInt lo, HalfInt hi) {
  HalfInt a = lo, b = hi;
  if (auto m = natural_min(comp); m && *m > a) a = *m;
  if (auto m = natural_max(comp); m && *m < b) b = *m;
  if (b < a) return std::nullopt;
  return std::make_pair(a, b);
}

using ComplexL = std::complex<long double>;

ComplexL sqrt_l(ComplexL z) {
  if (z.imag() == 0.0L) z = ComplexL(z.real(), 0.0L);
  return std::sqrt(z);
}

ComplexL c_plus_l(ComplexL j, long double m) {
  return ComplexL(0.0L, 1.0L) * sqrt_l(j - m) * sqrt_l(j + m + 1.0L);
}

ComplexL c_minus_l(ComplexL j, long double m) {
  return ComplexL(0.0L, 1.0L) * sqrt_l(j + m) * sqrt_l(j - m + 1.0L);
}

}  // namespace

DecompositionResult decompose(const CouplingSpec& spec, const DecomposeOptions& opts) {
  validate(spec);
  DecompositionResult res;
  res.spec = spec;
  res.verdict = is_decomposable(spec.gamma, spec.inner);
  if (!res.verdict.decomposable) throw NotDecomposableError(res.verdict.reason, res.verdict.detail);
  auto comps = component_labels(spec.gamma, spec.inner);
  res.labels = comps.labels;
  res.offsets = comps.offsets;
  res.label_deficit = comps.deficit;
  std::tie(res.M_min, res.M_max) = emitted_range(spec);

  for (std::size_t a = 0; a < res.labels.size(); ++a) {
    for (std::size_t b = a + 1; b < res.labels.size(); ++b) {
      Complex qa = casimir_eigenvalue(res.labels[a].j);
      Complex qb = casimir_eigenvalue(res.labels[b].j);
      if (std::abs(qa - qb) < opts.degenerate_tol) {
        throw Error(ErrorKind::Conditioning, "Casimir values of " + res.labels[a].str() + " and " +
                                                 res.labels[b].str() + " are nearly degenerate");
      }
    }
  }

  DecomposePath path = opts.path;
  if (path == DecomposePath::Auto) {
    path = spec.inner.cls == RepClass::DiscretePos ? DecomposePath::LowestWeight : DecomposePath::Ladder;
  }
  if (path == DecomposePath::LowestWeight && spec.inner.cls != RepClass::DiscretePos) {
    throw Error(ErrorKind::Unsupported, "lowest weight seeding needs a D+ inner label");
  }
  res.path_used = path;

  if (path == DecomposePath::Ladder) {
    for (HalfInt M = res.M_min; M <= res.M_max; M += 1) {
      auto block = casimir_block(spec, M);
      std::vector<Complex> predicted;
      for (const auto& c : res.labels) {
        if (label_present_at(c, M)) predicted.push_back(casimir_eigenvalue(c.j));
      }
      confirm_spectrum(block, predicted, opts.match_tol);
    }
  }

  std::vector<LabelTrack> tracks(res.labels.size());
  for (std::size_t k = 0; k < res.labels.size(); ++k) {
    auto span = presence(res.labels[k], res.M_min, res.M_max);
    if (!span) continue;
    tracks[k] = path == DecomposePath::LowestWeight
                    ? lowest_weight_track(spec, res.offsets[k], res.labels[k], span->first, span->second)
                    : ladder_track(spec, res.labels[k], span->first, span->second);
    fix_sign(spec, res.offsets[k], tracks[k]);
  }

  for (HalfInt M = res.M_min; M <= res.M_max; M += 1) {
    BlockCG blk;
    blk.M = M;
    blk.mu = block_basis(spec.gamma, spec.inner, M);
    const Eigen::Index n = static_cast<Eigen::Index>(blk.mu.size());
    std::vector<Eigen::VectorXcd> cols;
    for (std::size_t k = 0; k < res.labels.size(); ++k) {
      const auto& t = tracks[k];
      for (std::size_t s = 0; s < t.Ms.size(); ++s) {
        if (t.Ms[s] == M) {
          blk.label.push_back(k);
          cols.push_back(t.vecs[s]);
        }
      }
    }
    if (static_cast<Eigen::Index>(cols.size()) != n) {
      throw Error(ErrorKind::Inconsistency, "label count differs from block dimension at M = " + M.str());
    }
    blk.A.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) blk.A.col(c) = cols[static_cast<std::size_t>(c)];
    blk.B = blk.A.fullPivLu().inverse();
    res.blocks.push_back(std::move(blk));
  }
  return res;
}

std::vector<Complex> block_eigenvalues(const CasimirBlock& block) { return dense_eigenvalues(block.matrix.dense()); }

std::vector<EigenMultiplicity> jordan_defect(const CouplingSpec& spec, HalfInt M, double cluster_tol) {
  auto block = casimir_block(spec, M);
  auto ev = block_eigenvalues(block);
  Eigen::MatrixXcd dense = block.matrix.dense();
  std::vector<bool> used(ev.size(), false);
  std::vector<EigenMultiplicity> out;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> cluster{ev[i]};
    used[i] = true;
    for (std::size_t k = i + 1; k < ev.size(); ++k) {
      if (!used[k] && std::abs(ev[k] - ev[i]) <= cluster_tol * std::max(1.0, std::abs(ev[i]))) {
        cluster.push_back(ev[k]);
        used[k] = true;
      }
    }
    Complex mean(0.0);
    for (Complex z : cluster) mean += z;
    mean /= static_cast<double>(cluster.size());
    EigenMultiplicity e;
    e.eigenvalue = mean;
    e.algebraic = static_cast<int>(cluster.size());
    e.geometric = kernel_dim(block.matrix, mean);
    e.geometric_dense = dense_kernel_dim(dense, mean);
    out.push_back(e);
  }
  return out;
}

std::vector<Complex> predicted_block_spectrum(HalfInt gamma, const RepLabel& label, HalfInt M) {
  std::vector<Complex> out;
  if (label.cls == RepClass::Finite) {
    for (const auto& c : component_labels(gamma, label).labels) {
      if (label_present_at(c, M)) out.push_back(casimir_eigenvalue(c.j));
    }
    return out;
  }
  for (HalfInt nu = -gamma; nu <= gamma; nu += 1) {
    Complex J = label.j + nu.value();
    bool present = true;
    if (label.cls == RepClass::DiscretePos) present = label.spin() + nu + 1 <= M;
    if (label.cls == RepClass::DiscreteNeg) present = M <= -(label.spin() + nu) - 1;
    if (present) out.push_back(casimir_eigenvalue(J));
  }
  return out;
}

double spectral_residual(const CouplingSpec& spec, HalfInt M) {
  auto ev = block_eigenvalues_extended(spec, M);
  auto predicted = predicted_block_spectrum(spec.gamma, spec.inner, M);
  if (ev.size() != predicted.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(ev.size(), false);
  double worst = 0.0;
  for (Complex q : predicted) {
    std::size_t best = ev.size();
    for (std::size_t k = 0; k < ev.size(); ++k) {
      if (!used[k] && (best == ev.size() || std::abs(ev[k] - q) < std::abs(ev[best] - q))) best = k;
    }
    used[best] = true;
    worst = std::max(worst, std::abs(ev[best] - q));
  }
  return worst;
}

std::vector<Complex> block_eigenvalues_extended(const CouplingSpec& spec, HalfInt M) {
  const auto basis = block_basis(spec.gamma, spec.inner, M);
  if (basis.empty()) throw Error(ErrorKind::EmptyDomain, "V_M is empty at M = " + M.str());
  const ComplexL j(spec.inner.j.real(), spec.inner.j.imag());
  const long double g = spec.gamma.value(), Mv = M.value();
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic> q = decltype(q)::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double mu = basis[static_cast<std::size_t>(i)].value();
    const long double m = Mv - mu;
    q(i, i) = -mu * (2.0L * Mv - mu + 1.0L) - (g - mu) * (g + mu + 1.0L) - j * (j + 1.0L);
    if (i > 0) q(i - 1, i) = c_minus_l(ComplexL(g), mu) * c_plus_l(j, m);
    if (i + 1 < n) q(i + 1, i) = c_plus_l(ComplexL(g), mu) * c_minus_l(j, m);
  }
  Eigen::ComplexEigenSolver<decltype(q)> es(q, false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.emplace_back(static_cast<double>(es.eigenvalues()(i).real()), static_cast<double>(es.eigenvalues()(i).imag()));
  }
  return out;
}

}  // namespace sl2r
