// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "sl2r/clebsch_gordan.hpp"
#include "sl2r/coupling.hpp"
#include "sl2r/jordan_schwinger.hpp"
#include "sl2r/json_io.hpp"
#include "sl2r/rep_core.hpp"
#include "sl2r/tridiag.hpp"
#include "sl2r/wigner_eckart.hpp"

using namespace sl2r;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Distance of x to the nearest integer.
double frac_dist(double x) { return std::abs(x - std::round(x)); }

// A real continuous spin away from the reducible and non-decomposable points.
RepLabel random_real_continuous(Rng& rng) {
  for (;;) {
    double j = uniform(rng, -0.45, 1.45);
    HalfInt eps = HalfInt::from_twice(pick(rng, 0, 1));
    if (frac_dist(2.0 * j) < 0.1) continue;
    return RepLabel::continuous({j, 0.0}, eps);
  }
}

RepLabel random_complex_continuous(Rng& rng) {
  double re = uniform(rng, -1.0, 1.0);
  double im = uniform(rng, 0.2, 2.0) * (pick(rng, 0, 1) ? 1.0 : -1.0);
  return RepLabel::continuous({re, im}, HalfInt::from_twice(pick(rng, 0, 1)));
}

// Real decomposable label for F_gamma (x) label: finite, discrete or real continuous.
RepLabel random_real_label(Rng& rng, HalfInt gamma) {
  HalfInt lowest = gamma - 1 + kHalf;  // smallest half-integer above gamma - 1
  switch (pick(rng, 0, 3)) {
    case 0: return RepLabel::finite(gamma + HalfInt::from_twice(pick(rng, 0, 8)));
    case 1: return RepLabel::discrete_pos(lowest + HalfInt::from_twice(pick(rng, 0, 8)));
    case 2: return RepLabel::discrete_neg(lowest + HalfInt::from_twice(pick(rng, 0, 8)));
    default: return random_real_continuous(rng);
  }
}

CouplingSpec coupling(HalfInt gamma, const RepLabel& label, int count) {
  return {gamma, label, default_window(label, count, 2)};
}

// 1. Decompose-derived coefficients against the closed forms at gamma 1/2 and 1.
Outcome table_reproduction() {
  Rng rng(101);
  double worst = 0.0;
  int samples = 0;
  auto sample = [&](const RepLabel& label, HalfInt gamma) {
    auto d = decompose(coupling(gamma, label, 24));
    HalfInt M = d.M_min + pick(rng, 0, steps_between(d.M_min, d.M_max));
    const BlockCG* blk = d.block(M);
    for (std::size_t r = 0; r < blk->mu.size(); ++r) {
      for (std::size_t c = 0; c < blk->label.size(); ++c) {
        double nu = d.offsets[blk->label[c]].value();
        Complex ref = oracle::table_B(gamma.twice(), blk->mu[r].value(), label.j, nu, M.value());
        const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
        worst = std::max({worst, std::abs(blk->A(ri, ci) - ref), std::abs(blk->B(ci, ri) - ref)});
      }
    }
    ++samples;
  };
  for (int k = 0; k < 50; ++k) {
    HalfInt gamma = HalfInt::from_twice(1 + k % 2);
    sample(random_real_label(rng, gamma), gamma);
  }
  for (int k = 0; k < 20; ++k) {
    HalfInt gamma = HalfInt::from_twice(1 + k % 2);
    sample(random_complex_continuous(rng), gamma);
  }
  return {worst <= 1e-10, std::to_string(samples) + " samples, max |err| " + sci(worst)};
}

// 2. Commutators and Casimir forms on 200-weight windows.
Outcome structure_constants() {
  std::vector<RepLabel> labels = {RepLabel::finite(HalfInt::from_twice(199)),   RepLabel::discrete_pos(HalfInt(0)),
                                  RepLabel::discrete_pos(HalfInt::from_twice(3)), RepLabel::discrete_neg(kHalf),
                                  RepLabel::continuous({0.3, 0.0}, HalfInt(0)),  RepLabel::continuous({-0.5, 0.8}, kHalf),
                                  RepLabel::continuous({1.2, -2.1}, HalfInt(0))};
  Outcome out;
  double worst = 0.0;
  std::string failing;
  for (const auto& label : labels) {
    auto rep = realize(label, default_window(label, 200, 2));
    auto s = check_structure(rep, 1e-12);
    auto x = real_form_check(rep, 1e-12);
    double r = std::max(s.max_residual(), x.max_residual());
    worst = std::max(worst, r);
    if (!s.passed() || !x.passed()) {
      out.pass = false;
      failing += " " + label.str() + "(" + sci(r) + ")";
    }
  }
  out.detail = "max residual " + sci(worst) + (failing.empty() ? "" : ", over 1e-12:" + failing);
  return out;
}

// 3. Interior block spectra against -(j+nu)(j+nu+1).
Outcome spectral_law() {
  Rng rng(303);
  double worst = 0.0;
  int blocks = 0;
  for (int k = 0; k < 24; ++k) {
    HalfInt gamma = HalfInt::from_twice(1 + k % 3);
    RepLabel label = k % 4 == 3 ? random_complex_continuous(rng) : random_real_label(rng, gamma);
    if (!is_decomposable(gamma, label).decomposable) continue;
    auto spec = coupling(gamma, label, 24);
    auto [lo, hi] = emitted_range(spec);
    for (HalfInt M = lo; M <= hi; M += 1) {
      worst = std::max(worst, spectral_residual(spec, M));
      ++blocks;
    }
  }
  return {worst <= 1e-10, std::to_string(blocks) + " blocks, max residual " + sci(worst)};
}

// 4. Decomposability frontier.
Outcome frontier() {
  Outcome out;
  std::ostringstream os;
  try {
    decompose(coupling(HalfInt(1), RepLabel::discrete_pos(kHalf), 24));
    os << "D+_1/2 decomposes";
  } catch (const Error& e) {
    out.pass = false;
    os << "D+_1/2 refused (" << e.what() << ")";
  }
  auto d0 = RepLabel::discrete_pos(HalfInt(0));
  bool refused = false;
  try {
    decompose(coupling(HalfInt(1), d0, 24));
  } catch (const NotDecomposableError&) {
    refused = true;
  }
  bool defect = false;
  for (const auto& e : jordan_defect(coupling(HalfInt(1), d0, 24), HalfInt(2))) {
    if (e.geometric < e.algebraic && e.geometric_dense < e.algebraic) defect = true;
  }
  out.pass = out.pass && refused && defect;
  os << "; D+_0 " << (refused ? "refused" : "accepted") << ", defect at M=2 " << (defect ? "found" : "missing");

  int mismatches = 0;
  std::string refused_at;
  for (int t = -9; t <= 4; ++t) {
    double j = t / 10.0;
    // j = 0 with parity 0 is reducible; the other parity carries the same spin.
    HalfInt eps = t == 0 ? kHalf : HalfInt(0);
    auto v = is_decomposable(kHalf, RepLabel::continuous({j, 0.0}, eps));
    bool expect_refusal = std::abs(j + 0.5) < 1e-9;
    if (!v.decomposable) refused_at += " " + std::to_string(j).substr(0, std::to_string(j).find('.') + 2);
    if (v.decomposable == expect_refusal) ++mismatches;
  }
  out.pass = out.pass && mismatches == 0;
  os << "; C scan refused at" << (refused_at.empty() ? " none" : refused_at);
  out.detail = os.str();
  return out;
}

// 5. Lowest-weight vectors of F_gamma (x) D+_j.
Outcome lowest_weight() {
  Rng rng(505);
  double worst_down = 0.0, worst_q = 0.0;
  for (int k = 0; k < 30; ++k) {
    HalfInt gamma = HalfInt::from_twice(pick(rng, 1, 6));
    HalfInt j = gamma - 1 + kHalf + HalfInt::from_twice(pick(rng, 0, 6));
    HalfInt mu = -gamma + pick(rng, 0, gamma.twice());
    auto lw = lowest_weight_vector(gamma, j, mu);
    auto label = RepLabel::discrete_pos(j);
    double n = lw.coeffs.norm();
    worst_down = std::max(worst_down, lower_in_block(gamma, label, lw.M, lw.coeffs).norm() / n);
    CouplingSpec spec{gamma, label, {j + 1, j + 40, 2}};
    Eigen::VectorXcd qv = casimir_block(spec, lw.M).matrix.dense() * lw.coeffs;
    Complex rayleigh = lw.coeffs.dot(qv) / lw.coeffs.squaredNorm();
    Complex q = casimir_eigenvalue(j.complex() + mu.value());
    worst_q = std::max({worst_q, std::abs(rayleigh - q), std::abs(lw.eigenvalue - q)});
  }
  return {worst_down <= 1e-11 && worst_q <= 1e-10,
          "max |J- psi|/|psi| " + sci(worst_down) + ", max |q err| " + sci(worst_q)};
}

// 6. Orthogonality, recursion, ratio and swap sign.
Outcome cg_algebra() {
  Rng rng(606);
  double orth = 0.0, rec = 0.0, spread = 0.0;
  int sign_errors = 0, tables = 0;
  for (int k = 0; k < 16; ++k) {
    HalfInt gamma = HalfInt::from_twice(1 + k % 2);
    RepLabel label = k % 4 == 3 ? random_complex_continuous(rng) : random_real_label(rng, gamma);
    auto t = CGTable::from_decomposition(decompose(coupling(gamma, label, 30)));
    ++tables;
    orth = std::max(orth, verify_orthogonality(t).max_residual());
    rec = std::max(rec, verify_recursion(t).max_residual());
    for (const auto& f : fit_ratio(t)) spread = std::max(spread, f.spread);
    HalfInt M = t.M_min() + steps_between(t.M_min(), t.M_max()) / 2;
    for (const auto& comp : t.labels()) {
      // J - j - gamma = nu - gamma is an integer for every component.
      HalfInt nu = HalfInt::from_double((comp.j - label.j).real());
      int expected = ((nu - gamma).twice() / 2) % 2 == 0 ? 1 : -1;
      if (swap_sign(comp.j, label.j, gamma) != expected) ++sign_errors;
      for (HalfInt mu = -gamma; mu <= gamma; mu += 1) {
        Complex b = t.B_or_zero(comp.j, M, mu, M - mu);
        if (swap(t, comp.j, M, label.j, M - mu, gamma, mu) != static_cast<double>(expected) * b) ++sign_errors;
      }
    }
  }
  return {orth <= 1e-10 && rec <= 1e-9 && spread <= 1e-8 && sign_errors == 0,
          std::to_string(tables) + " tables, orthogonality " + sci(orth) + ", recursion " + sci(rec) +
              ", ratio spread " + sci(spread) + ", sign errors " + std::to_string(sign_errors)};
}

// 7. Wigner-Eckart round trip and the generator vector operator.
Outcome wigner_eckart() {
  Rng rng(707);
  double n_err = 0.0, rec = 0.0, v_comm = 0.0, v_other = 0.0;
  for (int k = 0; k < 20; ++k) {
    HalfInt gamma = HalfInt::from_twice(1 + k % 4);
    RepLabel label = k % 5 == 4 ? random_complex_continuous(rng) : random_real_label(rng, gamma);
    OperatorSpace src{label, default_window(label, 12, 2)};
    auto comps = component_labels(gamma, label).labels;
    const RepLabel& target = comps[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(comps.size()) - 1))];
    WeightWindow w = src.window;
    w.m_min = w.m_min - gamma;
    w.m_max = w.m_max + gamma;
    Complex N(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    auto T = synthesize(gamma, src, {target, clip_window(target, w)}, N);
    auto table = table_for(T);
    n_err = std::max(n_err, std::abs(reduced_matrix_element(T, table, target.j).value - N));
    rec = std::max(rec, we_reconstruct(T, table, 1e-10).max_residual());
  }
  for (const auto& label : {RepLabel::finite(HalfInt(2)), RepLabel::discrete_pos(kHalf),
                            RepLabel::discrete_neg(HalfInt(1)), RepLabel::continuous({0.2, 0.7}, HalfInt(0))}) {
    auto V = generator_vector_operator(label, default_window(label, 30, 2));
    v_comm = std::max(v_comm, check_tensor_op(V, 1e-12).max_residual());
    auto table = table_for(V);
    for (const auto& other : table.labels()) {
      if (std::abs(other.j - label.j) < 1e-9) continue;
      v_other = std::max(v_other, std::abs(reduced_matrix_element(V, table, other.j).value));
    }
  }
  return {n_err <= 1e-10 && rec <= 1e-10 && v_comm <= 1e-12 && v_other <= 1e-12,
          "|N err| " + sci(n_err) + ", reconstruct " + sci(rec) + ", V commutators " + sci(v_comm) +
              ", V off-label N " + sci(v_other)};
}

// 8. Jordan-Schwinger construction.
Outcome jordan_schwinger() {
  std::vector<RepLabel> labels = {RepLabel::finite(kHalf),
                                  RepLabel::finite(HalfInt(3)),
                                  RepLabel::discrete_pos(HalfInt(0)),
                                  RepLabel::discrete_pos(HalfInt::from_twice(5)),
                                  RepLabel::discrete_neg(kHalf),
                                  RepLabel::continuous({0.3, 0.0}, HalfInt(0)),
                                  RepLabel::continuous({-0.5, 1.7}, kHalf),
                                  RepLabel::continuous({0.8, -0.6}, HalfInt(0))};
  double heis = 0.0, gens = 0.0, osc = 0.0;
  int wrong_kind = 0;
  for (const auto& label : labels) {
    auto pair = js_pair(label, default_window(label, 24, 2));
    heis = std::max(heis, heisenberg_check(pair, 1e-12).max_residual());
    gens = std::max(gens, reconstruct_generators(pair, 1e-12).max_residual());
    auto res = oscillator_form(pair, 1e-11);
    if (label.cls == RepClass::Continuous) {
      const auto* ob = std::get_if<Obstruction>(&res);
      if (!ob || !ob->within_window || std::abs(ob->value_not_real.imag()) < 1e-9 ||
          std::abs(ob->value_not_imaginary.real()) < 1e-9) {
        ++wrong_kind;
      }
    } else if (const auto* r = std::get_if<OscillatorRealization>(&res)) {
      osc = std::max(osc, r->report.max_residual());
      if (!r->report.passed()) ++wrong_kind;
    } else {
      ++wrong_kind;
    }
  }
  return {heis <= 1e-12 && gens <= 1e-12 && osc <= 1e-11 && wrong_kind == 0,
          "commutators " + sci(heis) + ", generators " + sci(gens) + ", oscillator " + sci(osc) +
              ", unexpected outcomes " + std::to_string(wrong_kind)};
}

// 9. Kernel dimension of random tridiagonal matrices.
Outcome tridiagonal() {
  Rng rng(909);
  std::normal_distribution<double> g;
  int disagreements = 0, eigenvalues = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = pick(rng, 1, 16);
    std::vector<Complex> a, b, c;
    for (int i = 0; i < n; ++i) b.emplace_back(g(rng), g(rng));
    for (int i = 0; i + 1 < n; ++i) {
      a.emplace_back(g(rng), g(rng));
      c.emplace_back(g(rng), g(rng));
    }
    Tridiagonal t(a, b, c);
    auto dense = t.dense();
    for (Complex lam : dense_eigenvalues(dense)) {
      int k = kernel_dim(t, lam);
      ++eigenvalues;
      if (k > 1 || k != dense_kernel_dim(dense, lam)) ++disagreements;
    }
  }
  return {disagreements == 0,
          std::to_string(eigenvalues) + " eigenvalues, " + std::to_string(disagreements) + " disagreements"};
}

// 10. Byte-identical reports for repeated runs.
Outcome determinism() {
  std::vector<std::vector<std::string>> commands = {
      {"verify", "--class", "continuous", "--j-re", "-0.5", "--j-im", "0.6", "--gamma", "1", "--seed", "42"},
      {"cg-table", "--class", "dplus", "--two-j", "3", "--gamma", "3/2", "--check"},
      {"decompose", "--class", "finite", "--two-j", "6", "--gamma", "2"},
      {"js", "oscillator", "--class", "continuous", "--j-re", "0.25", "--seed", "7"},
  };
  int differing = 0;
  for (auto args : commands) {
    args.insert(args.begin(), "sl2r");
    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out, err;
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      if (rep == 0) {
        first = out.str();
      } else if (out.str() != first || first.empty()) {
        ++differing;
      }
    }
  }
  return {differing == 0, std::to_string(commands.size()) + " commands x 3 runs, " + std::to_string(differing) +
                              " differing outputs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"table reproduction", table_reproduction}, {"structure constants", structure_constants},
      {"spectral law", spectral_law},             {"diagonalizability frontier", frontier},
      {"lowest weight", lowest_weight},           {"CG algebra", cg_algebra},
      {"Wigner-Eckart", wigner_eckart},           {"Jordan-Schwinger", jordan_schwinger},
      {"tridiagonal oracle", tridiagonal},        {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
