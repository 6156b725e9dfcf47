#include <doctest.h>

#include <limits>

#include "oracles.hpp"
#include "sl2r/rep_core.hpp"

using namespace sl2r;

namespace {

std::vector<double> as_doubles(const std::vector<HalfInt>& w) {
  std::vector<double> out;
  for (HalfInt m : w) out.push_back(m.value());
  return out;
}

std::vector<RepLabel> sample_labels() {
  return {RepLabel::finite(HalfInt::from_twice(5)),     RepLabel::discrete_pos(HalfInt(0)),
          RepLabel::discrete_pos(HalfInt::from_twice(3)), RepLabel::discrete_neg(kHalf),
          RepLabel::continuous({-0.5, 0.8}, HalfInt(0)),   RepLabel::continuous({0.3, 0.0}, kHalf),
          RepLabel::continuous({1.2, -2.1}, HalfInt(0))};
}

}  // namespace

TEST_CASE("label validation") {
  CHECK_THROWS_AS(RepLabel::finite(HalfInt(-1)), Error);
  CHECK_THROWS_AS(RepLabel::discrete_pos(HalfInt(-1)), Error);
  CHECK_NOTHROW(RepLabel::discrete_pos(-kHalf));
  CHECK_THROWS_AS(RepLabel::continuous({1.0, 0.0}, HalfInt(0)), Error);
  CHECK_THROWS_AS(RepLabel::continuous({0.5, 0.0}, kHalf), Error);
  CHECK_NOTHROW(RepLabel::continuous({0.5, 0.0}, HalfInt(0)));
  CHECK_THROWS_AS(RepLabel::continuous({0.2, 0.0}, HalfInt(2)), Error);
  CHECK(parse_rep_class("D+") == RepClass::DiscretePos);
  CHECK_THROWS_AS(parse_rep_class("principal"), Error);
}

TEST_CASE("label strings and canonical representatives") {
  CHECK(RepLabel::discrete_pos(kHalf).str() == "D+_1/2");
  CHECK(RepLabel::continuous({0.3, 0.0}, HalfInt(0)).str() == "C^0_0.3");
  auto c = canonical(RepLabel::continuous({-1.3, 0.4}, HalfInt(0)));
  CHECK(std::abs(c.j - Complex(0.3, -0.4)) < 1e-15);
  auto tie = canonical(RepLabel::continuous({-0.5, -0.7}, HalfInt(0)));
  CHECK(std::abs(tie.j - Complex(-0.5, 0.7)) < 1e-15);
  auto kept = canonical(RepLabel::continuous({-0.5, 0.7}, HalfInt(0)));
  CHECK(std::abs(kept.j - Complex(-0.5, 0.7)) < 1e-15);
}

TEST_CASE("weight windows") {
  auto dp = RepLabel::discrete_pos(kHalf);
  auto w = default_window(dp, 10, 2);
  CHECK(w.m_min == HalfInt::from_twice(3));
  CHECK(weight_set(dp, w).size() == 10);
  auto dm = RepLabel::discrete_neg(HalfInt(1));
  CHECK(default_window(dm, 5, 1).m_max == HalfInt(-2));
  auto f = RepLabel::finite(HalfInt(2));
  CHECK(weight_set(f, {HalfInt(100), HalfInt(200), 0}).size() == 5);
  auto c = RepLabel::continuous({0.3, 0.0}, kHalf);
  CHECK_THROWS_AS(weight_set(c, {HalfInt(0), HalfInt(4), 0}), Error);
  CHECK_THROWS_AS(weight_set(dp, {HalfInt(-5), HalfInt(0), 0}), Error);
  CHECK_THROWS_AS(weight_set(dp, {HalfInt::from_twice(3), HalfInt::from_twice(7), 2}), Error);
  auto clipped = expand_window(dp, w, HalfInt(3));
  CHECK(clipped.m_min == HalfInt::from_twice(3));
  CHECK(clipped.m_max == w.m_max + 3);
}

TEST_CASE("realized generators match the oracle ladder") {
  for (const auto& label : sample_labels()) {
    CAPTURE(label.str());
    auto rep = realize(label, default_window(label, 24, 2));
    auto g = oracle::irrep(label.j, as_doubles(rep.weights()));
    CHECK((rep.J0 - g.J0).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rep.Jp - g.Jp).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rep.Jm - g.Jm).cwiseAbs().maxCoeff() < 1e-14);
    // Casimir as the symmetric form on the interior.
    Eigen::MatrixXcd q = oracle::casimir(g);
    double worst = 0.0;
    for (auto c : rep.interior(1)) worst = std::max(worst, (q.col(c) - rep.Q.col(c)).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("structure relations hold on interiors") {
  for (const auto& label : sample_labels()) {
    CAPTURE(label.str());
    auto rep = realize(label, default_window(label, 40, 2));
    auto s = check_structure(rep);
    CHECK_MESSAGE(s.passed(), s.first_failure()->name);
    auto r = real_form_check(rep);
    CHECK_MESSAGE(r.passed(), r.first_failure()->name);
  }
}

TEST_CASE("structure residuals on wide windows stay at rounding level") {
  // Entries of J+J- reach |m|^2, so the absolute rounding floor grows with the window.
  for (const auto& label : sample_labels()) {
    CAPTURE(label.str());
    auto rep = realize(label, default_window(label, 200, 2));
    double reach = std::max(std::abs(rep.window().m_min.value()), std::abs(rep.window().m_max.value())) + 2.0;
    double floor = 8.0 * std::numeric_limits<double>::epsilon() * reach * reach;
    CHECK(check_structure(rep).max_residual() <= floor);
    CHECK(real_form_check(rep).max_residual() <= floor);
  }
}

TEST_CASE("truncation edges are excluded") {
  auto label = RepLabel::continuous({0.1, 0.0}, HalfInt(0));
  auto rep = realize(label, {HalfInt(-5), HalfInt(5), 2});
  CHECK(rep.interior(1).size() == 7);
  CHECK(rep.truncated_below());
  CHECK(rep.truncated_above());
  Eigen::MatrixXcd comm = rep.Jp * rep.Jm - rep.Jm * rep.Jp + 2.0 * rep.J0;
  CHECK(comm.col(0).cwiseAbs().maxCoeff() > 1.0);
  auto f = realize(RepLabel::finite(HalfInt(2)), {});
  CHECK(f.interior().size() == 5);
}

TEST_CASE("casimir constant") {
  for (const auto& label : sample_labels()) {
    auto rep = realize(label, default_window(label, 30, 2));
    for (auto c : rep.interior(2)) {
      CHECK(std::abs(rep.Q(c, c) - casimir_eigenvalue(label.j)) < 1e-10);
    }
  }
}

TEST_CASE("hermiticity of the unitary labels") {
  auto d = RepLabel::discrete_pos(HalfInt(1));
  CHECK(is_unitary(d));
  CHECK(hermiticity_residual(realize(d, default_window(d, 20, 1))) < 1e-13);
  auto principal = RepLabel::continuous({-0.5, 1.3}, HalfInt(0));
  CHECK(is_unitary(principal));
  CHECK(hermiticity_residual(realize(principal, default_window(principal, 20, 1))) < 1e-13);
  auto off = RepLabel::continuous({0.7, 0.4}, HalfInt(0));
  CHECK_FALSE(is_unitary(off));
  CHECK(hermiticity_residual(realize(off, default_window(off, 20, 1))) > 1e-3);
  CHECK_FALSE(is_unitary(RepLabel::finite(HalfInt(1))));
}

TEST_CASE("duality") {
  auto d = dual(RepLabel::discrete_pos(kHalf));
  CHECK(d.cls == RepClass::DiscreteNeg);
  CHECK(dual(RepLabel::finite(HalfInt(1))).cls == RepClass::Finite);
  CHECK_THROWS_AS(dual(RepLabel::continuous({0.2, 0.0}, HalfInt(0))), Error);
  auto s = dual_state(Complex(1.5, 0.0), kHalf);
  CHECK(std::abs(s.phase - Complex(0.0, 1.0)) < 1e-15);
  CHECK(s.m == -kHalf);
  CHECK(std::abs(dual_state(Complex(2.0, 0.0), HalfInt(1)).phase + 1.0) < 1e-15);
  CHECK(std::abs(dual_state(Complex(1.5, 0.0), -kHalf).phase - Complex(0.0, -1.0)) < 1e-15);

  // J+ on D+ maps to -J- on D- under the dual map (up to the phases).
  auto dp = RepLabel::discrete_pos(HalfInt(1));
  auto dm = dual(dp);
  for (HalfInt m = HalfInt(2); m <= HalfInt(6); m += 1) {
    CHECK(std::abs(c_plus(dp.j, m) - c_minus(dm.j, -m)) < 1e-14);
  }
}
