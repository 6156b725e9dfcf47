#include <doctest.h>

#include "sl2r/jordan_schwinger.hpp"

using namespace sl2r;

namespace {

std::vector<RepLabel> js_labels() {
  return {RepLabel::finite(HalfInt(2)),          RepLabel::finite(kHalf),
          RepLabel::discrete_pos(HalfInt(0)),    RepLabel::discrete_pos(HalfInt::from_twice(3)),
          RepLabel::discrete_neg(HalfInt(1)),    RepLabel::continuous({0.3, 0.0}, HalfInt(0)),
          RepLabel::continuous({-0.5, 0.9}, kHalf), RepLabel::continuous({0.8, -1.1}, HalfInt(0))};
}

}  // namespace

TEST_CASE("shifted labels") {
  auto c = shift_label(RepLabel::continuous({0.3, 0.0}, HalfInt(0)), kHalf);
  REQUIRE(c);
  CHECK(c->epsilon == kHalf);
  CHECK(std::abs(c->j - Complex(0.8, 0.0)) < 1e-15);
  CHECK_FALSE(shift_label(RepLabel::discrete_pos(-kHalf), -kHalf));
  CHECK_FALSE(shift_label(RepLabel::finite(HalfInt(0)), -kHalf));
}

TEST_CASE("generators are reconstructed and the oscillator algebra holds") {
  for (const auto& label : js_labels()) {
    CAPTURE(label.str());
    auto pair = js_pair(label, default_window(label, 20, 2));
    auto g = reconstruct_generators(pair);
    CHECK_MESSAGE(g.passed(), g.first_failure()->name);
    auto h = heisenberg_check(pair);
    CHECK_MESSAGE(h.passed(), h.first_failure()->name);
  }
}

TEST_CASE("T and T~ are spinors with the default reduced elements") {
  for (const auto& label : js_labels()) {
    CAPTURE(label.str());
    auto pair = js_pair(label, default_window(label, 20, 2));
    auto T = js_tensor_T(pair);
    auto r = check_tensor_op(T, 1e-11);
    CHECK_MESSAGE(r.passed(), r.first_failure()->name);
    auto N = reduced_matrix_element(T, table_for(T), pair.up.label.j);
    CHECK(std::abs(N.value - principal_sqrt(2.0 * label.j + 1.0)) < 1e-10);
    if (!pair.down) continue;
    auto Tt = js_tensor_Ttilde(pair);
    auto rt = check_tensor_op(Tt, 1e-11);
    CHECK_MESSAGE(rt.passed(), rt.first_failure()->name);
    auto Nt = reduced_matrix_element(Tt, table_for(Tt), pair.down->label.j);
    CHECK(std::abs(Nt.value - principal_sqrt(2.0 * label.j + 1.0)) < 1e-10);
  }
}

TEST_CASE("the contracted product is the generator vector operator") {
  for (const auto& label : js_labels()) {
    CAPTURE(label.str());
    auto w = default_window(label, 16, 2);
    auto pair = js_pair(label, w);
    if (!pair.down) continue;
    auto V = vector_op_contract(pair);
    auto G = generator_vector_operator(label, pair.window);
    for (std::size_t k = 0; k < 3; ++k) {
      for (auto c : realize(label, pair.window).interior(2)) {
        CHECK((V.components[k].col(c) - G.components[k].col(c)).cwiseAbs().maxCoeff() < 1e-11);
      }
    }
  }
}

TEST_CASE("boundary labels") {
  auto f0 = js_pair(RepLabel::finite(HalfInt(0)), {});
  CHECK_FALSE(f0.down);
  CHECK(f0.Tp.rows() == 2);
  CHECK_THROWS_AS(js_tensor_Ttilde(f0), Error);
  auto g = reconstruct_generators(f0);
  CHECK(g.passed());
  auto bad = RepLabel::discrete_pos(-kHalf);
  CHECK_THROWS_AS(js_pair(bad, default_window(bad, 10, 2)), Error);
}

TEST_CASE("custom normalization respects the constraint") {
  JSNormalization n;
  n.f = [](Complex j) { return 2.0 * principal_sqrt(2.0 * j + 1.0); };
  n.f_tilde = [](Complex j) { return 0.5 * principal_sqrt(2.0 * j + 1.0); };
  auto label = RepLabel::continuous({0.2, 0.4}, HalfInt(0));
  CHECK(std::abs(normalization_constraint(n, label.j)) < 1e-14);
  auto pair = js_pair(label, default_window(label, 20, 2), n);
  CHECK(reconstruct_generators(pair).passed());
  auto T = js_tensor_T(pair);
  auto N = reduced_matrix_element(T, table_for(T), pair.up.label.j);
  CHECK(std::abs(N.value - 2.0 * principal_sqrt(2.0 * label.j + 1.0)) < 1e-10);

  JSNormalization broken;
  broken.f = [](Complex) { return Complex(1.0); };
  broken.f_tilde = [](Complex) { return Complex(1.0); };
  CHECK(std::abs(normalization_constraint(broken, label.j)) > 0.1);
  auto p2 = js_pair(label, default_window(label, 20, 2), broken);
  CHECK_FALSE(reconstruct_generators(p2).passed());
}

TEST_CASE("oscillator forms exist exactly for finite and discrete labels") {
  struct Case {
    RepLabel label;
    OscillatorRealization::Kind kind;
  };
  for (const auto& c : {Case{RepLabel::finite(HalfInt::from_twice(3)), OscillatorRealization::Kind::Finite},
                        Case{RepLabel::discrete_pos(HalfInt(0)), OscillatorRealization::Kind::DiscretePos},
                        Case{RepLabel::discrete_neg(HalfInt(1)), OscillatorRealization::Kind::DiscreteNeg}}) {
    CAPTURE(c.label.str());
    auto res = oscillator_form(js_pair(c.label, default_window(c.label, 20, 2)));
    REQUIRE(std::holds_alternative<OscillatorRealization>(res));
    const auto& osc = std::get<OscillatorRealization>(res);
    CHECK(osc.kind == c.kind);
    CHECK_MESSAGE(osc.report.passed(), osc.report.first_failure()->name);
  }
  for (const auto& label : {RepLabel::continuous({0.3, 0.0}, HalfInt(0)), RepLabel::continuous({-0.5, 2.0}, kHalf)}) {
    CAPTURE(label.str());
    auto res = oscillator_form(js_pair(label, default_window(label, 20, 2)));
    REQUIRE(std::holds_alternative<Obstruction>(res));
    const auto& ob = std::get<Obstruction>(res);
    CHECK(std::abs(ob.value_not_real.imag()) > 1e-6);
    CHECK(std::abs(ob.value_not_imaginary.real()) > 1e-6);
  }
}
