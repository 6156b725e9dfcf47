#include <doctest.h>

#include <cmath>
#include <limits>

#include "sl2r/json_io.hpp"

using namespace sl2r;

TEST_CASE("labels round trip") {
  for (const auto& label : {RepLabel::finite(HalfInt::from_twice(3)), RepLabel::discrete_pos(HalfInt(0)),
                            RepLabel::discrete_neg(kHalf), RepLabel::continuous({0.3, 0.0}, kHalf),
                            RepLabel::continuous({-0.5, 0.123456789012345}, HalfInt(0))}) {
    CAPTURE(label.str());
    Json j = label_to_json(label);
    auto back = label_from_json(Json::parse(j.dump()));
    CHECK(back.cls == label.cls);
    CHECK(back.j == label.j);
    CHECK(back.epsilon == label.epsilon);
  }
  CHECK(label_to_json(RepLabel::discrete_pos(kHalf)).dump() == R"({"class":"dplus","two_j":1})");
  CHECK_THROWS_AS(label_from_json(Json::parse(R"({"class":"dplus"})")), Error);
  CHECK_THROWS_AS(label_from_json(Json::parse(R"({"class":"dplus","two_j":1,"j":[0.5,0]})")), Error);
}

TEST_CASE("windows and matrices round trip") {
  WeightWindow w{HalfInt::from_twice(-7), HalfInt::from_twice(9), 2};
  auto back = window_from_json(window_to_json(w));
  CHECK(back.m_min == w.m_min);
  CHECK(back.m_max == w.m_max);
  CHECK(back.interior_margin == 2);

  Eigen::MatrixXcd m(2, 3);
  m << Complex(1.0 / 3.0, -2.0), 0.0, Complex(0.0, 1e-300), 5.0, Complex(-0.1, 0.2), 7.0;
  auto mb = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  CHECK(mb == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1],[1,2]]")), Error);
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1,2,3]")), Error);
}

TEST_CASE("tensor operators round trip exactly") {
  auto label = RepLabel::continuous({0.2, 0.7}, HalfInt(0));
  auto V = generator_vector_operator(label, default_window(label, 8, 2));
  auto back = tensor_from_json(Json::parse(tensor_to_json(V).dump()));
  CHECK(back.gamma == V.gamma);
  REQUIRE(back.components.size() == V.components.size());
  for (std::size_t k = 0; k < V.components.size(); ++k) CHECK(back.components[k] == V.components[k]);
  CHECK(back.source.window.m_min == V.source.window.m_min);
  CHECK_THROWS_AS(tensor_from_json(Json::parse("{}")), Error);
}

TEST_CASE("tables serialize to json and csv") {
  auto label = RepLabel::discrete_pos(HalfInt(1));
  auto t = CGTable::from_decomposition(decompose({kHalf, label, default_window(label, 6, 2)}));
  Json j = table_to_json(t);
  CHECK(j["source"] == "decomposition");
  CHECK(j["decomposable"] == true);
  CHECK(j["labels"].size() == 2);
  CHECK(j["per_M"].size() == t.data().blocks.size());
  auto csv = table_to_csv(t);
  CHECK(csv.rfind("J_re,J_im,M,mu,m,coeff_re,coeff_im\n", 0) == 0);
  CHECK(table_to_json(t).dump() == j.dump());
}

TEST_CASE("reports serialize NaN as a string") {
  VerificationReport r("demo");
  r.add("ok", 1e-15, 1e-12);
  r.add("broken", std::numeric_limits<double>::quiet_NaN(), 1e-12);
  r.note("key", "value");
  Json j = report_to_json(r);
  CHECK(j["passed"] == false);
  CHECK(j["residuals"][1]["value"] == "nan");
  CHECK(j["metadata"]["key"] == "value");
}
