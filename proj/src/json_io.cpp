#include "sl2r/json_io.hpp"

#include <cmath>
#include <sstream>

namespace sl2r {

namespace {

// Shortest round-trip form; avoids locale and keeps output byte-stable.
std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json label_to_json(const RepLabel& label) {
  Json out;
  out["class"] = std::string(to_string(label.cls));
  if (auto h = label.spin_if_half_integer()) {
    out["two_j"] = h->twice();
  } else {
    out["j"] = complex_to_json(label.j);
  }
  if (label.cls == RepClass::Continuous) out["epsilon"] = label.epsilon.str();
  return out;
}

RepLabel label_from_json(const Json& j) {
  try {
    RepClass cls = parse_rep_class(j.at("class").get<std::string>());
    Complex spin;
    if (j.contains("two_j")) {
      if (j.contains("j")) throw Error(ErrorKind::Parse, "label has both two_j and j");
      spin = HalfInt::from_twice(j.at("two_j").get<int>()).complex();
    } else {
      spin = complex_from_json(j.at("j"));
    }
    switch (cls) {
      case RepClass::Finite: return RepLabel::finite(HalfInt::from_double(spin.real()));
      case RepClass::DiscretePos: return RepLabel::discrete_pos(HalfInt::from_double(spin.real()));
      case RepClass::DiscreteNeg: return RepLabel::discrete_neg(HalfInt::from_double(spin.real()));
      case RepClass::Continuous: {
        const Json& e = j.at("epsilon");
        HalfInt eps = e.is_string() ? HalfInt::parse(e.get<std::string>()) : HalfInt::from_double(e.get<double>());
        return RepLabel::continuous(spin, eps);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("label: ") + e.what());
  }
  throw Error(ErrorKind::Parse, "label: unknown class");
}

Json window_to_json(const WeightWindow& w) {
  Json out;
  out["m_min"] = w.m_min.str();
  out["m_max"] = w.m_max.str();
  out["interior_margin"] = w.interior_margin;
  return out;
}

WeightWindow window_from_json(const Json& j) {
  auto half = [](const Json& v) {
    return v.is_string() ? HalfInt::parse(v.get<std::string>()) : HalfInt::from_double(v.get<double>());
  };
  try {
    return {half(j.at("m_min")), half(j.at("m_max")), j.value("interior_margin", 0)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("window: ") + e.what());
  }
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::Parse, "ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json decomposition_to_json(const DecompositionResult& d) {
  Json out;
  out["gamma"] = d.spec.gamma.str();
  out["inner_label"] = label_to_json(d.spec.inner);
  out["window"] = window_to_json(d.spec.window);
  out["decomposable"] = d.verdict.decomposable;
  out["reason"] = std::string(to_string(d.verdict.reason));
  out["reason_detail"] = d.verdict.detail;
  Json labels = Json::array();
  for (const auto& l : d.labels) labels.push_back(label_to_json(l));
  out["labels"] = std::move(labels);
  out["label_deficit"] = d.label_deficit;
  Json per_m = Json::array();
  for (const auto& blk : d.blocks) {
    Json b;
    b["M"] = blk.M.str();
    Json mu = Json::array();
    for (HalfInt x : blk.mu) mu.push_back(x.str());
    b["mu"] = std::move(mu);
    Json cols = Json::array();
    for (std::size_t k : blk.label) cols.push_back(complex_to_json(d.labels[k].j));
    b["J"] = std::move(cols);
    b["A"] = matrix_to_json(blk.A);
    b["B"] = matrix_to_json(blk.B);
    per_m.push_back(std::move(b));
  }
  out["per_M"] = std::move(per_m);
  return out;
}

Json table_to_json(const CGTable& t) {
  Json out = decomposition_to_json(t.data());
  out["source"] = t.source() == CGTable::Source::ClosedForm ? "closed-form" : "decomposition";
  return out;
}

std::string table_to_csv(const CGTable& t) {
  std::ostringstream os;
  os << "J_re,J_im,M,mu,m,coeff_re,coeff_im\n";
  const auto& d = t.data();
  for (const auto& blk : d.blocks) {
    for (std::size_t c = 0; c < blk.label.size(); ++c) {
      const Complex J = d.labels[blk.label[c]].j;
      for (std::size_t r = 0; r < blk.mu.size(); ++r) {
        HalfInt mu = blk.mu[r];
        HalfInt m = blk.M - mu;
        Complex a = blk.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        os << num(J.real()) << ',' << num(J.imag()) << ',' << blk.M.str() << ',' << mu.str() << ',' << m.str()
           << ',' << num(a.real()) << ',' << num(a.imag()) << '\n';
      }
    }
  }
  return os.str();
}

Json tensor_to_json(const TensorOperator& t) {
  Json out;
  out["gamma"] = t.gamma.str();
  out["source"] = {{"label", label_to_json(t.source.label)}, {"window", window_to_json(t.source.window)}};
  out["target"] = {{"label", label_to_json(t.target.label)}, {"window", window_to_json(t.target.window)}};
  Json comps = Json::array();
  for (const auto& c : t.components) comps.push_back(matrix_to_json(c));
  out["components"] = std::move(comps);
  return out;
}

TensorOperator tensor_from_json(const Json& j) {
  try {
    TensorOperator t;
    const Json& g = j.at("gamma");
    t.gamma = g.is_string() ? HalfInt::parse(g.get<std::string>()) : HalfInt::from_double(g.get<double>());
    t.source = {label_from_json(j.at("source").at("label")), window_from_json(j.at("source").at("window"))};
    t.target = {label_from_json(j.at("target").at("label")), window_from_json(j.at("target").at("window"))};
    for (const auto& c : j.at("components")) t.components.push_back(matrix_from_json(c));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("tensor operator: ") + e.what());
  }
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["subject"] = r.subject();
  out["passed"] = r.passed();
  Json res = Json::array();
  for (const auto& x : r.residuals()) {
    Json e;
    e["name"] = x.name;
    // NaN is not representable in JSON.
    if (std::isnan(x.value)) {
      e["value"] = "nan";
    } else {
      e["value"] = x.value;
    }
    e["tolerance"] = x.tolerance;
    e["passed"] = x.passed();
    res.push_back(std::move(e));
  }
  out["residuals"] = std::move(res);
  Json meta = Json::object();
  for (const auto& [k, v] : r.metadata()) meta[k] = v;
  out["metadata"] = std::move(meta);
  return out;
}

}  // namespace sl2r
