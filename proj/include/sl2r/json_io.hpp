#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sl2r/clebsch_gordan.hpp"
#include "sl2r/coupling.hpp"
#include "sl2r/rep_core.hpp"
#include "sl2r/report.hpp"
#include "sl2r/wigner_eckart.hpp"

namespace sl2r {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// {class, two_j} for real half-integer spins, otherwise {class, j: [re, im]}; epsilon for continuous.
Json label_to_json(const RepLabel& label);
RepLabel label_from_json(const Json& j);

Json window_to_json(const WeightWindow& w);
WeightWindow window_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json decomposition_to_json(const DecompositionResult& d);
Json table_to_json(const CGTable& t);

// Rows of J_re, J_im, M, mu, m, coeff_re, coeff_im, one per nonzero selection-rule slot of A.
std::string table_to_csv(const CGTable& t);

Json tensor_to_json(const TensorOperator& t);
TensorOperator tensor_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);

}  // namespace sl2r
