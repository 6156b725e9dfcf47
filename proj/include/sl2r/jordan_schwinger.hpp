#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "sl2r/rep_core.hpp"
#include "sl2r/report.hpp"
#include "sl2r/wigner_eckart.hpp"

namespace sl2r {

// Reduced elements <j+1/2||T||j> = f(j) and <j-1/2||T~||j> = f_tilde(j).
// Unset means f = f_tilde = sqrt(2j+1), applied exactly.
struct JSNormalization {
  std::function<Complex(Complex)> f;
  std::function<Complex(Complex)> f_tilde;
};

// f(j-1/2) f_tilde(j) - sqrt(2j) sqrt(2j+1).
Complex normalization_constraint(const std::optional<JSNormalization>& norm, Complex j);

// Label j + delta in the same family (continuous parity shifts by delta mod 1);
// nullopt when that label is invalid.
std::optional<RepLabel> shift_label(const RepLabel& base, HalfInt delta);

struct JSPair {
  RepLabel base;
  WeightWindow window;                 // realized base window
  OperatorSpace up;                    // j + 1/2
  std::optional<OperatorSpace> down;   // j - 1/2; absent when T~ vanishes identically (F_0)
  Eigen::MatrixXcd Tm, Tp;             // base -> up
  Eigen::MatrixXcd Ttm, Ttp;           // base -> down (zero rows when down is absent)
  std::optional<JSNormalization> normalization;
};

// Throws Precondition at a domain boundary (e.g. D+_{-1/2}, whose T~ would need D+_{-1}).
JSPair js_pair(const RepLabel& base, const WeightWindow& window, std::optional<JSNormalization> norm = std::nullopt);

TensorOperator js_tensor_T(const JSPair& pair);
TensorOperator js_tensor_Ttilde(const JSPair& pair);

VerificationReport reconstruct_generators(const JSPair& pair, double tol = 1e-12);
VerificationReport heisenberg_check(const JSPair& pair, double tol = 1e-12);

struct OscillatorRealization {
  enum class Kind { Finite, DiscretePos, DiscreteNeg } kind;
  VerificationReport report;
};

struct Obstruction {
  std::string component;  // "T+" or "T-"
  HalfInt m_not_real;
  HalfInt m_not_imaginary;
  Complex value_not_real;
  Complex value_not_imaginary;
  bool within_window = true;
};

using OscillatorResult = std::variant<OscillatorRealization, Obstruction>;

OscillatorResult oscillator_form(const JSPair& pair, double tol = 1e-11);

// V_mu = sum <1/2 mu1; 1/2 mu2 | 1 mu> T_mu1 T~_mu2 on the base window.
TensorOperator vector_op_contract(const JSPair& pair);

}  // namespace sl2r
