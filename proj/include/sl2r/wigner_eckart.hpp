#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sl2r/clebsch_gordan.hpp"
#include "sl2r/rep_core.hpp"
#include "sl2r/report.hpp"

namespace sl2r {

struct OperatorSpace {
  RepLabel label;
  WeightWindow window;
};

struct TensorOperator {
  HalfInt gamma = kHalf;
  OperatorSpace source, target;
  std::vector<Eigen::MatrixXcd> components;  // k <-> mu = -gamma + k; target x source

  const Eigen::MatrixXcd& component(HalfInt mu) const;
  Eigen::MatrixXcd& component(HalfInt mu);
};

struct WEOptions {
  double verify_tol = 1e-9;
  double inconsistency_tol = 1e-6;
};

// Distance from truncated edges excluded from operator identities.
int operator_margin(HalfInt gamma);

TensorOperator zero_operator(HalfInt gamma, const OperatorSpace& source, const OperatorSpace& target);
VerificationReport check_tensor_op(const TensorOperator& t, double tol = 1e-9);

// V_{+1} = -i J+, V_{-1} = i J-, V_0 = -sqrt(2) J0.
TensorOperator generator_vector_operator(const RepLabel& label, const WeightWindow& window);

// Coefficients of F_gamma (x) source on an inner window wide enough to cover the target weights.
CGTable table_for(const TensorOperator& t);

// sum_{mu,m} A(gamma,mu; j,m | j2,m2) T_mu |j,m>, as a vector on the target window.
Eigen::VectorXcd psi_vector(const TensorOperator& t, const CGTable& table, Complex j2, HalfInt m2);

struct ReducedElement {
  Complex value;
  double spread = 0.0;     // max deviation of N(j2, m2) across m2
  double off_axis = 0.0;   // max |psi - N e_m2|
  int samples = 0;
};

// Weights m2 usable for extraction.
std::vector<HalfInt> extraction_weights(const TensorOperator& t, const CGTable& table, Complex j2);
// Unchecked estimate: no consistency error is raised.
ReducedElement estimate_reduced_element(const TensorOperator& t, const CGTable& table, Complex j2);
// Throws Inconsistency when N depends on m2 beyond the tolerance.
ReducedElement reduced_matrix_element(const TensorOperator& t, const CGTable& table, Complex j2,
                                      const WEOptions& opts = {});

VerificationReport we_reconstruct(const TensorOperator& t, const CGTable& table, double tol = 1e-9);

TensorOperator synthesize(HalfInt gamma, const OperatorSpace& source, const OperatorSpace& target, Complex N);

}  // namespace sl2r
