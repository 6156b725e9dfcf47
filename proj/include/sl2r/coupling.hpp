#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl2r/rep_core.hpp"
#include "sl2r/tridiag.hpp"

namespace sl2r {

struct CouplingSpec {
  HalfInt gamma = kHalf;
  RepLabel inner;
  WeightWindow window;  // on the inner factor; ignored for finite labels
};

void validate(const CouplingSpec& spec);

// Generators of F_gamma (x) windowed inner rep. Basis index = i_mu * n_inner + i_m.
struct TotalGenerators {
  std::vector<HalfInt> mu_weights;
  TruncatedRep inner;
  Eigen::MatrixXcd J0, Jp, Jm, Q, Q_alt;
  Eigen::Index index(Eigen::Index i_mu, Eigen::Index i_m) const { return i_mu * inner.dim() + i_m; }
  // Product basis vectors whose inner weight is interior (margin >= min_margin).
  std::vector<Eigen::Index> interior(int min_margin = 1) const;
};

TotalGenerators total_generators(const CouplingSpec& spec);

// mu values spanning V_M: -gamma <= mu <= gamma with M - mu a weight of the inner label.
std::vector<HalfInt> block_basis(HalfInt gamma, const RepLabel& inner, HalfInt M);

struct CasimirBlock {
  HalfInt M;
  std::vector<HalfInt> basis;
  Tridiagonal matrix;
};

CasimirBlock casimir_block(const CouplingSpec& spec, HalfInt M);

// Ladder action of the total generators between V_M blocks.
Eigen::VectorXcd raise_in_block(HalfInt gamma, const RepLabel& inner, HalfInt M, const Eigen::VectorXcd& v);
Eigen::VectorXcd lower_in_block(HalfInt gamma, const RepLabel& inner, HalfInt M, const Eigen::VectorXcd& v);

struct LowestWeightVector {
  HalfInt M;                    // j + 1 + mu
  std::vector<HalfInt> nu;      // first-factor weights, -gamma..mu
  Eigen::VectorXcd coeffs;      // term k: |gamma, nu[k]> (x) |j, M - nu[k]>
  Complex eigenvalue;           // -(j + mu)(j + mu + 1)
};

LowestWeightVector lowest_weight_vector(HalfInt gamma, HalfInt j, HalfInt mu);

enum class DecompReason {
  DiscreteJGreater,
  DiscreteJTooSmall,
  ContinuousNonHalfInteger,
  ContinuousCriterion,
  FiniteSu2,
};

std::string_view to_string(DecompReason r);

struct Decomposability {
  bool decomposable = false;
  DecompReason reason = DecompReason::FiniteSu2;
  std::string detail;
};

Decomposability is_decomposable(HalfInt gamma, const RepLabel& label);

class NotDecomposableError : public Error {
 public:
  NotDecomposableError(DecompReason reason, const std::string& detail)
      : Error(ErrorKind::NotDecomposable, detail), reason_(reason), detail_(detail) {}
  DecompReason reason() const { return reason_; }
  const std::string& detail() const { return detail_; }

 private:
  DecompReason reason_;
  std::string detail_;
};

// Component labels j + nu of F_gamma (x) label, valid ones only, ascending nu.
struct ComponentLabels {
  std::vector<RepLabel> labels;
  std::vector<HalfInt> offsets;
  int deficit = 0;  // 2 gamma + 1 minus the number of valid labels
};

ComponentLabels component_labels(HalfInt gamma, const RepLabel& label);
bool label_present_at(const RepLabel& component, HalfInt M);

// M-range over which coefficients are emitted: the inner window shrunk by
// gamma + margin on truncated sides. Throws WindowTooSmall if empty.
std::pair<HalfInt, HalfInt> emitted_range(const CouplingSpec& spec);

struct BlockCG {
  HalfInt M;
  std::vector<HalfInt> mu;        // rows of A, columns of B
  std::vector<std::size_t> label; // indices into DecompositionResult::labels; columns of A
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
};

enum class DecomposePath { Auto, LowestWeight, Ladder };

struct DecomposeOptions {
  DecomposePath path = DecomposePath::Auto;
  double match_tol = 1e-6;
  double degenerate_tol = 1e-8;
};

struct DecompositionResult {
  CouplingSpec spec;
  Decomposability verdict;
  std::vector<RepLabel> labels;
  std::vector<HalfInt> offsets;
  int label_deficit = 0;
  HalfInt M_min, M_max;
  std::vector<BlockCG> blocks;  // ascending M
  DecomposePath path_used = DecomposePath::Auto;

  const BlockCG* block(HalfInt M) const;
  std::optional<std::size_t> label_index(Complex J, double tol = 1e-9) const;
};

DecompositionResult decompose(const CouplingSpec& spec, const DecomposeOptions& opts = {});

struct EigenMultiplicity {
  Complex eigenvalue;
  int algebraic = 0;
  int geometric = 0;        // tridiagonal kernel probe
  int geometric_dense = 0;  // singular-value rank deficiency
};

std::vector<Complex> block_eigenvalues(const CasimirBlock& block);
// Same spectrum with the block assembled and diagonalized in extended precision.
std::vector<Complex> block_eigenvalues_extended(const CouplingSpec& spec, HalfInt M);
std::vector<EigenMultiplicity> jordan_defect(const CouplingSpec& spec, HalfInt M, double cluster_tol = 1e-6);
// Eigenvalues q_(nu) = -(j+nu)(j+nu+1) for the component labels present at M (with repetition).
std::vector<Complex> predicted_block_spectrum(HalfInt gamma, const RepLabel& label, HalfInt M);
// Max distance between computed eigenvalues of Q_M and the predicted multiset (greedy pairing).
double spectral_residual(const CouplingSpec& spec, HalfInt M);

}  // namespace sl2r
