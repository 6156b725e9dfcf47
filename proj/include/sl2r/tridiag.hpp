#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sl2r/spin.hpp"

namespace sl2r {

// A(i, i-1) = a[i-1], A(i, i) = b[i], A(i, i+1) = c[i].
class Tridiagonal {
 public:
  Tridiagonal() = default;
  Tridiagonal(std::vector<Complex> sub, std::vector<Complex> diag, std::vector<Complex> super);
  static Tridiagonal from_dense(const Eigen::MatrixXcd& m);

  Eigen::Index size() const { return static_cast<Eigen::Index>(b_.size()); }
  const std::vector<Complex>& sub() const { return a_; }
  const std::vector<Complex>& diag() const { return b_; }
  const std::vector<Complex>& super() const { return c_; }
  bool all_super_nonzero() const { return super_nonzero_; }
  bool all_sub_nonzero() const { return sub_nonzero_; }

  Tridiagonal transpose() const { return Tridiagonal(c_, b_, a_); }
  Eigen::MatrixXcd dense() const;
  double max_abs() const;

 private:
  std::vector<Complex> a_, b_, c_;
  bool super_nonzero_ = true;
  bool sub_nonzero_ = true;
};

struct KernelOptions {
  double closing_tol = 1e-9;
  double svd_threshold = 1e-10;
  int rescale_every = 32;
};

// dim ker(A - lambda). With a fully nonzero superdiagonal (or subdiagonal, via
// the transpose) this is the forward-substitution probe and returns 0 or 1;
// otherwise dense rank deficiency.
int kernel_dim(const Tridiagonal& a, Complex lambda, const KernelOptions& opts = {});
int dense_kernel_dim(const Eigen::MatrixXcd& a, Complex lambda, double threshold = 1e-10);

// Closing residual of the forward substitution started from x_1 = 1, together
// with its derivative in lambda and the norm of the substituted vector (all
// scaled by the same factor).
struct ClosingResidual {
  Complex r;
  Complex dr;
  double x_norm = 0.0;
};
ClosingResidual closing_residual(const Tridiagonal& a, Complex lambda, int rescale_every = 32);

std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXcd& a);

// Throws Precondition unless one off-diagonal is fully nonzero.
bool all_eigenspaces_one_dim(const Tridiagonal& a, const KernelOptions& opts = {});

}  // namespace sl2r
