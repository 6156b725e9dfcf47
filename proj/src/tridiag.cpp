#include "sl2r/tridiag.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sl2r {

Tridiagonal::Tridiagonal(std::vector<Complex> sub, std::vector<Complex> diag, std::vector<Complex> super)
    : a_(std::move(sub)), b_(std::move(diag)), c_(std::move(super)) {
  std::size_t n = b_.size();
  std::size_t off = n == 0 ? 0 : n - 1;
  if (a_.size() != off || c_.size() != off) {
    throw Error(ErrorKind::ShapeMismatch, "tridiagonal off-diagonals must have length n-1");
  }
  super_nonzero_ = std::all_of(c_.begin(), c_.end(), [](Complex z) { return z != Complex(0.0); });
  sub_nonzero_ = std::all_of(a_.begin(), a_.end(), [](Complex z) { return z != Complex(0.0); });
}

Tridiagonal Tridiagonal::from_dense(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix is not square");
  const Eigen::Index n = m.rows();
  std::vector<Complex> a, b, c;
  for (Eigen::Index i = 0; i < n; ++i) {
    b.push_back(m(i, i));
    if (i + 1 < n) {
      a.push_back(m(i + 1, i));
      c.push_back(m(i, i + 1));
    }
  }
  return Tridiagonal(a, b, c);
}

Eigen::MatrixXcd Tridiagonal::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = b_[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i + 1, i) = a_[static_cast<std::size_t>(i)];
      m(i, i + 1) = c_[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

double Tridiagonal::max_abs() const {
  double m = 0.0;
  for (const auto* v : {&a_, &b_, &c_}) {
    for (Complex z : *v) m = std::max(m, std::abs(z));
  }
  return m;
}

ClosingResidual closing_residual(const Tridiagonal& t, Complex lambda, int rescale_every) {
  const auto& a = t.sub();
  const auto& b = t.diag();
  const auto& c = t.super();
  const std::size_t n = b.size();
  if (n == 0) return {Complex(0.0), Complex(0.0), 0.0};
  // Row i: a[i-1] x[i-1] + (b[i] - lambda) x[i] + c[i] x[i+1] = 0.
  Complex xp(0.0), dxp(0.0), x(1.0), dx(0.0);
  double norm2 = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Complex ai = i > 0 ? a[i - 1] : Complex(0.0);
    Complex xn = -(ai * xp + (b[i] - lambda) * x) / c[i];
    Complex dxn = -(ai * dxp + (b[i] - lambda) * dx - x) / c[i];
    xp = x;
    dxp = dx;
    x = xn;
    dx = dxn;
    norm2 += std::norm(x);
    if (rescale_every > 0 && (i + 1) % static_cast<std::size_t>(rescale_every) == 0) {
      double s = std::max({std::abs(x), std::abs(xp), 1e-300});
      xp /= s;
      x /= s;
      dxp /= s;
      dx /= s;
      norm2 /= s * s;
    }
  }
  Complex an = n > 1 ? a[n - 2] : Complex(0.0);
  Complex r = an * xp + (b[n - 1] - lambda) * x;
  Complex dr = an * dxp + (b[n - 1] - lambda) * dx - x;
  return {r, dr, std::sqrt(norm2)};
}

int dense_kernel_dim(const Eigen::MatrixXcd& m, Complex lambda, double threshold) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 0;
  Eigen::MatrixXcd s = m - lambda * Eigen::MatrixXcd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return static_cast<int>(n);
  double cut = threshold * smax;
  int deficient = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cut) ++deficient;
  }
  return deficient;
}

namespace {

int probe_super(const Tridiagonal& t, Complex lambda, const KernelOptions& opts) {
  auto [r, dr, xnorm] = closing_residual(t, lambda, opts.rescale_every);
  if (r == Complex(0.0)) return 1;
  const double scale = std::max(1.0, t.max_abs());
  // (A - lambda) x = r e_n, so |r| / |x| is a backward error; it stays small at
  // multiple roots, where the Newton step below degenerates.
  if (std::abs(r) <= opts.closing_tol * xnorm * (3.0 * scale + std::abs(lambda))) return 1;
  if (dr == Complex(0.0)) return 0;
  // Newton distance from lambda to the nearest root of the closing polynomial.
  return std::abs(r / dr) <= opts.closing_tol * scale ? 1 : 0;
}

}  // namespace

int kernel_dim(const Tridiagonal& t, Complex lambda, const KernelOptions& opts) {
  if (t.size() == 0) return 0;
  if (t.all_super_nonzero()) return probe_super(t, lambda, opts);
  if (t.all_sub_nonzero()) return probe_super(t.transpose(), lambda, opts);
  return dense_kernel_dim(t.dense(), lambda, opts.svd_threshold);
}

std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Conditioning, "eigenvalue solver did not converge");
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

bool all_eigenspaces_one_dim(const Tridiagonal& t, const KernelOptions& opts) {
  if (!t.all_super_nonzero() && !t.all_sub_nonzero()) {
    throw Error(ErrorKind::Precondition, "no fully nonzero off-diagonal");
  }
  for (Complex lambda : dense_eigenvalues(t.dense())) {
    if (kernel_dim(t, lambda, opts) > 1) return false;
  }
  return true;
}

}  // namespace sl2r
