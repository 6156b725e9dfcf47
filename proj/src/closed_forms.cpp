#include "sl2r/closed_forms.hpp"

#include <algorithm>
#include <cmath>

namespace sl2r {

namespace {

Complex sq(Complex z) { return principal_sqrt(z); }

HalfInt offset_of(Complex J, Complex j, HalfInt gamma) {
  auto nu = as_half_integer(J - j);
  if (!nu || nu->twice() < -gamma.twice() || nu->twice() > gamma.twice() || !(*nu - gamma).is_integer()) {
    throw Error(ErrorKind::OutOfRange, "J - j must lie in {-gamma, ..., gamma}");
  }
  return *nu;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

Complex cg_closed_form(HalfInt gamma, HalfInt mu, Complex j, Complex J, Complex M) {
  if (std::abs(mu.twice()) > gamma.twice() || !(mu - gamma).is_integer()) {
    throw Error(ErrorKind::OutOfRange, "mu outside {-gamma, ..., gamma}");
  }
  HalfInt nu = offset_of(J, j, gamma);
  const Complex two_j = 2.0 * j;
  if (gamma.twice() == 1) {
    const Complex den = sq(two_j + 1.0);
    if (mu.twice() == -1) {
      if (nu.twice() == -1) return -sq(j + M + 0.5) / den;
      return sq(j - M + 0.5) / den;
    }
    if (nu.twice() == -1) return sq(j - M + 0.5) / den;
    return sq(j + M + 0.5) / den;
  }
  if (gamma.twice() == 2) {
    const double r2 = std::sqrt(2.0);
    const int k = nu.twice() / 2;
    const int m = mu.twice() / 2;
    if (m == -1) {
      if (k == -1) return sq(j + M) * sq(j + M + 1.0) / (sq(two_j) * sq(two_j + 1.0));
      if (k == 0) return -r2 * sq(j - M) * sq(j + M + 1.0) / (sq(two_j) * sq(two_j + 2.0));
      return sq(j - M) * sq(j - M + 1.0) / (sq(two_j + 1.0) * sq(two_j + 2.0));
    }
    if (m == 0) {
      if (k == -1) return -r2 * sq(j - M) * sq(j + M) / (sq(two_j) * sq(two_j + 1.0));
      if (k == 0) return -2.0 * M / (sq(two_j) * sq(two_j + 2.0));
      return r2 * sq(j - M + 1.0) * sq(j + M + 1.0) / (sq(two_j + 1.0) * sq(two_j + 2.0));
    }
    if (k == -1) return sq(j - M) * sq(j - M + 1.0) / (sq(two_j) * sq(two_j + 1.0));
    if (k == 0) return r2 * sq(j + M) * sq(j - M + 1.0) / (sq(two_j) * sq(two_j + 2.0));
    return sq(j + M) * sq(j + M + 1.0) / (sq(two_j + 1.0) * sq(two_j + 2.0));
  }
  throw Error(ErrorKind::OutOfRange, "closed forms exist for gamma = 1/2 and gamma = 1 only");
}

Complex stretched_cg(HalfInt gamma, HalfInt nu, Complex j, Complex M) {
  if (std::abs(nu.twice()) > gamma.twice() || !(nu - gamma).is_integer()) {
    throw Error(ErrorKind::OutOfRange, "nu outside {-gamma, ..., gamma}");
  }
  const int up = (gamma + nu).twice() / 2;
  const int down = (gamma - nu).twice() / 2;
  const int two_gamma = gamma.twice();
  Complex r(std::exp(0.5 * (log_factorial(two_gamma) - log_factorial(up) - log_factorial(down))), 0.0);
  const Complex gm = gamma.complex();
  for (int k = 1; k <= up; ++k) r *= sq(j + M - gm + static_cast<double>(k));
  for (HalfInt k = nu + 1; k <= gamma; k += 1) r *= sq(j - M + k.value());
  const HalfInt skip = nu + nu + 1;
  for (HalfInt k = nu - gamma + 1; k <= nu + gamma + 1; k += 1) {
    if (k == skip) continue;
    r /= sq(2.0 * j + k.value());
  }
  return r;
}

double su2_cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  if (m1 + m2 != M) return 0.0;
  if (j1.twice() < 0 || j2.twice() < 0 || J.twice() < 0) return 0.0;
  if (std::abs(m1.twice()) > j1.twice() || std::abs(m2.twice()) > j2.twice() || std::abs(M.twice()) > J.twice()) {
    return 0.0;
  }
  if (!(j1 - m1).is_integer() || !(j2 - m2).is_integer() || !(J - M).is_integer()) return 0.0;
  if (!(j1 + j2 - J).is_integer()) return 0.0;
  if (J < (j1 - j2 >= HalfInt{} ? j1 - j2 : j2 - j1) || J > j1 + j2) return 0.0;
  auto n = [](HalfInt h) { return h.twice() / 2; };
  const int a = n(j1 + j2 - J), b = n(j1 - j2 + J), c = n(-j1 + j2 + J), d = n(j1 + j2 + J) + 1;
  double log_pref = 0.5 * (std::log(static_cast<double>(J.twice() + 1)) + log_factorial(a) + log_factorial(b) +
                           log_factorial(c) - log_factorial(d) + log_factorial(n(J + M)) + log_factorial(n(J - M)) +
                           log_factorial(n(j1 - m1)) + log_factorial(n(j1 + m1)) + log_factorial(n(j2 - m2)) +
                           log_factorial(n(j2 + m2)));
  const int kmin = std::max({0, n(j2 - J - m1), n(j1 + m2 - J)});
  const int kmax = std::min({a, n(j1 - m1), n(j2 + m2)});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    double lt = log_factorial(k) + log_factorial(a - k) + log_factorial(n(j1 - m1) - k) + log_factorial(n(j2 + m2) - k) +
                log_factorial(n(J - j2 + m1) + k) + log_factorial(n(J - j1 - m2) + k);
    double term = std::exp(log_pref - lt);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

int swap_sign(Complex J, Complex j, HalfInt gamma) {
  auto e = as_half_integer(J - j - gamma.complex());
  if (!e || !e->is_integer()) throw Error(ErrorKind::Precondition, "J - j - gamma is not an integer");
  return (e->twice() / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace sl2r
