#pragma once

// Reference computations written without the library's helpers, used to
// cross-check it in tests.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;

// Principal square root with a signed-zero imaginary part treated as +0.
C psqrt(C z);

struct Gens {
  std::vector<double> weights;
  Eigen::MatrixXcd J0, Jp, Jm;
};

// Ladder action on an explicit ascending weight list; elements leaving the list are dropped.
Gens irrep(C j, const std::vector<double>& weights);
// -J0^2 + (J+J- + J-J+)/2.
Eigen::MatrixXcd casimir(const Gens& g);
// Generators of a (x) b with basis index i_a * dim(b) + i_b.
Gens kron(const Gens& a, const Gens& b);

// su(2) coefficient <j1 m1; j2 m2 | J M> from highest-weight lowering and
// Gram-Schmidt, Condon-Shortley phase.
double su2_cg(double j1, double m1, double j2, double m2, double J, double M);

// B(J, M | gamma, mu; j, M - mu) for gamma in {1/2, 1}, J = j + nu.
C table_B(int two_gamma, double mu, C j, double nu, double M);

}  // namespace oracle
