#pragma once

#include "sl2r/spin.hpp"

namespace sl2r {

// Tabulated coefficient for gamma in {1/2, 1}; A and B coincide.
// Throws OutOfRange when J - j is not in {-gamma, ..., gamma} or |mu| > gamma.
Complex cg_closed_form(HalfInt gamma, HalfInt mu, Complex j, Complex J, Complex M);

// Coefficient with mu = +gamma and J = j + nu for arbitrary gamma, written as a
// product of principal square roots. Fixes the sign of computed eigenvectors.
Complex stretched_cg(HalfInt gamma, HalfInt nu, Complex j, Complex M);

// Condon-Shortley su(2) coefficient <j1 m1; j2 m2 | J M>; zero off the selection rules.
double su2_cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

// (-1)^(J - j - gamma); throws unless the exponent is an integer.
int swap_sign(Complex J, Complex j, HalfInt gamma);

}  // namespace sl2r
