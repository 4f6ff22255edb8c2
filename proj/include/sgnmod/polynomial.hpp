#pragma once

#include <array>
#include <complex>

namespace sgnmod {

// Quartic c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4, coefficients in ascending order.
using Quartic = std::array<double, 5>;

double evaluate(const Quartic& p, double x);
std::complex<double> evaluate(const Quartic& p, std::complex<double> x);

// Roots of a genuine quartic (c4 != 0) from the eigenvalues of the
// balanced companion matrix, sorted by real part then imaginary part.
std::array<std::complex<double>, 4> quartic_roots(const Quartic& p);

// Res(p, p') as the 7x7 Sylvester determinant, no normalization applied.
double resultant_quartic(const Quartic& p);

// Rescales p to a monic polynomial in mu = x / rho, where rho is the
// Fujiwara root bound. All roots of the result lie in the unit disc, so
// resultants of different polynomials are comparable in magnitude. The
// scaling multiplies Res(p, p') by a positive factor and keeps its sign.
Quartic normalize_quartic(const Quartic& p);

} // namespace sgnmod
