#pragma once

// Complete elliptic integrals of the first, second and third kind.
//
// All functions take the elliptic *modulus* k, not the parameter m = k^2
// used by Abramowitz & Stegun and by Mathematica. Mixing the two
// conventions silently produces wrong averages; the integrals here
// depend on elliptic modulus k.
//
//   K(k)    = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t)
//   E(k)    = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt
//   Pi(n,k) = int_0^{pi/2} dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t))

namespace sgnmod::elliptic {

// Relative threshold on |n - k^2| below which the Pi derivatives are
// considered singular.
inline constexpr double kSingularTolerance = 1e-12;

// Modulus/characteristic pair as it appears in the averaged quantities.
struct EllipticModulus {
    double k = 0.0;
    double n = 0.0;
};

double ellip_K(double k);
double ellip_E(double k);
double ellip_Pi(double n, double k);

// (K(k) - E(k)) / k^2, finite as k -> 0 (tends to pi/4).
double ellip_D(double k);
// (Pi(n,k) - K(k)) / n, evaluated without cancellation via Carlson's R_J.
double ellip_Pi_excess(double n, double k);

struct EllipticDerivatives {
    double dK_dk = 0.0;
    double dE_dk = 0.0;
    double dPi_dn = 0.0;
    double dPi_dk = 0.0;
};

// Closed-form derivatives. Requires 0 < k < 1, 0 < n < 1 and
// |n - k^2| > singular_tol * max(n, k^2); callers near n = k^2 must
// fall back to quadrature.
EllipticDerivatives ellip_derivatives(double n, double k,
                                      double singular_tol = kSingularTolerance);

} // namespace sgnmod::elliptic
