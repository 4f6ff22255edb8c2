#pragma once

#include "sgnmod/elliptic.hpp"

#include <functional>

namespace sgnmod {

// Roots h0 < h1 < h2 of the cubic governing the periodic wave profile.
// The wave oscillates between h1 (trough) and h2 (crest).
struct RootTriple {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;

    // Throws InvalidRootsError unless 0 < h0 < h1 < h2 (all finite).
    void validate() const;
    // validate() plus rejection of the soliton (h1 -> h0) and
    // zero-amplitude (h1 -> h2) limits; throws DegenerateRootsError.
    void validate_nondegenerate() const;

    RootTriple scaled(double alpha) const { return {alpha * h0, alpha * h1, alpha * h2}; }
};

// Gaps |h1 - h0| or |h2 - h1| below this fraction of h2 are degenerate.
inline constexpr double kDegenerateRootGap = 1e-10;

// Vieta invariants of the roots and the integration constants they encode.
struct WaveConstants {
    double g = 0.0;
    double m = 0.0;        // mass flux h(u - D), signed
    double i = 0.0;        // momentum constant
    double epsilon = 0.0;  // Bernoulli-type constant
    double I1 = 0.0;
    double I2 = 0.0;
    double I3 = 0.0;
    int sign_m = -1;
};

WaveConstants constants_from_roots(const RootTriple& roots, double g, int sign_m);

// Right-hand side of (h')^2 = F3(h).
double oscillation_rhs(double h, const WaveConstants& c);
// dF3/dh, needed for h'' = F3'(h) / 2 along the profile.
double oscillation_rhs_derivative(double h, const WaveConstants& c);

// k^2 = (h2 - h1)/(h2 - h0), n = (h2 - h1)/h2.
elliptic::EllipticModulus modulus_from_roots(const RootTriple& roots);

double wavelength(const RootTriple& roots);
double averaged_h(const RootTriple& roots);
double averaged_hinv(const RootTriple& roots);

// Period average of f(h) over the periodic solution. The integrable
// endpoint singularities of 1/sqrt(P3) are removed by the substitution
// h = h1 + (h2 - h1) sin^2(phi); the resulting smooth integrand is
// integrated with composite 64-point Gauss-Legendre, doubling the panel
// count until the relative change drops below rel_tol.
double average(const std::function<double(double)>& f, const RootTriple& roots,
               double rel_tol = 1e-12);

// Raw integral int_{h1}^{h2} f(h) / sqrt(P3(h)) dh with the same scheme.
double integrate_over_period(const std::function<double(double)>& f, const RootTriple& roots,
                             double rel_tol = 1e-12);

struct CnoidalWave {
    RootTriple roots;
    WaveConstants constants;
    double alpha = 0.0;  // spatial rate in cn^2(alpha xi; k)
    double k = 0.0;
    double L = 0.0;      // wavelength
    double D = 0.0;      // phase speed
};

// Builds the wave with phase speed D = -m / h_bar, i.e. zero mean
// (mass-weighted) velocity.
CnoidalWave make_cnoidal_wave(const RootTriple& roots, double g, int sign_m);
// Same, with an explicit phase speed.
CnoidalWave make_cnoidal_wave(const RootTriple& roots, double g, int sign_m, double D);

// h(xi) = h1 + (h2 - h1) cn^2(alpha xi; k), crest at xi = 0.
double profile(const CnoidalWave& wave, double xi);
// dh/dxi from the closed form.
double profile_slope(const CnoidalWave& wave, double xi);

// u = m/h + D.
double velocity_from_depth(double h, const WaveConstants& c, double D);

} // namespace sgnmod
