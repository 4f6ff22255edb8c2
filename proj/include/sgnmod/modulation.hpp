#pragma once

#include "sgnmod/polynomial.hpp"
#include "sgnmod/traveling_wave.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>

namespace sgnmod {

// Unknowns of the modulation system: phase speed D and the roots.
struct ModulationState {
    double D = 0.0;
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double g = 10.0;
    int sign_m = -1;

    RootTriple roots() const { return {h0, h1, h2}; }
    WaveConstants constants() const { return constants_from_roots(roots(), g, sign_m); }
    // Mass-weighted mean velocity U = m / h_bar + D.
    double mean_velocity() const;

    // State whose mean velocity equals U (U = 0 is the Galilean reduction).
    static ModulationState with_mean_velocity(const RootTriple& roots, double g, int sign_m,
                                              double U = 0.0);
};

// Conservative form: density_T + flux_X = 0 for
//   0: wave conservation, density 1/L,  flux D/L
//   1: mass,              density h_bar, flux m + h_bar D
//   2: momentum,          density m + h_bar D, flux h_bar D^2 + g I2/2 + 2 m D
//   3: energy
struct ConservedVector {
    std::array<double, 4> density{};
    std::array<double, 4> flux{};
};

ConservedVector conserved_vector(const ModulationState& state);

// Partial derivatives of h_bar (phi), mean of 1/h (psi) and L (lambda)
// with respect to (h0, h1, h2).
struct DifferentialCoefficients {
    std::array<double, 3> phi{};
    std::array<double, 3> psi{};
    std::array<double, 3> lambda{};
};

DifferentialCoefficients differential_coefficients(const RootTriple& roots);

using Matrix4 = Eigen::Matrix4d;

// A U_T + B U_X = 0 with U = (D, h0, h1, h2). The first row is the
// wavelength equation in the expanded form L_T - L D_X + D L_X = 0.
struct QuasilinearSystem {
    Matrix4 A = Matrix4::Zero();
    Matrix4 B = Matrix4::Zero();
    Quartic charpoly{};  // det(B - lambda A), ascending powers
};

QuasilinearSystem assemble_AB(const ModulationState& state);

// Coefficients of det(B - lambda A) by expansion over permutations.
Quartic pencil_charpoly(const Matrix4& A, const Matrix4& B);

inline constexpr double kRealTolerance = 1e-9;
inline constexpr double kDistinctTolerance = 1e-8;
inline constexpr double kPencilDegreeTolerance = 1e-12;

struct EigenClassification {
    std::array<std::complex<double>, 4> roots{};  // sorted by real part
    bool all_real = false;
    bool distinct = false;
    int n_positive = 0;
    int n_negative = 0;
    double max_imag = 0.0;
    double resultant = 0.0;  // Res(p, p') of the normalized charpoly
};

// Throws DegeneratePencilError when |c4| <= 1e-12 * ||c||.
EigenClassification characteristic_eigenvalues(const QuasilinearSystem& sys);

} // namespace sgnmod
