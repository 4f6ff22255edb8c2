#include "sgnmod/modulation.hpp"

#include "sgnmod/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sgnmod {

double ModulationState::mean_velocity() const { return constants().m / averaged_h(roots()) + D; }

ModulationState ModulationState::with_mean_velocity(const RootTriple& roots, double g, int sign_m,
                                                    double U) {
    const WaveConstants c = constants_from_roots(roots, g, sign_m);
    ModulationState s;
    s.h0 = roots.h0;
    s.h1 = roots.h1;
    s.h2 = roots.h2;
    s.g = g;
    s.sign_m = sign_m;
    s.D = U - c.m / averaged_h(roots);
    return s;
}

namespace {

void validate_state(const ModulationState& s) {
    if (!std::isfinite(s.D)) {
        throw DomainError("modulation state: phase speed D must be finite");
    }
    s.roots().validate_nondegenerate();
}

} // namespace

ConservedVector conserved_vector(const ModulationState& state) {
    validate_state(state);
    const RootTriple roots = state.roots();
    const WaveConstants c = state.constants();
    const double g = state.g;
    const double D = state.D;
    const double m = c.m;
    const double L = wavelength(roots);
    const double hb = averaged_h(roots);
    const double hinv = averaged_hinv(roots);

    ConservedVector v;
    v.density[0] = 1.0 / L;
    v.flux[0] = D / L;
    v.density[1] = hb;
    v.flux[1] = m + hb * D;
    v.density[2] = m + hb * D;
    v.flux[2] = hb * D * D + 0.5 * g * c.I2 + 2.0 * m * D;
    v.density[3] = 0.5 * hb * D * D + 0.5 * g * c.I1 * hb - 0.5 * g * c.I2 + g * c.I3 * hinv + m * D;
    v.flux[3] = 0.5 * hb * D * D * D + 0.5 * g * c.I1 * hb * D + g * c.I3 * hinv * D +
                1.5 * m * D * D + 0.5 * m * g * c.I1;
    return v;
}

DifferentialCoefficients differential_coefficients(const RootTriple& roots) {
    roots.validate_nondegenerate();
    const auto [h0, h1, h2] = roots;
    const auto [k, n] = modulus_from_roots(roots);
    const double K = elliptic::ellip_K(k);
    const double E = elliptic::ellip_E(k);
    const double k2 = k * k;
    // sigma = (1 - E/K) / k^2 and rho = (Pi/K - 1) / n, both O(1) as the
    // amplitude vanishes. The printed coefficient formulas subtract terms
    // of size 1/k^2; the forms below are the same expressions with those
    // cancellations carried out analytically.
    const double sigma = elliptic::ellip_D(k) / K;
    const double rho = elliptic::ellip_Pi_excess(n, k) / K;
    const double delta = k2 * sigma;  // 1 - E/K
    const double nu = n * rho;        // Pi/K - 1
    const double r = 1.0 - delta;     // E/K
    const double p = 1.0 + nu;        // Pi/K

    const double d20 = h2 - h0;
    const double d21 = h2 - h1;
    const double d10 = h1 - h0;
    const double k2_minus_n = d21 * h0 / (d20 * h2);

    DifferentialCoefficients dc;
    dc.phi[0] = (delta * (2.0 - delta) - k2) / (2.0 * (1.0 - k2));
    dc.phi[1] = 0.5 * delta * sigma + r * r / (2.0 * (1.0 - k2));
    dc.phi[2] = 0.5 - 0.5 * delta * sigma;

    dc.psi[0] = r / (2.0 * h0 * d10) - p / (2.0 * h0 * h2) - p * r / (2.0 * h2 * d10);
    dc.psi[1] = (-r + rho * (k2_minus_n - delta * (1.0 - n))) / (2.0 * h1 * h2 * (1.0 - k2));
    dc.psi[2] = (delta * rho - p) / (2.0 * h2 * h2);

    const double c = 2.0 / std::sqrt(3.0);
    const double sI3 = std::sqrt(h0 * h1 * h2);
    const double s20 = std::sqrt(d20);
    dc.lambda[0] = c * (sI3 * E / (d10 * s20) + h1 * h2 * K / (s20 * sI3));
    dc.lambda[1] = c * h0 * h2 * K * (h1 * sigma - h0) / (s20 * sI3 * d10);
    dc.lambda[2] = c * h0 * h1 * K * (1.0 - h2 * sigma / d20) / (s20 * sI3);
    return dc;
}

QuasilinearSystem assemble_AB(const ModulationState& state) {
    validate_state(state);
    const RootTriple roots = state.roots();
    const WaveConstants c = state.constants();
    const DifferentialCoefficients dc = differential_coefficients(roots);
    const auto& Phi = dc.phi;
    const auto& Psi = dc.psi;
    const auto& Lam = dc.lambda;
    const double g = state.g;
    const double D = state.D;
    const double m = c.m;
    const double m2 = m * m;
    const double I1 = c.I1;
    const double L = wavelength(roots);
    const double hb = averaged_h(roots);
    const double hinv = averaged_hinv(roots);
    const std::array<double, 3> h{roots.h0, roots.h1, roots.h2};
    // Products and sums of the two roots other than h_j.
    const std::array<double, 3> other_prod{h[1] * h[2], h[0] * h[2], h[0] * h[1]};
    const std::array<double, 3> other_sum{h[1] + h[2], h[0] + h[2], h[0] + h[1]};

    QuasilinearSystem sys;
    Matrix4& A = sys.A;
    Matrix4& B = sys.B;

    A(0, 0) = 0.0;
    A(1, 0) = 0.0;
    A(2, 0) = hb;
    A(3, 0) = hb * D + m;
    B(0, 0) = -L;
    B(1, 0) = hb;
    B(2, 0) = 2.0 * hb * D + 2.0 * m;
    B(3, 0) = 1.5 * hb * D * D + 0.5 * g * I1 * hb + m2 * hinv + 3.0 * m * D;

    for (int j = 0; j < 3; ++j) {
        const int col = j + 1;
        const double mass_term = D * Phi[j] + m / (2.0 * h[j]);
        A(0, col) = Lam[j];
        A(1, col) = Phi[j];
        A(2, col) = mass_term;
        A(3, col) = 0.5 * (D * D + g * I1) * Phi[j] + m2 * Psi[j] + 0.5 * g * (hb - other_sum[j]) +
                    g * other_prod[j] * hinv + m / (2.0 * h[j]) * D;

        B(0, col) = D * Lam[j];
        B(1, col) = mass_term;
        B(2, col) = D * D * Phi[j] + 0.5 * g * other_sum[j] + m / h[j] * D;
        B(3, col) = 0.5 * (D * D + g * I1) * D * Phi[j] + m2 * D * Psi[j] + 0.5 * g * hb * D +
                    g * other_prod[j] * hinv * D + 0.75 * m / h[j] * D * D +
                    0.25 * g * m * I1 / h[j] + 0.5 * g * m;
    }
    sys.charpoly = pencil_charpoly(A, B);
    return sys;
}

Quartic pencil_charpoly(const Matrix4& A, const Matrix4& B) {
    // The 24-term expansion cancels heavily near the small-amplitude edge
    // of the parameter plane, so it is accumulated in 50-digit arithmetic
    // and rounded once at the end.
    using Wide = boost::multiprecision::cpp_bin_float_50;
    std::array<int, 4> perm{0, 1, 2, 3};
    std::array<Wide, 5> total{};
    do {
        int inversions = 0;
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                inversions += perm[a] > perm[b] ? 1 : 0;
            }
        }
        // Product of the linear factors (B_ij - lambda A_ij).
        std::array<Wide, 5> term{1, 0, 0, 0, 0};
        for (int row = 0; row < 4; ++row) {
            const Wide b = B(row, perm[row]);
            const Wide a = -A(row, perm[row]);
            std::array<Wide, 5> next{};
            for (int d = 0; d <= row; ++d) {
                next[d] += term[d] * b;
                next[d + 1] += term[d] * a;
            }
            term = next;
        }
        for (int d = 0; d < 5; ++d) {
            if (inversions % 2 == 0) {
                total[d] += term[d];
            } else {
                total[d] -= term[d];
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Quartic out{};
    for (int d = 0; d < 5; ++d) {
        out[d] = static_cast<double>(total[d]);
    }
    return out;
}

EigenClassification characteristic_eigenvalues(const QuasilinearSystem& sys) {
    const Quartic& p = sys.charpoly;
    const double norm = std::sqrt(
        std::accumulate(p.begin(), p.end(), 0.0, [](double acc, double c) { return acc + c * c; }));
    if (!std::isfinite(norm) || std::abs(p[4]) <= kPencilDegreeTolerance * norm) {
        throw DegeneratePencilError("det(B - lambda A) is not of degree 4");
    }

    EigenClassification out;
    out.roots = quartic_roots(p);
    double max_abs = 0.0;
    out.all_real = true;
    for (const auto& z : out.roots) {
        max_abs = std::max(max_abs, std::abs(z));
        out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
        if (std::abs(z.imag()) > kRealTolerance * std::max(1.0, std::abs(z.real()))) {
            out.all_real = false;
        }
        if (z.real() > 0.0) {
            ++out.n_positive;
        } else if (z.real() < 0.0) {
            ++out.n_negative;
        }
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            min_gap = std::min(min_gap, std::abs(out.roots[a] - out.roots[b]));
        }
    }
    out.distinct = min_gap > kDistinctTolerance * max_abs;
    out.resultant = resultant_quartic(normalize_quartic(p));
    return out;
}

} // namespace sgnmod
