#include "sgnmod/polynomial.hpp"

#include "sgnmod/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace sgnmod {

double evaluate(const Quartic& p, double x) {
    return (((p[4] * x + p[3]) * x + p[2]) * x + p[1]) * x + p[0];
}

std::complex<double> evaluate(const Quartic& p, std::complex<double> x) {
    return (((p[4] * x + p[3]) * x + p[2]) * x + p[1]) * x + p[0];
}

std::array<std::complex<double>, 4> quartic_roots(const Quartic& p) {
    if (p[4] == 0.0) {
        throw DegeneratePencilError("quartic_roots: leading coefficient is zero");
    }
    Eigen::Matrix<double, 5, 1> coeffs;
    for (int j = 0; j < 5; ++j) {
        coeffs[j] = p[j];
    }
    // PolynomialSolver builds the companion matrix and balances it before
    // the real Schur decomposition.
    Eigen::PolynomialSolver<double, 4> solver(coeffs);
    std::array<std::complex<double>, 4> out{};
    const auto& r = solver.roots();
    for (int j = 0; j < 4; ++j) {
        out[j] = r[j];
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

double resultant_quartic(const Quartic& p) {
    // Rows 0..2: shifted copies of p (degree 4), rows 3..6: shifted copies
    // of p' (degree 3). Highest power first.
    using Wide = boost::multiprecision::cpp_bin_float_50;
    const std::array<double, 5> a{p[4], p[3], p[2], p[1], p[0]};
    const std::array<double, 4> b{4.0 * p[4], 3.0 * p[3], 2.0 * p[2], p[1]};
    std::array<std::array<Wide, 7>, 7> s{};
    for (int r = 0; r < 3; ++r) {
        for (int j = 0; j < 5; ++j) {
            s[r][r + j] = a[j];
        }
    }
    for (int r = 0; r < 4; ++r) {
        for (int j = 0; j < 4; ++j) {
            s[3 + r][r + j] = b[j];
        }
    }
    // Gaussian elimination with partial pivoting. Near a multiple root the
    // determinant is tiny compared to the entries; the wide type keeps
    // its sign meaningful.
    Wide det = 1;
    for (int col = 0; col < 7; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 7; ++r) {
            if (abs(s[r][col]) > abs(s[pivot][col])) {
                pivot = r;
            }
        }
        if (s[pivot][col] == 0) {
            return 0.0;
        }
        if (pivot != col) {
            std::swap(s[pivot], s[col]);
            det = -det;
        }
        det *= s[col][col];
        for (int r = col + 1; r < 7; ++r) {
            const Wide f = s[r][col] / s[col][col];
            for (int j = col; j < 7; ++j) {
                s[r][j] -= f * s[col][j];
            }
        }
    }
    return static_cast<double>(det);
}

Quartic normalize_quartic(const Quartic& p) {
    if (p[4] == 0.0) {
        throw DegeneratePencilError("normalize_quartic: leading coefficient is zero");
    }
    Quartic monic{};
    for (int j = 0; j < 5; ++j) {
        monic[j] = p[j] / p[4];
    }
    // Fujiwara bound: every root satisfies |x| <= 2 max |c_{4-j}|^{1/j}.
    double rho = 0.0;
    for (int j = 1; j <= 4; ++j) {
        double c = std::abs(monic[4 - j]);
        if (j == 4) {
            c *= 0.5;
        }
        rho = std::max(rho, std::pow(c, 1.0 / j));
    }
    rho *= 2.0;
    if (rho == 0.0) {
        return monic;
    }
    Quartic out{};
    double scale = 1.0;
    for (int j = 4; j >= 0; --j) {
        out[j] = monic[j] * scale;
        scale /= rho;
    }
    // out[j] = c_j / rho^(4-j)
    return out;
}

} // namespace sgnmod
