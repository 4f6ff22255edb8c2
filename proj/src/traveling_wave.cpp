#include "sgnmod/traveling_wave.hpp"

#include "sgnmod/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sgnmod {

namespace {

constexpr double kHalfPi = boost::math::constants::half_pi<double>();
constexpr int kMaxPanelDoublings = 12;

std::string describe(const RootTriple& r) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << r.h0 << ", " << r.h1 << ", " << r.h2 << ")";
    return os.str();
}

double composite_gauss(const std::function<double(double)>& g, double a, double b, int panels) {
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        sum += boost::math::quadrature::gauss<double, 64>::integrate(g, lo, lo + width);
    }
    return sum;
}

} // namespace

void RootTriple::validate() const {
    const bool finite = std::isfinite(h0) && std::isfinite(h1) && std::isfinite(h2);
    if (!finite || !(h0 > 0.0)) {
        throw InvalidRootsError("roots must be finite and positive, got " + describe(*this));
    }
    if (!(h0 < h1 && h1 < h2)) {
        throw InvalidRootsError("roots must satisfy h0 < h1 < h2, got " + describe(*this));
    }
}

void RootTriple::validate_nondegenerate() const {
    validate();
    const double floor = kDegenerateRootGap * h2;
    if (h1 - h0 < floor) {
        throw DegenerateRootsError("degenerate roots (soliton limit h1 -> h0): " + describe(*this));
    }
    if (h2 - h1 < floor) {
        throw DegenerateRootsError("degenerate roots (zero amplitude h1 -> h2): " + describe(*this));
    }
}

WaveConstants constants_from_roots(const RootTriple& roots, double g, int sign_m) {
    roots.validate();
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("gravity must be positive");
    }
    if (sign_m != 1 && sign_m != -1) {
        throw DomainError("sign_m must be +1 or -1");
    }
    const auto& [h0, h1, h2] = roots;
    WaveConstants c;
    c.g = g;
    c.sign_m = sign_m;
    c.I1 = h0 + h1 + h2;
    c.I2 = h0 * h1 + h1 * h2 + h0 * h2;
    c.I3 = h0 * h1 * h2;
    c.m = sign_m * std::sqrt(g * c.I3);
    c.i = 0.5 * g * c.I2;
    c.epsilon = 0.5 * c.I1 / c.I3;
    return c;
}

double oscillation_rhs(double h, const WaveConstants& c) {
    const double m2 = c.m * c.m;
    return 3.0 - 6.0 * c.i / m2 * h + 6.0 * c.epsilon * h * h - 3.0 * c.g / m2 * h * h * h;
}

double oscillation_rhs_derivative(double h, const WaveConstants& c) {
    const double m2 = c.m * c.m;
    return -6.0 * c.i / m2 + 12.0 * c.epsilon * h - 9.0 * c.g / m2 * h * h;
}

elliptic::EllipticModulus modulus_from_roots(const RootTriple& roots) {
    roots.validate();
    const auto& [h0, h1, h2] = roots;
    return {std::sqrt((h2 - h1) / (h2 - h0)), (h2 - h1) / h2};
}

double wavelength(const RootTriple& roots) {
    roots.validate_nondegenerate();
    const auto [k, n] = modulus_from_roots(roots);
    const double I3 = roots.h0 * roots.h1 * roots.h2;
    return 4.0 * std::sqrt(I3 / 3.0) * elliptic::ellip_K(k) / std::sqrt(roots.h2 - roots.h0);
}

double averaged_h(const RootTriple& roots) {
    roots.validate_nondegenerate();
    const double k = modulus_from_roots(roots).k;
    return roots.h0 + (roots.h2 - roots.h0) * elliptic::ellip_E(k) / elliptic::ellip_K(k);
}

double averaged_hinv(const RootTriple& roots) {
    roots.validate_nondegenerate();
    const auto [k, n] = modulus_from_roots(roots);
    return elliptic::ellip_Pi(n, k) / (roots.h2 * elliptic::ellip_K(k));
}

double integrate_over_period(const std::function<double(double)>& f, const RootTriple& roots,
                             double rel_tol) {
    roots.validate_nondegenerate();
    const auto& [h0, h1, h2] = roots;
    const double amp = h2 - h1;
    // dh / sqrt(P3) = 2 dphi / sqrt(h - h0)
    auto integrand = [&](double phi) {
        const double s = std::sin(phi);
        const double h = h1 + amp * s * s;
        return 2.0 * f(h) / std::sqrt(h - h0);
    };
    double previous = composite_gauss(integrand, 0.0, kHalfPi, 1);
    for (int level = 1, panels = 2; level <= kMaxPanelDoublings; ++level, panels *= 2) {
        const double current = composite_gauss(integrand, 0.0, kHalfPi, panels);
        const double scale = std::max(std::abs(current), std::numeric_limits<double>::min());
        if (std::abs(current - previous) <= rel_tol * scale) {
            return current;
        }
        previous = current;
    }
    throw QuadratureError("period integral did not converge for roots " + describe(roots));
}

double average(const std::function<double(double)>& f, const RootTriple& roots, double rel_tol) {
    const double weight = integrate_over_period([](double) { return 1.0; }, roots, rel_tol);
    return integrate_over_period(f, roots, rel_tol) / weight;
}

CnoidalWave make_cnoidal_wave(const RootTriple& roots, double g, int sign_m) {
    const WaveConstants c = constants_from_roots(roots, g, sign_m);
    return make_cnoidal_wave(roots, g, sign_m, -c.m / averaged_h(roots));
}

CnoidalWave make_cnoidal_wave(const RootTriple& roots, double g, int sign_m, double D) {
    roots.validate_nondegenerate();
    CnoidalWave w;
    w.roots = roots;
    w.constants = constants_from_roots(roots, g, sign_m);
    w.alpha = std::sqrt(0.75 * (roots.h2 - roots.h0) / w.constants.I3);
    w.k = modulus_from_roots(roots).k;
    w.L = wavelength(roots);
    w.D = D;
    return w;
}

double profile(const CnoidalWave& wave, double xi) {
    const double cn = boost::math::jacobi_cn(wave.k, wave.alpha * xi);
    return wave.roots.h1 + (wave.roots.h2 - wave.roots.h1) * cn * cn;
}

double profile_slope(const CnoidalWave& wave, double xi) {
    double cn = 0.0;
    double dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(wave.k, wave.alpha * xi, &cn, &dn);
    return -2.0 * wave.alpha * (wave.roots.h2 - wave.roots.h1) * cn * sn * dn;
}

double velocity_from_depth(double h, const WaveConstants& c, double D) { return c.m / h + D; }

} // namespace sgnmod
