#include "sgnmod/elliptic.hpp"

#include "sgnmod/errors.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/ellint_3.hpp>
#include <boost/math/special_functions/ellint_d.hpp>
#include <boost/math/special_functions/ellint_rj.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sgnmod::elliptic {

namespace {

void require(bool ok, const char* what, double value) {
    if (!ok) {
        throw DomainError(std::string(what) + " (got " + std::to_string(value) + ")");
    }
}

} // namespace

double ellip_K(double k) {
    require(std::isfinite(k) && k >= 0.0 && k < 1.0, "ellip_K: modulus must satisfy 0 <= k < 1", k);
    return boost::math::ellint_1(k);
}

double ellip_E(double k) {
    require(std::isfinite(k) && k >= 0.0 && k <= 1.0, "ellip_E: modulus must satisfy 0 <= k <= 1", k);
    if (k == 1.0) {
        return 1.0;
    }
    return boost::math::ellint_2(k);
}

double ellip_Pi(double n, double k) {
    require(std::isfinite(k) && k >= 0.0 && k < 1.0, "ellip_Pi: modulus must satisfy 0 <= k < 1", k);
    require(std::isfinite(n) && n >= 0.0 && n < 1.0, "ellip_Pi: characteristic must satisfy 0 <= n < 1", n);
    if (n == 0.0) {
        return ellip_K(k);
    }
    // boost::math::ellint_3(k, n) uses the (1 - n sin^2) convention.
    return boost::math::ellint_3(k, n);
}

double ellip_D(double k) {
    require(std::isfinite(k) && k >= 0.0 && k < 1.0, "ellip_D: modulus must satisfy 0 <= k < 1", k);
    return boost::math::ellint_d(k);
}

double ellip_Pi_excess(double n, double k) {
    require(std::isfinite(k) && k >= 0.0 && k < 1.0, "ellip_Pi_excess: modulus must satisfy 0 <= k < 1", k);
    require(std::isfinite(n) && n >= 0.0 && n < 1.0,
            "ellip_Pi_excess: characteristic must satisfy 0 <= n < 1", n);
    // Pi(n,k) = K(k) + (n/3) R_J(0, 1 - k^2, 1, 1 - n)
    return boost::math::ellint_rj(0.0, 1.0 - k * k, 1.0, 1.0 - n) / 3.0;
}

EllipticDerivatives ellip_derivatives(double n, double k, double singular_tol) {
    require(std::isfinite(k) && k > 0.0 && k < 1.0, "ellip_derivatives: modulus must satisfy 0 < k < 1", k);
    require(std::isfinite(n) && n > 0.0 && n < 1.0,
            "ellip_derivatives: characteristic must satisfy 0 < n < 1", n);
    const double k2 = k * k;
    const double gap = k2 - n;
    if (std::abs(gap) <= singular_tol * std::max(n, k2)) {
        throw SingularConfigurationError("ellip_derivatives: n is too close to k^2 (|n - k^2| = " +
                                         std::to_string(std::abs(gap)) + ")");
    }
    const double K = ellip_K(k);
    const double E = ellip_E(k);
    const double P = ellip_Pi(n, k);

    EllipticDerivatives d;
    d.dK_dk = E / (k * (1.0 - k2)) - K / k;
    d.dE_dk = E / k - K / k;
    d.dPi_dn = -E / (2.0 * (1.0 - n) * gap) - K / (2.0 * n * (1.0 - n)) +
               (k2 - n * n) * P / (2.0 * n * gap * (1.0 - n));
    d.dPi_dk = k * E / (gap * (1.0 - k2)) - k * P / gap;
    return d;
}

} // namespace sgnmod::elliptic
