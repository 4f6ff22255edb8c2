#include "sgnmod/errors.hpp"
#include "sgnmod/traveling_wave.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace sgnmod;
using oracle::rel_err;

namespace {

const RootTriple kRef{1.0, 1.5, 2.0};

// Independently computed: h_bar from quadrature, D = -m / h_bar.
constexpr double kHbar = 1.7284732905;
constexpr double kD = 3.1688228017;

std::vector<RootTriple> subgrid() {
    std::vector<RootTriple> out;
    for (int a = 0; a < 20; ++a) {
        const double s = 1.01 + (50.0 - 1.01) * a / 19.0;
        for (int b = 0; b < 20; ++b) {
            const double tau = 0.01 + (50.0 - 0.01) * b / 19.0;
            out.push_back({1.0, s, s + tau});
        }
    }
    return out;
}

} // namespace

TEST_CASE("root validation") {
    CHECK_NOTHROW(kRef.validate());
    CHECK_THROWS_AS((RootTriple{1.0, 2.0, 1.5}.validate()), InvalidRootsError);
    CHECK_THROWS_AS((RootTriple{0.0, 1.0, 2.0}.validate()), InvalidRootsError);
    CHECK_THROWS_AS((RootTriple{1.0, 1.0, 2.0}.validate()), InvalidRootsError);
    CHECK_THROWS_AS((RootTriple{1.0, 1.5, INFINITY}.validate()), InvalidRootsError);
    CHECK_THROWS_AS((RootTriple{1.0, 1.5, 1.5 + 1e-12}.validate_nondegenerate()), DegenerateRootsError);
    CHECK_THROWS_AS((RootTriple{1.0, 1.0 + 1e-12, 2.0}.validate_nondegenerate()), DegenerateRootsError);
    try {
        RootTriple{1.0, 2.0, 1.5}.validate();
    } catch (const InvalidRootsError& e) {
        CHECK(std::string(e.what()).find("roots must satisfy h0 < h1 < h2") != std::string::npos);
    }
}

TEST_CASE("constants from roots") {
    const auto c = constants_from_roots(kRef, 10.0, -1);
    CHECK(c.I1 == 4.5);
    CHECK(c.I2 == 6.5);
    CHECK(c.I3 == 3.0);
    CHECK(c.m == doctest::Approx(-std::sqrt(30.0)).epsilon(1e-15));
    CHECK(c.i == doctest::Approx(32.5).epsilon(1e-15));
    CHECK(c.epsilon == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(constants_from_roots(kRef, 10.0, 1).m == doctest::Approx(std::sqrt(30.0)));
    CHECK_THROWS_AS(constants_from_roots(kRef, 0.0, -1), DomainError);
    CHECK_THROWS_AS(constants_from_roots(kRef, 10.0, 0), DomainError);
}

TEST_CASE("oscillation polynomial: both forms agree and vanish at h1, h2") {
    const auto c = constants_from_roots(kRef, 10.0, -1);
    CHECK(std::abs(oscillation_rhs(1.5, c)) <= 1e-13);
    CHECK(std::abs(oscillation_rhs(2.0, c)) <= 1e-13);
    CHECK(oscillation_rhs(1.75, c) == doctest::Approx(0.046875).epsilon(1e-12));
    for (const auto& r : subgrid()) {
        const auto cr = constants_from_roots(r, 9.81, -1);
        for (double t : {0.1, 0.5, 0.9}) {
            const double h = r.h1 + t * (r.h2 - r.h1);
            const double factored =
                3.0 / cr.I3 * (cr.I3 - cr.I2 * h + cr.I1 * h * h - h * h * h);
            // Relative to the size of the terms being summed.
            const double scale = 3.0 / cr.I3 * (cr.I3 + cr.I2 * h + cr.I1 * h * h + h * h * h);
            CHECK(std::abs(oscillation_rhs(h, cr) - factored) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("profile: crest, trough, periodicity, bounds") {
    const auto w = make_cnoidal_wave(kRef, 10.0, -1);
    CHECK(profile(w, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    const double xi_trough = oracle::K(w.k) / w.alpha;
    CHECK(profile(w, xi_trough) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(xi_trough == doctest::Approx(w.L / 2).epsilon(1e-12));
    for (double xi = -13.0; xi < 13.0; xi += 0.37) {
        const double h = profile(w, xi);
        CHECK(h >= 1.5 - 1e-14);
        CHECK(h <= 2.0 + 1e-14);
        CHECK(std::abs(profile(w, xi + w.L) - h) <= 1e-10);
    }
}

TEST_CASE("profile satisfies (h')^2 = F3(h)") {
    const auto w = make_cnoidal_wave(kRef, 10.0, -1);
    const double step = 1e-3;
    for (double xi : {0.1, 0.77, 1.3, 2.9, 3.3, 5.5, 7.0}) {
        // Fourth-order central difference.
        const double d = (-profile(w, xi + 2 * step) + 8 * profile(w, xi + step) - 8 * profile(w, xi - step) +
                          profile(w, xi - 2 * step)) /
                         (12 * step);
        CHECK(std::abs(d * d - oscillation_rhs(profile(w, xi), w.constants)) <= 1e-7);
        CHECK(std::abs(profile_slope(w, xi) - d) <= 1e-9);
    }
}

TEST_CASE("wavelength") {
    CHECK(wavelength(kRef) == doctest::Approx(7.4163).epsilon(5e-4 / 7.4163));
    CHECK(wavelength(kRef) == doctest::Approx(7.4162987092).epsilon(1e-10));
    // 2 int dh / sqrt(F3) with F3 = (3/I3) P3
    for (const auto& r : subgrid()) {
        const double I3 = r.h0 * r.h1 * r.h2;
        const double quad = 2.0 * std::sqrt(I3 / 3.0) * oracle::period_integral([](double) { return 1.0; }, r.h0, r.h1, r.h2);
        CHECK(rel_err(wavelength(r), quad) <= 1e-9);
    }
    // Small amplitude: K -> pi/2.
    const RootTriple thin{1.0, 1.999999, 2.0};
    const double limit = 4.0 * std::sqrt(thin.h0 * thin.h1 * thin.h2 / 3.0) * (std::numbers::pi / 2) /
                         std::sqrt(thin.h2 - thin.h0);
    CHECK(rel_err(wavelength(thin), limit) <= 1e-6);
    // L is homogeneous of degree 1 in the roots.
    CHECK(rel_err(wavelength(kRef.scaled(4.0)), 4.0 * wavelength(kRef)) <= 1e-13);
    CHECK_THROWS_AS(wavelength({1.0, 0.5, 2.0}), InvalidRootsError);
}

TEST_CASE("closed-form averages match tanh-sinh quadrature on the subgrid") {
    for (const auto& r : subgrid()) {
        const double hb = oracle::period_average([](double h) { return h; }, r.h0, r.h1, r.h2);
        const double hi = oracle::period_average([](double h) { return 1.0 / h; }, r.h0, r.h1, r.h2);
        CHECK(rel_err(averaged_h(r), hb) <= 1e-9);
        CHECK(rel_err(averaged_hinv(r), hi) <= 1e-9);
        // The library quadrature agrees as well.
        CHECK(rel_err(average([](double h) { return h; }, r), hb) <= 1e-10);
        CHECK(rel_err(average([](double h) { return 1.0 / h; }, r), hi) <= 1e-10);
    }
}

TEST_CASE("average: reference values and inequalities") {
    CHECK(average([](double) { return 1.0; }, kRef) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(averaged_h(kRef) == doctest::Approx(kHbar).epsilon(1e-10));
    const auto [k, n] = modulus_from_roots(kRef);
    CHECK(k * k == doctest::Approx(0.5));
    CHECK(n == doctest::Approx(0.25));
    CHECK(averaged_hinv(kRef) == doctest::Approx(oracle::Pi(0.25, k) / (2.0 * oracle::K(k))).epsilon(1e-12));
    for (const auto& r : subgrid()) {
        const double hb = averaged_h(r);
        const double hi = averaged_hinv(r);
        CHECK(hb > r.h1);
        CHECK(hb < r.h2);
        CHECK(hi > 1.0 / r.h2);
        CHECK(hi < 1.0 / r.h1);
        CHECK(hb * hi >= 1.0);
    }
    // Zero-amplitude limit.
    CHECK(averaged_h({1.0, 2.0 - 1e-7, 2.0}) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("averaged identities from the oscillation equation") {
    for (const RootTriple& r : {kRef, RootTriple{1.0, 3.0, 7.0}, RootTriple{1.0, 1.2, 30.0}}) {
        const auto c = constants_from_roots(r, 10.0, -1);
        const double m2 = c.m * c.m;
        auto avg = [&](auto f) { return oracle::period_average(f, r.h0, r.h1, r.h2); };
        // h'^2 = F3(h) along the profile.
        const double lhs1 = avg([&](double h) { return oscillation_rhs(h, c) / h; });
        const double rhs1 = -6.0 * c.i / m2 + 3.0 * avg([](double h) { return 1.0 / h; }) +
                            6.0 * c.epsilon * avg([](double h) { return h; }) -
                            3.0 * c.g / m2 * avg([](double h) { return h * h; });
        CHECK(rel_err(lhs1, rhs1) <= 1e-8);
        const double lhs2 = avg([&](double h) { return oscillation_rhs(h, c) / (h * h); });
        const double rhs2 = 6.0 * c.epsilon + 3.0 * avg([](double h) { return 1.0 / (h * h); }) -
                            6.0 * c.i / m2 * avg([](double h) { return 1.0 / h; }) -
                            3.0 * c.g / m2 * avg([](double h) { return h; });
        CHECK(rel_err(lhs2, rhs2) <= 1e-8);
    }
}

TEST_CASE("velocity from depth") {
    const auto w = make_cnoidal_wave(kRef, 10.0, -1);
    CHECK(w.D == doctest::Approx(kD).epsilon(1e-10));
    CHECK(w.D == doctest::Approx(3.1688).epsilon(5e-4 / 3.1688));
    CHECK(std::abs(velocity_from_depth(averaged_h(kRef), w.constants, w.D)) <= 1e-12);
    CHECK(velocity_from_depth(2.0, w.constants, w.D) == doctest::Approx(0.430210).epsilon(1e-6));
    const double h = 1.3;
    CHECK(velocity_from_depth(h, w.constants, -w.constants.m / h) == doctest::Approx(0.0));
}

TEST_CASE("effective pressure i - m^2/h_bar is positive") {
    for (int a = 0; a < 50; ++a) {
        const double s = 1.001 + (100.0 - 1.001) * a / 49.0;
        for (int b = 0; b < 50; ++b) {
            const double tau = 0.001 + (100.0 - 0.001) * b / 49.0;
            const RootTriple r{1.0, s, s + tau};
            const auto c = constants_from_roots(r, 10.0, -1);
            CHECK(c.i - c.m * c.m / averaged_h(r) > 0.0);
        }
    }
    const auto c = constants_from_roots(kRef, 10.0, -1);
    CHECK(c.i - c.m * c.m / averaged_h(kRef) == doctest::Approx(32.5 - 30.0 / kHbar).epsilon(1e-9));
}

TEST_CASE("averaged fluxes agree with quadrature of the pointwise densities") {
    for (const RootTriple& r : {kRef, RootTriple{1.0, 2.0, 5.0}, RootTriple{1.0, 10.0, 10.5}}) {
        for (int sign : {-1, 1}) {
            const auto w = make_cnoidal_wave(r, 10.0, sign);
            const auto& c = w.constants;
            const double g = c.g;
            const double m = c.m;
            const double D = w.D;
            auto avg = [&](auto f) { return oracle::period_average(f, r.h0, r.h1, r.h2); };
            // Along the profile, with h' and h'' as functions of h:
            //   hdot = m h'/h,  D^2h/Dt^2 = (m^2/h)(h'/h)'
            auto fields = [&](double h, double& u, double& p, double& e) {
                const double hp2 = oscillation_rhs(h, c);
                const double hpp = 0.5 * oscillation_rhs_derivative(h, c);
                const double hddot = m * m / h * (hpp / h - hp2 / (h * h));
                u = m / h + D;
                p = 0.5 * g * h * h + h * h * hddot / 3.0;
                e = 0.5 * u * u + 0.5 * g * h + m * m * hp2 / (6.0 * h * h);
            };
            const double hb = averaged_h(r);
            const double hi = averaged_hinv(r);
            const double mass = avg([&](double h) { double u, p, e; fields(h, u, p, e); return h * u; });
            const double mom = avg([&](double h) { double u, p, e; fields(h, u, p, e); return h * u * u + p; });
            const double en = avg([&](double h) { double u, p, e; fields(h, u, p, e); return h * e; });
            const double enf = avg([&](double h) { double u, p, e; fields(h, u, p, e); return h * u * e + p * u; });
            const double scale = std::abs(m) * (1.0 + std::abs(D)) * (1.0 + D * D) + g * c.I1 * hb;
            CHECK(std::abs(mass - (hb * D + m)) <= 1e-7 * scale);
            CHECK(rel_err(mom, hb * D * D + 2 * m * D + c.i) <= 1e-7);
            CHECK(rel_err(en, 0.5 * hb * D * D + m * D - c.i + 0.5 * g * c.I1 * hb + m * m * hi) <= 1e-7);
            CHECK(std::abs(enf - (0.5 * hb * D * D * D + 0.5 * g * c.I1 * hb * D + 1.5 * m * D * D +
                                  0.5 * g * c.I1 * m + m * m * hi * D)) <= 1e-7 * scale * scale);
        }
    }
}

TEST_CASE("quadrature failure is reported") {
    auto nasty = [](double h) { return std::sin(1e7 * h); };
    CHECK_THROWS_AS(average(nasty, kRef, 1e-15), QuadratureError);
}
