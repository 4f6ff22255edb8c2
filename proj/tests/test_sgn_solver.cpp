#include "sgnmod/errors.hpp"
#include "sgnmod/sgn_solver.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace sgnmod;

namespace {

SGNField still_water(std::size_t n, double depth, double dx = 0.1) {
    SGNField f;
    f.dx = dx;
    f.h.assign(n, depth);
    f.q.assign(n, 0.0);
    return f;
}

double rms_depth_error(const SGNField& a, const SGNField& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.h.size(); ++i) {
        sum += (a.h[i] - b.h[i]) * (a.h[i] - b.h[i]);
    }
    return std::sqrt(sum / static_cast<double>(a.h.size()));
}

double period_of(const WaveTrainConfig& c) {
    const auto w = make_cnoidal_wave(c.roots, c.g, c.sign_m);
    return w.L / std::abs(w.D);
}

template <class T>
void rotate_left(std::vector<T>& v, std::size_t k) {
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
}

} // namespace

TEST_CASE("field validation") {
    auto f = still_water(8, 1.0);
    CHECK_NOTHROW(f.validate());
    f.h[3] = 0.0;
    CHECK_THROWS_AS(f.validate(), PositivityError);
    f = still_water(8, 1.0);
    f.q.pop_back();
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = still_water(2, 1.0);
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = still_water(8, 1.0, -0.1);
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = still_water(8, 1.0);
    f.q[0] = NAN;
    CHECK_THROWS_AS(f.validate(), DomainError);
    f = still_water(8, 1.0);
    f.h[0] = -1.0;
    CHECK_THROWS_AS(advance(f, 0.01), PositivityError);
}

TEST_CASE("parameter validation") {
    const auto f = still_water(16, 1.0);
    CHECK_THROWS_AS(stable_dt(f, 0.0), DomainError);
    CHECK_THROWS_AS(stable_dt(f, 0.95), DomainError);
    CHECK_THROWS_AS(step(f, -0.1), DomainError);
    WaveTrainConfig c;
    c.N = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.a = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.cells_per_wavelength = 8;
    CHECK_THROWS_AS(init_wavetrain(c), DomainError);
    c = {};
    c.roots = {1.0, 2.0, 1.5};
    CHECK_THROWS_AS(init_wavetrain(c), InvalidRootsError);
}

TEST_CASE("still water is a fixed point") {
    auto f = still_water(64, 1.3);
    const double dt = stable_dt(f, 0.45);
    CHECK(dt == doctest::Approx(0.45 * 0.1 / std::sqrt(13.0)));
    for (int k = 0; k < 20; ++k) {
        f = step(f, 0.45);
    }
    for (std::size_t i = 0; i < f.n_cells(); ++i) {
        CHECK(std::abs(f.h[i] - 1.3) <= 1e-14);
        CHECK(std::abs(f.q[i]) <= 1e-14);
    }
    CHECK(f.t == doctest::Approx(20 * dt));
    const auto d = diagnostics(f);
    CHECK(d.energy == doctest::Approx(10.0 * 1.3 * 1.3 / 2 * f.length()).epsilon(1e-14));
    for (const auto& p : phase_portrait(f)) {
        CHECK(p.h == 1.3);
        CHECK(p.h_hdot == 0.0);
    }
}

TEST_CASE("wave train initial data") {
    WaveTrainConfig c;
    c.N = 3;
    c.cells_per_wavelength = 64;
    const auto f = init_wavetrain(c);
    const auto w = make_cnoidal_wave(c.roots, c.g, c.sign_m);
    REQUIRE(f.n_cells() == 192);
    CHECK(f.length() == doctest::Approx(3 * w.L).epsilon(1e-14));
    CHECK(f.h[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.h[32] == doctest::Approx(1.5).epsilon(1e-12));
    for (std::size_t i = 0; i < f.n_cells(); ++i) {
        // Unperturbed: q = m + D h.
        CHECK(f.q[i] == doctest::Approx(w.constants.m + w.D * f.h[i]).epsilon(1e-13));
        CHECK(f.h[i] == doctest::Approx(profile(w, f.x(i))).epsilon(1e-14));
    }
    c.a = 1e-3;
    const auto p = init_wavetrain(c);
    for (std::size_t i = 0; i < p.n_cells(); ++i) {
        CHECK(std::abs(p.h[i] / f.h[i] - 1.0) <= 1e-3 + 1e-15);
        CHECK(p.q[i] / p.h[i] == doctest::Approx(w.constants.m / p.h[i] + w.D).epsilon(1e-13));
    }
}

TEST_CASE("mass and momentum are conserved to round-off") {
    WaveTrainConfig c;
    c.a = 1e-2;
    c.N = 2;
    c.cells_per_wavelength = 100;
    auto f = init_wavetrain(c);
    double abs_q = 0.0;
    for (double q : f.q) {
        abs_q += std::abs(q) * f.dx;
    }
    auto prev = diagnostics(f);
    for (int k = 0; k < 50; ++k) {
        f = step(f, 0.45);
        const auto d = diagnostics(f);
        CHECK(std::abs(d.mass - prev.mass) <= 1e-12 * prev.mass);
        // The total momentum is ~0; measure against the absolute discharge.
        CHECK(std::abs(d.momentum - prev.momentum) <= 1e-10 * abs_q);
        prev = d;
    }
}

TEST_CASE("diagnostics of the unperturbed train") {
    WaveTrainConfig c;
    c.N = 50;
    c.cells_per_wavelength = 64;
    const auto f = init_wavetrain(c);
    const auto w = make_cnoidal_wave(c.roots, c.g, c.sign_m);
    const auto d = diagnostics(f);
    CHECK(d.mass == doctest::Approx(50 * w.L * averaged_h(c.roots)).epsilon(1e-12));
    CHECK(std::abs(d.momentum) <= 1e-10 * d.mass);
    CHECK(d.energy > 0.0);
}

TEST_CASE("phase portrait follows the exact curve") {
    WaveTrainConfig c;
    c.N = 2;
    const auto f = init_wavetrain(c);
    const auto w = make_cnoidal_wave(c.roots, c.g, c.sign_m);
    const auto& wc = w.constants;
    double scale = 0.0;
    for (double h = 1.5; h <= 2.0; h += 1e-4) {
        scale = std::max(scale, wc.m * wc.m * oscillation_rhs(h, wc));
    }
    const auto portrait = phase_portrait(f);
    REQUIRE(portrait.size() == f.n_cells());
    double worst = 0.0;
    for (const auto& p : portrait) {
        worst = std::max(worst, std::abs(p.h_hdot * p.h_hdot - wc.m * wc.m * oscillation_rhs(p.h, wc)));
    }
    CHECK(worst <= 1e-2 * scale);
    // Crest and trough sit on the h axis.
    CHECK(std::abs(portrait[0].h_hdot) <= 1e-12);
    CHECK(std::abs(portrait[200].h_hdot) <= 1e-10);
}

TEST_CASE("cnoidal train returns after one period with second-order error") {
    double prev = 0.0;
    for (int cpw : {100, 200, 400}) {
        WaveTrainConfig c;
        c.cells_per_wavelength = cpw;
        auto f = init_wavetrain(c);
        const auto f0 = f;
        const auto d0 = diagnostics(f);
        const auto steps = integrate_to(f, period_of(c));
        CHECK(f.t == period_of(c));
        CHECK(steps > 0);
        const double err = rms_depth_error(f, f0);
        if (cpw == 400) {
            CHECK(err <= 1e-3);
            CHECK(std::abs(diagnostics(f).energy - d0.energy) <= 1e-6 * d0.energy);
        }
        if (prev > 0.0) {
            CHECK(std::log2(prev / err) >= 2.0);
        }
        prev = err;
    }
}

TEST_CASE("linear dispersion relation") {
    for (double kH : {0.1, 0.25, 0.5}) {
        const double H = 1.0;
        const double wavelen = 2 * std::numbers::pi * H / kH;
        const int n = 200;
        const double amp = 1e-4;
        const double c_exact = std::sqrt(10.0 * H / (1 + kH * kH / 3));
        SGNField f;
        f.dx = wavelen / n;
        for (int i = 0; i < n; ++i) {
            const double eta = amp * std::cos(kH * i * f.dx);
            f.h.push_back(H + eta);
            f.q.push_back(c_exact * eta);
        }
        const double T = wavelen / c_exact;
        integrate_to(f, T);
        double re = 0.0, im = 0.0;
        for (int i = 0; i < n; ++i) {
            re += (f.h[i] - H) * std::cos(kH * i * f.dx);
            im += (f.h[i] - H) * std::sin(kH * i * f.dx);
        }
        const double c_num = (wavelen + std::atan2(im, re) / kH) / T;
        CHECK(std::abs(c_num / c_exact - 1.0) <= 1e-2);
    }
}

TEST_CASE("translation equivariance is exact") {
    WaveTrainConfig c;
    c.a = 1e-2;
    c.N = 2;
    c.cells_per_wavelength = 64;
    auto a = init_wavetrain(c);
    auto b = a;
    const std::size_t shift = 17;
    rotate_left(b.h, shift);
    rotate_left(b.q, shift);
    for (int k = 0; k < 50; ++k) {
        const double dt = stable_dt(a, 0.45);
        advance(a, dt);
        advance(b, dt);
    }
    rotate_left(a.h, shift);
    rotate_left(a.q, shift);
    CHECK(a.h == b.h);
    CHECK(a.q == b.q);
}

TEST_CASE("reflection symmetry") {
    WaveTrainConfig c;
    c.a = 1e-2;
    c.N = 2;
    c.cells_per_wavelength = 64;
    auto a = init_wavetrain(c);
    c.sign_m = 1;
    auto b = init_wavetrain(c);
    const std::size_t n = a.n_cells();
    auto mismatch = [&] {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (n - i) % n;
            d = std::max({d, std::abs(a.h[i] - b.h[j]), std::abs(a.q[i] + b.q[j])});
        }
        return d;
    };
    CHECK(mismatch() <= 1e-14);
    for (int k = 0; k < 100; ++k) {
        const double dt = stable_dt(a, 0.45);
        advance(a, dt);
        advance(b, dt);
    }
    CHECK(mismatch() <= 1e-12);
}

TEST_CASE("modulational stability at desk scale") {
    WaveTrainConfig c;
    c.a = 1e-3;
    const double P = period_of(c);
    const auto r = run_experiment(c, 5 * P, {P, 2 * P, 3 * P, 4 * P, 5 * P}, {}, {}, 50);
    const double margin = 5 * c.a * c.roots.h2;
    CHECK(r.h_min >= c.roots.h1 - margin);
    CHECK(r.h_max <= c.roots.h2 + margin);
    const auto& wc = r.wave.constants;
    double scale = 0.0;
    for (double h = c.roots.h1; h <= c.roots.h2; h += 1e-4) {
        scale = std::max(scale, wc.m * wc.m * oscillation_rhs(h, wc));
    }
    REQUIRE(r.checkpoints.size() == 6);
    for (const auto& ck : r.checkpoints) {
        double worst = 0.0;
        for (const auto& p : ck.portrait) {
            worst = std::max(worst, std::abs(p.h_hdot * p.h_hdot - wc.m * wc.m * oscillation_rhs(p.h, wc)));
        }
        CHECK(worst <= 5e-2 * scale);
    }
}

TEST_CASE("experiment bookkeeping") {
    WaveTrainConfig c;
    c.N = 1;
    c.cells_per_wavelength = 64;
    int seen = 0;
    std::vector<double> sample_times;
    const auto r = run_experiment(
        c, 1.0, {0.25, 0.5}, {}, [&](const Checkpoint&) { ++seen; }, 5,
        [&](const DiagnosticsSample& s) { sample_times.push_back(s.t); });
    REQUIRE(r.checkpoints.size() == 3);
    CHECK(seen == 3);
    CHECK(r.checkpoints[0].field.t == 0.0);
    CHECK(r.checkpoints[1].field.t == 0.25);
    CHECK(r.checkpoints[2].field.t == 0.5);
    CHECK(std::is_sorted(sample_times.begin(), sample_times.end()));
    CHECK(r.series.size() == sample_times.size());
    CHECK(r.h_min <= 1.5 + 1e-3);
    CHECK(r.h_max >= 2.0 - 1e-3);
    CHECK_THROWS_AS(run_experiment(c, 1.0, {2.0}), DomainError);
    CHECK_THROWS_AS(run_experiment(c, -1.0, {}), DomainError);
}
