#include "sgnmod/sgn_solver.hpp"

#include "sgnmod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace sgnmod {

namespace {

using Vec = std::vector<double>;

std::size_t wrap_prev(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }
std::size_t wrap_next(std::size_t i, std::size_t n) { return i + 1 == n ? 0 : i + 1; }

double limit_slope(double a, double b, Limiter lim) {
    switch (lim) {
    case Limiter::minmod:
        if (a * b <= 0.0) {
            return 0.0;
        }
        return a > 0.0 ? std::min(a, b) : std::max(a, b);
    case Limiter::van_leer:
        if (a * b <= 0.0) {
            return 0.0;
        }
        return 2.0 * a * b / (a + b);
    case Limiter::mc: {
        if (a * b <= 0.0) {
            return 0.0;
        }
        const double c = 0.5 * (a + b);
        const double m = std::min({std::abs(c), 2.0 * std::abs(a), 2.0 * std::abs(b)});
        return a > 0.0 ? m : -m;
    }
    case Limiter::none:
        return 0.5 * (a + b);
    }
    return 0.0;
}

// HLL flux with Davis wave-speed estimates.
void hll_flux(double hl, double ql, double hr, double qr, double g, double& fh, double& fq) {
    const double ul = ql / hl;
    const double ur = qr / hr;
    const double cl = std::sqrt(g * hl);
    const double cr = std::sqrt(g * hr);
    const double sl = std::min(ul - cl, ur - cr);
    const double sr = std::max(ul + cl, ur + cr);
    const double fhl = ql;
    const double fql = ql * ul + 0.5 * g * hl * hl;
    const double fhr = qr;
    const double fqr = qr * ur + 0.5 * g * hr * hr;
    if (sl >= 0.0) {
        fh = fhl;
        fq = fql;
    } else if (sr <= 0.0) {
        fh = fhr;
        fq = fqr;
    } else {
        const double inv = 1.0 / (sr - sl);
        fh = (sr * fhl - sl * fhr + sl * sr * (hr - hl)) * inv;
        fq = (sr * fql - sl * fqr + sl * sr * (qr - ql)) * inv;
    }
}

// Time derivative of (h, q) from the shallow-water fluxes.
void hyperbolic_rhs(const Vec& h, const Vec& q, double g, double dx, Limiter lim, Vec& dh, Vec& dq,
                    Vec& sh, Vec& sq, Vec& fh, Vec& fq) {
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = wrap_prev(i, n);
        const std::size_t ip = wrap_next(i, n);
        sh[i] = limit_slope(h[i] - h[im], h[ip] - h[i], lim);
        sq[i] = limit_slope(q[i] - q[im], q[ip] - q[i], lim);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = wrap_next(i, n);
        double hl = h[i] + 0.5 * sh[i];
        double ql = q[i] + 0.5 * sq[i];
        double hr = h[ip] - 0.5 * sh[ip];
        double qr = q[ip] - 0.5 * sq[ip];
        // Fall back to first order at a face whose reconstruction is dry.
        if (hl <= 0.0 || hr <= 0.0) {
            hl = h[i];
            ql = q[i];
            hr = h[ip];
            qr = q[ip];
        }
        hll_flux(hl, ql, hr, qr, g, fh[i], fq[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = wrap_prev(i, n);
        dh[i] = -(fh[i] - fh[im]) / dx;
        dq[i] = -(fq[i] - fq[im]) / dx;
    }
}

void check_positive(const Vec& h, const char* where) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) {
            throw PositivityError(std::string(where) + ": non-positive depth " + std::to_string(h[i]) +
                                  " in cell " + std::to_string(i));
        }
    }
}

void hyperbolic_step(Vec& h, Vec& q, double g, double dx, double dt, Limiter lim) {
    const std::size_t n = h.size();
    Vec dh(n), dq(n), sh(n), sq(n), fh(n), fq(n);
    hyperbolic_rhs(h, q, g, dx, lim, dh, dq, sh, sq, fh, fq);
    Vec h1(n), q1(n);
    for (std::size_t i = 0; i < n; ++i) {
        h1[i] = h[i] + dt * dh[i];
        q1[i] = q[i] + dt * dq[i];
    }
    check_positive(h1, "hyperbolic stage");
    hyperbolic_rhs(h1, q1, g, dx, lim, dh, dq, sh, sq, fh, fq);
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = 0.5 * (h[i] + h1[i] + dt * dh[i]);
        q[i] = 0.5 * (q[i] + q1[i] + dt * dq[i]);
    }
    check_positive(h, "hyperbolic step");
}

// Solves the symmetric periodic tridiagonal system
//   diag[i] x[i] + off[i] x[i+1] + off[i-1] x[i-1] = rhs[i]
// (indices mod n) by Thomas elimination plus a Sherman-Morrison
// correction for the corner entries.
Vec solve_cyclic(const Vec& diag, const Vec& off, const Vec& rhs) {
    const std::size_t n = diag.size();
    const double corner = off[n - 1];  // A(0, n-1) = A(n-1, 0)
    const double gamma = -diag[0];
    Vec b(diag);
    b[0] -= gamma;
    b[n - 1] -= corner * corner / gamma;

    // Factor once, solve for rhs and for u = (gamma, 0, ..., 0, corner).
    Vec c(n), x(rhs), z(n, 0.0);
    z[0] = gamma;
    z[n - 1] = corner;
    double piv = b[0];
    if (!(std::abs(piv) > 0.0)) {
        throw SolverError("dispersive solve: zero pivot");
    }
    c[0] = off[0] / piv;
    x[0] /= piv;
    z[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = b[i] - off[i - 1] * c[i - 1];
        if (!(std::abs(piv) > 0.0)) {
            throw SolverError("dispersive solve: zero pivot");
        }
        c[i] = i + 1 < n ? off[i] / piv : 0.0;
        x[i] = (x[i] - off[i - 1] * x[i - 1]) / piv;
        z[i] = (z[i] - off[i - 1] * z[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
        z[i] -= c[i] * z[i + 1];
    }
    const double denom = 1.0 + z[0] + corner * z[n - 1] / gamma;
    if (!(std::abs(denom) > 0.0)) {
        throw SolverError("dispersive solve: singular corner correction");
    }
    const double fact = (x[0] + corner * x[n - 1] / gamma) / denom;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] -= fact * z[i];
        if (!std::isfinite(x[i])) {
            throw SolverError("dispersive solve: non-finite solution");
        }
    }
    return x;
}

// Rate of change of q from the non-hydrostatic pressure at fixed h.
// With w = Du/Dt, the depth-integrated non-hydrostatic pressure is
// p = (h^3/3)(2 u_x^2 - w_x) and w solves
//   h w - (h^3/3 w_x)_x = -g h h_x - (2 h^3/3 u_x^2)_x.
// The source -p_x is taken from face values so it telescopes.
void dispersive_rhs(const Vec& h, const Vec& q, double g, double dx, Vec& s) {
    const std::size_t n = h.size();
    const double inv_dx = 1.0 / dx;
    const double inv_dx2 = inv_dx * inv_dx;
    Vec u(n), h3(n), ux(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = q[i] / h[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = wrap_next(i, n);
        const double hf = 0.5 * (h[i] + h[ip]);
        h3[i] = hf * hf * hf / 3.0;
        ux[i] = (u[ip] - u[i]) * inv_dx;
    }
    Vec diag(n), off(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = wrap_prev(i, n);
        const std::size_t ip = wrap_next(i, n);
        diag[i] = h[i] + (h3[i] + h3[im]) * inv_dx2;
        off[i] = -h3[i] * inv_dx2;
        rhs[i] = -g * h[i] * (h[ip] - h[im]) * (0.5 * inv_dx) -
                 2.0 * (h3[i] * ux[i] * ux[i] - h3[im] * ux[im] * ux[im]) * inv_dx;
    }
    const Vec w = solve_cyclic(diag, off, rhs);
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = wrap_next(i, n);
        p[i] = h3[i] * (2.0 * ux[i] * ux[i] - (w[ip] - w[i]) * inv_dx);
    }
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = -(p[i] - p[wrap_prev(i, n)]) * inv_dx;
    }
}

void dispersive_step(const Vec& h, Vec& q, double g, double dx, double dt) {
    const std::size_t n = h.size();
    Vec s(n), q1(n);
    dispersive_rhs(h, q, g, dx, s);
    for (std::size_t i = 0; i < n; ++i) {
        q1[i] = q[i] + dt * s[i];
    }
    dispersive_rhs(h, q1, g, dx, s);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = 0.5 * (q[i] + q1[i] + dt * s[i]);
    }
}

// Start index of the lexicographically least rotation of the (h, q)
// pairs (Booth's algorithm). Running the step on the canonically
// rotated arrays makes the global tridiagonal solve, and with it the
// whole step, exactly equivariant under shifts by whole cells.
std::size_t least_rotation(const Vec& h, const Vec& q) {
    const std::size_t n = h.size();
    auto at = [&](std::size_t j) { return std::pair<double, double>(h[j % n], q[j % n]); };
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const auto sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1)) {
                k = j - static_cast<std::size_t>(i) - 1;
            }
            i = f[static_cast<std::size_t>(i)];
        }
        if (sj != at(k + static_cast<std::size_t>(i + 1))) {
            // i == -1 here
            if (sj < at(k)) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

} // namespace

std::vector<double> SGNField::velocity() const {
    std::vector<double> u(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        u[i] = q[i] / h[i];
    }
    return u;
}

void SGNField::validate() const {
    if (h.size() != q.size()) {
        throw DomainError("field: h and q must have the same length");
    }
    if (h.size() < 3) {
        throw DomainError("field: at least 3 cells are required");
    }
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw DomainError("field: dx must be positive");
    }
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("field: g must be positive");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(h[i]) || !std::isfinite(q[i])) {
            throw DomainError("field: non-finite value in cell " + std::to_string(i));
        }
    }
    check_positive(h, "field");
}

void WaveTrainConfig::validate() const {
    roots.validate_nondegenerate();
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("wave train: g must be positive");
    }
    if (sign_m != 1 && sign_m != -1) {
        throw DomainError("wave train: sign_m must be +1 or -1");
    }
    if (N < 1) {
        throw DomainError("wave train: N must be at least 1");
    }
    if (!(a >= 0.0 && a < 1.0)) {
        throw DomainError("wave train: perturbation a must satisfy 0 <= a < 1");
    }
    if (cells_per_wavelength < 16) {
        throw DomainError("wave train: cells_per_wavelength must be at least 16");
    }
}

SGNField init_wavetrain(const WaveTrainConfig& config) {
    config.validate();
    const CnoidalWave wave = make_cnoidal_wave(config.roots, config.g, config.sign_m);
    const std::size_t n = static_cast<std::size_t>(config.N) * config.cells_per_wavelength;
    SGNField f;
    f.g = config.g;
    f.dx = wave.L / config.cells_per_wavelength;
    f.h.resize(n);
    f.q.resize(n);
    const double domain = config.N * wave.L;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = f.x(i);
        const double h = profile(wave, x) * (1.0 + config.a * std::cos(2.0 * std::numbers::pi * x / domain));
        f.h[i] = h;
        f.q[i] = h * velocity_from_depth(h, wave.constants, wave.D);
    }
    return f;
}

double stable_dt(const SGNField& field, double cfl) {
    if (!(cfl > 0.0 && cfl <= 0.9)) {
        throw DomainError("cfl must satisfy 0 < cfl <= 0.9");
    }
    double smax = 0.0;
    for (std::size_t i = 0; i < field.h.size(); ++i) {
        smax = std::max(smax, std::abs(field.q[i] / field.h[i]) + std::sqrt(field.g * field.h[i]));
    }
    if (!(smax > 0.0) || !std::isfinite(smax)) {
        throw SolverError("stable_dt: invalid wave speed");
    }
    return cfl * field.dx / smax;
}

void advance(SGNField& field, double dt, Limiter limiter) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("advance: dt must be positive");
    }
    const std::size_t n = field.n_cells();
    const std::size_t k = least_rotation(field.h, field.q);
    Vec h(field.h), q(field.q);
    std::rotate(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(k), h.end());
    std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(k), q.end());

    dispersive_step(h, q, field.g, field.dx, 0.5 * dt);
    hyperbolic_step(h, q, field.g, field.dx, dt, limiter);
    dispersive_step(h, q, field.g, field.dx, 0.5 * dt);

    std::rotate(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n - k), h.end());
    std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(n - k), q.end());
    field.h = std::move(h);
    field.q = std::move(q);
    field.t += dt;
}

SGNField step(const SGNField& field, double cfl, Limiter limiter) {
    field.validate();
    SGNField out(field);
    advance(out, stable_dt(out, cfl), limiter);
    return out;
}

std::size_t integrate_to(SGNField& field, double t_end, const SolverOptions& options) {
    field.validate();
    std::size_t steps = 0;
    while (field.t < t_end) {
        double dt = stable_dt(field, options.cfl);
        bool last = false;
        if (field.t + dt >= t_end) {
            dt = t_end - field.t;
            last = true;
        }
        advance(field, dt, options.limiter);
        if (last) {
            field.t = t_end;
        }
        ++steps;
    }
    return steps;
}

Diagnostics diagnostics(const SGNField& field) {
    const std::size_t n = field.n_cells();
    const Vec u = field.velocity();
    Diagnostics d;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = field.h[i];
        const double ux = (u[wrap_next(i, n)] - u[wrap_prev(i, n)]) / (2.0 * field.dx);
        const double hdot = -h * ux;
        d.mass += h;
        d.momentum += field.q[i];
        d.energy += h * (0.5 * u[i] * u[i] + 0.5 * field.g * h + hdot * hdot / 6.0);
    }
    d.mass *= field.dx;
    d.momentum *= field.dx;
    d.energy *= field.dx;
    return d;
}

std::vector<PortraitPoint> phase_portrait(const SGNField& field) {
    const std::size_t n = field.n_cells();
    const Vec u = field.velocity();
    std::vector<PortraitPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = field.h[i];
        const double ux = (u[wrap_next(i, n)] - u[wrap_prev(i, n)]) / (2.0 * field.dx);
        out[i] = {h, -h * h * ux};
    }
    return out;
}

namespace {

void envelope(const SGNField& f, double& lo, double& hi) {
    const auto [mn, mx] = std::minmax_element(f.h.begin(), f.h.end());
    lo = *mn;
    hi = *mx;
}

} // namespace

ExperimentResult run_experiment(const WaveTrainConfig& config, double t_end,
                                std::vector<double> output_times, const SolverOptions& options,
                                const CheckpointCallback& on_checkpoint, std::size_t sample_every,
                                const SampleCallback& on_sample) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw DomainError("run_experiment: t_end must be positive");
    }
    if (sample_every == 0) {
        throw DomainError("run_experiment: sample_every must be positive");
    }
    std::sort(output_times.begin(), output_times.end());
    for (double t : output_times) {
        if (!(t >= 0.0 && t <= t_end)) {
            throw DomainError("run_experiment: output times must lie in [0, t_end]");
        }
    }
    output_times.erase(std::unique(output_times.begin(), output_times.end()), output_times.end());
    if (output_times.empty() || output_times.front() != 0.0) {
        output_times.insert(output_times.begin(), 0.0);
    }

    ExperimentResult result;
    result.wave = make_cnoidal_wave(config.roots, config.g, config.sign_m);
    SGNField field = init_wavetrain(config);
    envelope(field, result.h_min, result.h_max);

    auto sample = [&] {
        DiagnosticsSample s;
        s.t = field.t;
        s.diag = diagnostics(field);
        envelope(field, s.h_min, s.h_max);
        result.series.push_back(s);
        if (on_sample) {
            on_sample(s);
        }
    };
    auto checkpoint = [&] {
        Checkpoint c{field, phase_portrait(field), diagnostics(field)};
        if (on_checkpoint) {
            on_checkpoint(c);
        }
        result.checkpoints.push_back(std::move(c));
    };

    std::size_t next_out = 0;
    if (output_times[0] == 0.0) {
        checkpoint();
        ++next_out;
    }
    sample();
    std::size_t since_sample = 0;
    while (field.t < t_end) {
        const double target = next_out < output_times.size() ? output_times[next_out] : t_end;
        double dt = stable_dt(field, options.cfl);
        bool hit = false;
        if (field.t + dt >= target) {
            dt = target - field.t;
            hit = true;
        }
        advance(field, dt, options.limiter);
        if (hit) {
            field.t = target;
        }
        ++result.steps;
        double lo = 0.0, hi = 0.0;
        envelope(field, lo, hi);
        result.h_min = std::min(result.h_min, lo);
        result.h_max = std::max(result.h_max, hi);
        if (hit && next_out < output_times.size()) {
            checkpoint();
            ++next_out;
            sample();
            since_sample = 0;
        } else if (++since_sample == sample_every) {
            sample();
            since_sample = 0;
        }
    }
    return result;
}

} // namespace sgnmod
