#pragma once

#include "sgnmod/traveling_wave.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace sgnmod {

// Periodic 1D fields. Cell i is centered at x = i * dx.
struct SGNField {
    double dx = 0.0;
    double g = 10.0;
    double t = 0.0;
    std::vector<double> h;  // depth
    std::vector<double> q;  // discharge h u

    std::size_t n_cells() const { return h.size(); }
    double length() const { return static_cast<double>(h.size()) * dx; }
    double x(std::size_t i) const { return static_cast<double>(i) * dx; }
    std::vector<double> velocity() const;
    // Throws DomainError on mismatched sizes, n < 3, non-positive dx or
    // g, or non-finite values; PositivityError if any h <= 0.
    void validate() const;
};

struct WaveTrainConfig {
    RootTriple roots{1.0, 1.5, 2.0};
    double g = 10.0;
    int sign_m = -1;
    int N = 5;                       // wavelengths in the domain
    double a = 0.0;                  // relative height perturbation
    int cells_per_wavelength = 400;

    void validate() const;
};

// N copies of the cnoidal wave (crest at x = 0, U = 0), with depth
// h(x) (1 + a cos(2 pi x / (N L))) and velocity m / h + D.
SGNField init_wavetrain(const WaveTrainConfig& config);

enum class Limiter { minmod, van_leer, mc, none };

struct SolverOptions {
    double cfl = 0.45;
    Limiter limiter = Limiter::van_leer;
};

// cfl * dx / max(|u| + sqrt(g h)).
double stable_dt(const SGNField& field, double cfl);

// One Strang step of length dt: half dispersive, full hyperbolic, half
// dispersive. The hyperbolic part is MUSCL + HLL with SSP-RK2; the
// dispersive part solves a periodic tridiagonal system for the material
// acceleration and adds the non-hydrostatic pressure gradient. Throws
// PositivityError or SolverError.
void advance(SGNField& field, double dt, Limiter limiter = Limiter::van_leer);

// Advances by stable_dt(field, cfl) and returns the new field.
SGNField step(const SGNField& field, double cfl, Limiter limiter = Limiter::van_leer);

// Steps until field.t == t_end exactly (the last step is shortened).
// Returns the number of steps taken.
std::size_t integrate_to(SGNField& field, double t_end, const SolverOptions& options = {});

struct Diagnostics {
    double mass = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
};

// Sums of h, h u and h e times dx, with
// e = u^2/2 + g h/2 + (Dh/Dt)^2 / 6 and Dh/Dt = -h u_x.
Diagnostics diagnostics(const SGNField& field);

struct PortraitPoint {
    double h = 0.0;
    double h_hdot = 0.0;
};

// (h, h hdot) per cell with hdot = -h u_x, u_x by periodic central
// differences.
std::vector<PortraitPoint> phase_portrait(const SGNField& field);

struct Checkpoint {
    SGNField field;
    std::vector<PortraitPoint> portrait;
    Diagnostics diag;
};

struct DiagnosticsSample {
    double t = 0.0;
    Diagnostics diag;
    double h_min = 0.0;
    double h_max = 0.0;
};

struct ExperimentResult {
    CnoidalWave wave;
    std::vector<Checkpoint> checkpoints;
    std::vector<DiagnosticsSample> series;
    // Extremes of h over every step.
    double h_min = 0.0;
    double h_max = 0.0;
    std::size_t steps = 0;
};

using CheckpointCallback = std::function<void(const Checkpoint&)>;
using SampleCallback = std::function<void(const DiagnosticsSample&)>;

// Integrates the wave train to t_end, stopping exactly at each of
// output_times (sorted, within (0, t_end]; t = 0 is always included).
// on_checkpoint fires as each checkpoint is reached, so output written
// there survives a later solver failure. A diagnostics sample is taken
// every sample_every steps and at each checkpoint.
ExperimentResult run_experiment(const WaveTrainConfig& config, double t_end,
                                std::vector<double> output_times,
                                const SolverOptions& options = {},
                                const CheckpointCallback& on_checkpoint = {},
                                std::size_t sample_every = 10,
                                const SampleCallback& on_sample = {});

} // namespace sgnmod
