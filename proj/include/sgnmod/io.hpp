#pragma once

#include "sgnmod/sgn_solver.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sgnmod::io {

// Field checkpoint: header "x,h,u", one row per cell.
void write_field_csv(std::ostream& out, const SGNField& field);
// Reads x,h,u rows back into a field with the given g; dx is taken from
// the spacing of the x column. Throws std::invalid_argument.
SGNField read_field_csv(std::istream& in, double g);

// Phase portrait: header "h,h_hdot".
void write_portrait_csv(std::ostream& out, const std::vector<PortraitPoint>& points);
std::vector<PortraitPoint> read_portrait_csv(std::istream& in);

// Diagnostics time series: header "t,mass,momentum,energy,h_min,h_max".
void write_series_header(std::ostream& out);
void write_series_row(std::ostream& out, const DiagnosticsSample& s);

// Flat "key = value" text. '#' starts a comment; blank lines are
// skipped. Later keys override earlier ones.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

// Simulation schema (all keys optional):
//   roots = h0,h1,h2       g = 10        sign_m = -1
//   N = 5                  a = 0.001     cells_per_wavelength = 400
//   cfl = 0.45             limiter = van_leer|minmod|mc|none
//   t_end = <seconds>      checkpoints = t1,t2,...
//   periods = <count>      (t_end in wave periods L/|D|, if t_end unset)
//   sample_every = 10
struct SimulationConfig {
    WaveTrainConfig wave;
    SolverOptions solver;
    double t_end = 0.0;  // 0 means "use periods"
    double periods = 1.0;
    std::vector<double> checkpoints;
    std::size_t sample_every = 10;

    // End time in seconds after resolving `periods`.
    double resolved_t_end() const;
    // Full-scale runs (N >= 50 or t_end >= 200 s) take hours.
    bool long_running() const;
};

// Applies known keys onto `base`; unknown keys throw DomainError naming
// the key, malformed values throw DomainError naming key and value.
SimulationConfig apply_simulation_keys(const KeyValues& kv, SimulationConfig base = {});

Limiter parse_limiter(const std::string& name);
std::string limiter_name(Limiter limiter);

// Parses "a,b,c" into doubles; throws DomainError.
std::vector<double> parse_double_list(const std::string& text);

// Manifest of a run as "key = value" lines, in the given order.
void write_manifest(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace sgnmod::io
