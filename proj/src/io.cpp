#include "sgnmod/io.hpp"

#include "sgnmod/csv.hpp"
#include "sgnmod/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sgnmod::io {

using csv::format_double;

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

void expect_header(std::istream& in, const char* header, const char* what) {
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::invalid_argument(std::string(what) + ": missing or unexpected header");
    }
}

double number(const KeyValues& kv, const std::string& key) {
    try {
        return csv::parse_double(trim(kv.at(key)));
    } catch (const std::invalid_argument&) {
        throw DomainError("config: key '" + key + "' has non-numeric value '" + kv.at(key) + "'");
    }
}

long integer(const KeyValues& kv, const std::string& key) {
    try {
        return csv::parse_int(trim(kv.at(key)));
    } catch (const std::invalid_argument&) {
        throw DomainError("config: key '" + key + "' has non-integer value '" + kv.at(key) + "'");
    }
}

} // namespace

void write_field_csv(std::ostream& out, const SGNField& field) {
    out << "x,h,u\n";
    for (std::size_t i = 0; i < field.n_cells(); ++i) {
        out << format_double(field.x(i)) << ',' << format_double(field.h[i]) << ','
            << format_double(field.q[i] / field.h[i]) << '\n';
    }
}

SGNField read_field_csv(std::istream& in, double g) {
    expect_header(in, "x,h,u", "field csv");
    SGNField f;
    f.g = g;
    std::vector<double> x;
    std::string line;
    while (std::getline(in, line)) {
        const auto cols = csv::split_line(line);
        if (cols.size() != 3) {
            throw std::invalid_argument("field csv: expected 3 fields");
        }
        x.push_back(csv::parse_double(cols[0]));
        const double h = csv::parse_double(cols[1]);
        f.h.push_back(h);
        f.q.push_back(h * csv::parse_double(cols[2]));
    }
    if (x.size() < 2) {
        throw std::invalid_argument("field csv: need at least two rows");
    }
    f.dx = x[1] - x[0];
    return f;
}

void write_portrait_csv(std::ostream& out, const std::vector<PortraitPoint>& points) {
    out << "h,h_hdot\n";
    for (const auto& p : points) {
        out << format_double(p.h) << ',' << format_double(p.h_hdot) << '\n';
    }
}

std::vector<PortraitPoint> read_portrait_csv(std::istream& in) {
    expect_header(in, "h,h_hdot", "portrait csv");
    std::vector<PortraitPoint> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto cols = csv::split_line(line);
        if (cols.size() != 2) {
            throw std::invalid_argument("portrait csv: expected 2 fields");
        }
        out.push_back({csv::parse_double(cols[0]), csv::parse_double(cols[1])});
    }
    return out;
}

void write_series_header(std::ostream& out) { out << "t,mass,momentum,energy,h_min,h_max\n"; }

void write_series_row(std::ostream& out, const DiagnosticsSample& s) {
    out << format_double(s.t) << ',' << format_double(s.diag.mass) << ','
        << format_double(s.diag.momentum) << ',' << format_double(s.diag.energy) << ','
        << format_double(s.h_min) << ',' << format_double(s.h_max) << '\n';
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw DomainError("config line " + std::to_string(lineno) + ": empty key");
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open config file: " + path);
    }
    return parse_key_values(in);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) {
        return out;
    }
    for (auto part : csv::split_line(t)) {
        const std::string s = trim(std::string(part));
        try {
            out.push_back(csv::parse_double(s));
        } catch (const std::invalid_argument&) {
            throw DomainError("not a number in list: '" + s + "'");
        }
    }
    return out;
}

Limiter parse_limiter(const std::string& name) {
    if (name == "minmod") {
        return Limiter::minmod;
    }
    if (name == "van_leer") {
        return Limiter::van_leer;
    }
    if (name == "mc") {
        return Limiter::mc;
    }
    if (name == "none") {
        return Limiter::none;
    }
    throw DomainError("unknown limiter '" + name + "' (expected minmod, van_leer, mc or none)");
}

std::string limiter_name(Limiter limiter) {
    switch (limiter) {
    case Limiter::minmod:
        return "minmod";
    case Limiter::van_leer:
        return "van_leer";
    case Limiter::mc:
        return "mc";
    case Limiter::none:
        return "none";
    }
    return "unknown";
}

double SimulationConfig::resolved_t_end() const {
    if (t_end > 0.0) {
        return t_end;
    }
    const CnoidalWave w = make_cnoidal_wave(wave.roots, wave.g, wave.sign_m);
    return periods * w.L / std::abs(w.D);
}

bool SimulationConfig::long_running() const { return wave.N >= 50 || resolved_t_end() >= 200.0; }

SimulationConfig apply_simulation_keys(const KeyValues& kv, SimulationConfig base) {
    SimulationConfig c = std::move(base);
    for (const auto& [key, value] : kv) {
        if (key == "roots") {
            const auto r = parse_double_list(value);
            if (r.size() != 3) {
                throw DomainError("config: 'roots' needs three values h0,h1,h2");
            }
            c.wave.roots = {r[0], r[1], r[2]};
        } else if (key == "g") {
            c.wave.g = number(kv, key);
        } else if (key == "sign_m") {
            c.wave.sign_m = static_cast<int>(integer(kv, key));
        } else if (key == "N") {
            c.wave.N = static_cast<int>(integer(kv, key));
        } else if (key == "a") {
            c.wave.a = number(kv, key);
        } else if (key == "cells_per_wavelength") {
            c.wave.cells_per_wavelength = static_cast<int>(integer(kv, key));
        } else if (key == "cfl") {
            c.solver.cfl = number(kv, key);
        } else if (key == "limiter") {
            c.solver.limiter = parse_limiter(value);
        } else if (key == "t_end") {
            c.t_end = number(kv, key);
        } else if (key == "periods") {
            c.periods = number(kv, key);
        } else if (key == "checkpoints") {
            c.checkpoints = parse_double_list(value);
        } else if (key == "sample_every") {
            const long n = integer(kv, key);
            if (n < 1) {
                throw DomainError("config: 'sample_every' must be at least 1");
            }
            c.sample_every = static_cast<std::size_t>(n);
        } else {
            throw DomainError("config: unknown key '" + key + "'");
        }
    }
    c.wave.validate();
    if (!(c.solver.cfl > 0.0 && c.solver.cfl <= 0.9)) {
        throw DomainError("config: cfl must satisfy 0 < cfl <= 0.9");
    }
    if (c.t_end < 0.0 || !std::isfinite(c.t_end)) {
        throw DomainError("config: t_end must be positive");
    }
    if (c.t_end == 0.0 && !(c.periods > 0.0 && std::isfinite(c.periods))) {
        throw DomainError("config: periods must be positive");
    }
    const double t_end = c.resolved_t_end();
    for (double t : c.checkpoints) {
        if (!(t >= 0.0 && t <= t_end)) {
            throw DomainError("config: checkpoint " + format_double(t) + " outside [0, t_end]");
        }
    }
    return c;
}

void write_manifest(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [key, value] : entries) {
        out << key << " = " << value << '\n';
    }
}

} // namespace sgnmod::io
