// sgnmod command-line front end: wave, eigen, scan, simulate.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical degeneracy,
// 4 solver failure.

#include "sgnmod/csv.hpp"
#include "sgnmod/errors.hpp"
#include "sgnmod/io.hpp"
#include "sgnmod/modulation.hpp"
#include "sgnmod/scan.hpp"
#include "sgnmod/sgn_solver.hpp"
#include "sgnmod/traveling_wave.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef SGNMOD_VERSION
#define SGNMOD_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using sgnmod::csv::format_double;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSolver = 4;

// Thrown for input problems detected in the front end itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::vector<double> roots{1.0, 1.5, 2.0};
    double g = 10.0;
    int sign = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--roots", args.roots, "h0,h1,h2")->delimiter(',')->expected(3);
    cmd->add_option("--g", args.g, "gravity");
    cmd->add_option("--sign", args.sign, "sign of the mass flux m (+1 or -1)");
}

sgnmod::RootTriple checked_roots(const CommonArgs& args) {
    if (args.roots.size() != 3) {
        throw UsageError("--roots needs exactly three values");
    }
    if (!(args.g > 0.0) || !std::isfinite(args.g)) {
        throw UsageError("--g must be positive");
    }
    if (args.sign != 1 && args.sign != -1) {
        throw UsageError("--sign must be +1 or -1");
    }
    const sgnmod::RootTriple r{args.roots[0], args.roots[1], args.roots[2]};
    r.validate_nondegenerate();
    return r;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot open output file: " + path);
    }
    return out;
}

void print_kv(const std::string& key, double value) {
    std::cout << key << " = " << format_double(value) << '\n';
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

// ---- wave ---------------------------------------------------------------

struct WaveArgs {
    CommonArgs common;
    int samples = 256;
    std::string out = "wave.csv";
};

int cmd_wave(const WaveArgs& args) {
    if (args.samples < 16) {
        throw UsageError("--samples must be at least 16");
    }
    const auto roots = checked_roots(args.common);
    const auto wave = sgnmod::make_cnoidal_wave(roots, args.common.g, args.common.sign);
    const auto [k, n] = sgnmod::modulus_from_roots(roots);

    std::ofstream out = open_output(args.out);
    out << "xi,h,u\n";
    for (int j = 0; j < args.samples; ++j) {
        const double xi = wave.L * j / (args.samples - 1);
        const double h = sgnmod::profile(wave, xi);
        out << format_double(xi) << ',' << format_double(h) << ','
            << format_double(sgnmod::velocity_from_depth(h, wave.constants, wave.D)) << '\n';
    }

    print_kv("L", wave.L);
    print_kv("D", wave.D);
    print_kv("m", wave.constants.m);
    print_kv("i", wave.constants.i);
    print_kv("epsilon", wave.constants.epsilon);
    print_kv("h_bar", sgnmod::averaged_h(roots));
    print_kv("hinv_bar", sgnmod::averaged_hinv(roots));
    print_kv("k", k);
    print_kv("n", n);
    std::cout << "profile = " << args.out << '\n';
    return kExitOk;
}

// ---- eigen --------------------------------------------------------------

struct EigenArgs {
    CommonArgs common;
    std::optional<double> D;
    std::optional<double> U;
};

int cmd_eigen(const EigenArgs& args) {
    const auto roots = checked_roots(args.common);
    sgnmod::ModulationState state;
    if (args.D) {
        state = sgnmod::ModulationState::with_mean_velocity(roots, args.common.g, args.common.sign);
        state.D = *args.D;
    } else {
        state = sgnmod::ModulationState::with_mean_velocity(roots, args.common.g, args.common.sign,
                                                            args.U.value_or(0.0));
    }
    const auto eig = sgnmod::characteristic_eigenvalues(sgnmod::assemble_AB(state));
    print_kv("D", state.D);
    print_kv("U", state.mean_velocity());
    for (int j = 0; j < 4; ++j) {
        std::cout << "lambda" << j + 1 << " = " << format_double(eig.roots[j].real());
        if (eig.roots[j].imag() != 0.0) {
            std::cout << (eig.roots[j].imag() > 0 ? " + " : " - ")
                      << format_double(std::abs(eig.roots[j].imag())) << "i";
        }
        std::cout << '\n';
    }
    std::cout << "n_positive = " << eig.n_positive << '\n';
    std::cout << "n_negative = " << eig.n_negative << '\n';
    print_kv("resultant", eig.resultant);
    print_kv("max_imag", eig.max_imag);
    std::cout << "all_real = " << (eig.all_real ? "yes" : "no") << '\n';
    std::cout << "distinct = " << (eig.distinct ? "yes" : "no") << '\n';
    std::cout << "strictly hyperbolic: " << (eig.all_real && eig.distinct ? "yes" : "no") << '\n';
    return kExitOk;
}

// ---- scan ---------------------------------------------------------------

struct ScanArgs {
    sgnmod::ScanWindow window;
    unsigned threads = 0;
    std::string out = "scan.csv";
    std::string plot = "scan_plot.py";
};

void write_plot_script(const std::string& path, const std::string& csv_path) {
    std::ofstream out = open_output(path);
    out << "# Renders the resultant sign map and the eigenvalue sign-pattern map.\n"
        << "import sys\n"
        << "import numpy as np\n"
        << "import matplotlib\n"
        << "matplotlib.use('Agg')\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "path = sys.argv[1] if len(sys.argv) > 1 else " << std::quoted(csv_path) << "\n"
        << "d = np.genfromtxt(path, delimiter=',', names=True)\n"
        << "s = np.unique(d['s'])\n"
        << "tau = np.unique(d['tau'])\n"
        << "shape = (len(s), len(tau))\n"
        << "extent = [tau[0], tau[-1], s[0], s[-1]]\n\n"
        << "sign = np.sign(d['resultant']).reshape(shape)\n"
        << "fig, ax = plt.subplots(figsize=(6, 5))\n"
        << "im = ax.imshow(sign, origin='lower', extent=extent, aspect='auto', cmap='coolwarm',\n"
        << "               vmin=-1, vmax=1)\n"
        << "ax.set_xlabel('tau')\n"
        << "ax.set_ylabel('s')\n"
        << "ax.set_title('sign of Res(p, dp/dlambda)')\n"
        << "fig.colorbar(im, ax=ax)\n"
        << "fig.savefig('resultant_sign.png', dpi=150)\n\n"
        << "npos = d['n_positive'].reshape(shape)\n"
        << "fig, ax = plt.subplots(figsize=(6, 5))\n"
        << "im = ax.imshow(npos, origin='lower', extent=extent, aspect='auto', cmap='Greys',\n"
        << "               vmin=1, vmax=4)\n"
        << "ax.set_xlabel('tau')\n"
        << "ax.set_ylabel('s')\n"
        << "ax.set_title('number of positive eigenvalues')\n"
        << "fig.colorbar(im, ax=ax)\n"
        << "fig.savefig('sign_regions.png', dpi=150)\n";
}

int cmd_scan(const ScanArgs& args) {
    args.window.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = sgnmod::scan_region(args.window, args.threads);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    {
        std::ofstream out = open_output(args.out);
        sgnmod::write_scan_csv(out, result.records);
    }
    write_plot_script(args.plot, args.out);

    const int failures = result.failures();
    for (std::size_t j = 0; j < result.errors.size(); ++j) {
        if (!result.errors[j].empty()) {
            std::cerr << "point s=" << format_double(result.records[j].s)
                      << " tau=" << format_double(result.records[j].tau) << ": " << result.errors[j]
                      << '\n';
        }
    }
    const auto rows = result.transitions_per_row();
    int single = 0;
    for (int t : rows) {
        single += t == 1 ? 1 : 0;
    }
    const std::size_t total = result.records.size();
    std::cout << "points = " << total << '\n';
    std::cout << "failures = " << failures << '\n';
    std::cout << "all hyperbolic: " << (result.all_hyperbolic() ? "yes" : "no") << '\n';
    std::cout << "resultant sign constant: " << (result.resultant_sign_constant() ? "yes" : "no") << '\n';
    std::cout << "sign classes =";
    for (const auto& c : result.sign_classes()) {
        std::cout << " (" << c[0] << "+," << c[1] << "-)";
    }
    std::cout << '\n';
    std::cout << "rows with one transition = " << single << '/' << rows.size() << '\n';
    std::cout << "elapsed_s = " << format_double(elapsed) << '\n';
    std::cout << "csv = " << args.out << '\n';
    std::cout << "plot script = " << args.plot << '\n';
    if (static_cast<double>(failures) > 0.01 * static_cast<double>(total)) {
        std::cerr << "more than 1% of scan points failed\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out_dir = "sim_out";
    std::optional<double> t_end;
    std::optional<double> periods;
    std::optional<std::string> checkpoints;
    std::optional<int> N;
    std::optional<double> a;
    std::optional<int> cells;
    std::optional<double> cfl;
    std::optional<std::string> limiter;
    bool dry_run = false;
};

std::string checkpoint_name(const char* stem, std::size_t index) {
    std::ostringstream os;
    os << stem << '_' << std::setw(3) << std::setfill('0') << index << ".csv";
    return os.str();
}

int cmd_simulate(const SimulateArgs& args) {
    if (!fs::exists(args.config)) {
        throw UsageError("config file not found: " + args.config);
    }
    sgnmod::io::KeyValues kv = sgnmod::io::read_key_values_file(args.config);
    // Flags override file values.
    if (args.t_end) {
        kv["t_end"] = format_double(*args.t_end);
    }
    if (args.periods) {
        kv["periods"] = format_double(*args.periods);
    }
    if (args.checkpoints) {
        kv["checkpoints"] = *args.checkpoints;
    }
    if (args.N) {
        kv["N"] = std::to_string(*args.N);
    }
    if (args.a) {
        kv["a"] = format_double(*args.a);
    }
    if (args.cells) {
        kv["cells_per_wavelength"] = std::to_string(*args.cells);
    }
    if (args.cfl) {
        kv["cfl"] = format_double(*args.cfl);
    }
    if (args.limiter) {
        kv["limiter"] = *args.limiter;
    }
    const sgnmod::io::SimulationConfig cfg = sgnmod::io::apply_simulation_keys(kv);
    const double t_end = cfg.resolved_t_end();
    const auto wave = sgnmod::make_cnoidal_wave(cfg.wave.roots, cfg.wave.g, cfg.wave.sign_m);
    const std::size_t n_cells = static_cast<std::size_t>(cfg.wave.N) * cfg.wave.cells_per_wavelength;

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec || !fs::is_directory(args.out_dir)) {
        throw UsageError("cannot create output directory: " + args.out_dir);
    }
    const fs::path dir(args.out_dir);

    std::vector<std::pair<std::string, std::string>> manifest{
        {"code_version", SGNMOD_VERSION},
        {"config_file", args.config},
        {"roots", format_double(cfg.wave.roots.h0) + "," + format_double(cfg.wave.roots.h1) + "," +
                      format_double(cfg.wave.roots.h2)},
        {"g", format_double(cfg.wave.g)},
        {"sign_m", std::to_string(cfg.wave.sign_m)},
        {"N", std::to_string(cfg.wave.N)},
        {"a", format_double(cfg.wave.a)},
        {"cells_per_wavelength", std::to_string(cfg.wave.cells_per_wavelength)},
        {"cfl", format_double(cfg.solver.cfl)},
        {"limiter", sgnmod::io::limiter_name(cfg.solver.limiter)},
        {"t_end", format_double(t_end)},
        {"n_cells", std::to_string(n_cells)},
        {"dx", format_double(wave.L / cfg.wave.cells_per_wavelength)},
        {"domain_length", format_double(cfg.wave.N * wave.L)},
        {"wavelength", format_double(wave.L)},
        {"phase_speed", format_double(wave.D)},
        {"period", format_double(wave.L / std::abs(wave.D))},
        {"long_running", cfg.long_running() ? "yes" : "no"},
        {"started_utc", utc_now()},
    };
    auto write_manifest = [&](const std::vector<std::pair<std::string, std::string>>& extra) {
        std::ofstream out = open_output((dir / "manifest.txt").string());
        auto all = manifest;
        all.insert(all.end(), extra.begin(), extra.end());
        sgnmod::io::write_manifest(out, all);
    };

    if (args.dry_run) {
        write_manifest({{"status", "dry-run"}});
        std::cout << "long_running = " << (cfg.long_running() ? "yes" : "no") << '\n';
        std::cout << "manifest = " << (dir / "manifest.txt").string() << '\n';
        return kExitOk;
    }

    std::ofstream series = open_output((dir / "diagnostics.csv").string());
    sgnmod::io::write_series_header(series);
    std::vector<std::string> written;
    std::size_t index = 0;
    auto on_checkpoint = [&](const sgnmod::Checkpoint& c) {
        const std::string field_name = checkpoint_name("field", index);
        const std::string portrait_name = checkpoint_name("portrait", index);
        {
            std::ofstream f = open_output((dir / field_name).string());
            sgnmod::io::write_field_csv(f, c.field);
        }
        {
            std::ofstream f = open_output((dir / portrait_name).string());
            sgnmod::io::write_portrait_csv(f, c.portrait);
        }
        written.push_back(format_double(c.field.t) + ":" + field_name + ":" + portrait_name);
        ++index;
        std::cout << "checkpoint t = " << format_double(c.field.t) << '\n' << std::flush;
    };
    auto on_sample = [&](const sgnmod::DiagnosticsSample& s) {
        sgnmod::io::write_series_row(series, s);
        series.flush();
    };

    auto joined = [&] {
        std::string s;
        for (std::size_t j = 0; j < written.size(); ++j) {
            s += (j ? ";" : "") + written[j];
        }
        return s;
    };
    try {
        // The final state is always written.
        std::vector<double> times = cfg.checkpoints;
        times.push_back(t_end);
        const auto result = sgnmod::run_experiment(cfg.wave, t_end, times, cfg.solver,
                                                   on_checkpoint, cfg.sample_every, on_sample);
        write_manifest({{"finished_utc", utc_now()},
                        {"status", "completed"},
                        {"steps", std::to_string(result.steps)},
                        {"h_min", format_double(result.h_min)},
                        {"h_max", format_double(result.h_max)},
                        {"checkpoints", joined()}});
        std::cout << "steps = " << result.steps << '\n';
        std::cout << "h_min = " << format_double(result.h_min) << '\n';
        std::cout << "h_max = " << format_double(result.h_max) << '\n';
    } catch (const sgnmod::SolverError& e) {
        write_manifest({{"finished_utc", utc_now()},
                        {"status", std::string("failed: ") + e.what()},
                        {"checkpoints", joined()}});
        throw;
    }
    std::cout << "manifest = " << (dir / "manifest.txt").string() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cnoidal waves, modulation analysis and SGN simulations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SGNMOD_VERSION);

    WaveArgs wave;
    auto* wave_cmd = app.add_subcommand("wave", "construct a cnoidal wave and sample one period");
    add_common(wave_cmd, wave.common);
    wave_cmd->add_option("--samples", wave.samples, "profile samples over one period (>= 16)");
    wave_cmd->add_option("--out", wave.out, "profile CSV path");

    EigenArgs eigen;
    auto* eigen_cmd = app.add_subcommand("eigen", "characteristic eigenvalues of the modulation system");
    add_common(eigen_cmd, eigen.common);
    auto* d_opt = eigen_cmd->add_option("--D", eigen.D, "phase speed (default: D giving U = 0)");
    auto* u_opt = eigen_cmd->add_option("--galilean-U", eigen.U, "mean velocity U; D follows");
    d_opt->excludes(u_opt);

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "hyperbolicity scan over the (s, tau) plane");
    scan_cmd->add_option("--s-min", scan.window.s_min);
    scan_cmd->add_option("--s-max", scan.window.s_max);
    scan_cmd->add_option("--tau-min", scan.window.tau_min);
    scan_cmd->add_option("--tau-max", scan.window.tau_max);
    scan_cmd->add_option("--grid", scan.window.grid_n, "points per axis");
    scan_cmd->add_option("--g", scan.window.g);
    scan_cmd->add_option("--sign", scan.window.sign_m);
    scan_cmd->add_option("--threads", scan.threads, "worker threads (0 = all cores)");
    scan_cmd->add_option("--out", scan.out, "scan CSV path");
    scan_cmd->add_option("--plot-script", scan.plot, "matplotlib script path");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run the wave-train experiment");
    sim_cmd->add_option("--config", sim.config, "key = value config file")->required();
    sim_cmd->add_option("--out-dir", sim.out_dir);
    sim_cmd->add_option("--t-end", sim.t_end, "end time in seconds");
    sim_cmd->add_option("--periods", sim.periods, "end time in wave periods");
    sim_cmd->add_option("--checkpoints", sim.checkpoints, "comma-separated output times");
    sim_cmd->add_option("--N", sim.N);
    sim_cmd->add_option("--a", sim.a);
    sim_cmd->add_option("--cells-per-wavelength", sim.cells);
    sim_cmd->add_option("--cfl", sim.cfl);
    sim_cmd->add_option("--limiter", sim.limiter);
    sim_cmd->add_flag("--dry-run", sim.dry_run, "validate and write the manifest only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*wave_cmd) {
            return cmd_wave(wave);
        }
        if (*eigen_cmd) {
            return cmd_eigen(eigen);
        }
        if (*scan_cmd) {
            return cmd_scan(scan);
        }
        return cmd_simulate(sim);
    } catch (const sgnmod::DegenerateRootsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const sgnmod::DegeneratePencilError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const sgnmod::SingularConfigurationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const sgnmod::SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const sgnmod::QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}
