#include "sgnmod/scan.hpp"

#include "sgnmod/csv.hpp"
#include "sgnmod/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace sgnmod {

namespace {

constexpr const char* kHeader =
    "s,tau,lambda1,lambda2,lambda3,lambda4,max_imag,resultant,n_positive,n_negative,all_real,distinct";

double grid_value(double lo, double hi, int j, int n) {
    if (j == n - 1) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
}

} // namespace

void ScanWindow::validate() const {
    const bool finite = std::isfinite(s_min) && std::isfinite(s_max) && std::isfinite(tau_min) &&
                        std::isfinite(tau_max) && std::isfinite(g);
    if (!finite) {
        throw DomainError("scan window: bounds must be finite");
    }
    if (!(s_min > 1.0)) {
        throw DomainError("scan window: s_min must exceed 1");
    }
    if (!(tau_min > 0.0)) {
        throw DomainError("scan window: tau_min must be positive");
    }
    if (!(s_max >= s_min) || !(tau_max >= tau_min)) {
        throw DomainError("scan window: max bounds must not be below min bounds");
    }
    if (grid_n < 2) {
        throw DomainError("scan window: grid_n must be at least 2");
    }
    if (!(g > 0.0)) {
        throw DomainError("scan window: g must be positive");
    }
    if (sign_m != 1 && sign_m != -1) {
        throw DomainError("scan window: sign_m must be +1 or -1");
    }
}

double ScanWindow::s_at(int a) const { return grid_value(s_min, s_max, a, grid_n); }
double ScanWindow::tau_at(int b) const { return grid_value(tau_min, tau_max, b, grid_n); }

ScanRecord classify_point(double s, double tau, double g, int sign_m) {
    const RootTriple roots{1.0, s, s + tau};
    const auto state = ModulationState::with_mean_velocity(roots, g, sign_m, 0.0);
    const EigenClassification eig = characteristic_eigenvalues(assemble_AB(state));
    ScanRecord r;
    r.s = s;
    r.tau = tau;
    for (int j = 0; j < 4; ++j) {
        r.lambda[j] = eig.roots[j].real();
    }
    r.max_imag = eig.max_imag;
    r.resultant = eig.resultant;
    r.n_positive = eig.n_positive;
    r.n_negative = eig.n_negative;
    r.all_real = eig.all_real;
    r.distinct = eig.distinct;
    return r;
}

ScanResult scan_region(const ScanWindow& window, unsigned threads) {
    window.validate();
    const std::size_t n = static_cast<std::size_t>(window.grid_n);
    const std::size_t total = n * n;
    ScanResult result;
    result.window = window;
    result.records.resize(total);
    result.errors.assign(total, std::string());

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            const int a = static_cast<int>(idx / n);
            const int b = static_cast<int>(idx % n);
            const double s = window.s_at(a);
            const double tau = window.tau_at(b);
            try {
                result.records[idx] = classify_point(s, tau, window.g, window.sign_m);
            } catch (const std::exception& e) {
                ScanRecord r;
                r.s = s;
                r.tau = tau;
                r.lambda.fill(std::nan(""));
                r.max_imag = std::nan("");
                r.resultant = std::nan("");
                result.records[idx] = r;
                result.errors[idx] = e.what();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return result;
}

int ScanResult::failures() const {
    return static_cast<int>(std::count_if(errors.begin(), errors.end(),
                                          [](const std::string& e) { return !e.empty(); }));
}

bool ScanResult::all_hyperbolic() const {
    if (failures() > 0) {
        return false;
    }
    return std::all_of(records.begin(), records.end(),
                       [](const ScanRecord& r) { return r.all_real && r.distinct; });
}

bool ScanResult::resultant_sign_constant() const {
    int sign = 0;
    for (std::size_t j = 0; j < records.size(); ++j) {
        if (!errors[j].empty()) {
            return false;
        }
        const double r = records[j].resultant;
        const int sj = r > 0.0 ? 1 : (r < 0.0 ? -1 : 0);
        if (sj == 0) {
            return false;
        }
        if (sign == 0) {
            sign = sj;
        } else if (sj != sign) {
            return false;
        }
    }
    return sign != 0;
}

std::vector<int> ScanResult::transitions_per_row() const {
    const std::size_t n = static_cast<std::size_t>(window.grid_n);
    std::vector<int> out(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 1; b < n; ++b) {
            const ScanRecord& p = records[a * n + b - 1];
            const ScanRecord& c = records[a * n + b];
            if (p.n_positive != c.n_positive || p.n_negative != c.n_negative) {
                ++out[a];
            }
        }
    }
    return out;
}

std::vector<std::array<int, 2>> ScanResult::sign_classes() const {
    std::vector<std::array<int, 2>> out;
    for (std::size_t j = 0; j < records.size(); ++j) {
        if (!errors[j].empty()) {
            continue;
        }
        const std::array<int, 2> c{records[j].n_positive, records[j].n_negative};
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
    using csv::format_double;
    out << kHeader << '\n';
    for (const ScanRecord& r : records) {
        out << csv::join({format_double(r.s), format_double(r.tau), format_double(r.lambda[0]),
                          format_double(r.lambda[1]), format_double(r.lambda[2]),
                          format_double(r.lambda[3]), format_double(r.max_imag),
                          format_double(r.resultant), std::to_string(r.n_positive),
                          std::to_string(r.n_negative), r.all_real ? "1" : "0",
                          r.distinct ? "1" : "0"})
            << '\n';
    }
}

std::vector<ScanRecord> read_scan_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw std::invalid_argument("scan csv: missing or unexpected header");
    }
    std::vector<ScanRecord> out;
    while (std::getline(in, line)) {
        const auto f = csv::split_line(line);
        if (f.size() != 12) {
            throw std::invalid_argument("scan csv: expected 12 fields, got " + std::to_string(f.size()));
        }
        ScanRecord r;
        r.s = csv::parse_double(f[0]);
        r.tau = csv::parse_double(f[1]);
        for (int j = 0; j < 4; ++j) {
            r.lambda[j] = csv::parse_double(f[2 + j]);
        }
        r.max_imag = csv::parse_double(f[6]);
        r.resultant = csv::parse_double(f[7]);
        r.n_positive = static_cast<int>(csv::parse_int(f[8]));
        r.n_negative = static_cast<int>(csv::parse_int(f[9]));
        r.all_real = csv::parse_int(f[10]) != 0;
        r.distinct = csv::parse_int(f[11]) != 0;
        out.push_back(r);
    }
    return out;
}

} // namespace sgnmod
