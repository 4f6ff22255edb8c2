#pragma once

#include "sgnmod/modulation.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace sgnmod {

// Rectangle in the (s, tau) plane with h0 = 1, h1 = s, h2 = s + tau.
// The defaults keep a 1e-3 margin from the degenerate edges s = 1 and
// tau = 0.
struct ScanWindow {
    double s_min = 1.001;
    double s_max = 100.0;
    double tau_min = 0.001;
    double tau_max = 100.0;
    int grid_n = 50;
    double g = 10.0;
    int sign_m = -1;

    // Throws DomainError on an invalid window.
    void validate() const;
    double s_at(int a) const;
    double tau_at(int b) const;
};

// One scanned point, flattened to what the CSV carries.
struct ScanRecord {
    double s = 0.0;
    double tau = 0.0;
    std::array<double, 4> lambda{};  // real parts, ascending
    double max_imag = 0.0;
    double resultant = 0.0;
    int n_positive = 0;
    int n_negative = 0;
    bool all_real = false;
    bool distinct = false;
};

struct ScanResult {
    ScanWindow window;
    // Row-major: index = a * grid_n + b for s index a and tau index b.
    std::vector<ScanRecord> records;
    // Empty string where the point succeeded.
    std::vector<std::string> errors;

    int failures() const;
    bool all_hyperbolic() const;
    bool resultant_sign_constant() const;
    // Number of sign-pattern changes along tau for each fixed s.
    std::vector<int> transitions_per_row() const;
    // Distinct (n_positive, n_negative) pairs among successful points.
    std::vector<std::array<int, 2>> sign_classes() const;
};

// Classifies the pencil at every grid point with U = 0. Work is spread
// over `threads` workers (0 picks the hardware concurrency); the result
// does not depend on the thread count. Per-point exceptions are
// recorded in `errors`.
ScanResult scan_region(const ScanWindow& window, unsigned threads = 0);

ScanRecord classify_point(double s, double tau, double g, int sign_m);

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_scan_csv(std::istream& in);

} // namespace sgnmod
