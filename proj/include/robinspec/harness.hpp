#pragma once

#include "robinspec/solvers.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robinspec::harness {

/// log|r| = log c + p log h by ordinary least squares.
struct PowerFit {
    double exponent = 0.0;
    /// 95% half-width (Student t)
    double exponent_ci = 0.0;
    double prefactor = 0.0;
    double sigma = 0.0;
    std::size_t points = 0;
    bool dropped_largest_h = false;
};

/// Needs at least 4 points after the optional drop. The largest-h point is dropped when its
/// residual against the fit of the remaining points exceeds 3 sigma of that fit.
PowerFit fit_power_law(std::span<const double> h, std::span<const double> remainder);

/// c minimizing sum (r - c h^p)^2
double fixed_power_coefficient(std::span<const double> h, std::span<const double> r, double p);

/// exponents of the successive remainders: 1, 3/2, 7/4, 2
inline constexpr double kLadder[4] = {1.0, 1.5, 1.75, 2.0};

/// mu, mu + h, mu + h + kappa h^{3/2}, then minus (2n - 1) omega h^{7/4}.
template <class Real>
std::vector<std::vector<Real>> ladder_remainders(const std::vector<Real>& h, const std::vector<Real>& mu, Real kappa_max,
                                                 Real third) {
    std::vector<std::vector<Real>> out(4, std::vector<Real>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) {
        using std::sqrt;
        Real q = sqrt(sqrt(h[i]));
        Real r = mu[i];
        out[0][i] = r;
        r += h[i];
        out[1][i] = r;
        r += kappa_max * h[i] * q * q;
        out[2][i] = r;
        r -= third * h[i] * q * q * q;
        out[3][i] = r;
    }
    return out;
}

struct SelfTest {
    std::vector<double> exponents;
    double max_error = 0.0;
    bool pass = false;
};

/// mu = -h - 2 h^{3/2} + 3 h^{7/4} on h = 2^{-8m}, evaluated and differenced in 512-bit arithmetic.
SelfTest synthetic_self_test(double tol = 1e-6);

struct SweepSpec {
    std::string curve_json;
    /// maximum to expand about; default: the unique one, else site 0
    std::optional<std::size_t> site;
    std::size_t samples = 1024;
    std::vector<double> h;
    std::vector<int> levels{1, 2};
    /// correction order M for the improved expansion
    int order = 1;
    bool run_collar = true;
    bool run_boundary = true;
    solvers::CollarGrid grid{160, 400, 8.0, std::nullopt};
    /// extrapolate collar eigenvalues from the grid and its doubling
    bool richardson = true;
    std::size_t boundary_modes = 256;
    std::uint64_t seed = 12345;
    double exponent_tol = 0.07;
    double coefficient_tol = 0.10;
    double gap_tol = 0.10;
    /// h used by the three-way check (nearest grid value)
    double three_way_h = 1.0 / 400.0;
    unsigned workers = 0;
};

struct Record {
    double h = 0.0;
    double gamma = 0.0;
    int n = 1;
    std::string method;
    double mu = NAN;
    double lambda = NAN;
    std::string error;

    bool ok() const { return error.empty(); }
    /// NaN equals NaN
    bool operator==(const Record&) const;
};

struct FitRecord {
    std::string name;
    int n = 1;
    std::string method;
    double expected = 0.0;
    double exponent = 0.0;
    double exponent_ci = 0.0;
    double prefactor = 0.0;
    /// least-squares coefficient at the expected exponent
    double coefficient = 0.0;
    std::size_t points = 0;
    bool dropped_largest_h = false;
    bool operator==(const FitRecord&) const = default;
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double target = 0.0;
    double tol = 0.0;
    std::string detail;
    bool operator==(const Check&) const;
};

struct ConvergenceReport {
    std::string curve;
    std::string version;
    std::uint64_t seed = 0;
    double kappa_max = 0.0;
    double k2 = 0.0;
    std::vector<std::string> warnings;
    std::vector<Record> records;
    std::vector<FitRecord> fits;
    std::vector<Check> checks;

    bool all_pass() const;
    bool operator==(const ConvergenceReport&) const = default;
};

ConvergenceReport verify(const SweepSpec& spec);

enum class Format { Csv, Json };
Format parse_format(const std::string& s);

std::string report_to_json(const ConvergenceReport& r);
ConvergenceReport report_from_json(const std::string& text);
/// one row per (h, n, method)
std::string records_to_csv(const std::vector<Record>& rows);
std::vector<Record> records_from_csv(const std::string& text);
std::string checks_to_csv(const ConvergenceReport& r);

/// json: PATH; csv: PATH (records), PATH.fits.csv, PATH.checks.csv
std::vector<std::string> report_emit(const ConvergenceReport& r, Format f, const std::string& path);

/// Curve with the selected maximum at s = 0, plus the half-width of its well
/// (empty when the maximum is unique and the whole boundary can be used).
struct PreparedCurve {
    geometry::CurvatureProfile profile;
    std::optional<double> window;
    std::vector<std::string> warnings;
};
PreparedCurve prepare_curve(const std::string& curve_json, std::optional<std::size_t> site, std::size_t samples = 1024);

/// Collar depth multiple capped at 95% of the smallest radius of curvature.
double safe_depth_mult(double requested, double h, double kappa_max);

}  // namespace robinspec::harness
