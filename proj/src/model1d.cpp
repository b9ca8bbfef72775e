#include "robinspec/model1d.hpp"

#include "robinspec/errors.hpp"

#include <Eigen/Core>

#include <limits>

#include <cmath>
#include <numbers>

namespace robinspec::model1d {

HalflineSpectrum halfline_spectrum() { return {}; }

double halfline_ground_state(double tau) { return std::sqrt(2.0) * std::exp(-tau); }

Model1DConfig Model1DConfig::from_h(double h, double rho, double beta, std::size_t grid_n) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
    if (!(rho > 0.0 && rho < 1.0)) fail(ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
    return {std::pow(h, -rho), rho, h, beta, grid_n};
}

bool Model1DConfig::within_standing_bound() const { return std::abs(beta) * std::sqrt(h) * L < 1.0 / 3.0; }

double ModelEigenpair::operator()(double tau) const {
    return A * (std::exp(-w * tau) - std::exp(-2.0 * w * L) * std::exp(w * tau));
}

double transcendental_f(double v, double L) { return v - 1.0 + (v + 1.0) * std::exp(-2.0 * v * L); }

namespace {

// f(1 - d) in the variable d = 1 - v
double g_delta(double d, double L) { return -d + (2.0 - d) * std::exp(-2.0 * (1.0 - d) * L); }

double g_delta_prime(double d, double L) {
    double e = std::exp(-2.0 * (1.0 - d) * L);
    return -1.0 - e + (2.0 - d) * 2.0 * L * e;
}

double bisect(double lo, double hi, auto&& f, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ModelEigenpair solve_transcendental(double L) {
    if (!(L >= 1.0)) fail(ErrorCode::NoRoot, "L must be at least 1");
    auto g = [L](double d) { return g_delta(d, L); };
    double lo = 0.0, hi = 0.5;
    if (!(g(lo) > 0.0 && g(hi) < 0.0)) {
        // scan v in (0, 1) for the sign change, away from the trivial root v = 0
        bool found = false;
        const int n = 4000;
        for (int i = n - 1; i >= 1 && !found; --i) {
            double d1 = static_cast<double>(i) / n, d0 = static_cast<double>(i - 1) / n;
            if (g(d0) > 0.0 && g(d1) < 0.0) {
                lo = d0;
                hi = d1;
                found = true;
            }
        }
        if (!found) fail(ErrorCode::NoRoot, "no sign change of the eigenvalue equation");
    }
    double d = bisect(lo, hi, g);
    for (int it = 0; it < 5; ++it) {
        double step = g(d) / g_delta_prime(d, L);
        d -= step;
        if (std::abs(step) <= 1e-17 * std::max(d, 1e-300)) break;
    }
    ModelEigenpair r;
    r.L = L;
    r.w = 1.0 - d;
    r.lambda = -r.w * r.w;
    r.lambda_plus_one = d * (2.0 - d);
    r.root_residual = std::abs(transcendental_f(r.w, L));
    double w = r.w, e2 = std::exp(-2.0 * w * L), e4 = e2 * e2;
    double norm2 = (1.0 - e2) / (2.0 * w) - 2.0 * L * e2 + (e2 - e4) / (2.0 * w);
    r.A = 1.0 / std::sqrt(norm2);

    auto tk = [L](double k) { return std::sin(k * L) - k * std::cos(k * L); };
    double k = bisect(std::numbers::pi / L, 1.5 * std::numbers::pi / L, tk);
    r.lambda2 = k * k;
    int changes = 0;
    const int n = 4000;
    double prev = transcendental_f(1.0 / n, L);
    for (int i = 2; i <= n; ++i) {
        double cur = transcendental_f(static_cast<double>(i) / n, L);
        if ((cur > 0.0) != (prev > 0.0)) ++changes;
        prev = cur;
    }
    r.second_nonnegative = changes == 1 && r.lambda2 >= 0.0;
    return r;
}

namespace {

// Sturm count: number of eigenvalues below x.
std::size_t count_below(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double x) {
    std::size_t c = 0;
    double q = 1.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        double off = i > 0 ? sub(i - 1) * sub(i - 1) : 0.0;
        q = diag(i) - x - (i > 0 ? off / q : 0.0);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++c;
    }
    return c;
}

std::vector<double> tridiagonal_lowest(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, std::size_t k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        double r = (i > 0 ? std::abs(sub(i - 1)) : 0.0) + (i + 1 < diag.size() ? std::abs(sub(i)) : 0.0);
        lo = std::min(lo, diag(i) - r);
        hi = std::max(hi, diag(i) + r);
    }
    std::vector<double> out;
    k = std::min<std::size_t>(k, static_cast<std::size_t>(diag.size()));
    for (std::size_t j = 0; j < k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (count_below(diag, sub, mid) > j)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// K u = lambda M u with M diagonal, symmetrized as M^{-1/2} K M^{-1/2}.
std::vector<double> weighted_form_eigs(double L, std::size_t per_unit, double b, std::size_t k) {
    if (per_unit < 100) fail(ErrorCode::InvalidArgument, "grid_n must be at least 100");
    auto n = static_cast<std::size_t>(std::ceil(static_cast<double>(per_unit) * L - 1e-9));
    n = std::max<std::size_t>(n, 8);
    double dx = L / static_cast<double>(n);
    auto a = [b](double tau) { return 1.0 - b * tau; };
    Eigen::VectorXd kd = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd ko(static_cast<Eigen::Index>(n - 1)), m(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double wedge = a((static_cast<double>(i) + 0.5) * dx) / dx;
        kd(static_cast<Eigen::Index>(i)) += wedge;
        if (i + 1 < n) {
            kd(static_cast<Eigen::Index>(i + 1)) += wedge;
            ko(static_cast<Eigen::Index>(i)) = -wedge;
        }
        m(static_cast<Eigen::Index>(i)) = a(static_cast<double>(i) * dx) * dx * (i == 0 ? 0.5 : 1.0);
    }
    kd(0) -= 1.0;
    Eigen::VectorXd is = m.cwiseSqrt().cwiseInverse();
    Eigen::VectorXd diag = kd.cwiseProduct(is).cwiseProduct(is);
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
    for (std::size_t i = 0; i + 1 < n; ++i)
        sub(static_cast<Eigen::Index>(i)) = ko(static_cast<Eigen::Index>(i)) * is(static_cast<Eigen::Index>(i)) *
                                           is(static_cast<Eigen::Index>(i + 1));
    return tridiagonal_lowest(diag, sub, k);
}

}  // namespace

std::vector<double> fd_eigs_H0h(const Model1DConfig& cfg, std::size_t k) {
    if (!(cfg.L > 0.0)) fail(ErrorCode::InvalidArgument, "L must be positive");
    return weighted_form_eigs(cfg.L, cfg.grid_n, 0.0, k);
}

std::vector<double> fd_eigs_Hbetah(const Model1DConfig& cfg, std::size_t k) {
    if (!(cfg.L > 0.0)) fail(ErrorCode::InvalidArgument, "L must be positive");
    double b = cfg.beta * std::sqrt(cfg.h);
    if (!(1.0 - b * cfg.L > 0.0)) fail(ErrorCode::WeightNotPositive, "1 - beta h^{1/2} L <= 0");
    return weighted_form_eigs(cfg.L, cfg.grid_n, b, k);
}

}  // namespace robinspec::model1d
