#include "robinspec/errors.hpp"
#include "robinspec/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace robinspec::solvers {

namespace {

// y = u'/u for -u'' - u'/r + k^2 u = 0, integrated from near 0 to R by Dormand-Prince 5(4).
double riccati_at(double k, double R) {
    auto f = [k](double r, double y) { return k * k - y * y - y / r; };
    double x0 = std::min(1e-3, 1e-3 * k * R);
    double r = x0 / k;
    double y = k * (x0 / 2.0 - x0 * x0 * x0 / 16.0 + std::pow(x0, 5) / 96.0);
    double dt = r;
    const double rtol = 1e-13, atol = 1e-13;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    int steps = 0;
    while (r < R) {
        if (++steps > 2000000) fail(ErrorCode::NotConverged, "radial integration did not finish");
        dt = std::min(dt, R - r);
        double k1 = f(r, y);
        double k2 = f(r + c2 * dt, y + dt * a21 * k1);
        double k3 = f(r + c3 * dt, y + dt * (a31 * k1 + a32 * k2));
        double k4 = f(r + c4 * dt, y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        double k5 = f(r + c5 * dt, y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        double k6 = f(r + dt, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        double yn = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        double k7 = f(r + dt, yn);
        double err = std::abs(dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        double sc = atol + rtol * std::max(std::abs(y), std::abs(yn));
        double ratio = err / sc;
        if (ratio <= 1.0) {
            r += dt;
            y = yn;
        }
        double fac = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        dt *= fac;
    }
    return y;
}

}  // namespace

ShootingResult shooting_disc(double R, double h, double tol) {
    if (!(R > 0.0) || !(h > 0.0)) fail(ErrorCode::InvalidArgument, "radius and h must be positive");
    const double rh = std::sqrt(h);
    auto F = [&](double k) { return rh * riccati_at(k, R) - 1.0; };
    double lo = 1e-8 / R, hi = 1.0 / rh + 2.0 / R;
    if (F(lo) >= 0.0) fail(ErrorCode::BracketFailure, "no sign change at the lower end");
    int grow = 0;
    while (F(hi) <= 0.0) {
        hi *= 2.0;
        if (++grow > 60) fail(ErrorCode::BracketFailure, "no sign change found");
    }
    ShootingResult res;
    while (hi - lo > 1e-15 * hi && res.bisections < 200) {
        double mid = 0.5 * (lo + hi);
        (F(mid) < 0.0 ? lo : hi) = mid;
        ++res.bisections;
    }
    double k = 0.5 * (lo + hi);
    res.robin_residual = std::abs(F(k));
    if (res.robin_residual > tol) fail(ErrorCode::NotConverged, "Robin residual " + std::to_string(res.robin_residual));
    res.mu = -h * h * k * k;
    return res;
}

}  // namespace robinspec::solvers
