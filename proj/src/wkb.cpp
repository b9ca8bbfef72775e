#include "robinspec/wkb.hpp"

#include "robinspec/errors.hpp"
#include "robinspec/spectral_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace robinspec::wkb {

using geometry::CurvatureProfile;
using D = ConjugatedTerm::D;

double inv_square_coeff(int j) { return j + 1.0; }
double inv_cube_coeff(int j) { return (j + 1.0) * (j + 2.0) / 2.0; }

std::vector<ConjugatedTerm> conjugated_operator(int p) {
    std::vector<ConjugatedTerm> t;
    if (p < 0) return t;
    // Q_0 = -d_tau^2 is the model operator; the iteration inverts it directly
    if (p == 0) return t;
    // h^{1/2} kappa a^{-1} d_tau
    if (p % 2 == 0) {
        int j = p / 2 - 1;
        t.push_back({1.0, j, j + 1, 0, 0, 0, D::DTau});
    }
    // -h a^{-2} (d_s - h^{-1/4} theta')^2
    if (p % 2 == 0 && p >= 4) {
        int j = (p - 4) / 2;
        t.push_back({-inv_square_coeff(j), j, j, 0, 0, 0, D::DS2});
    }
    if (p % 2 == 1 && p >= 3) {
        int j = (p - 3) / 2;
        t.push_back({2.0 * inv_square_coeff(j), j, j, 0, 1, 0, D::DS});
        t.push_back({inv_square_coeff(j), j, j, 0, 0, 1, D::None});
    }
    if (p % 2 == 0 && p >= 2) {
        int j = (p - 2) / 2;
        t.push_back({-inv_square_coeff(j), j, j, 0, 2, 0, D::None});
    }
    // -h^{3/2} tau kappa' a^{-3} (d_s - h^{-1/4} theta')
    if (p % 2 == 0 && p >= 6) {
        int j = (p - 6) / 2;
        t.push_back({-inv_cube_coeff(j), j + 1, j, 1, 0, 0, D::DS});
    }
    if (p % 2 == 1 && p >= 5) {
        int j = (p - 5) / 2;
        t.push_back({inv_cube_coeff(j), j + 1, j, 1, 1, 0, D::None});
    }
    return t;
}

int max_order() { return 12; }

namespace {

// Field: c[k] is the s-series multiplying tau^k e^{-tau}
struct Field {
    std::vector<Taylor> c;
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t length(const Field& f) {
    std::size_t n = kNone;
    for (const auto& t : f.c) n = std::min(n, t.coeffs().size());
    return n;
}

Taylor cut(const Taylor& t, std::size_t len) { return len == 0 ? Taylor(std::vector<double>{}) : t.truncated(len - 1); }

Field add(const Field& a, const Field& b, double sb = 1.0) {
    if (a.c.empty()) {
        Field r = b;
        for (auto& t : r.c) t *= sb;
        return r;
    }
    if (b.c.empty()) return a;
    std::size_t len = std::min(length(a), length(b));
    Field r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Taylor(std::vector<double>(len, 0.0)));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += cut(a.c[k], len);
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += cut(b.c[k], len) * sb;
    return r;
}

Field times(const Taylor& g, const Field& f) {
    Field r;
    for (const auto& t : f.c) r.c.push_back(g * t);
    return r;
}

Field mul_tau(const Field& f, int m) {
    if (f.c.empty() || m <= 0) return f;
    Field r;
    std::size_t len = length(f);
    r.c.assign(static_cast<std::size_t>(m), Taylor(std::vector<double>(len, 0.0)));
    r.c.insert(r.c.end(), f.c.begin(), f.c.end());
    return r;
}

Field d_tau(const Field& f) {
    Field r;
    if (f.c.empty()) return r;
    std::size_t len = length(f);
    r.c.assign(f.c.size(), Taylor(std::vector<double>(len, 0.0)));
    for (std::size_t k = 0; k < f.c.size(); ++k) {
        r.c[k] -= cut(f.c[k], len);
        if (k > 0) r.c[k - 1] += cut(f.c[k], len) * static_cast<double>(k);
    }
    return r;
}

Field d_s(const Field& f) {
    Field r;
    for (const auto& t : f.c) r.c.push_back(t.derivative());
    return r;
}

Taylor project(const Field& f) {
    std::size_t len = length(f);
    Taylor r(std::vector<double>(len, 0.0));
    double w = 1.0;
    for (std::size_t k = 0; k < f.c.size(); ++k) {
        if (k > 0) w *= static_cast<double>(k) / 2.0;
        r += cut(f.c[k], len) * w;
    }
    return r;
}

Field solve_resolvent(const Field& f) {
    std::size_t len = length(f);
    basis::TauPoly<Taylor> w;
    for (const auto& t : f.c) w.coeffs.push_back(cut(t, len));
    Taylor zero(std::vector<double>(len, 0.0));
    auto g = basis::solve_P0_plus_1<Taylor, double>(w, zero);
    return Field{std::move(g.coeffs)};
}

struct Coefficients {
    Taylor kappa, dkappa, theta1, theta2;
};

Taylor power(const Taylor& t, int n, std::size_t len) {
    Taylor r = Taylor::constant(1.0, len - 1);
    for (int i = 0; i < n; ++i) r = r * t;
    return r;
}

Field apply_term(const ConjugatedTerm& t, const Coefficients& c, const Field& a) {
    if (a.c.empty()) return a;
    std::size_t len = length(a);
    Taylor g = Taylor::constant(t.coeff, len - 1);
    g = g * power(c.kappa, t.kappa_pow, len) * power(c.dkappa, t.dkappa_pow, len) *
        power(c.theta1, t.theta1_pow, len) * power(c.theta2, t.theta2_pow, len);
    Field d;
    switch (t.deriv) {
        case D::None: d = a; break;
        case D::DTau: d = d_tau(a); break;
        case D::DS: d = d_s(a); break;
        case D::DS2: d = d_s(d_s(a)); break;
    }
    return mul_tau(times(g, d), t.tau_pow);
}

Field apply_order(int p, const Coefficients& c, const Field& a) {
    Field r;
    for (const auto& t : conjugated_operator(p)) r = add(r, apply_term(t, c, a));
    return r;
}

/// 2 theta' xi' + (theta'' - theta''(0)) xi = rhs, xi(0) = xi0, by Taylor coefficients.
Taylor transport_solve(const Taylor& theta1, const Taylor& rhs, double xi0) {
    std::size_t n = std::min(rhs.coeffs().size(), theta1.coeffs().size() - 1);
    std::vector<double> xi(n, 0.0);
    if (n == 0) return Taylor(xi);
    xi[0] = xi0;
    double om = theta1[1];
    for (std::size_t m = 1; m < n; ++m) {
        double acc = rhs[m];
        for (std::size_t i = 2; i <= m + 1 && i < theta1.coeffs().size(); ++i)
            acc -= 2.0 * theta1[i] * static_cast<double>(m - i + 1) * xi[m - i + 1];
        for (std::size_t i = 1; i <= m && i + 1 < theta1.coeffs().size(); ++i)
            acc -= static_cast<double>(i + 1) * theta1[i + 1] * xi[m - i];
        xi[m] = acc / (2.0 * om * static_cast<double>(m));
    }
    return Taylor(xi);
}

// Gauss-Legendre 8-point nodes and weights on [-1, 1]
constexpr std::array<double, 8> kGx{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                                    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGw{0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss(F&& f, double a, double b) {
    double m = 0.5 * (a + b), r = 0.5 * (b - a), acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) acc += kGw[i] * f(m + r * kGx[i]);
    return acc * r;
}

/// Cumulative integral from the centre node outwards.
template <class F>
std::vector<double> cumulative(const std::vector<double>& s, F&& f) {
    std::size_t n = s.size(), c = n / 2;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = c + 1; i < n; ++i) out[i] = out[i - 1] + gauss(f, s[i - 1], s[i]);
    for (std::size_t i = c; i-- > 0;) out[i] = out[i + 1] - gauss(f, s[i], s[i + 1]);
    return out;
}

/// Eighth-order derivative on the sinh-mapped grid; NaN within four nodes of the ends.
std::vector<double> derivative(const std::vector<double>& f, const std::vector<double>& s, double W, double c) {
    static constexpr std::array<double, 4> w{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    std::size_t n = f.size();
    double dx = 2.0 / static_cast<double>(n - 1);
    std::vector<double> d(n, std::nan(""));
    for (std::size_t i = 4; i + 4 < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= 4; ++k) acc += w[k - 1] * (f[i + k] - f[i - k]);
        double x = std::asinh(s[i] * std::sinh(c) / W) / c;
        double dsdx = W * c * std::cosh(c * x) / std::sinh(c);
        d[i] = acc / dx / dsdx;
    }
    return d;
}

double convergence_radius(const Taylor& t) {
    double r = std::numeric_limits<double>::infinity();
    std::size_t n = t.coeffs().size();
    for (std::size_t m = n / 2; m < n; ++m)
        if (t[m] != 0.0) r = std::min(r, std::pow(std::abs(t[m]), -1.0 / static_cast<double>(m)));
    return r;
}

}  // namespace

double Phase::dtheta_at(const CurvatureProfile& p, double s) const {
    if (degenerate) return 0.0;
    if (std::abs(s) < patch) return dtheta.eval(s);
    double v = kappa0 - p.kappa(s);
    return (s < 0 ? -1.0 : 1.0) * std::sqrt(std::max(v, 0.0));
}

double Phase::d2theta_at(const CurvatureProfile& p, double s) const {
    if (degenerate) return 0.0;
    if (std::abs(s) < patch) return dtheta.derivative().eval(s);
    return -p.kappa_derivative(s, 1) / (2.0 * dtheta_at(p, s));
}

Phase solve_eikonal(const CurvatureProfile& profile, const Options& opt) {
    Phase ph;
    std::size_t N = opt.series_order;
    Taylor kap = profile.kappa_series(0.0, N + 2);
    ph.kappa0 = kap[0];
    ph.window = profile.well_half_width();
    if (!(ph.window > 0.0)) ph.window = 0.5 * profile.period();

    std::size_t n = opt.grid_points | 1;
    ph.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        ph.s[i] = ph.window * std::sinh(opt.cluster * x) / std::sinh(opt.cluster);
    }
    ph.s[n / 2] = 0.0;

    double spread = 0.0, lowest = 0.0;
    for (double s : ph.s) {
        double v = ph.kappa0 - profile.kappa(s);
        spread = std::max(spread, std::abs(v));
        lowest = std::min(lowest, v);
    }
    if (spread < 1e-10) {
        ph.degenerate = true;
        ph.theta.assign(n, 0.0);
        ph.dtheta = Taylor::constant(0.0, N);
        ph.warnings.push_back("DegenerateWell: constant curvature, theta = 0");
        return ph;
    }
    if (lowest < -1e-10 * std::max(1.0, std::abs(ph.kappa0)))
        fail(ErrorCode::EikonalNotSolvable, "kappa exceeds kappa(0) inside the window");
    if (std::abs(kap[1]) > 1e-8 * std::max(1.0, std::abs(kap[2])))
        fail(ErrorCode::EikonalNotSolvable, "s = 0 is not a critical point of the curvature");
    if (!(kap[2] < 0.0)) fail(ErrorCode::EikonalNotSolvable, "maximum is degenerate: kappa''(0) = 0");

    // kappa0 - kappa = s^2 q(s), theta' = s sqrt(q)
    std::vector<double> q(N + 1, 0.0);
    for (std::size_t m = 0; m <= N; ++m) q[m] = -kap[m + 2];
    Taylor sq = Taylor(q).sqrt();
    std::vector<double> d1(N + 1, 0.0);
    for (std::size_t m = 1; m <= N; ++m) d1[m] = sq[m - 1];
    ph.dtheta = Taylor(d1);
    ph.omega = ph.dtheta[1];
    ph.patch = std::min(0.25 * convergence_radius(kap), 0.1 * ph.window);

    ph.theta = cumulative(ph.s, [&](double u) { return ph.dtheta_at(profile, u); });
    auto dth = derivative(ph.theta, ph.s, ph.window, opt.cluster);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(dth[i])) continue;
        ph.eikonal_residual =
            std::max(ph.eikonal_residual, std::abs(dth[i] * dth[i] - (ph.kappa0 - profile.kappa(ph.s[i]))));
    }
    return ph;
}

Amplitude solve_transport_0(const CurvatureProfile& profile, const Phase& ph, const Options& opt) {
    Amplitude a;
    std::size_t n = ph.s.size();
    if (ph.degenerate) {
        a.series = Taylor::constant(1.0, opt.series_order);
        a.xi0.assign(n, 1.0);
        return a;
    }
    a.series = transport_solve(ph.dtheta, Taylor(std::vector<double>(ph.dtheta.coeffs().size() - 1, 0.0)), 1.0);
    // g = (theta'' - omega) / (2 theta') near 0, from shifted series
    Taylor t2 = ph.dtheta.derivative();
    std::size_t m = t2.coeffs().size() - 1;
    std::vector<double> num(m), den(m);
    for (std::size_t i = 0; i < m; ++i) {
        num[i] = t2[i + 1];
        den[i] = 2.0 * ph.dtheta[i + 1];
    }
    Taylor g_series = Taylor(num) / Taylor(den);
    auto g = [&](double u) {
        if (std::abs(u) < ph.patch) return g_series.eval(u);
        return (ph.d2theta_at(profile, u) - ph.omega) / (2.0 * ph.dtheta_at(profile, u));
    };
    auto lg = cumulative(ph.s, g);
    a.xi0.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.xi0[i] = std::exp(-lg[i]);
    auto dxi = derivative(a.xi0, ph.s, ph.window, opt.cluster);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(dxi[i])) continue;
        double s = ph.s[i];
        double r = 2.0 * ph.dtheta_at(profile, s) * dxi[i] + (ph.d2theta_at(profile, s) - ph.omega) * a.xi0[i];
        a.transport_residual = std::max(a.transport_residual, std::abs(r));
    }
    return a;
}

WkbSolution wkb_iterate(const CurvatureProfile& profile, int L, const Options& opt) {
    if (L < 0) fail(ErrorCode::InvalidArgument, "order must be non-negative");
    if (L > max_order())
        fail(ErrorCode::OrderUnavailable, "WKB orders above " + std::to_string(max_order()) + " are not tabulated");
    if (opt.series_order < static_cast<std::size_t>(2 * L + 8))
        fail(ErrorCode::OrderUnavailable, "series order too small for the requested WKB order");
    WkbSolution sol;
    sol.phase = solve_eikonal(profile, opt);
    sol.amplitude = solve_transport_0(profile, sol.phase, opt);
    sol.order = L;
    sol.warnings = sol.phase.warnings;
    const auto& ph = sol.phase;
    sol.mu = {-1.0, 0.0, -ph.kappa0, ph.omega};
    sol.mu.resize(static_cast<std::size_t>(std::max(L, 3) + 1), 0.0);
    sol.xi.push_back(sol.amplitude.series);
    if (ph.degenerate) {
        if (L > 3) sol.warnings.push_back("DegenerateWell: orders above 3 not computed");
        sol.mu.resize(static_cast<std::size_t>(std::min(L, 3) + 1));
        return sol;
    }

    std::size_t N = opt.series_order;
    Coefficients c;
    c.kappa = profile.kappa_series(0.0, N);
    c.kappa[1] = 0.0;
    c.dkappa = c.kappa.derivative();
    c.theta1 = ph.dtheta;
    c.theta2 = ph.dtheta.derivative();

    std::vector<Field> a(static_cast<std::size_t>(L + 1));
    a[0].c = {sol.amplitude.series};
    for (int l = 2; l <= L; ++l) {
        Field S;
        for (int k = 1; k <= l; ++k) {
            const Field& prev = a[static_cast<std::size_t>(l - k)];
            if (prev.c.empty()) continue;
            S = add(S, apply_order(k, c, prev));
            if (k < l || l < 4) S = add(S, prev, -sol.mu[static_cast<std::size_t>(k)]);
        }
        if (S.c.empty()) continue;
        Taylor R = project(S);
        if (l >= 4) {
            double mu_l = R[0] / sol.amplitude.series[0];
            sol.mu[static_cast<std::size_t>(l)] = mu_l;
            Taylor rhs = cut(sol.amplitude.series, R.coeffs().size()) * mu_l - R;
            rhs[0] = 0.0;
            Taylor xi = transport_solve(ph.dtheta, rhs, 0.0);
            auto& tgt = a[static_cast<std::size_t>(l - 3)];
            if (tgt.c.empty()) tgt.c.push_back(Taylor(std::vector<double>(xi.coeffs().size(), 0.0)));
            tgt.c[0] = cut(tgt.c[0], std::min(tgt.c[0].coeffs().size(), xi.coeffs().size())) +
                       cut(xi, std::min(tgt.c[0].coeffs().size(), xi.coeffs().size()));
            sol.xi.push_back(xi);
        } else {
            double scale = 1.0;
            for (double v : R.coeffs()) scale = std::max(scale, std::abs(v));
            if (std::abs(R[0]) > 1e-9 * scale)
                fail(ErrorCode::InternalSolvabilityFailure, "low-order WKB solvability violated");
        }
        Field perp = S;
        perp.c[0] = cut(perp.c[0], R.coeffs().size()) - R;
        Field sol_l = solve_resolvent(perp);
        for (auto& t : sol_l.c) t *= -1.0;
        a[static_cast<std::size_t>(l)] = add(a[static_cast<std::size_t>(l)], sol_l);
    }
    return sol;
}

}  // namespace robinspec::wkb
