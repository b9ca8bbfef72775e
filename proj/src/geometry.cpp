#include "robinspec/geometry.hpp"

#include "robinspec/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace robinspec::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double s, double period) {
    double r = std::fmod(s, period);
    return r < 0.0 ? r + period : r;
}

double circular_distance(double a, double b, double period) {
    double d = wrap(a - b, period);
    return std::min(d, period - d);
}

}  // namespace

ParametricCurve ParametricCurve::circle(double radius) {
    if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "circle radius must be positive");
    auto c = fourier({0.0, radius}, {0.0, 0.0}, {0.0, 0.0}, {0.0, radius});
    c.name_ = "circle";
    return c;
}

ParametricCurve ParametricCurve::ellipse(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) fail(ErrorCode::InvalidArgument, "ellipse semi-axes must be positive");
    auto c = fourier({0.0, a}, {0.0, 0.0}, {0.0, 0.0}, {0.0, b});
    c.name_ = "ellipse";
    return c;
}

ParametricCurve ParametricCurve::egg(double a, double b, double eps) {
    if (!(a > 0.0 && b > 0.0)) fail(ErrorCode::InvalidArgument, "egg semi-axes must be positive");
    // cos^4 t = (3 + 4 cos 2t + cos 4t)/8, cos^3 t sin t = (2 sin 2t + sin 4t)/8
    auto c = fourier({3.0 * a * eps / 8.0, a, a * eps / 2.0, 0.0, a * eps / 8.0}, {0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0}, {0.0, b, b * eps / 4.0, 0.0, b * eps / 8.0});
    c.name_ = "egg";
    return c;
}

ParametricCurve ParametricCurve::fourier(std::vector<double> x_cos, std::vector<double> x_sin,
                                         std::vector<double> y_cos, std::vector<double> y_sin) {
    ParametricCurve c;
    std::size_t n = std::max({x_cos.size(), x_sin.size(), y_cos.size(), y_sin.size()});
    if (n < 2) fail(ErrorCode::InvalidArgument, "fourier curve needs at least one harmonic");
    for (auto* v : {&x_cos, &x_sin, &y_cos, &y_sin}) {
        v->resize(n, 0.0);
        for (double a : *v)
            if (!std::isfinite(a)) fail(ErrorCode::InvalidArgument, "non-finite fourier coefficient");
        (*v)[0] = (v == &x_sin || v == &y_sin) ? 0.0 : (*v)[0];
    }
    c.name_ = "fourier";
    c.xc_ = std::move(x_cos);
    c.xs_ = std::move(x_sin);
    c.yc_ = std::move(y_cos);
    c.ys_ = std::move(y_sin);
    return c;
}

Point ParametricCurve::point(double t) const { return derivative(t, 0); }

Point ParametricCurve::derivative(double t, int m) const {
    Point p;
    double shift = m * std::numbers::pi / 2.0;
    for (std::size_t k = 0; k < xc_.size(); ++k) {
        double kk = static_cast<double>(k);
        double f = (m == 0) ? 1.0 : std::pow(kk, m);
        if (f == 0.0) continue;
        double c = std::cos(kk * t + shift), s = std::sin(kk * t + shift);
        p.x += f * (xc_[k] * c + xs_[k] * s);
        p.y += f * (yc_[k] * c + ys_[k] * s);
    }
    return p;
}

std::pair<Taylor, Taylor> ParametricCurve::jet(double t, std::size_t order) const {
    Taylor x(order), y(order);
    double fact = 1.0;
    for (std::size_t m = 0; m <= order; ++m) {
        if (m > 0) fact *= static_cast<double>(m);
        Point d = derivative(t, static_cast<int>(m));
        x[m] = d.x / fact;
        y[m] = d.y / fact;
    }
    return {x, y};
}

double ParametricCurve::curvature_at_parameter(double t) const {
    Point d1 = derivative(t, 1), d2 = derivative(t, 2);
    double sp2 = d1.x * d1.x + d1.y * d1.y;
    return (d1.x * d2.y - d1.y * d2.x) / (sp2 * std::sqrt(sp2));
}

double ParametricCurve::speed(double t) const {
    Point d1 = derivative(t, 1);
    return std::hypot(d1.x, d1.y);
}

ParametricCurve ParametricCurve::reversed() const {
    ParametricCurve c = *this;
    for (auto& v : c.xs_) v = -v;
    for (auto& v : c.ys_) v = -v;
    return c;
}

struct CurvatureProfile::Data {
    ParametricCurve curve;
    std::vector<double> speed_cos, speed_sin;
    double period = 0.0;
    std::vector<double> t_table, S_table;
    double s_origin = 0.0;
    std::vector<double> s_samples, k_samples;
    double s_max = 0.0, kappa_max = 0.0, k2 = 0.0, well_half = 0.0, turning = 0.0;

    double arc(double t) const {
        double s = speed_cos[0] / 2.0 * t;
        double c1 = std::cos(t), s1 = std::sin(t), ck = c1, sk = s1;
        for (std::size_t k = 1; k < speed_cos.size(); ++k) {
            double kk = static_cast<double>(k);
            s += (speed_cos[k] * sk + speed_sin[k] * (1.0 - ck)) / kk;
            double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
        return s;
    }

    double parameter(double s) const {
        double target = wrap(s_origin + s, period);
        auto it = std::upper_bound(S_table.begin(), S_table.end(), target);
        std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - S_table.begin())) - 1;
        i = std::min(i, S_table.size() - 2);
        double f = (target - S_table[i]) / (S_table[i + 1] - S_table[i]);
        double t = t_table[i] + f * (t_table[i + 1] - t_table[i]);
        for (int it2 = 0; it2 < 50; ++it2) {
            double dt = (arc(t) - target) / curve.speed(t);
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        return t;
    }
};

CurvatureProfile arc_length_reparam(const ParametricCurve& input, std::size_t n_samples) {
    if (n_samples < 64) fail(ErrorCode::InvalidArgument, "n_samples must be at least 64");
    Point p0 = input.point(0.0), p1 = input.point(kTwoPi);
    if (std::hypot(p0.x - p1.x, p0.y - p1.y) > 1e-12) fail(ErrorCode::NotClosed, "endpoint mismatch");

    std::size_t nf = 256;
    std::vector<double> a, b;
    ParametricCurve curve = input;
    double turning = 0.0;
    for (;;) {
        std::vector<double> sp(nf), ct(nf), st(nf);
        double smax = 0.0, smin = std::numeric_limits<double>::infinity();
        double turn = 0.0;
        for (std::size_t j = 0; j < nf; ++j) {
            double t = kTwoPi * static_cast<double>(j) / static_cast<double>(nf);
            ct[j] = std::cos(t);
            st[j] = std::sin(t);
            Point d1 = curve.derivative(t, 1), d2 = curve.derivative(t, 2);
            double s2 = d1.x * d1.x + d1.y * d1.y;
            sp[j] = std::sqrt(s2);
            smax = std::max(smax, sp[j]);
            smin = std::min(smin, sp[j]);
            turn += (d1.x * d2.y - d1.y * d2.x) / s2;
        }
        if (!(smin > 1e-10 * smax)) fail(ErrorCode::NonRegularCurve, "speed vanishes on the sample grid");
        turning = turn * kTwoPi / static_cast<double>(nf);
        std::size_t kmax = nf / 2;
        a.assign(kmax, 0.0);
        b.assign(kmax, 0.0);
        for (std::size_t k = 0; k < kmax; ++k) {
            double ak = 0.0, bk = 0.0;
            for (std::size_t j = 0; j < nf; ++j) {
                std::size_t idx = (k * j) % nf;
                ak += sp[j] * ct[idx];
                bk += sp[j] * st[idx];
            }
            a[k] = 2.0 * ak / static_cast<double>(nf);
            b[k] = 2.0 * bk / static_cast<double>(nf);
        }
        double tail = 0.0;
        for (std::size_t k = kmax / 2; k < kmax; ++k) tail = std::max({tail, std::abs(a[k]), std::abs(b[k])});
        if (tail < 1e-15 * a[0] || nf >= (1u << 14)) break;
        nf *= 2;
    }
    if (std::abs(std::abs(turning) - kTwoPi) > 1e-8)
        fail(ErrorCode::NonRegularCurve, "total turning is not +-2pi (turning number check)");
    if (turning < 0.0) {
        curve = curve.reversed();
        for (auto& v : b) v = -v;
        turning = -turning;
    }
    std::size_t keep = a.size();
    while (keep > 1 && std::abs(a[keep - 1]) < 1e-18 * a[0] && std::abs(b[keep - 1]) < 1e-18 * a[0]) --keep;
    a.resize(keep);
    b.resize(keep);

    auto d = std::make_shared<CurvatureProfile::Data>();
    d->curve = curve;
    d->speed_cos = a;
    d->speed_sin = b;
    d->period = std::numbers::pi * a[0];
    d->turning = turning;
    const std::size_t nt = 4096;
    d->t_table.resize(nt + 1);
    d->S_table.resize(nt + 1);
    for (std::size_t j = 0; j <= nt; ++j) {
        double t = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
        d->t_table[j] = t;
        d->S_table[j] = d->arc(t);
    }
    d->S_table[nt] = d->period;
    d->s_samples.resize(n_samples);
    d->k_samples.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double s = d->period * static_cast<double>(i) / static_cast<double>(n_samples);
        d->s_samples[i] = s;
        d->k_samples[i] = curve.curvature_at_parameter(d->parameter(s));
    }
    auto it = std::max_element(d->k_samples.begin(), d->k_samples.end());
    d->s_max = d->s_samples[static_cast<std::size_t>(it - d->k_samples.begin())];
    d->kappa_max = *it;
    d->well_half = d->period / 2.0;
    CurvatureProfile prof(d);
    double s = d->s_max;
    for (int it = 0; it < 30; ++it) {
        Taylor k = prof.kappa_series(s, 2);
        if (!(k[2] < 0.0)) break;
        double step = -k[1] / (2.0 * k[2]);
        if (std::abs(step) > d->period / static_cast<double>(n_samples)) break;
        s += step;
        if (std::abs(step) < 1e-15) break;
    }
    Taylor k = prof.kappa_series(s, 2);
    d->s_max = wrap(s, d->period);
    d->kappa_max = std::max(k[0], d->kappa_max);
    d->k2 = -2.0 * k[2];
    return prof;
}

double CurvatureProfile::period() const { return d_->period; }
double CurvatureProfile::s_max() const { return d_->s_max; }
double CurvatureProfile::kappa_max() const { return d_->kappa_max; }
double CurvatureProfile::k2() const { return d_->k2; }
double CurvatureProfile::well_half_width() const { return d_->well_half; }
double CurvatureProfile::turning() const { return d_->turning; }
const ParametricCurve& CurvatureProfile::curve() const { return d_->curve; }
std::span<const double> CurvatureProfile::sample_s() const { return d_->s_samples; }
std::span<const double> CurvatureProfile::sample_kappa() const { return d_->k_samples; }

double CurvatureProfile::parameter_at(double s) const { return d_->parameter(s); }

double CurvatureProfile::kappa(double s) const {
    return d_->curve.curvature_at_parameter(d_->parameter(s));
}

Point CurvatureProfile::point(double s) const { return d_->curve.point(d_->parameter(s)); }

Point CurvatureProfile::outward_normal(double s) const {
    double t = d_->parameter(s);
    Point d1 = d_->curve.derivative(t, 1);
    double sp = std::hypot(d1.x, d1.y);
    return {d1.y / sp, -d1.x / sp};
}

Taylor CurvatureProfile::kappa_series(double s, std::size_t order) const {
    double t = d_->parameter(s);
    auto [x, y] = d_->curve.jet(t, order + 2);
    Taylor x1 = x.derivative(), y1 = y.derivative();
    Taylor x2 = x1.derivative(), y2 = y1.derivative();
    Taylor sp2 = x1 * x1 + y1 * y1;
    Taylor sp = sp2.sqrt();
    Taylor k_t = (x1.truncated(order) * y2 - y1.truncated(order) * x2) / (sp2 * sp).truncated(order);
    Taylor arc = sp.integral().truncated(order);
    Taylor dt = arc.revert();
    return k_t.compose(dt);
}

double CurvatureProfile::kappa_derivative(double s, int m) const {
    if (m == 0) return kappa(s);
    if (m == 1) {
        double t = d_->parameter(s);
        Point a = d_->curve.derivative(t, 1), b = d_->curve.derivative(t, 2), c = d_->curve.derivative(t, 3);
        double v2 = a.x * a.x + a.y * a.y, v = std::sqrt(v2);
        double cr = a.x * b.y - a.y * b.x;
        double dk = (a.x * c.y - a.y * c.x) / (v2 * v) - 3.0 * cr * (a.x * b.x + a.y * b.y) / (v2 * v2 * v);
        return dk / v;
    }
    return kappa_series(s, static_cast<std::size_t>(m)).derivative_at(static_cast<std::size_t>(m));
}

std::vector<double> CurvatureProfile::kappa_jet(double s, std::size_t order) const {
    Taylor k = kappa_series(s, order);
    std::vector<double> out(order + 1);
    for (std::size_t m = 0; m <= order; ++m) out[m] = k.derivative_at(m);
    return out;
}

double CurvatureProfile::kappa_interp(double s) const {
    const auto& ks = d_->k_samples;
    std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ks.size());
    double h = d_->period / static_cast<double>(n);
    double x = wrap(s, d_->period) / h;
    std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(x)) - 3;
    double r = 0.0;
    for (std::ptrdiff_t j = 0; j < 8; ++j) {
        double w = 1.0;
        for (std::ptrdiff_t l = 0; l < 8; ++l)
            if (l != j) w *= (x - static_cast<double>(i0 + l)) / static_cast<double>(j - l);
        r += w * ks[static_cast<std::size_t>(((i0 + j) % n + n) % n)];
    }
    return r;
}

std::vector<double> CurvatureProfile::kappa_fit_derivatives(double s) const {
    const auto& ks = d_->k_samples;
    std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ks.size());
    double h = d_->period / static_cast<double>(n);
    const int half = 5, deg = 6;
    std::ptrdiff_t c = static_cast<std::ptrdiff_t>(std::lround(wrap(s, d_->period) / h));
    double off = wrap(s, d_->period) / h - static_cast<double>(c);
    Eigen::MatrixXd A(2 * half + 1, deg + 1);
    Eigen::VectorXd rhs(2 * half + 1);
    for (int j = -half; j <= half; ++j) {
        double x = static_cast<double>(j) - off;
        double p = 1.0;
        for (int m = 0; m <= deg; ++m, p *= x) A(j + half, m) = p;
        rhs(j + half) = ks[static_cast<std::size_t>(((c + j) % n + n) % n)];
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);
    std::vector<double> out(deg + 1);
    double fact = 1.0;
    for (int m = 0; m <= deg; ++m) {
        if (m > 0) fact *= m;
        out[static_cast<std::size_t>(m)] = coef(m) * fact / std::pow(h, m);
    }
    return out;
}

CurvatureProfile CurvatureProfile::reoriginated(double s0, double well_half_width) const {
    auto d = std::make_shared<Data>(*d_);
    d->s_origin = wrap(d_->s_origin + s0, d_->period);
    for (std::size_t i = 0; i < d->s_samples.size(); ++i)
        d->k_samples[i] = d->curve.curvature_at_parameter(d->parameter(d->s_samples[i]));
    d->s_max = wrap(d_->s_max - s0, d_->period);
    if (d->s_max > d->period / 2.0) d->s_max -= d->period;
    if (well_half_width > 0.0) {
        Taylor k = CurvatureProfile(d).kappa_series(0.0, 2);
        d->well_half = well_half_width;
        d->s_max = 0.0;
        d->kappa_max = k[0];
        d->k2 = -2.0 * k[2];
    }
    return CurvatureProfile(d);
}

AssumptionReport check_assumption_A(const CurvatureProfile& profile, double tol) {
    AssumptionReport rep;
    auto ks = profile.sample_kappa();
    auto ss = profile.sample_s();
    std::size_t n = ks.size();
    double P = profile.period(), h = P / static_cast<double>(n);
    std::vector<char> cand(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        cand[i] = ks[i] >= ks[(i + n - 1) % n] && ks[i] >= ks[(i + 1) % n];

    struct Cluster {
        std::vector<std::size_t> idx;
    };
    std::vector<Cluster> clusters;
    std::size_t start = 0;
    while (start < n && cand[start] && cand[(start + n - 1) % n]) {
        ++start;
    }
    if (start == n) {
        Cluster c;
        for (std::size_t i = 0; i < n; ++i) c.idx.push_back(i);
        clusters.push_back(c);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t i = (start + k) % n;
            if (!cand[i]) continue;
            if (!clusters.empty() && k > 0 && cand[(i + n - 1) % n])
                clusters.back().idx.push_back(i);
            else
                clusters.push_back({{i}});
        }
    }

    std::vector<MaxSite> polished;
    for (const auto& c : clusters) {
        std::size_t best = c.idx.front();
        for (auto i : c.idx)
            if (ks[i] > ks[best]) best = i;
        double s = ss[best];
        if (c.idx.size() < n) {
            for (int it = 0; it < 30; ++it) {
                Taylor k = profile.kappa_series(s, 2);
                double k1 = k[1], kk2 = 2.0 * k[2];
                if (!(kk2 < 0.0)) break;
                double step = -k1 / kk2;
                if (std::abs(step) > 2.0 * h) break;
                s += step;
                if (std::abs(step) < 1e-14) break;
            }
        }
        auto fit = profile.kappa_fit_derivatives(s);
        polished.push_back({s, profile.kappa(s), fit[2]});
    }
    double kmax = -std::numeric_limits<double>::infinity();
    for (const auto& p : polished) kmax = std::max(kmax, p.kappa);
    for (const auto& p : polished)
        if (p.kappa >= kmax - tol) rep.sites.push_back(p);
    rep.kappa_max = kmax;
    const MaxSite& top = *std::max_element(rep.sites.begin(), rep.sites.end(),
                                           [](const MaxSite& a, const MaxSite& b) { return a.kappa < b.kappa; });
    rep.k2 = -top.k2_fit;
    rep.unique_max = rep.sites.size() == 1 && top.k2_fit < -tol;
    if (rep.sites.size() > 1) rep.warnings.push_back("multiple curvature maxima; tunneling between sites is not modeled");
    if (!(top.k2_fit < -tol)) rep.warnings.push_back("degenerate curvature maximum");
    return rep;
}

LocalizedMax localize_max(const CurvatureProfile& profile, std::optional<std::size_t> site, double tol) {
    AssumptionReport rep = check_assumption_A(profile, tol);
    std::vector<std::string> warnings = rep.warnings;
    std::size_t chosen = 0;
    if (site) {
        if (*site >= rep.sites.size()) fail(ErrorCode::InvalidArgument, "site index out of range");
        chosen = *site;
    } else if (!rep.unique_max) {
        if (rep.sites.size() == 1 || rep.k2 <= tol) fail(ErrorCode::DegenerateMaximum, "curvature maximum is degenerate");
        fail(ErrorCode::InvalidArgument, "several maxima; an explicit site index is required");
    }
    const double P = profile.period();
    auto ss = profile.sample_s();
    auto ks = profile.sample_kappa();
    std::size_t n = ks.size();
    double h = P / static_cast<double>(n);
    double s0 = rep.sites[chosen].s;

    // quartic least squares on 9 samples, derivative root near the site
    std::ptrdiff_t c = static_cast<std::ptrdiff_t>(std::lround(wrap(s0, P) / h));
    Eigen::MatrixXd A(9, 5);
    Eigen::VectorXd rhs(9);
    for (int j = -4; j <= 4; ++j) {
        double x = static_cast<double>(j), p = 1.0;
        for (int m = 0; m <= 4; ++m, p *= x) A(j + 4, m) = p;
        rhs(j + 4) = ks[static_cast<std::size_t>(((c + j) % static_cast<std::ptrdiff_t>(n) + n) % n)];
    }
    Eigen::VectorXd q = A.colPivHouseholderQr().solve(rhs);
    double x = wrap(s0, P) / h - static_cast<double>(c);
    for (int it = 0; it < 20; ++it) {
        double d1 = q(1) + 2 * q(2) * x + 3 * q(3) * x * x + 4 * q(4) * x * x * x;
        double d2 = 2 * q(2) + 6 * q(3) * x + 12 * q(4) * x * x;
        if (!(d2 < 0.0)) break;
        double step = -d1 / d2;
        if (std::abs(step) > 1.0) break;
        x += step;
    }
    double s = (static_cast<double>(c) + x) * h;
    (void)ss;
    for (int it = 0; it < 30; ++it) {
        Taylor k = profile.kappa_series(s, 2);
        double k1 = k[1], kk2 = 2.0 * k[2];
        if (!(kk2 < 0.0)) break;
        double step = -k1 / kk2;
        s += step;
        if (std::abs(step) < 1e-15) break;
    }
    s = wrap(s, P);
    Taylor k = profile.kappa_series(s, 2);
    double k2 = -2.0 * k[2];
    if (!(k2 > tol)) fail(ErrorCode::DegenerateMaximum, "fitted k2 is not positive");
    double half = P / 2.0;
    for (std::size_t i = 0; i < rep.sites.size(); ++i)
        if (i != chosen) half = std::min(half, circular_distance(rep.sites[i].s, s, P) / 2.0);
    return LocalizedMax{s, k[0], k2, profile.reoriginated(s, half), warnings};
}

}  // namespace robinspec::geometry
