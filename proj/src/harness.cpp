#include "robinspec/harness.hpp"

#include "robinspec/corrections.hpp"
#include "robinspec/curve_io.hpp"
#include "robinspec/errors.hpp"
#include "robinspec/expansion.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>

namespace robinspec::harness {

namespace {

constexpr const char* kVersion = "robinspec 0.1.0";

struct Ols {
    double slope = 0.0, intercept = 0.0, sigma = 0.0, slope_se = 0.0;
};

Ols ols(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) fail(ErrorCode::InsufficientPoints, "fit abscissae coincide");
    Ols o;
    o.slope = sxy / sxx;
    o.intercept = my - o.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - o.intercept - o.slope * x[i];
        ssr += r * r;
    }
    o.sigma = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2)) : 0.0;
    o.slope_se = o.sigma / std::sqrt(sxx);
    return o;
}

double t975(std::size_t dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c == '\n' ? ' ' : c;
    }
    return r + "\"";
}

double parse_double(const std::string& s) {
    if (s.empty() || s == "nan" || s == "NaN") return NAN;
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) fail(ErrorCode::ParseError, "bad number '" + s + "'");
        return v;
    } catch (const std::out_of_range&) {
        return std::strtod(s.c_str(), nullptr);
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::ParseError, "bad number '" + s + "'");
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
    f << text;
    if (!f) fail(ErrorCode::IoFailure, "write failed for " + path);
}

nlohmann::ordered_json num(double v) { return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); }
double num_from(const nlohmann::ordered_json& j) { return j.is_null() ? NAN : j.get<double>(); }

}  // namespace

PowerFit fit_power_law(std::span<const double> h, std::span<const double> remainder) {
    if (h.size() != remainder.size()) fail(ErrorCode::InvalidArgument, "fit arrays differ in length");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] > 0.0 && std::isfinite(remainder[i]) && remainder[i] != 0.0)
            pts.emplace_back(std::log(h[i]), std::log(std::abs(remainder[i])));
    if (pts.size() < 4)
        fail(ErrorCode::InsufficientPoints, "power fit needs at least 4 usable points, got " + std::to_string(pts.size()));
    std::sort(pts.begin(), pts.end());
    auto unzip = [](const std::vector<std::pair<double, double>>& p, std::vector<double>& x, std::vector<double>& y) {
        x.clear();
        y.clear();
        for (auto [a, b] : p) x.push_back(a), y.push_back(b);
    };
    std::vector<double> x, y;
    PowerFit f;
    if (pts.size() >= 5) {
        std::vector<std::pair<double, double>> rest(pts.begin(), pts.end() - 1);
        unzip(rest, x, y);
        Ols o = ols(x, y);
        auto [xl, yl] = pts.back();
        double r = yl - o.intercept - o.slope * xl;
        double sig = std::max(o.sigma, 1e-12);
        if (std::abs(r) > 3.0 * sig) {
            pts = std::move(rest);
            f.dropped_largest_h = true;
        }
    }
    unzip(pts, x, y);
    Ols o = ols(x, y);
    f.exponent = o.slope;
    f.prefactor = std::exp(o.intercept);
    f.sigma = o.sigma;
    f.points = pts.size();
    f.exponent_ci = t975(pts.size() - 2) * o.slope_se;
    return f;
}

double fixed_power_coefficient(std::span<const double> h, std::span<const double> r, double p) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(r[i])) continue;
        double b = std::pow(h[i], p);
        num += r[i] * b;
        den += b * b;
    }
    if (den == 0.0) fail(ErrorCode::InsufficientPoints, "no usable points");
    return num / den;
}

SelfTest synthetic_self_test(double tol) {
    const mp_bitcnt_t prec = 512;
    std::vector<mpf_class> h, mu;
    for (int m = 16; m <= 20; ++m) {
        mpf_class hv(1, prec);
        mpf_div_2exp(hv.get_mpf_t(), hv.get_mpf_t(), static_cast<mp_bitcnt_t>(8 * m));
        mpf_class q(sqrt(sqrt(hv)), prec);
        mpf_class v(-hv - 2 * hv * q * q + 3 * hv * q * q * q, prec);
        h.push_back(hv);
        mu.push_back(v);
    }
    auto rem = ladder_remainders<mpf_class>(h, mu, mpf_class(2, prec), mpf_class(3, prec));
    // log of tiny mpf values through mantissa and binary exponent
    auto log_abs = [](const mpf_class& v) {
        long e = 0;
        double d = mpf_get_d_2exp(&e, v.get_mpf_t());
        return std::log(std::abs(d)) + static_cast<double>(e) * std::log(2.0);
    };
    SelfTest st;
    st.pass = true;
    for (int stage = 0; stage < 3; ++stage) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < h.size(); ++i) {
            x.push_back(log_abs(h[i]));
            y.push_back(log_abs(rem[static_cast<std::size_t>(stage)][i]));
        }
        double p = ols(x, y).slope;
        st.exponents.push_back(p);
        st.max_error = std::max(st.max_error, std::abs(p - kLadder[stage]));
    }
    for (const auto& r : rem[3]) if (r != 0) st.pass = false;
    st.pass = st.pass && st.max_error < tol;
    return st;
}

bool ConvergenceReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    fail(ErrorCode::InvalidArgument, "format must be csv or json");
}

double safe_depth_mult(double requested, double h, double kappa_max) {
    if (kappa_max <= 0.0) return requested;
    return std::min(requested, 0.95 / (std::sqrt(h) * kappa_max));
}

PreparedCurve prepare_curve(const std::string& curve_json, std::optional<std::size_t> site, std::size_t samples) {
    auto curve = geometry::curve_from_json(curve_json);
    auto prof = geometry::arc_length_reparam(curve, samples);
    auto rep = geometry::check_assumption_A(prof);
    PreparedCurve pc{prof, std::nullopt, rep.warnings};
    if (!site && (rep.sites.empty() || rep.k2 <= 1e-6)) {
        pc.warnings.push_back("degenerate curvature maximum; the profile keeps its parametric origin");
        return pc;
    }
    if (rep.unique_max && !site) {
        auto loc = geometry::localize_max(prof);
        pc.profile = loc.profile;
    } else {
        std::size_t chosen = site.value_or(0);
        auto loc = geometry::localize_max(prof, chosen);
        pc.profile = loc.profile;
        if (!rep.unique_max) {
            pc.window = loc.profile.well_half_width();
            pc.warnings.push_back("several curvature maxima: working in the well of site " + std::to_string(chosen) +
                                  " on a window of half-width " + fmt(*pc.window) +
                                  " with Dirichlet ends; tunneling between wells is not modelled");
        }
    }
    return pc;
}

namespace {

struct Coeffs {
    expansion::ExpansionCoefficients c;
    bool have_zeta = false;
};

std::vector<Record> run_point(double h, const SweepSpec& spec, const PreparedCurve& pc, const std::map<int, Coeffs>& coeffs) {
    std::vector<Record> out;
    const double gamma = expansion::h_to_gamma(h);
    const int kmax = *std::max_element(spec.levels.begin(), spec.levels.end());
    auto push = [&](int n, const std::string& method, double mu, const std::string& err) {
        Record r{h, gamma, n, method, mu, std::isnan(mu) ? NAN : expansion::mu_to_lambda(mu, h), err};
        out.push_back(std::move(r));
    };
    for (int n : spec.levels) {
        const auto& cf = coeffs.at(n);
        push(n, "expansion3", expansion::mu_expansion(h, cf.c, -1), "");
        if (cf.have_zeta) push(n, "expansion", expansion::mu_expansion(h, cf.c, static_cast<int>(cf.c.zeta.size()) - 1), "");
    }
    if (spec.run_collar) {
        try {
            solvers::CollarGrid g = spec.grid;
            g.half_width = pc.window;
            g.depth_mult = safe_depth_mult(g.depth_mult, h, pc.profile.kappa_max());
            solvers::CollarOptions o;
            o.eig.seed = spec.seed;
            auto coarse = solvers::collar_2d_eigs(pc.profile, h, static_cast<std::size_t>(kmax), g, o);
            std::vector<double> mu = coarse.mu;
            if (spec.richardson) {
                solvers::CollarGrid gf = g;
                gf.n_s = 2 * g.n_s + (g.half_width ? 1 : 0);
                gf.n_t = 2 * g.n_t;
                auto fine = solvers::collar_2d_eigs(pc.profile, h, static_cast<std::size_t>(kmax), gf, o);
                for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = (4.0 * fine.mu[i] - coarse.mu[i]) / 3.0;
            }
            for (int n : spec.levels) push(n, "collar", mu[static_cast<std::size_t>(n - 1)], "");
        } catch (const Error& e) {
            for (int n : spec.levels) push(n, "collar", NAN, e.what());
        }
    }
    if (spec.run_boundary) {
        try {
            solvers::BoundaryOptions bo;
            bo.n_modes = spec.boundary_modes;
            bo.half_width = pc.window;
            auto r = solvers::boundary_operator_eigs(pc.profile, gamma, static_cast<std::size_t>(kmax), bo);
            for (int n : spec.levels) push(n, "boundary", r.values[static_cast<std::size_t>(n - 1)] * h * h, "");
        } catch (const Error& e) {
            for (int n : spec.levels) push(n, "boundary", NAN, e.what());
        }
    }
    return out;
}

}  // namespace

ConvergenceReport verify(const SweepSpec& spec) {
    for (std::size_t i = 0; i < spec.h.size(); ++i) {
        if (!(spec.h[i] > 0.0)) fail(ErrorCode::InvalidArgument, "h values must be positive");
        if (i > 0 && !((spec.h[i] - spec.h[i - 1]) * (spec.h[1] - spec.h[0]) > 0.0))
            fail(ErrorCode::InvalidArgument, "h grid must be strictly monotone");
    }
    if (spec.levels.empty()) fail(ErrorCode::InvalidArgument, "no levels requested");
    for (int n : spec.levels)
        if (n < 1) fail(ErrorCode::InvalidArgument, "levels start at 1");

    PreparedCurve pc = prepare_curve(spec.curve_json, spec.site, spec.samples);
    ConvergenceReport rep;
    rep.curve = spec.curve_json;
    rep.version = kVersion;
    rep.seed = spec.seed;
    rep.kappa_max = pc.profile.kappa_max();
    rep.k2 = pc.profile.k2();
    rep.warnings = pc.warnings;

    std::map<int, Coeffs> coeffs;
    for (int n : spec.levels) {
        Coeffs cf;
        cf.c = {rep.kappa_max, rep.k2, n, {}};
        if (spec.order >= 0) {
            try {
                auto jet = pc.profile.kappa_jet(0.0, corrections::jet_requirement(spec.order));
                cf.c.zeta = corrections::compute_corrections(jet, n, spec.order, false).zeta;
                cf.have_zeta = true;
            } catch (const Error& e) {
                rep.warnings.push_back(std::string("corrections unavailable for n = ") + std::to_string(n) + ": " + e.what());
            }
        }
        coeffs[n] = cf;
    }

    unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<Record>> per_h(spec.h.size());
    for (std::size_t start = 0; start < spec.h.size(); start += workers) {
        std::vector<std::future<std::vector<Record>>> jobs;
        std::size_t stop = std::min(spec.h.size(), start + workers);
        for (std::size_t i = start; i < stop; ++i)
            jobs.push_back(std::async(std::launch::async, run_point, spec.h[i], std::cref(spec), std::cref(pc), std::cref(coeffs)));
        for (std::size_t i = start; i < stop; ++i) per_h[i] = jobs[i - start].get();
    }
    for (auto& v : per_h)
        for (auto& r : v) rep.records.push_back(std::move(r));

    auto series = [&](int n, const std::string& method) {
        std::vector<std::pair<double, double>> s;
        for (const auto& r : rep.records)
            if (r.n == n && r.method == method && r.ok()) s.emplace_back(r.h, r.mu);
        std::sort(s.begin(), s.end());
        return s;
    };

    auto st = synthetic_self_test();
    rep.checks.push_back({"fit-self-test", st.pass, st.max_error, 0.0, 1e-6, "synthetic -h - 2h^{3/2} + 3h^{7/4}"});
    if (spec.h.empty()) return rep;

    const double omega = std::sqrt(rep.k2 / 2.0);
    for (int n : spec.levels) {
        const double third = (2.0 * n - 1.0) * omega;
        for (const std::string method : {"collar", "boundary"}) {
            auto s = series(n, method);
            if (s.empty()) continue;
            std::vector<double> h, mu;
            for (auto [a, b] : s) h.push_back(a), mu.push_back(b);
            auto rem = ladder_remainders<double>(h, mu, rep.kappa_max, third);
            for (int stage = 0; stage < 4; ++stage) {
                FitRecord fr{"remainder-" + std::to_string(stage), n, method, kLadder[stage]};
                try {
                    auto f = fit_power_law(h, rem[static_cast<std::size_t>(stage)]);
                    fr.exponent = f.exponent;
                    fr.exponent_ci = f.exponent_ci;
                    fr.prefactor = f.prefactor;
                    fr.points = f.points;
                    fr.dropped_largest_h = f.dropped_largest_h;
                } catch (const Error& e) {
                    rep.warnings.push_back(fr.name + " n=" + std::to_string(n) + " " + method + ": " + e.what());
                    continue;
                }
                fr.coefficient = fixed_power_coefficient(h, rem[static_cast<std::size_t>(stage)], kLadder[stage]);
                rep.fits.push_back(fr);
                if (stage == 2 && method == "collar") {
                    std::string tag = "[n=" + std::to_string(n) + "]";
                    rep.checks.push_back({"exponent-7/4" + tag, std::abs(fr.exponent - 1.75) <= spec.exponent_tol,
                                          fr.exponent, 1.75, spec.exponent_tol,
                                          "ci +-" + fmt(fr.exponent_ci) + ", " + std::to_string(fr.points) + " points"});
                    rep.checks.push_back({"coefficient-7/4" + tag,
                                          std::abs(fr.coefficient - third) <= spec.coefficient_tol * third, fr.coefficient,
                                          third, spec.coefficient_tol, "least squares at exponent 7/4"});
                }
            }
        }
    }

    auto c1 = series(1, "collar"), c2 = series(2, "collar");
    if (!c1.empty() && !c2.empty()) {
        std::map<double, double> m2(c2.begin(), c2.end());
        for (auto [h, mu1] : c1) {
            auto it = m2.find(h);
            if (it == m2.end()) continue;
            double gap = (it->second - mu1) / std::pow(h, 1.75);
            double target = 2.0 * omega;
            rep.checks.push_back({"gap", std::abs(gap - target) <= spec.gap_tol * target, gap, target, spec.gap_tol,
                                  "(mu2 - mu1) / h^{7/4} at h = " + fmt(h)});
            break;
        }
    }

    if (coeffs.count(1) && coeffs.at(1).have_zeta && !c1.empty()) {
        auto best = std::min_element(c1.begin(), c1.end(), [&](auto a, auto b) {
            return std::abs(std::log(a.first / spec.three_way_h)) < std::abs(std::log(b.first / spec.three_way_h));
        });
        double h = best->first;
        const auto& cf = coeffs.at(1).c;
        double e3 = std::abs(best->second - expansion::mu_expansion(h, cf, -1));
        double ez = std::abs(best->second - expansion::mu_expansion(h, cf, static_cast<int>(cf.zeta.size()) - 1));
        rep.checks.push_back({"three-way", ez <= e3, ez, e3, 0.0,
                              "|collar - corrected| vs |collar - three-term| at h = " + fmt(h)});
    }

    auto b1 = series(1, "boundary");
    if (!c1.empty() && !b1.empty()) {
        std::map<double, double> mb(b1.begin(), b1.end());
        std::vector<double> hh, dd;
        double dmax = 0.0;
        for (auto [h, mu] : c1) {
            auto it = mb.find(h);
            if (it == mb.end()) continue;
            double d = (mu - it->second) / (h * h);
            hh.push_back(h);
            dd.push_back(d);
            dmax = std::max(dmax, std::abs(d));
        }
        try {
            auto f = fit_power_law(hh, dd);
            rep.checks.push_back({"boundary-difference-bounded", f.exponent > -0.125, f.exponent, 0.0, 0.125,
                                  "lambda difference grows like h^p; max |difference| " + fmt(dmax)});
        } catch (const Error& e) {
            rep.warnings.push_back(std::string("boundary comparison: ") + e.what());
        }
    }
    return rep;
}

std::string report_to_json(const ConvergenceReport& r) {
    nlohmann::ordered_json j;
    j["curve"] = r.curve;
    j["environment"] = {{"version", r.version}, {"seed", r.seed}};
    j["kappa_max"] = r.kappa_max;
    j["k2"] = r.k2;
    j["warnings"] = r.warnings;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& x : r.records)
        j["records"].push_back({{"h", x.h}, {"gamma", x.gamma}, {"n", x.n}, {"method", x.method}, {"mu", num(x.mu)},
                                {"lambda", num(x.lambda)}, {"error", x.error}});
    j["fits"] = nlohmann::ordered_json::array();
    for (const auto& f : r.fits)
        j["fits"].push_back({{"name", f.name}, {"n", f.n}, {"method", f.method}, {"expected", f.expected},
                             {"exponent", f.exponent}, {"exponent_ci", f.exponent_ci}, {"prefactor", f.prefactor},
                             {"coefficient", f.coefficient}, {"points", f.points}, {"dropped_largest_h", f.dropped_largest_h}});
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"value", num(c.value)}, {"target", c.target},
                               {"tol", c.tol}, {"detail", c.detail}});
    j["all_pass"] = r.all_pass();
    return j.dump(2) + "\n";
}

ConvergenceReport report_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
        ConvergenceReport r;
        r.curve = j.at("curve").get<std::string>();
        r.version = j.at("environment").at("version").get<std::string>();
        r.seed = j.at("environment").at("seed").get<std::uint64_t>();
        r.kappa_max = j.at("kappa_max").get<double>();
        r.k2 = j.at("k2").get<double>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        for (const auto& x : j.at("records"))
            r.records.push_back({x.at("h").get<double>(), x.at("gamma").get<double>(), x.at("n").get<int>(),
                                 x.at("method").get<std::string>(), num_from(x.at("mu")), num_from(x.at("lambda")),
                                 x.at("error").get<std::string>()});
        for (const auto& f : j.at("fits"))
            r.fits.push_back({f.at("name").get<std::string>(), f.at("n").get<int>(), f.at("method").get<std::string>(),
                              f.at("expected").get<double>(), f.at("exponent").get<double>(),
                              f.at("exponent_ci").get<double>(), f.at("prefactor").get<double>(),
                              f.at("coefficient").get<double>(), f.at("points").get<std::size_t>(),
                              f.at("dropped_largest_h").get<bool>()});
        for (const auto& c : j.at("checks"))
            r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), num_from(c.at("value")),
                                c.at("target").get<double>(), c.at("tol").get<double>(), c.at("detail").get<std::string>()});
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("report: ") + e.what());
    }
}

std::string records_to_csv(const std::vector<Record>& rows) {
    std::string out = "h,gamma,n,method,mu,lambda,error\n";
    for (const auto& r : rows)
        out += fmt(r.h) + "," + fmt(r.gamma) + "," + std::to_string(r.n) + "," + csv_quote(r.method) + "," + fmt(r.mu) + "," +
               fmt(r.lambda) + "," + csv_quote(r.error) + "\n";
    return out;
}

std::vector<Record> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "h,gamma,n,method,mu,lambda,error")
        fail(ErrorCode::ParseError, "missing records header");
    std::vector<Record> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 7) fail(ErrorCode::ParseError, "records row has " + std::to_string(f.size()) + " fields");
        out.push_back({parse_double(f[0]), parse_double(f[1]), std::stoi(f[2]), f[3], parse_double(f[4]), parse_double(f[5]), f[6]});
    }
    return out;
}

std::string checks_to_csv(const ConvergenceReport& r) {
    std::string out = "name,pass,value,target,tol,detail\n";
    for (const auto& c : r.checks)
        out += csv_quote(c.name) + "," + (c.pass ? "1" : "0") + "," + fmt(c.value) + "," + fmt(c.target) + "," + fmt(c.tol) +
               "," + csv_quote(c.detail) + "\n";
    return out;
}

namespace {
std::string fits_to_csv(const ConvergenceReport& r) {
    std::string out = "name,n,method,expected,exponent,exponent_ci,prefactor,coefficient,points,dropped_largest_h\n";
    for (const auto& f : r.fits)
        out += f.name + "," + std::to_string(f.n) + "," + f.method + "," + fmt(f.expected) + "," + fmt(f.exponent) + "," +
               fmt(f.exponent_ci) + "," + fmt(f.prefactor) + "," + fmt(f.coefficient) + "," + std::to_string(f.points) + "," +
               (f.dropped_largest_h ? "1" : "0") + "\n";
    return out;
}
}  // namespace

std::vector<std::string> report_emit(const ConvergenceReport& r, Format f, const std::string& path) {
    if (f == Format::Json) {
        write_file(path, report_to_json(r));
        return {path};
    }
    write_file(path, records_to_csv(r.records));
    write_file(path + ".fits.csv", fits_to_csv(r));
    write_file(path + ".checks.csv", checks_to_csv(r));
    return {path, path + ".fits.csv", path + ".checks.csv"};
}

}  // namespace robinspec::harness

namespace robinspec::harness {

bool Record::operator==(const Record& o) const {
    return same_double(h, o.h) && same_double(gamma, o.gamma) && n == o.n && method == o.method && same_double(mu, o.mu) &&
           same_double(lambda, o.lambda) && error == o.error;
}

bool Check::operator==(const Check& o) const {
    return name == o.name && pass == o.pass && same_double(value, o.value) && same_double(target, o.target) &&
           same_double(tol, o.tol) && detail == o.detail;
}

}  // namespace robinspec::harness
