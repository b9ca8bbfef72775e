// One pass/fail line per acceptance criterion. Usage: acceptance [--criterion N]
#include "robinspec/corrections.hpp"
#include "robinspec/errors.hpp"
#include "robinspec/geometry.hpp"
#include "robinspec/harness.hpp"
#include "robinspec/model1d.hpp"
#include "robinspec/solvers.hpp"
#include "robinspec/wkb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

using namespace robinspec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const char* kEllipse = R"({"shape":"ellipse","a":2,"b":1})";
const char* kEgg = R"({"shape":"egg","a":2,"b":1,"eps":0.1})";
const char* kDisc = R"({"shape":"circle","R":1})";

Outcome transcendental_law() {
    bool ok = true;
    std::string d;
    for (double L : {6.0, 8.0, 10.0, 12.0}) {
        auto r = model1d::solve_transcendental(L);
        double ratio = r.lambda_plus_one / (4.0 * std::exp(-2.0 * L));
        ok = ok && ratio >= 0.9 && ratio <= 1.1 && r.lambda2 >= -1e-8;
        d += fmt("L=%g ratio=%.6f lambda2=%.4g; ", L, ratio, r.lambda2);
    }
    return {ok, d};
}

Outcome fd_oracle() {
    auto exact = model1d::solve_transcendental(5.0);
    model1d::Model1DConfig cfg{5.0, 0.3, 0.01, 0.0, 2000};
    double err = std::abs(model1d::fd_eigs_H0h(cfg, 1)[0] - exact.lambda);
    std::vector<double> lh, le;
    for (std::size_t n : {100u, 200u, 400u, 800u}) {
        model1d::Model1DConfig c{5.0, 0.3, 0.01, 0.0, n};
        lh.push_back(1.0 / static_cast<double>(n));
        le.push_back(std::abs(model1d::fd_eigs_H0h(c, 1)[0] - exact.lambda));
    }
    auto fit = harness::fit_power_law(lh, le);
    return {err < 1e-6 && std::abs(fit.exponent - 2.0) <= 0.1, fmt("error %.3g at 2000 pts/unit; grid order %.4f", err, fit.exponent)};
}

double weighted_variation(double rho, std::string& d) {
    double lo = INFINITY, hi = 0.0;
    for (double beta : {0.5, 1.0, 2.0})
        for (double h : {1e-2, 1e-3, 1e-4}) {
            auto cfg = model1d::Model1DConfig::from_h(h, rho, beta, 4000);
            double l1 = model1d::fd_eigs_Hbetah(cfg, 1)[0];
            double c = std::abs(l1 - (-1.0 - beta * std::sqrt(h))) / (beta * beta * h);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    d += fmt("rho=%.4g: constant in [%.4f, %.4f], variation %.3fx; ", rho, lo, hi, hi / lo);
    return hi / lo;
}

Outcome weighted_law() {
    std::string d;
    double v = weighted_variation(1.0 / 3.0, d);
    weighted_variation(0.3, d);
    return {v < 3.0, d};
}

Outcome boundary_operator() {
    auto disc = harness::prepare_curve(kDisc, std::nullopt);
    double worst = 0.0;
    for (double g : {-5.0, -40.0, -400.0}) {
        auto r = solvers::boundary_operator_eigs(disc.profile, g, 1, solvers::BoundaryOptions{64});
        worst = std::max(worst, std::abs(r.values[0] - (-g * g + g)) / (g * g));
    }
    bool ok = worst < 1e-13;
    std::string d = fmt("circle max rel err %.3g; ellipse", worst);
    auto ell = harness::prepare_curve(kEllipse, std::nullopt);
    const double g = -400.0;
    auto r = solvers::boundary_operator_eigs(ell.profile, g, 3, solvers::BoundaryOptions{256, ell.window, 1e-9});
    for (int n = 1; n <= 3; ++n) {
        double v = (r.values[static_cast<std::size_t>(n - 1)] + g * g - 2.0 * g) / std::sqrt(-g);
        double target = (2 * n - 1) * 3.0;
        double rel = std::abs(v - target) / target;
        ok = ok && rel <= 0.05;
        d += fmt(" n=%d: %.4f vs %g (%.1f%%)", n, v, target, 100.0 * rel);
    }
    return {ok, d};
}

Outcome full_law() {
    harness::SweepSpec s;
    s.curve_json = kEllipse;
    s.h = {1.0 / 100, 1.0 / 200, 1.0 / 400, 1.0 / 800, 1.0 / 1600};
    s.levels = {1, 2};
    auto rep = harness::verify(s);
    bool ok = true;
    std::string d;
    for (const auto& c : rep.checks) {
        if (c.name.find("exponent-7/4[n=1]") == std::string::npos && c.name.find("coefficient-7/4[n=1]") == std::string::npos &&
            c.name.rfind("gap", 0) != 0)
            continue;
        ok = ok && c.pass;
        d += fmt("%s %s %.4f (target %g); ", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.target);
    }
    for (const auto& r : rep.records)
        if (!r.ok()) d += fmt("[h=%g n=%d %s: %s] ", r.h, r.n, r.method.c_str(), r.error.c_str());
    return {ok && !d.empty(), d};
}

Outcome disc_oracle() {
    auto disc = harness::prepare_curve(kDisc, std::nullopt);
    const double h = 0.01;
    double ref = solvers::shooting_disc(1.0, h).mu;
    auto r = solvers::collar_2d_eigs(disc.profile, h, 1, solvers::CollarGrid{32, 400, 8.0, std::nullopt});
    double rel = std::abs(r.mu[0] - ref) / std::abs(ref);
    return {rel < 1e-3, fmt("collar %.10f shooting %.10f rel %.3g", r.mu[0], ref, rel)};
}

std::vector<double> jet_of(const char* curve) {
    auto pc = harness::prepare_curve(curve, std::nullopt);
    return pc.profile.kappa_jet(0.0, 10);
}

Outcome parity() {
    auto jet = jet_of(kEllipse);
    bool ok = true;
    std::string d;
    for (int n : {1, 2}) {
        auto ex = corrections::compute_corrections(jet, n, 4, true);
        auto fl = corrections::compute_corrections(jet, n, 4, false);
        double scale = std::max(1.0, std::abs(fl.zeta[1]));
        for (int j : {0, 2, 4}) {
            bool z = ex.zeta_zero[static_cast<std::size_t>(j)] && std::abs(fl.zeta[static_cast<std::size_t>(j)]) < 1e-8 * scale;
            ok = ok && z;
            d += fmt("n=%d j=%d exact=%s float=%.2g; ", n, j, ex.zeta_exact[static_cast<std::size_t>(j)].c_str(),
                     fl.zeta[static_cast<std::size_t>(j)]);
        }
    }
    return {ok, d};
}

Outcome wkb_heads() {
    auto pc = harness::prepare_curve(kEllipse, std::nullopt);
    auto sol = wkb::wkb_iterate(pc.profile, 4);
    const double want[4] = {-1.0, 0.0, -2.0, 3.0};
    double worst = 0.0;
    for (int l = 0; l < 4; ++l) worst = std::max(worst, std::abs(sol.mu[static_cast<std::size_t>(l)] - want[l]));
    bool ok = worst < 1e-10 && sol.phase.eikonal_residual < 1e-8 && sol.amplitude.transport_residual < 1e-8;
    return {ok, fmt("heads max err %.3g; eikonal %.3g; transport %.3g", worst, sol.phase.eikonal_residual,
                    sol.amplitude.transport_residual)};
}

Outcome cross_construction() {
    auto pc = harness::prepare_curve(kEgg, std::nullopt);
    auto sol = wkb::wkb_iterate(pc.profile, 4);
    auto cr = corrections::compute_corrections(pc.profile.kappa_jet(0.0, 10), 1, 1, false);
    double diff = std::abs(sol.mu[4] - cr.zeta[1]);
    return {diff < 1e-6, fmt("mu4 %.12f zeta1 %.12f diff %.3g", sol.mu[4], cr.zeta[1], diff)};
}

Outcome localization() {
    auto pc = harness::prepare_curve(kEllipse, std::nullopt);
    const double h = 1.0 / 400.0;
    auto r = solvers::collar_2d_eigs(pc.profile, h, 1, solvers::CollarGrid{160, 400, 8.0, pc.window});
    auto rep = solvers::eigenfunction_decay_report(r.eig, r.grid);
    bool ok = rep.tail_mass_t < 1e-3 && rep.alpha_t > 0.0 && rep.alpha_s > 0.0 && rep.r2_quadratic > rep.r2_linear;
    // informational: the same comparison restricted to |s| <= 2 h^{1/8}
    double smax = *std::max_element(rep.s_marginal.begin(), rep.s_marginal.end());
    double lim = 2.0 * std::pow(h, 0.125);
    std::vector<double> s, y;
    for (std::size_t i = 0; i < r.grid.n_s; ++i)
        if (rep.s_marginal[i] >= 1e-6 * smax && std::abs(r.grid.s[i]) <= lim) {
            s.push_back(r.grid.s[i]);
            y.push_back(std::log(rep.s_marginal[i]));
        }
    auto r2 = [&](auto f) {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            double x = f(s[i]);
            n += 1;
            sx += x;
            sy += y[i];
            sxx += x * x;
            sxy += x * y[i];
        }
        double b = (n * sxy - sx * sy) / (n * sxx - sx * sx), a = (sy - b * sx) / n, res = 0, tot = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            res += std::pow(y[i] - a - b * f(s[i]), 2);
            tot += std::pow(y[i] - sy / n, 2);
        }
        return 1.0 - res / tot;
    };
    double near_q = r2([](double x) { return x * x; }), near_l = r2([](double x) { return std::abs(x); });
    return {ok, fmt("tail %.3g alpha_t %.4f alpha_s %.4f R2 quadratic %.4f linear %.4f (|s| <= 2h^{1/8}: %.4f vs %.4f)",
                    rep.tail_mass_t, rep.alpha_t, rep.alpha_s, rep.r2_quadratic, rep.r2_linear, near_q, near_l)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"transcendental law", transcendental_law},
        {"finite differences vs transcendental root", fd_oracle},
        {"weighted two-term law", weighted_law},
        {"effective boundary operator", boundary_operator},
        {"full two-dimensional law", full_law},
        {"disc collar vs shooting", disc_oracle},
        {"parity vanishing", parity},
        {"WKB heads and residuals", wkb_heads},
        {"WKB mu4 vs zeta1", cross_construction},
        {"localization", localization},
    };
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (only && id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o = {false, std::string("error ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
