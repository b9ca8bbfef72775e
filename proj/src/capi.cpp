#include "robinspec/robinspec.h"

#include "robinspec/corrections.hpp"
#include "robinspec/errors.hpp"
#include "robinspec/expansion.hpp"
#include "robinspec/harness.hpp"
#include "robinspec/model1d.hpp"
#include "robinspec/solvers.hpp"
#include "robinspec/wkb.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <vector>

struct rs_curve {
    robinspec::harness::PreparedCurve prepared;
    robinspec::geometry::AssumptionReport assumption;
};

struct rs_corrections {
    robinspec::corrections::CorrectionResult result;
};

struct rs_wkb {
    robinspec::wkb::WkbSolution sol;
};

struct rs_report {
    robinspec::harness::ConvergenceReport report;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

template <class F>
rs_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return RS_OK;
    } catch (const robinspec::Error& e) {
        g_last_error = e.what();
        return static_cast<rs_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RS_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RS_INTERNAL;
    }
}

void need(bool ok, const char* what) {
    if (!ok) robinspec::fail(robinspec::ErrorCode::InvalidArgument, what);
}

robinspec::expansion::ExpansionCoefficients coeffs(const rs_local_data* d) {
    need(d != nullptr, "local data is null");
    robinspec::expansion::ExpansionCoefficients c;
    c.kappa_max = d->kappa_max;
    c.k2 = d->k2;
    c.n = d->n;
    if (d->zeta && d->n_zeta) c.zeta.assign(d->zeta, d->zeta + d->n_zeta);
    return c;
}

void copy_terms(const robinspec::expansion::Evaluation& ev, rs_term* terms, size_t cap, size_t* n_terms) {
    if (n_terms) *n_terms = ev.terms.size();
    if (!terms) return;
    for (size_t i = 0; i < ev.terms.size() && i < cap; ++i) {
        std::memset(terms[i].label, 0, sizeof terms[i].label);
        std::strncpy(terms[i].label, ev.terms[i].label.c_str(), sizeof terms[i].label - 1);
        terms[i].power = ev.terms[i].power;
        terms[i].coefficient = ev.terms[i].coefficient;
        terms[i].value = ev.terms[i].value;
    }
}

rs_curve* make_curve(const std::string& json, size_t n_samples, long site) {
    using namespace robinspec;
    need(n_samples >= 64, "n_samples must be at least 64");
    std::optional<std::size_t> s;
    if (site >= 0) s = static_cast<std::size_t>(site);
    auto* c = new rs_curve{harness::prepare_curve(json, s, n_samples), {}};
    c->assumption = geometry::check_assumption_A(c->prepared.profile);
    return c;
}

}  // namespace

extern "C" {

const char* rs_version(void) { return "0.1.0"; }

const char* rs_status_name(rs_status s) {
    if (s == RS_OK) return "Ok";
    static thread_local std::string name;
    name = std::string(robinspec::error_name(static_cast<robinspec::ErrorCode>(s)));
    return name.c_str();
}

const char* rs_last_error(void) { return g_last_error.c_str(); }

rs_status rs_curve_from_json(const char* json, size_t n_samples, long site, rs_curve** out) {
    return guard([&] {
        need(json && out, "null argument");
        *out = make_curve(json, n_samples, site);
    });
}

rs_status rs_curve_from_file(const char* path, size_t n_samples, long site, rs_curve** out) {
    return guard([&] {
        need(path && out, "null argument");
        std::FILE* f = std::fopen(path, "rb");
        if (!f) robinspec::fail(robinspec::ErrorCode::IoFailure, std::string("cannot open ") + path);
        std::string text;
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
        std::fclose(f);
        *out = make_curve(text, n_samples, site);
    });
}

void rs_curve_free(rs_curve* c) { delete c; }

rs_status rs_curve_get_info(const rs_curve* c, rs_curve_info* out) {
    return guard([&] {
        need(c && out, "null argument");
        const auto& p = c->prepared.profile;
        out->period = p.period();
        out->kappa_max = p.kappa_max();
        out->k2 = p.k2();
        out->window = c->prepared.window.value_or(0.0);
        out->unique_max = c->prepared.window ? 0 : 1;
        out->n_sites = c->assumption.sites.size();
    });
}

size_t rs_curve_warning_count(const rs_curve* c) { return c ? c->prepared.warnings.size() : 0; }

const char* rs_curve_warning(const rs_curve* c, size_t i) {
    return c && i < c->prepared.warnings.size() ? c->prepared.warnings[i].c_str() : nullptr;
}

rs_status rs_curve_jet(const rs_curve* c, size_t order, double* out) {
    return guard([&] {
        need(c && out, "null argument");
        auto jet = c->prepared.profile.kappa_jet(0.0, order);
        std::copy_n(jet.begin(), std::min(jet.size(), order + 1), out);
    });
}

rs_status rs_model_transcendental(double L, rs_model_pair* out) {
    return guard([&] {
        need(out != nullptr, "null argument");
        auto p = robinspec::model1d::solve_transcendental(L);
        *out = {p.lambda, p.lambda_plus_one, p.w, p.A, p.L, p.root_residual, p.lambda2, p.second_nonnegative ? 1 : 0};
    });
}

rs_status rs_model_fd_H0h(double L, size_t grid_n, size_t k, double* out) {
    return guard([&] {
        need(out != nullptr, "null argument");
        robinspec::model1d::Model1DConfig cfg;
        cfg.L = L;
        cfg.grid_n = grid_n;
        auto v = robinspec::model1d::fd_eigs_H0h(cfg, k);
        std::copy(v.begin(), v.end(), out);
    });
}

rs_status rs_model_fd_Hbetah(double L, double h, double beta, size_t grid_n, size_t k, double* out) {
    return guard([&] {
        need(out != nullptr, "null argument");
        robinspec::model1d::Model1DConfig cfg;
        cfg.L = L;
        cfg.h = h;
        cfg.beta = beta;
        cfg.grid_n = grid_n;
        auto v = robinspec::model1d::fd_eigs_Hbetah(cfg, k);
        std::copy(v.begin(), v.end(), out);
    });
}

rs_status rs_gamma_to_h(double gamma, double* h) {
    return guard([&] {
        need(h != nullptr, "null argument");
        *h = robinspec::expansion::gamma_to_h(gamma);
    });
}

rs_status rs_h_to_gamma(double h, double* gamma) {
    return guard([&] {
        need(gamma != nullptr, "null argument");
        *gamma = robinspec::expansion::h_to_gamma(h);
    });
}

rs_status rs_expand_lambda(double gamma, const rs_local_data* d, int M, double* value, rs_term* terms, size_t cap,
                           size_t* n_terms) {
    return guard([&] {
        need(value != nullptr, "null argument");
        auto ev = robinspec::expansion::lambda_terms(gamma, coeffs(d), M);
        *value = ev.value;
        copy_terms(ev, terms, cap, n_terms);
    });
}

rs_status rs_expand_mu(double h, const rs_local_data* d, int M, double* value, rs_term* terms, size_t cap,
                       size_t* n_terms) {
    return guard([&] {
        need(value != nullptr, "null argument");
        auto ev = robinspec::expansion::mu_terms(h, coeffs(d), M);
        *value = ev.value;
        copy_terms(ev, terms, cap, n_terms);
    });
}

rs_status rs_corrections_from_curve(const rs_curve* c, int n, int M, int exact, rs_corrections** out) {
    return guard([&] {
        need(c && out, "null argument");
        need(M >= 0, "order must be non-negative");
        auto jet = c->prepared.profile.kappa_jet(0.0, robinspec::corrections::jet_requirement(M));
        *out = new rs_corrections{robinspec::corrections::compute_corrections(jet, n, M, exact != 0)};
    });
}

rs_status rs_corrections_from_jet(const double* jet, size_t len, int n, int M, int exact, rs_corrections** out) {
    return guard([&] {
        need(jet && out, "null argument");
        std::vector<double> j(jet, jet + len);
        *out = new rs_corrections{robinspec::corrections::compute_corrections(j, n, M, exact != 0)};
    });
}

void rs_corrections_free(rs_corrections* r) { delete r; }

size_t rs_corrections_count(const rs_corrections* r) { return r ? r->result.zeta.size() : 0; }

double rs_corrections_zeta(const rs_corrections* r, size_t j) {
    return r && j < r->result.zeta.size() ? r->result.zeta[j] : 0.0;
}

const char* rs_corrections_zeta_exact(const rs_corrections* r, size_t j) {
    if (!r || !r->result.exact || j >= r->result.zeta_exact.size()) return nullptr;
    return r->result.zeta_exact[j].c_str();
}

int rs_corrections_zeta_is_zero(const rs_corrections* r, size_t j) {
    if (!r || j >= r->result.zeta.size()) return 0;
    if (r->result.exact) return r->result.zeta_zero[j] ? 1 : 0;
    double scale = std::max(1.0, r->result.zeta.size() > 1 ? std::abs(r->result.zeta[1]) : 0.0);
    return std::abs(r->result.zeta[j]) < 1e-8 * scale ? 1 : 0;
}

double rs_corrections_omega(const rs_corrections* r) { return r ? r->result.omega : 0.0; }

rs_status rs_wkb_solve(const rs_curve* c, int L, rs_wkb** out) {
    return guard([&] {
        need(c && out, "null argument");
        *out = new rs_wkb{robinspec::wkb::wkb_iterate(c->prepared.profile, L)};
    });
}

void rs_wkb_free(rs_wkb* w) { delete w; }
size_t rs_wkb_mu_count(const rs_wkb* w) { return w ? w->sol.mu.size() : 0; }
double rs_wkb_mu(const rs_wkb* w, size_t l) { return w && l < w->sol.mu.size() ? w->sol.mu[l] : 0.0; }
double rs_wkb_eikonal_residual(const rs_wkb* w) { return w ? w->sol.phase.eikonal_residual : 0.0; }
double rs_wkb_transport_residual(const rs_wkb* w) { return w ? w->sol.amplitude.transport_residual : 0.0; }
size_t rs_wkb_sample_count(const rs_wkb* w) { return w ? w->sol.phase.s.size() : 0; }

rs_status rs_wkb_sample(const rs_wkb* w, size_t i, double* s, double* theta, double* xi0) {
    return guard([&] {
        need(w != nullptr, "null argument");
        const auto& ph = w->sol.phase;
        need(i < ph.s.size(), "sample index out of range");
        if (s) *s = ph.s[i];
        if (theta) *theta = i < ph.theta.size() ? ph.theta[i] : 0.0;
        if (xi0) *xi0 = i < w->sol.amplitude.xi0.size() ? w->sol.amplitude.xi0[i] : 1.0;
    });
}

size_t rs_wkb_warning_count(const rs_wkb* w) { return w ? w->sol.warnings.size() : 0; }

const char* rs_wkb_warning(const rs_wkb* w, size_t i) {
    return w && i < w->sol.warnings.size() ? w->sol.warnings[i].c_str() : nullptr;
}

rs_status rs_solve_boundary(const rs_curve* c, double gamma, size_t k, size_t n_modes, double* values, double* residuals) {
    return guard([&] {
        need(c && values, "null argument");
        robinspec::solvers::BoundaryOptions o;
        o.n_modes = n_modes;
        o.half_width = c->prepared.window;
        auto r = robinspec::solvers::boundary_operator_eigs(c->prepared.profile, gamma, k, o);
        std::copy(r.values.begin(), r.values.end(), values);
        if (residuals) std::copy(r.residuals.begin(), r.residuals.end(), residuals);
    });
}

rs_status rs_solve_collar(const rs_curve* c, double h, size_t k, const rs_collar_grid* grid, uint64_t seed, double* mu,
                          double* residuals, rs_decay* decay) {
    return guard([&] {
        need(c && mu, "null argument");
        robinspec::solvers::CollarGrid g;
        if (grid) {
            g.n_s = grid->n_s;
            g.n_t = grid->n_t;
            g.depth_mult = grid->depth_mult;
        }
        g.half_width = c->prepared.window;
        robinspec::solvers::CollarOptions o;
        o.eig.seed = seed;
        auto r = robinspec::solvers::collar_2d_eigs(c->prepared.profile, h, k, g, o);
        std::copy(r.mu.begin(), r.mu.end(), mu);
        if (residuals) std::copy(r.eig.residuals.begin(), r.eig.residuals.end(), residuals);
        if (decay) {
            auto d = robinspec::solvers::eigenfunction_decay_report(r.eig, r.grid, 0);
            *decay = {d.alpha_t, d.alpha_s, d.tail_mass_t, d.deep_mass, d.r2_quadratic, d.r2_linear};
        }
    });
}

rs_status rs_shoot_disc(double R, double h, double* mu, double* robin_residual) {
    return guard([&] {
        need(mu != nullptr, "null argument");
        auto r = robinspec::solvers::shooting_disc(R, h);
        *mu = r.mu;
        if (robin_residual) *robin_residual = r.robin_residual;
    });
}

void rs_sweep_defaults(rs_sweep* s) {
    if (!s) return;
    robinspec::harness::SweepSpec d;
    static const int kLevels[] = {1, 2};
    *s = rs_sweep{};
    s->site = -1;
    s->levels = kLevels;
    s->n_levels = 2;
    s->order = d.order;
    s->run_collar = d.run_collar;
    s->run_boundary = d.run_boundary;
    s->richardson = d.richardson;
    s->grid = {d.grid.n_s, d.grid.n_t, d.grid.depth_mult};
    s->boundary_modes = d.boundary_modes;
    s->seed = d.seed;
    s->workers = 0;
}

rs_status rs_verify(const rs_sweep* s, rs_report** out) {
    return guard([&] {
        need(s && out && s->curve_json, "null argument");
        need(s->n_h == 0 || s->h, "h grid is null");
        need(s->n_levels > 0 && s->levels, "levels are empty");
        robinspec::harness::SweepSpec spec;
        spec.curve_json = s->curve_json;
        if (s->site >= 0) spec.site = static_cast<std::size_t>(s->site);
        spec.h.assign(s->h, s->h + s->n_h);
        spec.levels.assign(s->levels, s->levels + s->n_levels);
        spec.order = s->order;
        spec.run_collar = s->run_collar != 0;
        spec.run_boundary = s->run_boundary != 0;
        spec.richardson = s->richardson != 0;
        spec.grid = {s->grid.n_s, s->grid.n_t, s->grid.depth_mult, std::nullopt};
        spec.boundary_modes = s->boundary_modes;
        spec.seed = s->seed;
        spec.workers = s->workers;
        auto* r = new rs_report{robinspec::harness::verify(spec), {}};
        r->json = robinspec::harness::report_to_json(r->report);
        *out = r;
    });
}

void rs_report_free(rs_report* r) { delete r; }
int rs_report_all_pass(const rs_report* r) { return r && r->report.all_pass() ? 1 : 0; }
const char* rs_report_json(const rs_report* r) { return r ? r->json.c_str() : nullptr; }
size_t rs_report_check_count(const rs_report* r) { return r ? r->report.checks.size() : 0; }

rs_status rs_report_check(const rs_report* r, size_t i, const char** name, int* pass, double* value, double* target) {
    return guard([&] {
        need(r != nullptr, "null argument");
        need(i < r->report.checks.size(), "check index out of range");
        const auto& c = r->report.checks[i];
        if (name) *name = c.name.c_str();
        if (pass) *pass = c.pass ? 1 : 0;
        if (value) *value = c.value;
        if (target) *target = c.target;
    });
}

rs_status rs_report_emit(const rs_report* r, const char* format, const char* path) {
    return guard([&] {
        need(r && format && path, "null argument");
        robinspec::harness::report_emit(r->report, robinspec::harness::parse_format(format), path);
    });
}

rs_status rs_self_test(double* max_error, int* pass) {
    return guard([&] {
        auto st = robinspec::harness::synthetic_self_test();
        if (max_error) *max_error = st.max_error;
        if (pass) *pass = st.pass ? 1 : 0;
    });
}

}  // extern "C"
