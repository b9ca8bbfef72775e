#include "robinspec/robinspec.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

struct Failure {
    rs_status status;
    std::string message;
};

void check(rs_status s) {
    if (s != RS_OK) throw Failure{s, rs_last_error()};
}

struct CurveHandle {
    rs_curve* c = nullptr;
    CurveHandle() = default;
    CurveHandle(const CurveHandle&) = delete;
    CurveHandle& operator=(const CurveHandle&) = delete;
    ~CurveHandle() { rs_curve_free(c); }
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto slash = item.find('/');
        try {
            if (slash == std::string::npos)
                out.push_back(std::stod(item));
            else
                out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
        } catch (const std::exception&) {
            throw Failure{RS_PARSE_ERROR, "bad list entry '" + item + "'"};
        }
    }
    return out;
}

struct Common {
    std::string curve;
    std::string h_grid;
    std::string gamma_grid;
    std::string levels = "1";
    int order = -1;
    double depth_mult = 8.0;
    std::string grid = "160x400";
    std::size_t modes = 256;
    std::string out;
    std::string format;
    bool exact = false;
    std::uint64_t seed = 12345;
    long site = -1;
    std::size_t samples = 1024;
};

std::vector<int> levels_of(const Common& o) {
    std::vector<int> out;
    for (double v : parse_list(o.levels)) {
        if (v < 1 || v != std::floor(v)) throw Failure{RS_INVALID_ARGUMENT, "levels are positive integers"};
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw Failure{RS_INVALID_ARGUMENT, "no levels given"};
    return out;
}

int max_level(const std::vector<int>& l) {
    int m = 0;
    for (int v : l) m = std::max(m, v);
    return m;
}

/// h values from --h-grid, or from --gamma-grid via h = gamma^{-2}
std::vector<double> h_values(const Common& o) {
    if (!o.h_grid.empty() && !o.gamma_grid.empty()) throw Failure{RS_INVALID_ARGUMENT, "give --h-grid or --gamma-grid, not both"};
    std::vector<double> out;
    if (!o.h_grid.empty()) {
        out = parse_list(o.h_grid);
    } else if (!o.gamma_grid.empty()) {
        for (double g : parse_list(o.gamma_grid)) {
            double h = 0;
            check(rs_gamma_to_h(g, &h));
            out.push_back(h);
        }
    }
    for (double h : out)
        if (!(h > 0.0)) throw Failure{RS_INVALID_ARGUMENT, "h values must be positive"};
    return out;
}

rs_collar_grid grid_of(const Common& o) {
    auto x = o.grid.find('x');
    if (x == std::string::npos) throw Failure{RS_PARSE_ERROR, "--grid expects NSxNT"};
    try {
        return {std::stoul(o.grid.substr(0, x)), std::stoul(o.grid.substr(x + 1)), o.depth_mult};
    } catch (const std::exception&) {
        throw Failure{RS_PARSE_ERROR, "--grid expects NSxNT"};
    }
}

void load_curve(const Common& o, CurveHandle& h) {
    if (o.curve.empty()) throw Failure{RS_INVALID_ARGUMENT, "--curve is required"};
    check(rs_curve_from_file(o.curve.c_str(), o.samples, o.site, &h.c));
    for (std::size_t i = 0; i < rs_curve_warning_count(h.c); ++i) std::cerr << "warning: " << rs_curve_warning(h.c, i) << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure{RS_IO_FAILURE, "cannot open " + path};
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) throw Failure{RS_IO_FAILURE, "cannot write " + o.out};
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool want_csv(const Common& o, bool csv_default) {
    if (o.format.empty()) return csv_default;
    if (o.format == "csv") return true;
    if (o.format == "json") return false;
    throw Failure{RS_INVALID_ARGUMENT, "--format must be csv or json"};
}

struct EigRow {
    double param;
    int index;
    double value;
    double residual;
};

std::string eig_rows(const Common& o, const std::vector<EigRow>& rows, const json& extra = json()) {
    if (want_csv(o, true)) {
        std::string s = "param,eigen_index,value,residual\n";
        for (const auto& r : rows) s += num(r.param) + "," + std::to_string(r.index) + "," + num(r.value) + "," + num(r.residual) + "\n";
        return s;
    }
    json j = json::array();
    for (const auto& r : rows) j.push_back({{"param", r.param}, {"eigen_index", r.index}, {"value", r.value}, {"residual", r.residual}});
    json doc = {{"rows", j}};
    if (!extra.is_null()) doc["extra"] = extra;
    return doc.dump(2) + "\n";
}

// ---- subcommands; return true when every check passes ----

bool run_model1d(const Common& o, const std::string& lengths, double rho, double beta, std::size_t grid_n) {
    auto lv = levels_of(o);
    std::size_t k = static_cast<std::size_t>(std::max(2, max_level(lv)));
    std::vector<std::pair<double, double>> cases;  // (L, h)
    auto hs = h_values(o);
    if (!hs.empty())
        for (double h : hs) cases.emplace_back(std::pow(h, -rho), h);
    else
        for (double L : parse_list(lengths)) cases.emplace_back(L, 0.0);
    if (beta != 0.0)
        for (const auto& c : cases)
            if (c.second == 0.0) throw Failure{RS_INVALID_ARGUMENT, "the weighted operator needs --h-grid"};
    bool ok = true;
    json rows = json::array();
    std::string csv = "L,h,beta,index,lambda_fd,lambda_exact,root_residual,second_nonnegative\n";
    for (auto [L, h] : cases) {
        rs_model_pair p{};
        check(rs_model_transcendental(L, &p));
        std::vector<double> fd(k);
        if (beta == 0.0)
            check(rs_model_fd_H0h(L, grid_n, k, fd.data()));
        else
            check(rs_model_fd_Hbetah(L, h, beta, grid_n, k, fd.data()));
        ok = ok && p.second_nonnegative && p.root_residual < 1e-13 && fd[1] >= -1e-6;
        for (std::size_t i = 0; i < k; ++i) {
            double exact = i == 0 ? p.lambda : (i == 1 ? p.lambda2 : NAN);
            if (beta != 0.0) exact = NAN;
            rows.push_back({{"L", L}, {"h", h}, {"beta", beta}, {"index", i + 1}, {"lambda_fd", fd[i]},
                            {"lambda_exact", std::isnan(exact) ? json() : json(exact)}, {"root_residual", p.root_residual},
                            {"second_nonnegative", p.second_nonnegative != 0}});
            csv += num(L) + "," + num(h) + "," + num(beta) + "," + std::to_string(i + 1) + "," + num(fd[i]) + "," + num(exact) +
                   "," + num(p.root_residual) + "," + std::to_string(p.second_nonnegative) + "\n";
        }
    }
    emit(o, want_csv(o, false) ? csv : json({{"rows", rows}, {"pass", ok}}).dump(2) + "\n");
    return ok;
}

std::vector<double> zetas_for(const CurveHandle& c, int n, int M, bool exact) {
    rs_corrections* r = nullptr;
    check(rs_corrections_from_curve(c.c, n, M, exact ? 1 : 0, &r));
    std::vector<double> z(rs_corrections_count(r));
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = rs_corrections_zeta(r, j);
    rs_corrections_free(r);
    return z;
}

bool run_expand(const Common& o, double kappa_max, double k2) {
    auto lv = levels_of(o);
    auto hs = h_values(o);
    if (hs.empty()) throw Failure{RS_INVALID_ARGUMENT, "--h-grid or --gamma-grid is required"};
    CurveHandle c;
    if (!o.curve.empty()) {
        load_curve(o, c);
        rs_curve_info info{};
        check(rs_curve_get_info(c.c, &info));
        kappa_max = info.kappa_max;
        k2 = info.k2;
    } else if (!(k2 > 0.0)) {
        throw Failure{RS_INVALID_ARGUMENT, "give --curve or --kappa-max and --k2"};
    }
    json out = json::array();
    std::string csv = "gamma,h,n,order,value,label,power,coefficient,term_value\n";
    for (int n : lv) {
        std::vector<double> zeta;
        if (o.order >= 0) {
            if (!c.c) throw Failure{RS_MISSING_COEFFICIENTS, "--order needs --curve to compute zeta"};
            zeta = zetas_for(c, n, 2 * o.order + 1, false);
        }
        rs_local_data d{kappa_max, k2, n, zeta.empty() ? nullptr : zeta.data(), zeta.size()};
        for (double h : hs) {
            double gamma = 0, value = 0;
            check(rs_h_to_gamma(h, &gamma));
            std::vector<rs_term> terms(64);
            std::size_t nt = 0;
            check(rs_expand_lambda(gamma, &d, o.order, &value, terms.data(), terms.size(), &nt));
            json tj = json::array();
            for (std::size_t i = 0; i < nt && i < terms.size(); ++i) {
                tj.push_back({{"label", terms[i].label}, {"power", terms[i].power}, {"coefficient", terms[i].coefficient},
                              {"value", terms[i].value}});
                csv += num(gamma) + "," + num(h) + "," + std::to_string(n) + "," + std::to_string(o.order) + "," + num(value) + "," +
                       terms[i].label + "," + num(terms[i].power) + "," + num(terms[i].coefficient) + "," + num(terms[i].value) + "\n";
            }
            out.push_back({{"gamma", gamma}, {"h", h}, {"n", n}, {"order", o.order}, {"value", value}, {"terms", tj}});
        }
    }
    emit(o, want_csv(o, false) ? csv : out.dump(2) + "\n");
    return true;
}

bool run_corrections(const Common& o, const std::string& jet_list) {
    auto lv = levels_of(o);
    int M = o.order < 0 ? 4 : o.order;
    CurveHandle c;
    std::vector<double> jet;
    if (!jet_list.empty())
        jet = parse_list(jet_list);
    else
        load_curve(o, c);
    bool ok = true;
    json out = json::array();
    std::string csv = "n,j,zeta,zeta_exact,zero\n";
    for (int n : lv) {
        rs_corrections* r = nullptr;
        if (c.c)
            check(rs_corrections_from_curve(c.c, n, M, o.exact, &r));
        else
            check(rs_corrections_from_jet(jet.data(), jet.size(), n, M, o.exact, &r));
        json z = json::array(), ze = json::array();
        for (std::size_t j = 0; j < rs_corrections_count(r); ++j) {
            double v = rs_corrections_zeta(r, j);
            const char* ex = rs_corrections_zeta_exact(r, j);
            int zero = rs_corrections_zeta_is_zero(r, j);
            if (j % 2 == 0 && !zero) ok = false;
            z.push_back(v);
            ze.push_back(ex ? json(ex) : json());
            csv += std::to_string(n) + "," + std::to_string(j) + "," + num(v) + "," + (ex ? ex : "") + "," + std::to_string(zero) + "\n";
        }
        out.push_back({{"n", n}, {"order", M}, {"zeta", z}, {"zeta_exact", ze}, {"exact", o.exact}, {"omega", rs_corrections_omega(r)}});
        rs_corrections_free(r);
    }
    emit(o, want_csv(o, false) ? csv : out.dump(2) + "\n");
    return ok;
}

bool run_wkb(const Common& o, std::size_t stride) {
    CurveHandle c;
    load_curve(o, c);
    int L = o.order < 0 ? 4 : o.order;
    rs_wkb* w = nullptr;
    check(rs_wkb_solve(c.c, L, &w));
    json mu = json::array(), th = json::array(), xi = json::array();
    for (std::size_t l = 0; l < rs_wkb_mu_count(w); ++l) mu.push_back(rs_wkb_mu(w, l));
    std::string csv = "s,theta,xi0\n";
    std::size_t ns = rs_wkb_sample_count(w);
    for (std::size_t i = 0; i < ns; i += std::max<std::size_t>(stride, 1)) {
        double s = 0, t = 0, x = 0;
        check(rs_wkb_sample(w, i, &s, &t, &x));
        th.push_back({s, t});
        xi.push_back({s, x});
        csv += num(s) + "," + num(t) + "," + num(x) + "\n";
    }
    double er = rs_wkb_eikonal_residual(w), tr = rs_wkb_transport_residual(w);
    json warn = json::array();
    for (std::size_t i = 0; i < rs_wkb_warning_count(w); ++i) warn.push_back(rs_wkb_warning(w, i));
    rs_wkb_free(w);
    bool ok = er < 1e-8 && tr < 1e-8;
    json doc = {{"mu", mu}, {"eikonal_residual", er}, {"transport_residual", tr}, {"theta_samples", th}, {"xi0_samples", xi},
                {"warnings", warn}, {"pass", ok}};
    emit(o, want_csv(o, false) ? csv : doc.dump(2) + "\n");
    return ok;
}

bool run_solve_boundary(const Common& o) {
    CurveHandle c;
    load_curve(o, c);
    auto lv = levels_of(o);
    std::size_t k = static_cast<std::size_t>(max_level(lv));
    auto hs = h_values(o);
    if (hs.empty()) throw Failure{RS_INVALID_ARGUMENT, "--gamma-grid or --h-grid is required"};
    std::vector<EigRow> rows;
    for (double h : hs) {
        double gamma = 0;
        check(rs_h_to_gamma(h, &gamma));
        std::vector<double> v(k), r(k);
        check(rs_solve_boundary(c.c, gamma, k, o.modes, v.data(), r.data()));
        for (int n : lv) rows.push_back({gamma, n, v[static_cast<std::size_t>(n - 1)], r[static_cast<std::size_t>(n - 1)]});
    }
    emit(o, eig_rows(o, rows));
    return true;
}

bool run_solve_2d(const Common& o) {
    CurveHandle c;
    load_curve(o, c);
    auto lv = levels_of(o);
    std::size_t k = static_cast<std::size_t>(max_level(lv));
    auto hs = h_values(o);
    if (hs.empty()) throw Failure{RS_INVALID_ARGUMENT, "--h-grid or --gamma-grid is required"};
    rs_collar_grid g = grid_of(o);
    std::vector<EigRow> rows;
    json decay = json::array();
    for (double h : hs) {
        std::vector<double> mu(k), r(k);
        rs_decay d{};
        check(rs_solve_collar(c.c, h, k, &g, o.seed, mu.data(), r.data(), &d));
        for (int n : lv) rows.push_back({h, n, mu[static_cast<std::size_t>(n - 1)], r[static_cast<std::size_t>(n - 1)]});
        decay.push_back({{"h", h}, {"alpha_t", d.alpha_t}, {"alpha_s", d.alpha_s}, {"tail_mass_t", d.tail_mass_t},
                         {"deep_mass", d.deep_mass}, {"r2_quadratic", d.r2_quadratic}, {"r2_linear", d.r2_linear}});
    }
    emit(o, eig_rows(o, rows, {{"decay", decay}}));
    return true;
}

bool run_shoot_disc(const Common& o, double radius) {
    auto hs = h_values(o);
    if (hs.empty()) throw Failure{RS_INVALID_ARGUMENT, "--h-grid or --gamma-grid is required"};
    std::vector<EigRow> rows;
    bool ok = true;
    for (double h : hs) {
        double mu = 0, res = 0;
        check(rs_shoot_disc(radius, h, &mu, &res));
        ok = ok && res < 1e-10;
        rows.push_back({h, 1, mu, res});
    }
    emit(o, eig_rows(o, rows));
    return ok;
}

bool run_verify(const Common& o, bool no_richardson, bool no_boundary, unsigned workers) {
    auto lv = levels_of(o);
    auto hs = h_values(o);
    if (o.curve.empty()) throw Failure{RS_INVALID_ARGUMENT, "--curve is required"};
    std::string curve = read_file(o.curve);
    rs_sweep s;
    rs_sweep_defaults(&s);
    s.curve_json = curve.c_str();
    s.site = o.site;
    s.h = hs.data();
    s.n_h = hs.size();
    s.levels = lv.data();
    s.n_levels = lv.size();
    s.order = o.order < 0 ? 1 : o.order;
    s.grid = grid_of(o);
    s.richardson = no_richardson ? 0 : 1;
    s.run_boundary = no_boundary ? 0 : 1;
    s.boundary_modes = o.modes;
    s.seed = o.seed;
    s.workers = workers;
    rs_report* r = nullptr;
    check(rs_verify(&s, &r));
    bool csv = want_csv(o, false);
    if (!o.out.empty()) {
        rs_status st = rs_report_emit(r, csv ? "csv" : "json", o.out.c_str());
        if (st != RS_OK) {
            rs_report_free(r);
            check(st);
        }
    } else if (!csv) {
        std::cout << rs_report_json(r);
    } else {
        rs_report_free(r);
        throw Failure{RS_INVALID_ARGUMENT, "csv output needs --out"};
    }
    for (std::size_t i = 0; i < rs_report_check_count(r); ++i) {
        const char* name = nullptr;
        int pass = 0;
        double value = 0, target = 0;
        rs_report_check(r, i, &name, &pass, &value, &target);
        std::cerr << (pass ? "PASS " : "FAIL ") << name << " value " << num(value) << " target " << num(target) << "\n";
    }
    bool ok = rs_report_all_pass(r) != 0;
    rs_report_free(r);
    return ok;
}

void add_common(CLI::App* sub, Common& o, bool curve, bool grid, bool solver) {
    if (curve) {
        sub->add_option("--curve", o.curve, "curve description (JSON)");
        sub->add_option("--site", o.site, "curvature maximum to use when there are several");
        sub->add_option("--samples", o.samples, "arc-length samples");
    }
    if (grid) {
        sub->add_option("--h-grid", o.h_grid, "comma list of h (fractions like 1/400 allowed)");
        sub->add_option("--gamma-grid", o.gamma_grid, "comma list of negative gamma");
    }
    sub->add_option("--levels", o.levels, "comma list of level indices");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "csv or json");
    if (solver) {
        sub->add_option("--grid", o.grid, "collar grid NSxNT");
        sub->add_option("--collar-depth-mult", o.depth_mult, "collar depth in units of sqrt(h)");
        sub->add_option("--modes", o.modes, "boundary-operator basis size");
        sub->add_option("--seed", o.seed, "eigensolver start-vector seed");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robin Laplacian eigenvalues: asymptotic expansions, correction and WKB recursions, numerical solvers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rs_version()));
    Common o;

    auto* m1 = app.add_subcommand("model1d", "one-dimensional model operators");
    std::string lengths = "5";
    double rho = 0.3, beta = 0.0;
    std::size_t grid_n = 2000;
    add_common(m1, o, false, true, false);
    m1->add_option("--length", lengths, "comma list of interval lengths L");
    m1->add_option("--rho", rho, "L = h^{-rho} when --h-grid is given");
    m1->add_option("--beta", beta, "weight parameter");
    m1->add_option("--grid-n", grid_n, "grid points per unit length");

    auto* ex = app.add_subcommand("expand", "asymptotic eigenvalue expansion");
    double kappa_max = 0.0, k2 = 0.0;
    add_common(ex, o, true, true, false);
    ex->add_option("--order", o.order, "number of beta corrections M (-1: three terms)");
    ex->add_option("--kappa-max", kappa_max, "maximal curvature (without --curve)");
    ex->add_option("--k2", k2, "-kappa''(0) (without --curve)");

    auto* co = app.add_subcommand("corrections", "correction coefficients zeta_j");
    std::string jet;
    add_common(co, o, true, false, false);
    co->add_option("--order", o.order, "max order M (default 4)");
    co->add_flag("--exact", o.exact, "exact rational path");
    co->add_option("--jet", jet, "curvature jet kappa, kappa', ... at the maximum instead of --curve");

    auto* wk = app.add_subcommand("wkb", "WKB energies and Agmon phase");
    std::size_t stride = 10;
    add_common(wk, o, true, false, false);
    wk->add_option("--order", o.order, "max order L (default 4)");
    wk->add_option("--stride", stride, "sample stride for theta and xi0 tables");

    auto* sb = app.add_subcommand("solve-boundary", "effective boundary operator");
    add_common(sb, o, true, true, true);
    auto* s2 = app.add_subcommand("solve-2d", "collar finite-difference solver");
    add_common(s2, o, true, true, true);
    auto* sd = app.add_subcommand("shoot-disc", "radial shooting on the disc");
    double radius = 1.0;
    add_common(sd, o, false, true, false);
    sd->add_option("--radius", radius, "disc radius");

    auto* ve = app.add_subcommand("verify", "convergence sweep and checks");
    bool no_rich = false, no_bnd = false;
    unsigned workers = 0;
    add_common(ve, o, true, true, true);
    ve->add_option("--order", o.order, "correction order for the improved expansion (default 1)");
    ve->add_flag("--no-richardson", no_rich, "skip grid-doubling extrapolation");
    ve->add_flag("--no-boundary", no_bnd, "skip the boundary operator");
    ve->add_option("--workers", workers, "parallel grid points (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        bool ok = true;
        if (*m1) ok = run_model1d(o, lengths, rho, beta, grid_n);
        else if (*ex) ok = run_expand(o, kappa_max, k2);
        else if (*co) ok = run_corrections(o, jet);
        else if (*wk) ok = run_wkb(o, stride);
        else if (*sb) ok = run_solve_boundary(o);
        else if (*s2) ok = run_solve_2d(o);
        else if (*sd) ok = run_shoot_disc(o, radius);
        else if (*ve) ok = run_verify(o, no_rich, no_bnd, workers);
        return ok ? 0 : 2;
    } catch (const Failure& f) {
        std::cerr << "error: " << rs_status_name(f.status) << ": " << f.message << "\n";
        return 1;
    }
}
