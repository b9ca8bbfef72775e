#include "robinspec/errors.hpp"
#include "robinspec/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace robinspec::solvers {

namespace {

double wrap_centered(double s, double P) {
    double r = std::fmod(s, P);
    if (r > P / 2.0) r -= P;
    if (r <= -P / 2.0) r += P;
    return r;
}

struct Fit {
    double slope = 0.0;
    double r2 = 0.0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) return {};
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return {};
    Fit f;
    f.slope = sxy / sxx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

}  // namespace

DiscreteOperator assemble_collar(const geometry::CurvatureProfile& profile, double h, const CollarGrid& grid) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
    if (grid.n_s < 4 || grid.n_t < 4) fail(ErrorCode::InvalidArgument, "collar grid too small");
    if (!(grid.depth_mult > 0.0)) fail(ErrorCode::InvalidArgument, "collar depth must be positive");
    if (grid.half_width && !(*grid.half_width > 0.0)) fail(ErrorCode::InvalidArgument, "half width must be positive");

    const double rh = std::sqrt(h);
    const double depth = grid.depth_mult;  // in tau units, T = depth * sqrt(h)
    if (1.0 - depth * rh * profile.kappa_max() <= 0.0)
        fail(ErrorCode::CollarTooDeep, "collar depth " + std::to_string(depth * rh) + " exceeds the radius of curvature");

    GridInfo g;
    g.n_s = grid.n_s;
    g.n_t = grid.n_t;
    g.periodic = !grid.half_width.has_value();
    g.h = h;
    g.depth_tau = depth;
    g.dtau = depth / static_cast<double>(grid.n_t);
    double s0 = 0.0;
    if (g.periodic) {
        g.ds = profile.period() / static_cast<double>(grid.n_s);
        s0 = 0.0;
    } else {
        double W = *grid.half_width;
        g.ds = 2.0 * W / static_cast<double>(grid.n_s + 1);
        s0 = -W + g.ds;
    }
    g.s.resize(g.n_s);
    for (std::size_t i = 0; i < g.n_s; ++i) g.s[i] = s0 + g.ds * static_cast<double>(i);
    g.tau.resize(g.n_t);
    for (std::size_t j = 0; j < g.n_t; ++j) g.tau[j] = g.dtau * static_cast<double>(j);

    // curvature at nodes and at s-midpoints (midpoint i sits between node i and node i+1)
    std::vector<double> kn(g.n_s), km(g.n_s + 1);
    for (std::size_t i = 0; i < g.n_s; ++i) kn[i] = profile.kappa(g.s[i]);
    for (std::size_t i = 0; i <= g.n_s; ++i) km[i] = profile.kappa(s0 + g.ds * (static_cast<double>(i) - 0.5));

    auto jac = [&](double kap, double tau) { return 1.0 - rh * tau * kap; };
    const std::size_t N = g.n_s * g.n_t;
    g.weight.resize(N);
    g.jacobian.resize(N);

    std::vector<Eigen::Triplet<double>> ta, tb;
    ta.reserve(N * 5);
    tb.reserve(N);
    auto add_edge = [&](std::size_t p, std::optional<std::size_t> q, double c) {
        ta.emplace_back(static_cast<int>(p), static_cast<int>(p), c);
        if (q) {
            ta.emplace_back(static_cast<int>(*q), static_cast<int>(*q), c);
            ta.emplace_back(static_cast<int>(p), static_cast<int>(*q), -c);
            ta.emplace_back(static_cast<int>(*q), static_cast<int>(p), -c);
        }
    };

    for (std::size_t i = 0; i < g.n_s; ++i) {
        for (std::size_t j = 0; j < g.n_t; ++j) {
            std::size_t p = g.index(i, j);
            double wt = (j == 0 ? 0.5 : 1.0) * g.dtau;
            double a = jac(kn[i], g.tau[j]);
            g.weight[p] = g.ds * wt;
            g.jacobian[p] = a;
            tb.emplace_back(static_cast<int>(p), static_cast<int>(p), g.ds * wt * a);

            // tau edge (j, j+1); the node at j = n_t is Dirichlet
            double amid = jac(kn[i], g.tau[j] + 0.5 * g.dtau);
            std::optional<std::size_t> up;
            if (j + 1 < g.n_t) up = g.index(i, j + 1);
            add_edge(p, up, g.ds * amid / g.dtau);

            // s edge (i, i+1)
            double c = h * wt / (jac(km[i + 1], g.tau[j]) * g.ds);
            if (i + 1 < g.n_s)
                add_edge(p, g.index(i + 1, j), c);
            else if (g.periodic)
                add_edge(p, g.index(0, j), c);
            else
                add_edge(p, std::nullopt, c);
            if (i == 0 && !g.periodic) add_edge(p, std::nullopt, h * wt / (jac(km[0], g.tau[j]) * g.ds));
        }
        ta.emplace_back(static_cast<int>(g.index(i, 0)), static_cast<int>(g.index(i, 0)), -g.ds);
    }

    DiscreteOperator op;
    op.A.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    op.A.setFromTriplets(ta.begin(), ta.end());
    SparseMatrix B(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    B.setFromTriplets(tb.begin(), tb.end());
    op.B = std::move(B);
    op.grid = std::move(g);
    return op;
}

CollarResult collar_2d_eigs(const geometry::CurvatureProfile& profile, double h, std::size_t k, const CollarGrid& grid,
                            const CollarOptions& opt) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "eigenvalue count must be positive");
    DiscreteOperator op = assemble_collar(profile, h, grid);
    const GridInfo& g = *op.grid;

    EigOptions eo = opt.eig;
    if (opt.seeded_start && !eo.start) {
        double om = std::sqrt(std::max(profile.k2(), 0.0) / 2.0);
        double scale = std::pow(h, 0.125);
        double center = g.periodic ? profile.s_max() : 0.0;
        Eigen::VectorXd x(static_cast<Eigen::Index>(op.dimension()));
        for (std::size_t i = 0; i < g.n_s; ++i) {
            double s = g.periodic ? wrap_centered(g.s[i] - center, profile.period()) : g.s[i] - center;
            double sig = s / scale;
            double f = std::exp(-0.5 * om * sig * sig);
            for (std::size_t j = 0; j < g.n_t; ++j) x[static_cast<Eigen::Index>(g.index(i, j))] = f * std::exp(-g.tau[j]);
        }
        eo.start = std::move(x);
    }
    eo.keep_vectors = true;
    double target = -1.0 - std::sqrt(h) * profile.kappa_max();
    EigResult er = eigen_solve(op, k, target, eo);

    CollarResult r;
    for (double v : er.values) r.mu.push_back(h * v);
    for (std::size_t c = 0; c < er.values.size(); ++c) {
        double tot = 0.0, deep = 0.0;
        for (std::size_t p = 0; p < op.dimension(); ++p) {
            double x = er.vectors(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c));
            double m = x * x * g.weight[p] * g.jacobian[p];
            tot += m;
            if (g.tau[p % g.n_t] > 0.9 * g.depth_tau) deep += m;
        }
        r.deep_mass.push_back(tot > 0.0 ? deep / tot : 0.0);
    }
    if (opt.check_truncation)
        for (std::size_t c = 0; c < r.deep_mass.size(); ++c)
            if (r.deep_mass[c] > opt.truncation_limit)
                fail(ErrorCode::TruncationSuspect, "eigenfunction " + std::to_string(c + 1) + " has mass " +
                                                       std::to_string(r.deep_mass[c]) + " in the deepest tenth of the collar");
    r.eig = std::move(er);
    r.grid = g;
    return r;
}

DecayReport eigenfunction_decay_report(const EigResult& result, const GridInfo& g, std::size_t index) {
    if (index >= static_cast<std::size_t>(result.vectors.cols()))
        fail(ErrorCode::InvalidArgument, "no eigenvector with that index");
    if (static_cast<std::size_t>(result.vectors.rows()) != g.n_s * g.n_t)
        fail(ErrorCode::InvalidArgument, "grid does not match eigenvector");
    DecayReport rep;
    rep.t_marginal.assign(g.n_t, 0.0);
    rep.s_marginal.assign(g.n_s, 0.0);
    double tot = 0.0, tail = 0.0, deep = 0.0;
    for (std::size_t i = 0; i < g.n_s; ++i)
        for (std::size_t j = 0; j < g.n_t; ++j) {
            std::size_t p = g.index(i, j);
            double x = result.vectors(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(index));
            double m = x * x * g.weight[p] * g.jacobian[p];
            rep.t_marginal[j] += m / (j == 0 ? 0.5 * g.dtau : g.dtau);
            rep.s_marginal[i] += m / g.ds;
            tot += m;
            if (g.tau[j] > 4.0) tail += m;
            if (g.tau[j] > 0.9 * g.depth_tau) deep += m;
        }
    rep.tail_mass_t = tail / tot;
    rep.deep_mass = deep / tot;

    double tmax = *std::max_element(rep.t_marginal.begin(), rep.t_marginal.end());
    std::vector<double> x, y;
    for (std::size_t j = 0; j < g.n_t; ++j) {
        if (g.tau[j] < 1.0 || g.tau[j] > 0.6 * g.depth_tau) continue;
        if (rep.t_marginal[j] < 1e-14 * tmax) break;
        x.push_back(g.tau[j]);
        y.push_back(std::log(rep.t_marginal[j]));
    }
    rep.alpha_t = -linear_fit(x, y).slope / 2.0;

    std::size_t imax = static_cast<std::size_t>(
        std::max_element(rep.s_marginal.begin(), rep.s_marginal.end()) - rep.s_marginal.begin());
    double smax = rep.s_marginal[imax];
    double period = g.ds * static_cast<double>(g.n_s);
    double q = std::pow(g.h, 0.25);
    std::vector<double> xs2, xs1, ys;
    for (std::size_t i = 0; i < g.n_s; ++i) {
        if (rep.s_marginal[i] < 1e-6 * smax) continue;
        double s = g.s[i] - g.s[imax];
        if (g.periodic) s = wrap_centered(s, period);
        xs2.push_back(s * s / q);
        xs1.push_back(std::abs(s));
        ys.push_back(std::log(rep.s_marginal[i]));
    }
    Fit f2 = linear_fit(xs2, ys), f1 = linear_fit(xs1, ys);
    rep.alpha_s = -f2.slope / 2.0;
    rep.r2_quadratic = f2.r2;
    rep.r2_linear = f1.r2;
    return rep;
}

}  // namespace robinspec::solvers
