#include <doctest.h>

#include "robinspec/errors.hpp"
#include "robinspec/geometry.hpp"
#include "robinspec/model1d.hpp"
#include "robinspec/solvers.hpp"
#include "robinspec/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace robinspec;
using namespace robinspec::solvers;

namespace {

geometry::CurvatureProfile disc(double R) { return geometry::arc_length_reparam(geometry::ParametricCurve::circle(R), 128); }

geometry::CurvatureProfile ellipse_at_max() {
    auto p = geometry::arc_length_reparam(geometry::ParametricCurve::ellipse(2.0, 1.0), 1024);
    return geometry::localize_max(p, 0).profile;
}

double bessel_robin(double k, double R, double h) {
    return std::sqrt(h) * k * std::cyl_bessel_i(1.0, k * R) / std::cyl_bessel_i(0.0, k * R) - 1.0;
}

DiscreteOperator dirichlet_1d(std::size_t n) {
    double dx = std::numbers::pi / static_cast<double>(n + 1);
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < n; ++i) {
        int ii = static_cast<int>(i);
        t.emplace_back(ii, ii, 2.0 / dx);
        if (i + 1 < n) {
            t.emplace_back(ii, ii + 1, -1.0 / dx);
            t.emplace_back(ii + 1, ii, -1.0 / dx);
        }
    }
    DiscreteOperator op;
    op.A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    op.A.setFromTriplets(t.begin(), t.end());
    SparseMatrix B(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    B.setIdentity();
    B *= dx;
    op.B = B;
    return op;
}

}  // namespace

TEST_CASE("Lanczos solver on the Dirichlet Laplacian") {
    auto op = dirichlet_1d(400);
    auto r = eigen_solve(op, 4, 0.0);
    REQUIRE(r.values.size() == 4);
    double dx = std::numbers::pi / 401.0;
    for (int m = 1; m <= 4; ++m) {
        double exact = 4.0 / (dx * dx) * std::pow(std::sin(m * dx / 2.0), 2);
        CHECK(r.values[static_cast<std::size_t>(m - 1)] == doctest::Approx(exact).epsilon(1e-10));
        CHECK(r.values[static_cast<std::size_t>(m - 1)] == doctest::Approx(double(m * m)).epsilon(1e-4));
    }
    CHECK(count_below(op, 4.5) == 2);
    CHECK(op.asymmetry() == 0.0);
    CHECK(op.mass_diagonally_dominant());
}

TEST_CASE("eigenvalues are invariant under a symmetric permutation") {
    auto prof = disc(1.0);
    auto op = assemble_collar(prof, 1.0 / 100.0, CollarGrid{16, 80, 8.0, std::nullopt});
    auto base = eigen_solve(op, 3, -1.2);
    std::vector<int> perm(op.dimension());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(5);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> P(static_cast<Eigen::Index>(perm.size()));
    for (std::size_t i = 0; i < perm.size(); ++i) P.indices()[static_cast<Eigen::Index>(i)] = perm[i];
    DiscreteOperator q;
    q.A = P * op.A * P.transpose();
    q.B = SparseMatrix(P * (*op.B) * P.transpose());
    auto perm_r = eigen_solve(q, 3, -1.2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(perm_r.values[i] == doctest::Approx(base.values[i]).epsilon(1e-10));
}

TEST_CASE("boundary operator on a circle is exact") {
    auto prof = disc(1.0);
    for (double gamma : {-5.0, -40.0}) {
        auto r = boundary_operator_eigs(prof, gamma, 3, BoundaryOptions{64});
        CHECK(r.values[0] == doctest::Approx(-gamma * gamma + gamma).epsilon(1e-12));
        CHECK(r.values[1] == doctest::Approx(1.0 - gamma * gamma + gamma).epsilon(1e-12));
        CHECK(r.values[2] == doctest::Approx(1.0 - gamma * gamma + gamma).epsilon(1e-12));
    }
    CHECK_THROWS_AS(boundary_operator_eigs(prof, 1.0, 1), Error);
}

TEST_CASE("boundary operator on the ellipse: harmonic limit and resolution check") {
    auto prof = ellipse_at_max();
    const double gamma = -400.0;
    BoundaryOptions o{128, 1.2, 1e-9};
    auto r = boundary_operator_eigs(prof, gamma, 2, o);
    // kappa = 2 - 9 s^2 + (183/4) s^4 + ...: harmonic frequency sqrt(9 |gamma|), first-order quartic shift -183/48
    auto shift = [](double g, double e) { return e - (-g * g + 2.0 * g + std::sqrt(-9.0 * g)); };
    double d400 = shift(gamma, r.values[0]);
    auto r1600 = boundary_operator_eigs(prof, -1600.0, 1, BoundaryOptions{128, 0.6, 1e-9});
    double d1600 = shift(-1600.0, r1600.values[0]);
    CHECK(std::abs(d1600 + 183.0 / 48.0) < std::abs(d400 + 183.0 / 48.0));
    CHECK(d1600 == doctest::Approx(-183.0 / 48.0).epsilon(0.05));
    double w = std::sqrt(-gamma * 18.0 / 2.0);
    CHECK((r.values[1] - r.values[0]) / w == doctest::Approx(2.0).epsilon(0.1));
    auto again = boundary_operator_eigs(prof, gamma, 2, BoundaryOptions{256, 1.2, 1e-9});
    CHECK(again.values[0] == doctest::Approx(r.values[0]).epsilon(1e-12));
    CHECK_THROWS_AS(boundary_operator_eigs(prof, gamma, 1, BoundaryOptions{16, 1.2, 1e-12}), Error);
}

TEST_CASE("disc shooting solves the Bessel Robin condition") {
    for (double h : {1.0 / 25.0, 1.0 / 400.0, 1e-4}) {
        auto s = shooting_disc(1.0, h);
        double k = std::sqrt(-s.mu) / h;
        CHECK(std::abs(bessel_robin(k, 1.0, h)) < 1e-9);
        CHECK(s.robin_residual < 1e-10);
    }
    auto s2 = shooting_disc(2.0, 1.0 / 100.0);
    CHECK(std::abs(bessel_robin(std::sqrt(-s2.mu) * 100.0, 2.0, 1.0 / 100.0)) < 1e-9);
    CHECK_THROWS_AS(shooting_disc(-1.0, 0.1), Error);
}

TEST_CASE("disc collar agrees with shooting and converges at second order") {
    auto prof = disc(1.0);
    const double h = 1.0 / 400.0;
    double ref = shooting_disc(1.0, h).mu;
    std::vector<double> err;
    for (std::size_t nt : {100u, 200u, 400u}) {
        auto r = collar_2d_eigs(prof, h, 1, CollarGrid{16, nt, 8.0, std::nullopt});
        err.push_back(std::abs(r.mu[0] - ref));
    }
    CHECK(err.back() / std::abs(ref) < 1e-3);
    double order = std::log2(err[1] / err[2]);
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("collar depth: robustness and monotonicity") {
    auto prof = disc(1.0);
    const double h = 1.0 / 400.0;
    auto deep = collar_2d_eigs(prof, h, 1, CollarGrid{16, 480, 12.0, std::nullopt});
    auto mid = collar_2d_eigs(prof, h, 1, CollarGrid{16, 320, 8.0, std::nullopt});
    // Dirichlet truncation at tau = T perturbs by O(exp(-2T))
    CHECK(std::abs(deep.mu[0] - mid.mu[0]) < 10.0 * std::exp(-16.0) * std::abs(mid.mu[0]));
    CollarOptions loose;
    loose.check_truncation = false;
    auto shallow = collar_2d_eigs(prof, h, 1, CollarGrid{16, 120, 3.0, std::nullopt}, loose);
    CHECK(shallow.mu[0] >= mid.mu[0]);
    CHECK_THROWS_AS(collar_2d_eigs(prof, h, 1, CollarGrid{16, 120, 3.0, std::nullopt}), Error);
    CHECK_THROWS_AS(assemble_collar(prof, 1.0 / 4.0, CollarGrid{16, 100, 8.0, std::nullopt}), Error);
}

TEST_CASE("collar form is symmetric with a positive mass") {
    auto prof = ellipse_at_max();
    auto op = assemble_collar(prof, 1e-3, CollarGrid{40, 60, 8.0, 0.8});
    CHECK(op.asymmetry() < 1e-14);
    CHECK(op.mass_diagonally_dominant());
    CHECK(op.grid->n_s * op.grid->n_t == op.dimension());
}

TEST_CASE("ellipse collar eigenfunction decay") {
    auto prof = ellipse_at_max();
    const double h = 1.0 / 400.0;
    double W = 6.0 * std::pow(h, 0.125) / std::sqrt(3.0);
    auto r = collar_2d_eigs(prof, h, 1, CollarGrid{96, 200, 8.0, W});
    auto rep = eigenfunction_decay_report(r.eig, r.grid);
    CHECK(rep.alpha_t == doctest::Approx(1.0).epsilon(0.1));
    CHECK(rep.alpha_s > 0.0);
    // approach to the harmonic rates alpha_t = 1, alpha_s = omega / 2 = 3/2
    double prev = 1.5 - rep.alpha_s;
    for (double hs : {1e-5, 1e-7, 1e-9, 1e-11}) {
        double Ws = 6.0 * std::pow(hs, 0.125) / std::sqrt(3.0);
        auto rs = collar_2d_eigs(prof, hs, 1, CollarGrid{96, 200, 8.0, Ws});
        auto reps = eigenfunction_decay_report(rs.eig, rs.grid);
        double dev = 1.5 - reps.alpha_s;
        CHECK(dev > 0.0);
        CHECK(dev < 0.7 * prev);
        CHECK(std::abs(reps.alpha_t - 1.0) < 10.0 * std::sqrt(hs));
        prev = dev;
    }
    CHECK(prev < 0.03);
    double target = -h - 2.0 * std::pow(h, 1.5) + 3.0 * std::pow(h, 1.75);
    CHECK(r.mu[0] == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("ellipse s-profile follows the Agmon profile of the well") {
    auto full = geometry::arc_length_reparam(geometry::ParametricCurve::ellipse(2.0, 1.0), 1024);
    auto loc = geometry::localize_max(full, 0);
    double W = loc.profile.well_half_width();
    const double h = 1.0 / 400.0;
    auto r = collar_2d_eigs(loc.profile, h, 1, CollarGrid{160, 400, 8.0, W});
    auto rep = eigenfunction_decay_report(r.eig, r.grid);
    auto ph = wkb::solve_eikonal(loc.profile);
    auto am = wkb::solve_transport_0(loc.profile, ph);
    double smax = *std::max_element(rep.s_marginal.begin(), rep.s_marginal.end());
    double reach = 0.0;
    for (std::size_t i = 0; i < r.grid.n_s; ++i)
        if (rep.s_marginal[i] >= 1e-6 * smax) reach = std::max(reach, std::abs(r.grid.s[i]));
    auto r2 = [](const std::vector<double>& s, const std::vector<double>& y, double lim, bool quad) {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        auto f = [&](double x) { return quad ? x * x : std::abs(x); };
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s[i]) > lim) continue;
            double x = f(s[i]);
            n += 1, sx += x, sy += y[i], sxx += x * x, sxy += x * y[i];
        }
        double b = (n * sxy - sx * sy) / (n * sxx - sx * sx), a = (sy - b * sx) / n, res = 0, tot = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s[i]) > lim) continue;
            res += std::pow(y[i] - a - b * f(s[i]), 2);
            tot += std::pow(y[i] - sy / n, 2);
        }
        return 1.0 - res / tot;
    };
    std::vector<double> cs, cy, ws, wy;
    for (std::size_t i = 0; i < r.grid.n_s; ++i)
        if (rep.s_marginal[i] >= 1e-6 * smax) cs.push_back(r.grid.s[i]), cy.push_back(std::log(rep.s_marginal[i]));
    double q = std::pow(h, 0.25);
    for (std::size_t i = 0; i < ph.s.size(); ++i)
        ws.push_back(ph.s[i]), wy.push_back(-2.0 * ph.theta[i] / q + 2.0 * std::log(am.xi0[i]));
    for (double lim : {2.0 * std::pow(h, 0.125), reach}) {
        double cq = r2(cs, cy, lim, true), cl = r2(cs, cy, lim, false);
        double wq = r2(ws, wy, lim, true), wl = r2(ws, wy, lim, false);
        CHECK(std::abs(cq - wq) < 3e-3);
        CHECK(std::abs(cl - wl) < 3e-3);
        CHECK((cq > cl) == (wq > wl));
    }
}
