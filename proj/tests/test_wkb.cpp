#include <doctest.h>

#include "robinspec/corrections.hpp"
#include "robinspec/errors.hpp"
#include "robinspec/expansion.hpp"
#include "robinspec/wkb.hpp"

#include <cmath>

using namespace robinspec;
using namespace robinspec::wkb;

namespace {

geometry::LocalizedMax at_max(const geometry::ParametricCurve& c, std::optional<std::size_t> site = std::nullopt) {
    return geometry::localize_max(geometry::arc_length_reparam(c, 1024), site);
}

struct Sample {
    double kappa, dkappa, t1, t2, tau;
};

double term_value(const ConjugatedTerm& t, const Sample& v) {
    return t.coeff * std::pow(v.tau, t.tau_pow) * std::pow(v.kappa, t.kappa_pow) * std::pow(v.dkappa, t.dkappa_pow) *
           std::pow(v.t1, t.theta1_pow) * std::pow(v.t2, t.theta2_pow);
}

}  // namespace

TEST_CASE("printed a^-2 coefficients versus the binomial series") {
    // c_j = (1/j!) prod_{k<j} (k - 2)
    auto printed = [](int j) {
        double r = 1.0;
        for (int k = 0; k < j; ++k) r *= (k - 2.0) / (k + 1.0);
        return r;
    };
    CHECK(printed(1) == -2.0);
    CHECK(printed(2) == 1.0);
    CHECK(printed(3) == 0.0);
    double x = 0.1, p = 0.0, c2 = 0.0, c3 = 0.0;
    for (int j = 0; j < 60; ++j) {
        p += printed(j) * std::pow(x, j);
        c2 += inv_square_coeff(j) * std::pow(x, j);
        c3 += inv_cube_coeff(j) * std::pow(x, j);
    }
    CHECK(p == doctest::Approx((1 - x) * (1 - x)));
    CHECK(std::abs(p - 1.0 / ((1 - x) * (1 - x))) > 0.3);
    CHECK(c2 == doctest::Approx(1.0 / std::pow(1 - x, 2)).epsilon(1e-14));
    CHECK(c3 == doctest::Approx(1.0 / std::pow(1 - x, 3)).epsilon(1e-14));
}

TEST_CASE("conjugated operator table matches the closed-form coefficients") {
    Sample v{1.3, 0.4, 0.7, 2.1, 0.9};
    for (double h : {1e-2, 1e-3}) {
        double e = std::pow(h, 0.25);
        double ahat = 1.0 - std::sqrt(h) * v.tau * v.kappa;
        double want_dtau = std::sqrt(h) * v.kappa / ahat;
        double want_ds2 = -h / (ahat * ahat);
        double want_ds = 2.0 * std::pow(h, 0.75) * v.t1 / (ahat * ahat) -
                         std::pow(h, 1.5) * v.tau * v.dkappa / std::pow(ahat, 3);
        double want_id = std::pow(h, 0.75) * v.t2 / (ahat * ahat) - std::sqrt(h) * v.t1 * v.t1 / (ahat * ahat) +
                         std::pow(h, 1.25) * v.tau * v.dkappa * v.t1 / std::pow(ahat, 3);
        double got[4] = {0, 0, 0, 0};
        const int P = 10;
        for (int p = 1; p <= P; ++p)
            for (const auto& t : conjugated_operator(p)) {
                double val = term_value(t, v) * std::pow(e, p);
                switch (t.deriv) {
                    case ConjugatedTerm::D::DTau: got[0] += val; break;
                    case ConjugatedTerm::D::DS2: got[1] += val; break;
                    case ConjugatedTerm::D::DS: got[2] += val; break;
                    case ConjugatedTerm::D::None: got[3] += val; break;
                }
            }
        double tol = 100.0 * std::pow(e, P + 1) + 1e-15;
        CHECK(std::abs(got[0] - want_dtau) < tol);
        CHECK(std::abs(got[1] - want_ds2) < tol);
        CHECK(std::abs(got[2] - want_ds) < tol);
        CHECK(std::abs(got[3] - want_id) < tol);
    }
    CHECK(conjugated_operator(0).empty());
    CHECK(conjugated_operator(1).empty());
}

TEST_CASE("ellipse heads, phase and first transport") {
    auto loc = at_max(geometry::ParametricCurve::ellipse(2.0, 1.0), 0);
    auto sol = wkb_iterate(loc.profile, 4);
    REQUIRE(sol.mu.size() == 5);
    CHECK(sol.mu[0] == -1.0);
    CHECK(sol.mu[1] == 0.0);
    CHECK(std::abs(sol.mu[2] + 2.0) < 1e-10);
    CHECK(std::abs(sol.mu[3] - 3.0) < 1e-10);
    CHECK(sol.mu[4] == doctest::Approx(-93.0 / 16.0).epsilon(1e-10));
    CHECK(sol.phase.eikonal_residual < 1e-8);
    CHECK(sol.amplitude.transport_residual < 1e-8);

    const auto& ph = sol.phase;
    std::size_t c = ph.s.size() / 2;
    CHECK(ph.theta[c] == 0.0);
    for (std::size_t i = 0; i < ph.s.size(); ++i) {
        if (i != c) CHECK(ph.theta[i] > 0.0);
        CHECK(std::abs(ph.theta[i] - ph.theta[ph.s.size() - 1 - i]) < 1e-12);
        CHECK(std::abs(sol.amplitude.xi0[i] - sol.amplitude.xi0[ph.s.size() - 1 - i]) < 1e-10);
    }
    // theta ~ 1.5 s^2 near 0
    std::size_t i = c + 3;
    double s = ph.s[i];
    CHECK(std::abs(ph.theta[i] - 1.5 * s * s) < 10.0 * std::pow(s, 4));
    CHECK(sol.amplitude.xi0[c] == 1.0);
    CHECK(std::abs(sol.amplitude.series[1]) < 1e-14);
    CHECK(ph.d2theta_at(loc.profile, 0.0) == doctest::Approx(std::sqrt(18.0 / 2.0)));
}

TEST_CASE("WKB energies agree with the correction coefficients") {
    for (auto curve : {geometry::ParametricCurve::egg(2.0, 1.0, 0.1), geometry::ParametricCurve::ellipse(2.0, 1.0)}) {
        auto loc = at_max(curve, 0);
        auto sol = wkb_iterate(loc.profile, 7);
        auto jet = loc.profile.kappa_jet(0.0, 10);
        auto cr = corrections::compute_corrections(jet, 1, 7, false);
        for (int l = 4; l <= 7; ++l) CHECK(std::abs(sol.mu[l] - cr.zeta[2 * l - 7]) < 1e-6 * std::max(1.0, std::abs(cr.zeta[2 * l - 7])));
        CHECK(sol.phase.eikonal_residual < 1e-8);
        CHECK(sol.amplitude.transport_residual < 1e-8);
        // higher xi vanish at 0
        for (std::size_t k = 1; k < sol.xi.size(); ++k) CHECK(sol.xi[k][0] == 0.0);
    }
}

TEST_CASE("quarter-power heads reproduce the three-term h law") {
    auto loc = at_max(geometry::ParametricCurve::ellipse(2.0, 1.0), 0);
    auto sol = wkb_iterate(loc.profile, 3);
    expansion::ExpansionCoefficients c{loc.kappa_max, loc.k2, 1, {}};
    for (double h : {1e-2, 1e-4}) {
        double w = 0.0;
        for (int l = 0; l <= 3; ++l) w += sol.mu[l] * std::pow(h, l / 4.0);
        CHECK(h * w == doctest::Approx(expansion::mu_expansion(h, c, -1)).epsilon(1e-10));
    }
}

TEST_CASE("degenerate and unsolvable wells") {
    auto circle = geometry::arc_length_reparam(geometry::ParametricCurve::circle(1.0), 256);
    auto sol = wkb_iterate(circle, 4);
    CHECK(sol.phase.degenerate);
    CHECK(sol.mu.size() == 4);
    CHECK_FALSE(sol.warnings.empty());
    for (double t : sol.phase.theta) CHECK(t == 0.0);

    auto loc = at_max(geometry::ParametricCurve::ellipse(2.0, 1.0), 0);
    auto at_min = loc.profile.reoriginated(loc.profile.period() / 4.0);
    try {
        solve_eikonal(at_min);
        FAIL("expected EikonalNotSolvable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EikonalNotSolvable);
    }
    try {
        wkb_iterate(loc.profile, max_order() + 1);
        FAIL("expected OrderUnavailable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderUnavailable);
    }
}
