#include <doctest.h>

#include "robinspec/errors.hpp"
#include "robinspec/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace robinspec;
using namespace robinspec::geometry;

namespace {

double ellipse_arc(double a, double b, double t) {
    const int n = 20000;
    double h = t / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double u = i * h;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::sqrt(a * a * std::sin(u) * std::sin(u) + b * b * std::cos(u) * std::cos(u));
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("series arithmetic inverts and composes") {
    Taylor x = Taylor::variable(0.0, 8);
    Taylor s = x + x * x * 0.5 + x * x * x * (1.0 / 6.0);
    Taylor back = s.revert();
    Taylor id = s.compose(back);
    CHECK(id[1] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 2; k <= 8; ++k) CHECK(std::abs(id[k]) < 1e-13);
    Taylor one = Taylor::constant(1.0, 8) + x;
    Taylor r = one.sqrt() * one.sqrt();
    for (std::size_t k = 0; k <= 8; ++k) CHECK(r[k] == doctest::Approx(one[k]).epsilon(1e-14));
}

TEST_CASE("circle has unit curvature and period 2pi") {
    auto p = arc_length_reparam(ParametricCurve::circle(1.0), 128);
    CHECK(p.period() == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    for (double s : {0.0, 0.7, 3.0, 5.9}) CHECK(p.kappa(s) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(p.turning() - 2.0 * std::numbers::pi) < 1e-8);
    auto rep = check_assumption_A(p);
    CHECK_FALSE(rep.unique_max);
    CHECK_THROWS_AS(localize_max(p), Error);
    try {
        localize_max(p);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateMaximum);
    }
}

TEST_CASE("ellipse curvature against closed form") {
    const double a = 2.0, b = 1.0;
    auto p = arc_length_reparam(ParametricCurve::ellipse(a, b), 256);
    double e = std::sqrt(1.0 - b * b / (a * a));
    CHECK(p.period() == doctest::Approx(4.0 * a * std::comp_ellint_2(e)).epsilon(1e-13));
    CHECK(p.period() == doctest::Approx(9.688448220547677).epsilon(1e-13));
    for (double t : {0.3, 1.1, 2.5, 4.0}) {
        double s = ellipse_arc(a, b, t);
        double st = std::sin(t), ct = std::cos(t);
        double exact = a * b / std::pow(a * a * st * st + b * b * ct * ct, 1.5);
        CHECK(p.kappa(s) == doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK(p.kappa_max() == doctest::Approx(a / (b * b)).epsilon(1e-12));
    CHECK(p.k2() == doctest::Approx(3.0 * a * (a * a - b * b) / std::pow(b, 6)).epsilon(1e-8));
    CHECK(std::abs(p.turning() - 2.0 * std::numbers::pi) < 1e-8);
}

TEST_CASE("ellipse jet matches series oracle and finite differences") {
    auto p = arc_length_reparam(ParametricCurve::ellipse(2.0, 1.0), 256);
    Taylor k = p.kappa_series(0.0, 8);
    CHECK(k[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(k[1]) < 1e-12);
    CHECK(k[2] == doctest::Approx(-9.0).epsilon(1e-12));
    CHECK(k[4] == doctest::Approx(183.0 / 4.0).epsilon(1e-11));
    CHECK(k[6] == doctest::Approx(-1889.0 / 8.0).epsilon(1e-10));
    CHECK(k[8] == doctest::Approx(549389.0 / 448.0).epsilon(1e-9));
    double hh = 1e-3;
    double fd = (p.kappa(hh) - 2.0 * p.kappa(0.0) + p.kappa(-hh)) / (hh * hh);
    CHECK(fd == doctest::Approx(-18.0).epsilon(1e-5));
    auto fine = arc_length_reparam(ParametricCurve::ellipse(2.0, 1.0), 1024);
    auto fit = fine.kappa_fit_derivatives(0.0);
    CHECK(fit[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(fit[2] == doctest::Approx(-18.0).epsilon(1e-4));
}

TEST_CASE("ellipse has two maxima and localizes at the chosen site") {
    auto p = arc_length_reparam(ParametricCurve::ellipse(2.0, 1.0), 256);
    auto rep = check_assumption_A(p);
    CHECK_FALSE(rep.unique_max);
    REQUIRE(rep.sites.size() == 2);
    CHECK(rep.kappa_max == doctest::Approx(2.0).epsilon(1e-12));
    auto loc = localize_max(p, 0);
    CHECK(std::abs(loc.s_max) < 1e-10);
    CHECK(loc.kappa_max == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(loc.k2 == doctest::Approx(18.0).epsilon(1e-10));
    CHECK(loc.profile.well_half_width() == doctest::Approx(p.period() / 4.0).epsilon(1e-10));
    CHECK_FALSE(loc.warnings.empty());
    auto loc1 = localize_max(p, 1);
    CHECK(loc1.s_max == doctest::Approx(p.period() / 2.0).epsilon(1e-10));
    CHECK(loc1.profile.kappa(0.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("egg has a unique non-degenerate maximum") {
    auto p = arc_length_reparam(ParametricCurve::egg(2.0, 1.0, 0.1), 256);
    auto rep = check_assumption_A(p);
    CHECK(rep.unique_max);
    CHECK(rep.k2 > 0.0);
    auto loc = localize_max(p);
    CHECK(loc.k2 > 0.0);
    CHECK(std::abs(loc.profile.kappa_derivative(0.0, 1)) < 1e-10);
    CHECK(loc.profile.kappa(0.0) == doctest::Approx(rep.kappa_max).epsilon(1e-10));
    CHECK(std::abs(p.turning() - 2.0 * std::numbers::pi) < 1e-8);
}

TEST_CASE("clockwise input is flipped to counterclockwise") {
    auto cw = ParametricCurve::fourier({0.0, 2.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, -1.0});
    auto p = arc_length_reparam(cw, 128);
    CHECK(p.turning() > 0.0);
    CHECK(p.kappa_max() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degenerate input is rejected") {
    auto line = ParametricCurve::fourier({0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(arc_length_reparam(line, 128), Error);
    CHECK_THROWS_AS(arc_length_reparam(ParametricCurve::circle(1.0), 10), Error);
}

TEST_CASE("reparametrizing an arc-length curve is idempotent and periodic") {
    auto p = arc_length_reparam(ParametricCurve::circle(1.0), 128);
    auto ks = p.sample_kappa();
    for (double k : ks) CHECK(std::abs(k - 1.0) < 1e-10);
    auto e = arc_length_reparam(ParametricCurve::ellipse(2.0, 1.0), 512);
    for (double s : {0.1, 1.3, 4.4})
        CHECK(e.kappa_interp(s + e.period()) == doctest::Approx(e.kappa_interp(s)).epsilon(1e-12));
    CHECK(e.kappa_interp(0.37) == doctest::Approx(e.kappa(0.37)).epsilon(1e-6));
}
