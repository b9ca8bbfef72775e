#include <doctest.h>

#include "robinspec/errors.hpp"
#include "robinspec/model1d.hpp"

#include <cmath>

using namespace robinspec;
using namespace robinspec::model1d;

TEST_CASE("half-line spectrum and ground state") {
    auto sp = halfline_spectrum();
    REQUIRE(sp.discrete.size() == 1);
    CHECK(sp.discrete[0] == -1.0);
    CHECK(sp.essential_bottom == 0.0);
    double d = 1e-6;
    double slope = (halfline_ground_state(d) - halfline_ground_state(0.0)) / d;
    CHECK(slope == doctest::Approx(-halfline_ground_state(0.0)).epsilon(1e-5));
    // int 2 e^{-2 tau} = 1
    CHECK(halfline_ground_state(0.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("transcendental root by independent bisection oracle") {
    for (double L : {5.0, 10.0}) {
        auto r = solve_transcendental(L);
        double lo = 0.5, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (transcendental_f(mid, L) < 0.0 ? lo : hi) = mid;
        }
        CHECK(r.w == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-14));
        CHECK(r.root_residual < 1e-13);
        CHECK(r.second_nonnegative);
        CHECK(r.lambda2 >= 0.0);
        double k = std::sqrt(r.lambda2);
        CHECK(std::abs(std::tan(k * L) - k) < 1e-8);
    }
    auto r5 = solve_transcendental(5.0);
    CHECK(r5.w == doctest::Approx(1.0 - 2.0 * std::exp(-10.0)).epsilon(1e-6));
    CHECK(r5.w == doctest::Approx(0.99990920).epsilon(1e-6));
    auto r10 = solve_transcendental(10.0);
    CHECK(r10.lambda_plus_one == doctest::Approx(8.24e-9).epsilon(1e-3));
    auto r40 = solve_transcendental(40.0);
    CHECK(r40.lambda == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(solve_transcendental(0.5), Error);
}

TEST_CASE("eigenfunction satisfies boundary conditions and normalization") {
    for (double L : {3.0, 6.0, 12.0}) {
        auto r = solve_transcendental(L);
        CHECK(std::abs(r(L)) < 1e-14);
        double d = 1e-7;
        double slope = (r(d) - r(0.0)) / d;
        CHECK(slope == doctest::Approx(-r(0.0)).epsilon(1e-6));
        const int n = 20000;
        double h = L / n, acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * r(i * h) * r(i * h);
        }
        CHECK(acc * h / 3.0 == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(r.A - std::sqrt(2.0)) <= 4.0 * std::sqrt(L) * std::exp(-L));
    }
}

TEST_CASE("transcendental law coefficient 4") {
    for (double L : {6.0, 7.0, 8.0, 10.0, 12.0}) {
        auto r = solve_transcendental(L);
        double ratio = r.lambda_plus_one / (4.0 * std::exp(-2.0 * L));
        CHECK(ratio >= 0.9);
        CHECK(ratio <= 1.1);
    }
}

TEST_CASE("finite differences converge to the transcendental root") {
    auto exact = solve_transcendental(5.0);
    Model1DConfig cfg{5.0, 0.3, 0.01, 0.0, 2000};
    auto ev = fd_eigs_H0h(cfg, 2);
    CHECK(std::abs(ev[0] - exact.lambda) < 1e-6);
    CHECK(ev[1] >= -1e-6);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t n : {200u, 400u}) {
        Model1DConfig c{5.0, 0.3, 0.01, 0.0, n};
        double err = std::abs(fd_eigs_H0h(c, 1)[0] - exact.lambda);
        (n == 200 ? e1 : e2) = err;
    }
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("weighted operator") {
    Model1DConfig c0{6.0, 0.3, 1e-2, 0.0, 500};
    CHECK(fd_eigs_Hbetah(c0, 3) == fd_eigs_H0h(c0, 3));
    auto c = Model1DConfig::from_h(1e-4, 0.3, 1.0, 1000);
    CHECK(c.within_standing_bound());
    double l1 = fd_eigs_Hbetah(c, 1)[0];
    CHECK(std::abs(l1 - (-1.01)) < 2e-4);
    CHECK(l1 == doctest::Approx(-1.0 - 1e-2 - 0.5e-4).epsilon(1e-6));
    // relative shift bounded by |beta| h^{1/2 - rho} |lambda|
    auto ref = fd_eigs_H0h(c, 3);
    auto wt = fd_eigs_Hbetah(c, 3);
    double bound = std::abs(c.beta) * std::pow(c.h, 0.5 - c.rho);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(wt[i] - ref[i]) <= 3.0 * bound * std::abs(ref[i]));
    Model1DConfig bad{10.0, 0.3, 1e-2, 2.0, 200};
    CHECK_THROWS_AS(fd_eigs_Hbetah(bad, 1), Error);
}
