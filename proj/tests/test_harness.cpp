#include <doctest.h>

#include "robinspec/errors.hpp"
#include "robinspec/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace robinspec;
using namespace robinspec::harness;

namespace {

std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

SweepSpec egg_spec() {
    SweepSpec s;
    s.curve_json = R"({"shape":"egg","a":2,"b":1,"eps":0.1})";
    s.h = {1.0 / 400, 1.0 / 800, 1.0 / 1600, 1.0 / 3200};
    s.levels = {1, 2};
    s.grid = {64, 80, 8.0, std::nullopt};
    s.richardson = false;
    s.boundary_modes = 256;
    s.workers = 2;
    return s;
}

}  // namespace

TEST_CASE("power-law fit recovers exponent and prefactor") {
    std::vector<double> h, r;
    for (int i = 0; i < 6; ++i) {
        h.push_back(std::pow(2.0, -i - 4));
        r.push_back(-3.0 * std::pow(h.back(), 1.75));
    }
    auto f = fit_power_law(h, r);
    CHECK(f.exponent == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.points == 6);
    CHECK(fixed_power_coefficient(h, r, 1.75) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("confidence interval covers the truth under noise") {
    std::mt19937 rng(11);
    std::normal_distribution<double> N(0.0, 0.01);
    int covered = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> h, r;
        for (int i = 0; i < 8; ++i) {
            h.push_back(std::pow(2.0, -i - 3));
            r.push_back(std::pow(h.back(), 1.5) * std::exp(N(rng)));
        }
        auto f = fit_power_law(h, r);
        if (!f.dropped_largest_h && std::abs(f.exponent - 1.5) <= f.exponent_ci) ++covered;
    }
    CHECK(covered >= 170);
}

TEST_CASE("largest-h outlier is dropped, others are kept") {
    std::vector<double> h{1e-4, 2e-4, 4e-4, 8e-4, 1.6e-3};
    std::vector<double> r;
    for (double x : h) r.push_back(std::pow(x, 2.0) * (1.0 + 1e-3 * std::sin(1e4 * x)));
    auto keep = fit_power_law(h, r);
    CHECK_FALSE(keep.dropped_largest_h);
    r.back() *= 3.0;
    auto drop = fit_power_law(h, r);
    CHECK(drop.dropped_largest_h);
    CHECK(drop.points == 4);
    CHECK(drop.exponent == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("fits need four points") {
    std::vector<double> h{1e-2, 1e-3, 1e-4}, r{1, 2, 3};
    try {
        fit_power_law(h, r);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientPoints);
    }
}

TEST_CASE("exponent-ladder self-test") {
    auto st = synthetic_self_test();
    CHECK(st.pass);
    REQUIRE(st.exponents.size() == 3);
    CHECK(std::abs(st.exponents[0] - 1.0) < 1e-6);
    CHECK(std::abs(st.exponents[1] - 1.5) < 1e-6);
    CHECK(std::abs(st.exponents[2] - 1.75) < 1e-6);
}

TEST_CASE("report round trips through JSON and CSV") {
    ConvergenceReport r;
    r.curve = R"({"shape":"ellipse","a":2,"b":1})";
    r.version = "v";
    r.seed = 9;
    r.kappa_max = 2.0;
    r.k2 = 18.0;
    r.warnings = {"w, with comma"};
    r.records = {{0.01, -10.0, 1, "collar", -0.0114, -114.0, ""},
                 {0.01, -10.0, 2, "collar", NAN, NAN, "TruncationSuspect: mass, \"quoted\""},
                 {1.0 / 3.0, -std::sqrt(3.0), 1, "boundary", -1.0 / 7.0, 1e-300, ""}};
    r.fits = {{"remainder-2", 1, "collar", 1.75, 1.68, 0.01, 1.3, 1.97, 4, true}};
    r.checks = {{"gap", false, 4.18, 6.0, 0.1, "detail"}};
    auto back = report_from_json(report_to_json(r));
    CHECK(back == r);
    CHECK(records_from_csv(records_to_csv(r.records)) == r.records);

    ConvergenceReport empty;
    auto csv = records_to_csv(empty.records);
    CHECK(csv == "h,gamma,n,method,mu,lambda,error\n");
    CHECK(records_from_csv(csv).empty());
    CHECK(report_from_json(report_to_json(empty)) == empty);
    CHECK_THROWS_AS(report_from_json("{"), Error);
    CHECK_THROWS_AS(records_from_csv("x,y\n"), Error);
    CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("empty sweep gives a valid report") {
    SweepSpec s = egg_spec();
    s.h.clear();
    auto r = verify(s);
    CHECK(r.records.empty());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].name == "fit-self-test");
    auto dir = std::filesystem::temp_directory_path() / "robinspec_empty";
    std::filesystem::create_directories(dir);
    auto files = report_emit(r, Format::Csv, (dir / "r.csv").string());
    CHECK(files.size() == 3);
    CHECK(slurp(files[0]) == "h,gamma,n,method,mu,lambda,error\n");
    CHECK_THROWS_AS(report_emit(r, Format::Json, "/nonexistent-dir/x.json"), Error);
}

TEST_CASE("sweep validation") {
    SweepSpec s = egg_spec();
    s.h = {1e-3, 2e-3, 1.5e-3};
    CHECK_THROWS_AS(verify(s), Error);
    s.h = {1e-3, -1e-3};
    CHECK_THROWS_AS(verify(s), Error);
    s.h = {1e-3};
    s.levels = {0};
    CHECK_THROWS_AS(verify(s), Error);
}

TEST_CASE("verify is deterministic and writes one plot row per (h, n, method)") {
    SweepSpec s = egg_spec();
    auto a = verify(s);
    s.workers = 1;
    auto b = verify(s);
    CHECK(a == b);
    CHECK(report_to_json(a) == report_to_json(b));
    // four methods (three-term, corrected, collar, boundary) for two levels at four h
    CHECK(a.records.size() == 4 * 2 * 4);
    for (const auto& r : a.records) CHECK_MESSAGE(r.ok(), r.method, " ", r.h, " ", r.error);
    auto dir = std::filesystem::temp_directory_path() / "robinspec_det";
    std::filesystem::create_directories(dir);
    auto files = report_emit(a, Format::Csv, (dir / "r.csv").string());
    auto rows = records_from_csv(slurp(files[0]));
    CHECK(rows == a.records);
    report_emit(a, Format::Json, (dir / "r.json").string());
    CHECK(report_from_json(slurp((dir / "r.json").string())) == a);
    bool have_fit = false;
    for (const auto& f : a.fits)
        if (f.name == "remainder-0" && f.method == "collar" && f.n == 1) {
            have_fit = true;
            CHECK(f.exponent == doctest::Approx(1.0).epsilon(0.05));
        }
    CHECK(have_fit);
}
