#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "robinspec/robinspec.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

rs_curve* load(const char* json) {
    rs_curve* c = nullptr;
    REQUIRE(rs_curve_from_json(json, 1024, -1, &c) == RS_OK);
    return c;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(rs_version()).find("0.1.0") != std::string::npos);
    CHECK(std::string(rs_status_name(RS_OK)) == "Ok");
    CHECK(std::string(rs_status_name(RS_NON_NEGATIVE_GAMMA)) == "NonNegativeGamma");
    CHECK(std::string(rs_status_name(RS_PARSE_ERROR)) == "ParseError");
}

TEST_CASE("errors come back as codes with a message") {
    rs_curve* c = nullptr;
    CHECK(rs_curve_from_json("{\"shape\":\"blob\"}", 1024, -1, &c) == RS_PARSE_ERROR);
    CHECK(c == nullptr);
    CHECK(std::strlen(rs_last_error()) > 0);
    CHECK(rs_curve_from_json(nullptr, 1024, -1, &c) == RS_INVALID_ARGUMENT);
    CHECK(rs_curve_from_file("/nonexistent/curve.json", 1024, -1, &c) == RS_IO_FAILURE);

    c = load("{\"shape\":\"circle\",\"R\":1}");
    double v[1];
    CHECK(rs_solve_boundary(c, 1.0, 1, 64, v, nullptr) == RS_NON_NEGATIVE_GAMMA);
    CHECK(rs_solve_boundary(c, -5.0, 1, 64, v, nullptr) == RS_OK);
    CHECK(std::strlen(rs_last_error()) == 0);
    CHECK(v[0] == doctest::Approx(-30.0).epsilon(1e-12));
    rs_curve_free(c);
    rs_curve_free(nullptr);
}

TEST_CASE("curve info and jet on the ellipse") {
    rs_curve* c = load("{\"shape\":\"ellipse\",\"a\":2,\"b\":1}");
    rs_curve_info info{};
    REQUIRE(rs_curve_get_info(c, &info) == RS_OK);
    CHECK(info.kappa_max == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(info.k2 == doctest::Approx(18.0).epsilon(1e-8));
    CHECK(info.unique_max == 0);
    CHECK(info.window > 0.0);
    CHECK(rs_curve_warning_count(c) > 0);
    double jet[3];
    REQUIRE(rs_curve_jet(c, 2, jet) == RS_OK);
    CHECK(jet[2] == doctest::Approx(-18.0).epsilon(1e-8));
    rs_curve_free(c);
}

TEST_CASE("expansion, corrections and WKB agree through the C surface") {
    rs_curve* c = load("{\"shape\":\"egg\",\"a\":2,\"b\":1,\"eps\":0.1}");
    rs_corrections* r = nullptr;
    REQUIRE(rs_corrections_from_curve(c, 1, 1, 0, &r) == RS_OK);
    REQUIRE(rs_corrections_count(r) == 2);
    double z1 = rs_corrections_zeta(r, 1);
    CHECK(rs_corrections_zeta_is_zero(r, 0) == 1);
    CHECK(rs_corrections_zeta_exact(r, 0) == nullptr);
    rs_wkb* w = nullptr;
    REQUIRE(rs_wkb_solve(c, 4, &w) == RS_OK);
    CHECK(std::abs(rs_wkb_mu(w, 4) - z1) < 1e-6);
    double s = 0, th = 0, xi = 0;
    CHECK(rs_wkb_sample(w, rs_wkb_sample_count(w), &s, &th, &xi) == RS_INVALID_ARGUMENT);

    double zeta[2] = {0.0, z1};
    rs_local_data d{2.0, 18.0, 1, zeta, 2};
    double with = 0, three = 0;
    size_t nt = 0;
    rs_term terms[8];
    REQUIRE(rs_expand_mu(1.0 / 400.0, &d, 1, &with, terms, 8, &nt) == RS_OK);
    REQUIRE(rs_expand_mu(1.0 / 400.0, &d, -1, &three, nullptr, 0, nullptr) == RS_OK);
    CHECK(nt == 5);
    CHECK(with - three == doctest::Approx(z1 / 160000.0));
    CHECK(rs_expand_mu(1.0 / 400.0, &d, 3, &with, nullptr, 0, nullptr) == RS_MISSING_COEFFICIENTS);
    rs_wkb_free(w);
    rs_corrections_free(r);
    rs_curve_free(c);
}

TEST_CASE("disc: collar against shooting") {
    rs_curve* c = load("{\"shape\":\"circle\",\"R\":1}");
    double mu = 0, res = 0, shoot = 0;
    rs_collar_grid g{32, 400, 8.0};
    rs_decay dec{};
    REQUIRE(rs_solve_collar(c, 0.01, 1, &g, 1, &mu, &res, &dec) == RS_OK);
    REQUIRE(rs_shoot_disc(1.0, 0.01, &shoot, &res) == RS_OK);
    CHECK(std::abs(mu - shoot) < 1e-3 * std::abs(shoot));
    CHECK(dec.tail_mass_t < 1e-3);
    rs_curve_free(c);
}

TEST_CASE("model operators") {
    rs_model_pair p{};
    REQUIRE(rs_model_transcendental(8.0, &p) == RS_OK);
    CHECK(p.lambda_plus_one / (4.0 * std::exp(-16.0)) == doctest::Approx(1.0).epsilon(1e-4));
    double fd[2];
    REQUIRE(rs_model_fd_H0h(5.0, 2000, 2, fd) == RS_OK);
    rs_model_transcendental(5.0, &p);
    CHECK(std::abs(fd[0] - p.lambda) < 1e-6);
    CHECK(rs_model_fd_Hbetah(10.0, 1e-2, 2.0, 200, 1, fd) == RS_WEIGHT_NOT_POSITIVE);
}

TEST_CASE("self-test and an empty sweep") {
    double err = 1;
    int pass = 0;
    REQUIRE(rs_self_test(&err, &pass) == RS_OK);
    CHECK(pass == 1);
    CHECK(err < 1e-6);

    rs_sweep s;
    rs_sweep_defaults(&s);
    s.curve_json = "{\"shape\":\"ellipse\",\"a\":2,\"b\":1}";
    rs_report* r = nullptr;
    REQUIRE(rs_verify(&s, &r) == RS_OK);
    CHECK(std::string(rs_report_json(r)).find("\"records\"") != std::string::npos);
    CHECK(rs_report_emit(r, "xml", "/tmp/x") == RS_INVALID_ARGUMENT);
    CHECK(rs_report_emit(r, "json", "/nonexistent/dir/r.json") == RS_IO_FAILURE);
    rs_report_free(r);
}
