#include "robinspec/expansion.hpp"

#include "robinspec/errors.hpp"

#include <cmath>

namespace robinspec::expansion {

double ExpansionCoefficients::omega() const { return std::sqrt(k2 / 2.0); }
double ExpansionCoefficients::third() const { return (2.0 * n - 1.0) * omega(); }

std::vector<double> ExpansionCoefficients::beta() const {
    std::vector<double> b;
    for (std::size_t j = 1; j < zeta.size(); j += 2) b.push_back(zeta[j]);
    return b;
}

double gamma_to_h(double gamma) {
    if (!(gamma < 0.0)) fail(ErrorCode::NonNegativeGamma, "gamma must be negative");
    return 1.0 / (gamma * gamma);
}

double h_to_gamma(double h) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
    return -1.0 / std::sqrt(h);
}

double mu_to_lambda(double mu, double h) { return mu / (h * h); }

namespace {

void check_level(const ExpansionCoefficients& c) {
    if (c.n < 1) fail(ErrorCode::InvalidArgument, "level index starts at 1");
    if (c.k2 < 0.0) fail(ErrorCode::InvalidArgument, "k2 must be non-negative");
}

Term make(std::string label, double power, double coefficient, double base) {
    return {std::move(label), power, coefficient, coefficient * std::pow(base, power)};
}

Evaluation total(std::vector<Term> t) {
    Evaluation e;
    for (const auto& x : t) e.value += x.value;
    e.terms = std::move(t);
    return e;
}

}  // namespace

Evaluation lambda_terms(double gamma, const ExpansionCoefficients& c, int M) {
    if (!(gamma < 0.0)) fail(ErrorCode::NonNegativeGamma, "gamma must be negative");
    check_level(c);
    double g = -gamma;
    std::vector<Term> t;
    t.push_back(make("-gamma^2", 2.0, -1.0, g));
    t.push_back(make("gamma*kappa_max", 1.0, -c.kappa_max, g));
    t.push_back(make("(2n-1)sqrt(k2/2)|gamma|^(1/2)", 0.5, c.third(), g));
    if (M >= 0) {
        auto b = c.beta();
        if (static_cast<std::size_t>(M) >= b.size())
            fail(ErrorCode::MissingCoefficients, "beta_" + std::to_string(M) + " needs zeta through index " +
                                                     std::to_string(2 * M + 1));
        for (int j = 0; j <= M; ++j)
            t.push_back(make("beta_" + std::to_string(j), -0.5 * j, b[static_cast<std::size_t>(j)], g));
    }
    return total(std::move(t));
}

double lambda_expansion(double gamma, const ExpansionCoefficients& c, int M) { return lambda_terms(gamma, c, M).value; }

Evaluation mu_terms(double h, const ExpansionCoefficients& c, int M) {
    if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
    check_level(c);
    std::vector<Term> t;
    t.push_back(make("-h", 1.0, -1.0, h));
    t.push_back(make("-kappa_max h^(3/2)", 1.5, -c.kappa_max, h));
    t.push_back(make("(2n-1)sqrt(k2/2)h^(7/4)", 1.75, c.third(), h));
    if (M >= 0) {
        if (static_cast<std::size_t>(M) >= c.zeta.size())
            fail(ErrorCode::MissingCoefficients, "zeta_" + std::to_string(M) + " not available");
        for (int j = 0; j <= M; ++j)
            t.push_back(make("zeta_" + std::to_string(j), (15.0 + j) / 8.0, c.zeta[static_cast<std::size_t>(j)], h));
    }
    return total(std::move(t));
}

double mu_expansion(double h, const ExpansionCoefficients& c, int M) { return mu_terms(h, c, M).value; }

std::vector<Term> lambda_terms_from_mu(const std::vector<Term>& mu_form) {
    std::vector<Term> out;
    for (const auto& t : mu_form) {
        // h^p h^{-2} = |gamma|^{4 - 2p}
        out.push_back({t.label, 4.0 - 2.0 * t.power, t.coefficient, 0.0});
    }
    return out;
}

}  // namespace robinspec::expansion
