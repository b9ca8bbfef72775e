#pragma once

#include <string>
#include <vector>

namespace robinspec::expansion {

/// Local curvature data plus optional correction coefficients zeta_{0..M}.
struct ExpansionCoefficients {
    double kappa_max = 0.0;
    double k2 = 0.0;
    int n = 1;
    std::vector<double> zeta;

    double omega() const;
    /// (2n - 1) sqrt(k2 / 2)
    double third() const;
    /// beta_j = zeta_{2j+1}, for every j the zeta list supports
    std::vector<double> beta() const;
};

struct Term {
    std::string label;
    /// power of |gamma| (lambda form) or of h (mu form)
    double power = 0.0;
    double coefficient = 0.0;
    double value = 0.0;
};

struct Evaluation {
    double value = 0.0;
    std::vector<Term> terms;
};

double gamma_to_h(double gamma);
/// gamma = -h^{-1/2}
double h_to_gamma(double h);
/// lambda = h^{-2} mu
double mu_to_lambda(double mu, double h);

/// M < 0 gives the three-term form; otherwise beta_0..beta_M are added.
Evaluation lambda_terms(double gamma, const ExpansionCoefficients& c, int M);
double lambda_expansion(double gamma, const ExpansionCoefficients& c, int M);

/// M < 0 gives the three-term form; otherwise h^{15/8} sum_{j<=M} zeta_j h^{j/8} is added.
Evaluation mu_terms(double h, const ExpansionCoefficients& c, int M);
double mu_expansion(double h, const ExpansionCoefficients& c, int M);

/// Maps mu-form terms (coefficient, h-power p) to lambda-form terms (coefficient, |gamma| power 4 - 2p)
/// with the sign of gamma^{odd} folded into the coefficient.
std::vector<Term> lambda_terms_from_mu(const std::vector<Term>& mu_form);

}  // namespace robinspec::expansion
