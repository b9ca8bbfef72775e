#pragma once

#include "robinspec/geometry.hpp"
#include "robinspec/taylor.hpp"

#include <string>
#include <vector>

namespace robinspec::wkb {

/// One term c tau^a kappa^b (kappa')^d (theta')^e (theta'')^f D of the conjugated operator.
struct ConjugatedTerm {
    enum class D { None, DTau, DS, DS2 };
    double coeff = 0.0;
    int tau_pow = 0;
    int kappa_pow = 0;
    int dkappa_pow = 0;
    int theta1_pow = 0;
    int theta2_pow = 0;
    D deriv = D::None;
};

/// Terms of Q_p, the coefficient of h^{p/4} in e^{theta/h^{1/4}} h^{-1} L_h e^{-theta/h^{1/4}}
/// written in (s, tau = t / h^{1/2}).
std::vector<ConjugatedTerm> conjugated_operator(int p);

/// Binomial coefficients of (1 - x)^{-2} and (1 - x)^{-3}.
double inv_square_coeff(int j);
double inv_cube_coeff(int j);

struct Options {
    std::size_t series_order = 48;
    /// odd, so s = 0 is a node
    std::size_t grid_points = 2001;
    /// sinh clustering strength
    double cluster = 1.0;
};

struct Phase {
    bool degenerate = false;
    double window = 0.0;
    double kappa0 = 0.0;
    double omega = 0.0;
    /// theta' about s = 0
    Taylor dtheta;
    /// |s| below which series replace closed forms
    double patch = 0.0;
    std::vector<double> s;
    std::vector<double> theta;
    double eikonal_residual = 0.0;
    std::vector<std::string> warnings;

    double dtheta_at(const geometry::CurvatureProfile& p, double s) const;
    double d2theta_at(const geometry::CurvatureProfile& p, double s) const;
};

struct Amplitude {
    Taylor series;
    std::vector<double> xi0;
    double transport_residual = 0.0;
};

struct WkbSolution {
    Phase phase;
    Amplitude amplitude;
    int order = 3;
    std::vector<double> mu;
    /// xi_0, xi_1, ... about s = 0
    std::vector<Taylor> xi;
    std::vector<std::string> warnings;
};

/// theta(s) = int_0^s sign(u) sqrt(kappa(0) - kappa(u)) du about the maximum at s = 0.
Phase solve_eikonal(const geometry::CurvatureProfile& profile, const Options& opt = {});
/// xi_0 = exp(-int_0^s (theta'' - theta''(0)) / (2 theta')), xi_0(0) = 1.
Amplitude solve_transport_0(const geometry::CurvatureProfile& profile, const Phase& phase, const Options& opt = {});
/// mu_0..mu_L. Orders above max_order() throw OrderUnavailable.
WkbSolution wkb_iterate(const geometry::CurvatureProfile& profile, int L = 4, const Options& opt = {});
int max_order();

}  // namespace robinspec::wkb
