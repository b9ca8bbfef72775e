#pragma once

#include <cstddef>
#include <vector>

namespace robinspec::model1d {

struct HalflineSpectrum {
    std::vector<double> discrete{-1.0};
    double essential_bottom = 0.0;
};

/// -d^2/dtau^2 on (0, inf) with u'(0) = -u(0).
HalflineSpectrum halfline_spectrum();
/// sqrt(2) e^{-tau}
double halfline_ground_state(double tau);

struct Model1DConfig {
    double L = 10.0;
    double rho = 0.3;
    double h = 1e-2;
    double beta = 0.0;
    /// grid points per unit length in tau
    std::size_t grid_n = 2000;

    /// L = h^{-rho}
    static Model1DConfig from_h(double h, double rho, double beta, std::size_t grid_n);
    /// |beta| h^{1/2} L < 1/3
    bool within_standing_bound() const;
};

/// Ground state of -d^2/dtau^2 on (0, L), u'(0) = -u(0), u(L) = 0.
struct ModelEigenpair {
    double lambda = 0.0;
    /// lambda + 1 computed without cancellation
    double lambda_plus_one = 0.0;
    double w = 0.0;
    double A = 0.0;
    double L = 0.0;
    double root_residual = 0.0;
    /// smallest positive eigenvalue k^2, tan(kL) = k
    double lambda2 = 0.0;
    bool second_nonnegative = false;

    double operator()(double tau) const;
};

/// f(v) = v - 1 + (v + 1) e^{-2 v L}
double transcendental_f(double v, double L);
ModelEigenpair solve_transcendental(double L);

std::vector<double> fd_eigs_H0h(const Model1DConfig& cfg, std::size_t k);
/// Form discretization of int |u'|^2 (1 - beta h^{1/2} tau) - |u(0)|^2 against the weighted norm.
std::vector<double> fd_eigs_Hbetah(const Model1DConfig& cfg, std::size_t k);

}  // namespace robinspec::model1d
