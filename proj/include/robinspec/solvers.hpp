#pragma once

#include "robinspec/eigensolver.hpp"
#include "robinspec/geometry.hpp"

#include <optional>
#include <vector>

namespace robinspec::solvers {

struct BoundaryOptions {
    /// number of basis functions (Fourier: 2 floor(n/2) + 1 modes)
    std::size_t n_modes = 256;
    /// sine basis on [-half_width, half_width] about s = 0; otherwise periodic Fourier
    std::optional<double> half_width;
    /// relative eigenvalue change allowed between n_modes and n_modes / 2
    double resolution_tol = 1e-9;
};

/// -d^2/ds^2 - gamma^2 + gamma kappa(s).
EigResult boundary_operator_eigs(const geometry::CurvatureProfile& profile, double gamma, std::size_t k,
                                 const BoundaryOptions& opt = {});

struct CollarGrid {
    std::size_t n_s = 128;
    std::size_t n_t = 400;
    /// Dirichlet depth T = depth_mult * sqrt(h)
    double depth_mult = 8.0;
    /// windowed solve on [-half_width, half_width] with Dirichlet ends; periodic otherwise
    std::optional<double> half_width;
};

/// Form discretisation in (s, tau = t / sqrt(h)) of the Robin problem, scaled so that mu = h * lambda.
DiscreteOperator assemble_collar(const geometry::CurvatureProfile& profile, double h, const CollarGrid& grid);

struct CollarResult {
    /// mu_1..mu_k
    std::vector<double> mu;
    EigResult eig;
    GridInfo grid;
    /// fraction of each eigenfunction's mass in the deepest 10% of the collar
    std::vector<double> deep_mass;
};

struct CollarOptions {
    EigOptions eig;
    /// check the deepest-10% mass of each eigenfunction
    bool check_truncation = true;
    double truncation_limit = 1e-6;
    /// start vector u0(tau) f_1(s / h^{1/8})
    bool seeded_start = true;
};

CollarResult collar_2d_eigs(const geometry::CurvatureProfile& profile, double h, std::size_t k,
                            const CollarGrid& grid = {}, const CollarOptions& opt = {});

struct ShootingResult {
    double mu = 0.0;
    double robin_residual = 0.0;
    int bisections = 0;
};

/// Radial ground state of -h^2 Delta on the disc of radius R with h^{1/2} du/dr = u at r = R.
ShootingResult shooting_disc(double R, double h, double tol = 1e-10);

struct DecayReport {
    /// fitted rates: t-marginal ~ exp(-2 alpha_t tau), s-marginal ~ exp(-2 alpha_s s^2 / h^{1/4})
    double alpha_t = 0.0;
    double alpha_s = 0.0;
    /// mass fraction at tau > 4
    double tail_mass_t = 0.0;
    /// mass fraction in the deepest 10% of the collar
    double deep_mass = 0.0;
    /// R^2 of log s-mass fitted by a + b s^2 and by a + b |s|
    double r2_quadratic = 0.0;
    double r2_linear = 0.0;
    std::vector<double> t_marginal;
    std::vector<double> s_marginal;
};

DecayReport eigenfunction_decay_report(const EigResult& result, const GridInfo& grid, std::size_t index = 0);

}  // namespace robinspec::solvers
