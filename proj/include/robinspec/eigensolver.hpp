#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <vector>

namespace robinspec::solvers {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Tensor grid in (s, tau) attached to a collar discretization.
struct GridInfo {
    std::size_t n_s = 0;
    std::size_t n_t = 0;
    bool periodic = true;
    double h = 0.0;
    double ds = 0.0;
    double dtau = 0.0;
    /// Dirichlet depth in tau = t / sqrt(h)
    double depth_tau = 0.0;
    std::vector<double> s;
    std::vector<double> tau;
    /// quadrature weight of each unknown (mass diagonal without the Jacobian)
    std::vector<double> weight;
    /// Jacobian 1 - sqrt(h) tau kappa at each unknown
    std::vector<double> jacobian;

    std::size_t index(std::size_t i, std::size_t j) const { return i * n_t + j; }
};

/// Symmetric A with optional symmetric positive B: A x = lambda B x.
struct DiscreteOperator {
    SparseMatrix A;
    std::optional<SparseMatrix> B;
    std::optional<GridInfo> grid;

    std::size_t dimension() const { return static_cast<std::size_t>(A.rows()); }
    /// max |A - A^T|
    double asymmetry() const;
    /// B strictly diagonally dominant with positive diagonal
    bool mass_diagonally_dominant() const;
};

struct EigResult {
    std::vector<double> values;
    /// columns, B-normalized
    Eigen::MatrixXd vectors;
    std::vector<double> residuals;
    int iterations = 0;
    double shift = 0.0;
    bool converged = false;
};

struct EigOptions {
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    int max_restarts = 30;
    int krylov = 0;
    std::optional<Eigen::VectorXd> start;
    bool keep_vectors = true;
    /// return partial results instead of throwing NotConverged
    bool allow_partial = false;
};

/// Lowest k eigenpairs at or above the lowest spectrum point, by shift-invert Lanczos
/// around target_shift with full reorthogonalisation in the B inner product.
EigResult eigen_solve(const DiscreteOperator& op, std::size_t k, double target_shift, const EigOptions& opt = {});

/// Number of eigenvalues below sigma (Sylvester inertia of A - sigma B).
std::size_t count_below(const DiscreteOperator& op, double sigma);

}  // namespace robinspec::solvers
