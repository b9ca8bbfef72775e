#include "robinspec/errors.hpp"
#include "robinspec/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <complex>
#include <numbers>

namespace robinspec::solvers {

namespace {

constexpr std::array<double, 8> kGx{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                                    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGw{0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

EigResult fourier_eigs(const geometry::CurvatureProfile& p, double gamma, std::size_t k, std::size_t n_modes) {
    const double P = p.period();
    const int M = static_cast<int>(n_modes / 2);
    const int dim = 2 * M + 1;
    const int nq = std::max(8 * M, 64);
    std::vector<double> kap(static_cast<std::size_t>(nq));
    for (int j = 0; j < nq; ++j) kap[static_cast<std::size_t>(j)] = p.kappa(P * j / nq);
    // khat[d + 2M] = (1/nq) sum kappa_j e^{-2 pi i d j / nq}
    std::vector<std::complex<double>> khat(static_cast<std::size_t>(4 * M + 1));
    for (int d = -2 * M; d <= 2 * M; ++d) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < nq; ++j) {
            double ang = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(d) * j) % nq) / nq;
            acc += kap[static_cast<std::size_t>(j)] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        khat[static_cast<std::size_t>(d + 2 * M)] = acc / static_cast<double>(nq);
    }
    Eigen::MatrixXcd H(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            int m = a - M, n = b - M;
            std::complex<double> v = gamma * khat[static_cast<std::size_t>(m - n + 2 * M)];
            if (a == b) {
                double q = 2.0 * std::numbers::pi * m / P;
                v += q * q - gamma * gamma;
            }
            H(a, b) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    EigResult r;
    for (std::size_t i = 0; i < k && static_cast<Eigen::Index>(i) < dim; ++i) {
        double lam = es.eigenvalues()[static_cast<Eigen::Index>(i)];
        r.values.push_back(lam);
        Eigen::VectorXcd x = es.eigenvectors().col(static_cast<Eigen::Index>(i));
        r.residuals.push_back((H * x - lam * x).norm());
    }
    r.converged = true;
    return r;
}

EigResult sine_eigs(const geometry::CurvatureProfile& p, double gamma, std::size_t k, std::size_t N, double W) {
    const Eigen::Index n = static_cast<Eigen::Index>(N);
    const std::size_t panels = 2 * N;
    const Eigen::Index nq = static_cast<Eigen::Index>(panels * 8);
    Eigen::MatrixXd Phi(nq, n);
    Eigen::VectorXd wk(nq);
    double hp = 2.0 * W / static_cast<double>(panels);
    for (std::size_t q = 0; q < panels; ++q)
        for (std::size_t g = 0; g < 8; ++g) {
            Eigen::Index row = static_cast<Eigen::Index>(q * 8 + g);
            double s = -W + hp * (static_cast<double>(q) + 0.5 * (kGx[g] + 1.0));
            wk[row] = 0.5 * hp * kGw[g] * p.kappa(s);
            for (Eigen::Index m = 0; m < n; ++m)
                Phi(row, m) = std::sin(static_cast<double>(m + 1) * std::numbers::pi * (s + W) / (2.0 * W)) / std::sqrt(W);
        }
    Eigen::MatrixXd H = gamma * (Phi.transpose() * wk.asDiagonal() * Phi);
    for (Eigen::Index m = 0; m < n; ++m) {
        double q = static_cast<double>(m + 1) * std::numbers::pi / (2.0 * W);
        H(m, m) += q * q - gamma * gamma;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    EigResult r;
    for (std::size_t i = 0; i < k && static_cast<Eigen::Index>(i) < n; ++i) {
        double lam = es.eigenvalues()[static_cast<Eigen::Index>(i)];
        r.values.push_back(lam);
        Eigen::VectorXd x = es.eigenvectors().col(static_cast<Eigen::Index>(i));
        r.residuals.push_back((H * x - lam * x).norm());
    }
    r.converged = true;
    return r;
}

EigResult solve_once(const geometry::CurvatureProfile& p, double gamma, std::size_t k, std::size_t n,
                     const BoundaryOptions& opt) {
    return opt.half_width ? sine_eigs(p, gamma, k, n, *opt.half_width) : fourier_eigs(p, gamma, k, n);
}

}  // namespace

EigResult boundary_operator_eigs(const geometry::CurvatureProfile& profile, double gamma, std::size_t k,
                                 const BoundaryOptions& opt) {
    if (!(gamma < 0.0)) fail(ErrorCode::NonNegativeGamma, "gamma must be negative");
    if (k == 0) fail(ErrorCode::InvalidArgument, "eigenvalue count must be positive");
    if (opt.n_modes < 8 || opt.n_modes / 2 < k) fail(ErrorCode::InvalidArgument, "too few modes");
    if (opt.half_width && !(*opt.half_width > 0.0)) fail(ErrorCode::InvalidArgument, "half width must be positive");
    EigResult fine = solve_once(profile, gamma, k, opt.n_modes, opt);
    EigResult coarse = solve_once(profile, gamma, k, opt.n_modes / 2, opt);
    for (std::size_t i = 0; i < fine.values.size() && i < coarse.values.size(); ++i) {
        double d = std::abs(fine.values[i] - coarse.values[i]);
        if (d > opt.resolution_tol * std::max(1.0, std::abs(fine.values[i])))
            fail(ErrorCode::ResolutionTooLow, "eigenvalue " + std::to_string(i + 1) + " moved by " + std::to_string(d) +
                                                  " between " + std::to_string(opt.n_modes / 2) + " and " +
                                                  std::to_string(opt.n_modes) + " modes");
    }
    return fine;
}

}  // namespace robinspec::solvers
