#include "robinspec/eigensolver.hpp"

#include "robinspec/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace robinspec::solvers {

double DiscreteOperator::asymmetry() const {
    SparseMatrix d = SparseMatrix(A.transpose()) - A;
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

bool DiscreteOperator::mass_diagonally_dominant() const {
    if (!B) return true;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(B->rows()), off = Eigen::VectorXd::Zero(B->rows());
    for (int k = 0; k < B->outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(*B, k); it; ++it) {
            if (it.row() == it.col())
                diag[it.row()] += it.value();
            else
                off[it.row()] += std::abs(it.value());
        }
    for (int i = 0; i < diag.size(); ++i)
        if (!(diag[i] > off[i])) return false;
    return true;
}

namespace {

SparseMatrix identity(Eigen::Index n) {
    SparseMatrix I(n, n);
    I.setIdentity();
    return I;
}

/// Factorisation of A - sigma B with an LDLT first and an LU fallback.
class ShiftedSolver {
public:
    ShiftedSolver(const DiscreteOperator& op, double sigma) {
        SparseMatrix B = op.B ? *op.B : identity(op.A.rows());
        M_ = op.A - sigma * B;
        M_.makeCompressed();
        ldlt_.compute(M_);
        if (ldlt_.info() == Eigen::Success) {
            Eigen::VectorXd d = ldlt_.vectorD();
            bool finite = d.allFinite() && (d.array().abs() > 0.0).all();
            if (finite) {
                use_ldlt_ = true;
                negatives_ = static_cast<std::size_t>((d.array() < 0.0).count());
                return;
            }
        }
        lu_.compute(M_);
        if (lu_.info() != Eigen::Success) fail(ErrorCode::NotConverged, "shifted matrix is singular");
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        return use_ldlt_ ? Eigen::VectorXd(ldlt_.solve(b)) : Eigen::VectorXd(lu_.solve(b));
    }
    bool has_inertia() const { return use_ldlt_; }
    std::size_t negatives() const { return negatives_; }

private:
    SparseMatrix M_;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    Eigen::SparseLU<SparseMatrix> lu_;
    bool use_ldlt_ = false;
    std::size_t negatives_ = 0;
};

}  // namespace

std::size_t count_below(const DiscreteOperator& op, double sigma) {
    ShiftedSolver s(op, sigma);
    if (!s.has_inertia()) fail(ErrorCode::NotConverged, "inertia unavailable for this shift");
    return s.negatives();
}

EigResult eigen_solve(const DiscreteOperator& op, std::size_t k, double target_shift, const EigOptions& opt) {
    const Eigen::Index n = op.A.rows();
    if (n == 0 || op.A.cols() != n) fail(ErrorCode::InvalidArgument, "operator must be square and non-empty");
    if (k == 0 || static_cast<Eigen::Index>(k) > n) fail(ErrorCode::InvalidArgument, "bad eigenvalue count");
    SparseMatrix B = op.B ? *op.B : identity(n);

    // move the shift below the bottom of the spectrum
    double sigma = target_shift;
    double scale = std::max(1.0, std::abs(target_shift));
    double step = 1e-3 * scale;
    std::optional<ShiftedSolver> solver;
    for (int tries = 0; tries < 200; ++tries) {
        solver.emplace(op, sigma);
        if (!solver->has_inertia() || solver->negatives() == 0) break;
        sigma -= step;
        step *= 2.0;
    }

    auto Bdot = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return x.dot(B * y); };
    auto apply = [&](const Eigen::VectorXd& x) { return solver->solve(B * x); };

    Eigen::VectorXd v0;
    if (opt.start && opt.start->size() == n) {
        v0 = *opt.start;
    } else {
        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> nd;
        v0.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) v0[i] = nd(rng);
    }
    // a small random component keeps higher states reachable from a seeded start
    {
        std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> nd;
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) r[i] = nd(rng);
        double nv = std::sqrt(std::max(Bdot(v0, v0), 1e-300));
        double nr = std::sqrt(Bdot(r, r));
        v0 += (opt.start ? 1e-3 : 0.0) * nv / nr * r;
    }

    const int m = opt.krylov > 0 ? opt.krylov
                                 : static_cast<int>(std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * k + 20, 40)));
    EigResult res;
    res.shift = sigma;
    Eigen::MatrixXd wanted;
    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        Eigen::MatrixXd V(n, m + 1);
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m), beta = Eigen::VectorXd::Zero(m);
        double nv = std::sqrt(Bdot(v0, v0));
        if (!(nv > 0.0)) fail(ErrorCode::NotConverged, "start vector vanished");
        V.col(0) = v0 / nv;
        int dim = m;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd w = apply(V.col(j));
            ++res.iterations;
            // full reorthogonalisation, twice
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd Bw = B * w;
                for (int i = 0; i <= j; ++i) {
                    double c = V.col(i).dot(Bw);
                    w -= c * V.col(i);
                    if (pass == 0 && i == j) alpha[j] = c;
                    if (pass == 1 && i == j) alpha[j] += c;
                }
            }
            double b = std::sqrt(std::max(Bdot(w, w), 0.0));
            if (j + 1 < m) beta[j] = b;
            if (b < 1e-14 * std::max(1.0, std::abs(alpha[j]))) {
                dim = j + 1;
                break;
            }
            V.col(j + 1) = w / b;
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 0; j < dim; ++j) {
            T(j, j) = alpha[j];
            if (j + 1 < dim) T(j, j + 1) = T(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // largest theta <-> eigenvalues closest above sigma
        std::size_t kk = std::min<std::size_t>(k, static_cast<std::size_t>(dim));
        res.values.assign(kk, 0.0);
        res.residuals.assign(kk, 0.0);
        Eigen::MatrixXd X(n, kk);
        bool all = kk == k;
        for (std::size_t i = 0; i < kk; ++i) {
            Eigen::Index col = dim - 1 - static_cast<Eigen::Index>(i);
            double theta = es.eigenvalues()[col];
            Eigen::VectorXd x = V.leftCols(dim) * es.eigenvectors().col(col);
            x /= std::sqrt(Bdot(x, x));
            double lam = sigma + 1.0 / theta;
            Eigen::VectorXd r = op.A * x - lam * (B * x);
            res.values[i] = lam;
            res.residuals[i] = r.norm() / x.norm();
            X.col(static_cast<Eigen::Index>(i)) = x;
            if (!(res.residuals[i] <= opt.tol * std::max(1.0, std::abs(lam)))) all = false;
        }
        // ascending order
        std::vector<std::size_t> ord(kk);
        for (std::size_t i = 0; i < kk; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](auto a, auto b) { return res.values[a] < res.values[b]; });
        std::vector<double> vals, resid;
        Eigen::MatrixXd Xs(n, kk);
        for (std::size_t i = 0; i < kk; ++i) {
            vals.push_back(res.values[ord[i]]);
            resid.push_back(res.residuals[ord[i]]);
            Xs.col(static_cast<Eigen::Index>(i)) = X.col(static_cast<Eigen::Index>(ord[i]));
        }
        res.values = vals;
        res.residuals = resid;
        wanted = Xs;
        if (all) {
            res.converged = true;
            break;
        }
        // restart from the sum of wanted Ritz vectors
        v0 = wanted.rowwise().sum();
    }
    if (opt.keep_vectors) res.vectors = wanted;
    if (!res.converged && !opt.allow_partial) {
        std::ostringstream os;
        os << "Lanczos did not converge; residuals:";
        for (double r : res.residuals) os << ' ' << r;
        fail(ErrorCode::NotConverged, os.str());
    }
    return res;
}

}  // namespace robinspec::solvers
