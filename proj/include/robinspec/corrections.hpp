#pragma once

#include "robinspec/errors.hpp"
#include "robinspec/exact.hpp"
#include "robinspec/spectral_basis.hpp"

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace robinspec::corrections {

using basis::Deriv;
using basis::OperatorTerm;
using basis::ProductState;
using basis::ScalarTraits;

/// Expansion of h^{-1} L_h in eps = h^{1/8} with (sigma, tau) = (s/eps, t/eps^4):
/// by_order[k] lists the terms multiplying eps^k.
template <class S>
struct FormalOperator {
    int max_order = 0;
    std::vector<std::vector<OperatorTerm<S>>> by_order;
};

/// Highest curvature derivative index needed for zeta_0..zeta_M.
inline std::size_t jet_requirement(int M) { return static_cast<std::size_t>(M + 3); }

namespace detail {

/// Trivariate truncated polynomial in (eps, sigma, tau).
template <class S>
struct Tri {
    int K = 0;
    std::map<std::array<int, 3>, S> c;

    void add(const std::array<int, 3>& e, const S& v) {
        if (e[0] > K) return;
        auto it = c.find(e);
        if (it == c.end())
            c.emplace(e, v);
        else
            it->second += v;
    }
    Tri operator*(const Tri& o) const {
        Tri r{K, {}};
        for (const auto& [e1, v1] : c)
            for (const auto& [e2, v2] : o.c)
                if (e1[0] + e2[0] <= K) r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, v1 * v2);
        return r;
    }
    Tri& operator+=(const Tri& o) {
        for (const auto& [e, v] : o.c) add(e, v);
        return *this;
    }
    Tri scaled(const S& s) const {
        Tri r{K, {}};
        for (const auto& [e, v] : c) r.c.emplace(e, v * s);
        return r;
    }
};

template <class S>
void collect(const Tri<S>& t, Deriv d, FormalOperator<S>& out) {
    std::map<int, OperatorTerm<S>> per;
    for (const auto& [e, v] : t.c) {
        if (v == S(0)) continue;
        auto& term = per[e[0]];
        term.deriv = d;
        auto a = static_cast<std::size_t>(e[1]), b = static_cast<std::size_t>(e[2]);
        if (term.coeff.size() <= a) term.coeff.resize(a + 1);
        for (auto& row : term.coeff)
            if (row.size() <= b) row.resize(b + 1, S(0));
        for (auto& row : term.coeff) row.resize(std::max(row.size(), term.coeff[0].size()), S(0));
        term.coeff[a][b] += v;
    }
    for (auto& [k, term] : per) {
        std::size_t w = 0;
        for (auto& row : term.coeff) w = std::max(w, row.size());
        for (auto& row : term.coeff) row.resize(w, S(0));
        out.by_order[static_cast<std::size_t>(k)].push_back(std::move(term));
    }
}

}  // namespace detail

/// kappa_jet[m] = d^m kappa/ds^m at the maximum. kappa_jet[1] is treated as 0.
template <class S>
FormalOperator<S> build_operator_series(const std::vector<S>& kappa_jet, int M) {
    if (M < 0) fail(ErrorCode::InvalidArgument, "order must be non-negative");
    std::size_t need = jet_requirement(M);
    if (kappa_jet.size() < need + 1)
        fail(ErrorCode::JetTooShort, "order " + std::to_string(M) + " needs curvature derivatives through index " +
                                         std::to_string(need) + ", got " + std::to_string(kappa_jet.size() ? kappa_jet.size() - 1 : 0));
    const int K = M + 7;
    using detail::Tri;
    // kappa(eps sigma) and kappa'(eps sigma)
    Tri<S> kap{K, {}}, kapd{K, {}};
    S fact = S(1);
    for (int m = 0; m <= K; ++m) {
        if (m > 0) fact = fact * S(m);
        auto mi = static_cast<std::size_t>(m);
        if (mi < kappa_jet.size() && m != 1) kap.add({m, m, 0}, kappa_jet[mi] / fact);
        if (mi + 1 < kappa_jet.size() && m + 1 != 1) kapd.add({m, m, 0}, kappa_jet[mi + 1] / fact);
    }
    Tri<S> eps4tau{K, {{{4, 0, 1}, S(1)}}};
    Tri<S> X = eps4tau * kap;
    Tri<S> g1{K, {{{0, 0, 0}, S(1)}}}, g2 = g1, g3 = g1, Xp = g1;
    for (int j = 1; 4 * j <= K; ++j) {
        Xp = Xp * X;
        g1 += Xp;
        g2 += Xp.scaled(S(j + 1));
        g3 += Xp.scaled(S((j + 1) * (j + 2) / 2));
    }
    FormalOperator<S> op;
    op.max_order = K;
    op.by_order.resize(static_cast<std::size_t>(K + 1));
    OperatorTerm<S> p0{Deriv::DTau2, {{S(-1)}}};
    op.by_order[0].push_back(p0);
    Tri<S> eps4{K, {{{4, 0, 0}, S(1)}}};
    Tri<S> m_eps6{K, {{{6, 0, 0}, S(-1)}}};
    Tri<S> m_eps11tau{K, {{{11, 0, 1}, S(-1)}}};
    detail::collect(eps4 * kap * g1, Deriv::DTau, op);
    detail::collect(m_eps6 * g2, Deriv::DSigma2, op);
    detail::collect(m_eps11tau * kapd * g3, Deriv::DSigma, op);
    return op;
}

template <class Sigma>
ProductState<Sigma> apply_order(const FormalOperator<typename Sigma::scalar_type>& op, std::size_t k,
                                const ProductState<Sigma>& psi) {
    ProductState<Sigma> out(psi.zero_sigma());
    if (k >= op.by_order.size()) return out;
    for (const auto& term : op.by_order[k]) out += basis::apply_poly_diff_op(psi, term);
    return out;
}

/// Formal eigenpair of sum eps^k L_k: psi = sum eps^q psi_q, mu = sum eps^q m_q.
template <class Sigma>
struct CorrectionState {
    using S = typename Sigma::scalar_type;
    int n = 1;
    int M = 0;
    FormalOperator<S> ops;
    Sigma f_n;
    std::vector<S> m;
    std::vector<S> zeta;
    /// sigma profiles v_{n,1..M+1}
    std::vector<Sigma> v;
    /// tau-orthogonal parts g_{n,0..M}
    std::vector<ProductState<Sigma>> g;
    std::vector<ProductState<Sigma>> psi;
    /// right-hand sides carried into each order
    std::vector<ProductState<Sigma>> residues;
};

template <class Sigma>
CorrectionState<Sigma> run_iteration(const FormalOperator<typename Sigma::scalar_type>& ops, const Sigma& f_n, int n,
                                     int M, double rel_tol = 1e-10) {
    using S = typename Sigma::scalar_type;
    using PS = ProductState<Sigma>;
    const int K = M + 7;
    if (ops.max_order < K) fail(ErrorCode::InvalidArgument, "operator series too short for the requested order");
    CorrectionState<Sigma> st;
    st.n = n;
    st.M = M;
    st.ops = ops;
    st.f_n = f_n;
    st.m.assign(static_cast<std::size_t>(K + 1), S(0));
    st.m[0] = S(-1);
    st.psi.assign(static_cast<std::size_t>(K + 1), PS(f_n.zero()));
    st.residues.assign(static_cast<std::size_t>(K + 1), PS(f_n.zero()));
    st.psi[0] = PS::ground(f_n);
    const PS& psi0 = st.psi[0];
    const S norm0 = psi0.inner(psi0);
    const S fnorm = f_n.dot(f_n);

    for (int q = 1; q <= K; ++q) {
        auto qi = static_cast<std::size_t>(q);
        PS rhs(f_n.zero());
        for (int j = 1; j <= q; ++j) {
            auto ji = static_cast<std::size_t>(j);
            const PS& prev = st.psi[qi - ji];
            if (prev.empty()) continue;
            PS t = apply_order(ops, ji, prev);
            if (j < q) {
                PS mp = prev;
                mp *= st.m[ji];
                t -= mp;
            }
            rhs += t;
        }
        double scale = std::sqrt(std::abs(ScalarTraits<S>::to_double(rhs.inner(rhs))));
        st.m[qi] = psi0.inner(rhs) / norm0;
        PS mp = psi0;
        mp *= st.m[qi];
        rhs -= mp;
        st.residues[qi] = rhs;

        Sigma par = rhs.project_ground();
        S along = par.dot(f_n) / fnorm;
        if (!ScalarTraits<S>::negligible(along, scale / std::sqrt(std::abs(ScalarTraits<S>::to_double(fnorm))) + 1e-300,
                                         rel_tol))
            fail(ErrorCode::InternalSolvabilityFailure, "projected right-hand side has a ground-state component");
        Sigma fa = f_n;
        fa *= along;
        par -= fa;
        if (q >= 7) {
            Sigma phi = par.resolvent(n, 1.0);
            phi *= S(-1);
            st.psi[qi - 6] += PS::ground(phi);
            st.v.push_back(phi);
        } else if (!ScalarTraits<S>::negligible(par.dot(par), scale * scale + 1e-300, rel_tol * rel_tol)) {
            fail(ErrorCode::InternalSolvabilityFailure, "low-order sigma equation not satisfied");
        }
        PS perp = rhs;
        perp -= PS::ground(par);
        perp -= PS::ground(fa);
        PS gq(f_n.zero());
        try {
            gq = perp.solve_P0_plus_1(rel_tol);
        } catch (const Error& e) {
            fail(ErrorCode::InternalSolvabilityFailure, e.what());
        }
        gq *= S(-1);
        st.psi[qi] += gq;
        if (q >= 7) st.g.push_back(gq);
    }
    for (int j = 0; j <= M; ++j) st.zeta.push_back(st.m[static_cast<std::size_t>(7 + j)]);
    return st;
}

/// E_q = sum_{j + r = q} (L_j - m_j) psi_r for q = 0..2K (orders above K form the residual).
template <class Sigma>
std::vector<ProductState<Sigma>> formal_residuals(const CorrectionState<Sigma>& st) {
    using PS = ProductState<Sigma>;
    const int K = st.M + 7;
    std::vector<PS> out(static_cast<std::size_t>(2 * K + 1), PS(st.f_n.zero()));
    for (int j = 0; j <= K; ++j)
        for (int r = 0; r <= K; ++r) {
            const PS& p = st.psi[static_cast<std::size_t>(r)];
            if (p.empty()) continue;
            PS t = apply_order(st.ops, static_cast<std::size_t>(j), p);
            PS mp = p;
            mp *= st.m[static_cast<std::size_t>(j)];
            t -= mp;
            out[static_cast<std::size_t>(j + r)] += t;
        }
    return out;
}

/// ||(L_{h,M} - mu_{h,M}) Psi_{n,M}|| / h^{(M+8)/8}, flat L2 norm evaluated with exact moments.
template <class Sigma>
double quasimode_residual(const CorrectionState<Sigma>& st, double h) {
    using S = typename Sigma::scalar_type;
    auto E = formal_residuals(st);
    double eps = std::pow(h, 0.125);
    double acc = 0.0;
    for (std::size_t q = 0; q < E.size(); ++q)
        for (std::size_t p = 0; p < E.size(); ++p) {
            if (E[q].empty() || E[p].empty()) continue;
            acc += std::pow(eps, static_cast<double>(q + p)) * ScalarTraits<S>::to_double(E[q].inner(E[p]));
        }
    double psi_norm = 0.0;
    for (std::size_t q = 0; q < st.psi.size(); ++q)
        for (std::size_t p = 0; p < st.psi.size(); ++p)
            psi_norm += std::pow(eps, static_cast<double>(q + p)) * ScalarTraits<S>::to_double(st.psi[q].inner(st.psi[p]));
    return std::sqrt(std::max(acc, 0.0) / psi_norm) / std::pow(h, (st.M + 8) / 8.0);
}

struct CorrectionResult {
    int n = 1;
    int M = 0;
    bool exact = false;
    std::vector<double> zeta;
    std::vector<std::string> zeta_exact;
    /// exact-path flag: zeta_j is identically zero
    std::vector<bool> zeta_zero;
    std::vector<double> m;
    double omega = 0.0;
};

/// Float path over Hermite coefficients, or exact path over Q(omega) with the jet
/// rationalized to relative precision 1e-12.
CorrectionResult compute_corrections(std::span<const double> kappa_jet, int n, int M, bool exact = false);

}  // namespace robinspec::corrections
