#pragma once

#include "robinspec/errors.hpp"
#include "robinspec/exact.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace robinspec::basis {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double to_double(double x) { return x; }
    static double abs_value(double x) { return std::abs(x); }
    /// x negligible against a quantity of size scale
    static bool negligible(double x, double scale, double rel) { return std::abs(x) <= rel * scale; }
};

template <>
struct ScalarTraits<QuadRational> {
    static constexpr bool exact = true;
    static double to_double(const QuadRational& x) { return x.to_double(); }
    static double abs_value(const QuadRational& x) { return std::abs(x.to_double()); }
    static bool negligible(const QuadRational& x, double, double) { return x.is_zero(); }
};

/// int_0^inf tau^m e^{-2 tau} dtau = m!/2^{m+1}
template <class S>
S tau_moment(std::size_t m) {
    S r = S(1) / S(2);
    for (std::size_t k = 1; k <= m; ++k) r = r * S(static_cast<int>(k)) / S(2);
    return r;
}

/// (sum_k p_k tau^k) e^{-tau} on [0, inf). C is a scalar or a sigma factor.
template <class C>
struct TauPoly {
    std::vector<C> coeffs;
};

using TauProfile = TauPoly<double>;

/// u0 = sqrt(2) e^{-tau}
inline TauProfile u0_profile() { return {{std::sqrt(2.0)}}; }

namespace detail {

template <class C, class S>
C scaled(const C& c, const S& s) {
    C r = c;
    r *= s;
    return r;
}

}  // namespace detail

/// (-d^2/dtau^2 + 1) applied to p e^{-tau}: (2p' - p'') e^{-tau}.
template <class C, class S>
TauPoly<C> apply_P0_plus_1(const TauPoly<C>& w, const C& zero) {
    TauPoly<C> r;
    std::size_t n = w.coeffs.size();
    r.coeffs.assign(n, zero);
    for (std::size_t k = 1; k < n; ++k) r.coeffs[k - 1] += detail::scaled(w.coeffs[k], S(2 * static_cast<int>(k)));
    for (std::size_t k = 2; k < n; ++k)
        r.coeffs[k - 2] -= detail::scaled(w.coeffs[k], S(static_cast<int>(k * (k - 1))));
    return r;
}

/// Coefficient of e^{-tau} in the L2 projection: sum_k p_k k!/2^k.
template <class C, class S>
C project_ground(const TauPoly<C>& w, const C& zero) {
    C r = zero;
    S f = S(1);
    for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
        if (k > 0) f = f * S(static_cast<int>(k)) / S(2);
        r += detail::scaled(w.coeffs[k], f);
    }
    return r;
}

/// Solves (P0 + 1) g = w with g' (0) = -g(0) and g orthogonal to e^{-tau}.
/// The caller guarantees w is orthogonal to e^{-tau}; robin_defect receives r(0).
template <class C, class S>
TauPoly<C> solve_P0_plus_1(const TauPoly<C>& w, const C& zero, C* robin_defect = nullptr) {
    std::size_t n = w.coeffs.size();
    TauPoly<C> g;
    g.coeffs.assign(n + 1, zero);
    // r = sum_i D^i p / 2^{i+1}; q = int r + c
    std::vector<C> r(n, zero);
    for (std::size_t j = 0; j < n; ++j) {
        S f = S(1) / S(2);
        for (std::size_t i = 0; j + i < n; ++i) {
            if (i > 0) f = f * S(static_cast<int>(j + i)) / S(2);
            r[j] += detail::scaled(w.coeffs[j + i], f);
        }
    }
    for (std::size_t j = 0; j < n; ++j) g.coeffs[j + 1] = detail::scaled(r[j], S(1) / S(static_cast<int>(j + 1)));
    if (robin_defect) *robin_defect = n ? r[0] : zero;
    // orthogonality: sum_k q_k k!/2^{k+1} = 0
    C acc = zero;
    S f = S(1) / S(2);
    for (std::size_t k = 1; k <= n; ++k) {
        f = f * S(static_cast<int>(k)) / S(2);
        acc += detail::scaled(g.coeffs[k], f);
    }
    g.coeffs[0] = detail::scaled(acc, S(-2));
    return g;
}

double inner(const TauProfile& a, const TauProfile& b);
TauProfile apply_P0_plus_1(const TauProfile& w);
/// Throws NotOrthogonal unless w is orthogonal to u0.
TauProfile invert_P0_plus_1(const TauProfile& w);
double evaluate(const TauProfile& w, double tau);

/// Coefficients over the orthonormal eigenfunctions f_1, f_2, ... of
/// H = -d^2/dsigma^2 + omega^2 sigma^2, omega = sqrt(k2/2). Index m holds f_{m+1}.
class HermiteVector {
public:
    using scalar_type = double;

    HermiteVector() = default;
    HermiteVector(double omega, std::vector<double> coeffs) : omega_(omega), c_(std::move(coeffs)) {}
    static HermiteVector from_k2(double k2, std::vector<double> coeffs);
    /// f_n, n >= 1
    static HermiteVector ground(double omega, int n);

    double omega() const { return omega_; }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(std::size_t m) const { return m < c_.size() ? c_[m] : 0.0; }
    HermiteVector zero() const { return {omega_, {}}; }

    HermiteVector& operator+=(const HermiteVector& o);
    HermiteVector& operator-=(const HermiteVector& o);
    HermiteVector& operator*=(double s);

    HermiteVector mul_sigma() const;
    HermiteVector d_sigma() const;
    HermiteVector harm() const;
    double dot(const HermiteVector& o) const;
    /// <f_n, v> / <f_n, f_n>
    double component(int n) const;
    /// (H - (2n-1) omega)^{-1} on the complement of f_n; result has no f_n part.
    HermiteVector resolvent(int n, double rel_tol = 1e-12) const;
    bool is_even(double tol = 0.0) const;
    bool is_odd(double tol = 0.0) const;
    double value(double sigma) const;
    double norm() const { return std::sqrt(dot(*this)); }

private:
    double omega_ = 1.0;
    std::vector<double> c_;
};

/// Sigma factor p(sigma) exp(-omega sigma^2 / 2) in the monomial basis.
/// Inner products are normalized by the integral of exp(-omega sigma^2).
template <class S>
class GaussPoly {
public:
    using scalar_type = S;

    GaussPoly() = default;
    GaussPoly(S omega, std::vector<S> p) : omega_(std::move(omega)), p_(std::move(p)) {}

    /// Unnormalized f_n built by the raising operator.
    static GaussPoly ground(const S& omega, int n) {
        GaussPoly f(omega, {S(1)});
        for (int m = 1; m < n; ++m) {
            GaussPoly d = f.poly_derivative();
            GaussPoly up = f.shift();
            up *= S(2) * omega;
            up -= d;
            f = up;
        }
        return f;
    }

    const S& omega() const { return omega_; }
    const std::vector<S>& coeffs() const { return p_; }
    GaussPoly zero() const { return {omega_, {}}; }

    GaussPoly& operator+=(const GaussPoly& o) {
        if (o.p_.size() > p_.size()) p_.resize(o.p_.size(), S(0));
        for (std::size_t i = 0; i < o.p_.size(); ++i) p_[i] += o.p_[i];
        return *this;
    }
    GaussPoly& operator-=(const GaussPoly& o) {
        if (o.p_.size() > p_.size()) p_.resize(o.p_.size(), S(0));
        for (std::size_t i = 0; i < o.p_.size(); ++i) p_[i] -= o.p_[i];
        return *this;
    }
    GaussPoly& operator*=(const S& s) {
        for (auto& v : p_) v *= s;
        return *this;
    }

    GaussPoly mul_sigma() const { return shift(); }
    /// (p' - omega sigma p) G
    GaussPoly d_sigma() const {
        GaussPoly r = poly_derivative();
        GaussPoly s = shift();
        s *= omega_;
        r -= s;
        return r;
    }
    /// (-p'' + 2 omega sigma p' + omega p) G
    GaussPoly harm() const {
        std::size_t n = p_.size();
        std::vector<S> r(n, S(0));
        for (std::size_t k = 0; k < n; ++k) {
            r[k] += S(static_cast<int>(2 * k + 1)) * omega_ * p_[k];
            if (k >= 2) r[k - 2] -= S(static_cast<int>(k * (k - 1))) * p_[k];
        }
        return {omega_, std::move(r)};
    }
    S dot(const GaussPoly& o) const {
        std::size_t n = p_.size() + o.p_.size();
        std::vector<S> mom(n, S(0));
        S m = S(1);
        for (std::size_t k = 0; 2 * k < n; ++k) {
            if (k > 0) m = m * S(static_cast<int>(2 * k - 1)) / (S(2) * omega_);
            mom[2 * k] = m;
        }
        S r = S(0);
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (ScalarTraits<S>::exact && is_zero(p_[i])) continue;
            for (std::size_t j = (i % 2); j < o.p_.size(); j += 2) r += p_[i] * o.p_[j] * mom[i + j];
        }
        return r;
    }
    S component(int n) const {
        GaussPoly f = ground(omega_, n);
        return dot(f) / f.dot(f);
    }
    /// (H - (2n-1) omega)^{-1} on the complement of f_n; result orthogonal to f_n.
    GaussPoly resolvent(int n, double rel_tol = 1e-12) const {
        GaussPoly f = ground(omega_, n);
        S c = dot(f) / f.dot(f);
        double scale = std::sqrt(std::abs(ScalarTraits<S>::to_double(dot(*this))));
        if (!ScalarTraits<S>::negligible(c, scale, rel_tol))
            fail(ErrorCode::NotOrthogonal, "sigma factor has a component along f_n");
        std::size_t deg = p_.size();
        std::vector<S> v(deg + 2, S(0));
        for (std::size_t kk = deg; kk-- > 0;) {
            S rhs = p_[kk] + S(static_cast<int>((kk + 2) * (kk + 1))) * v[kk + 2];
            int gap = static_cast<int>(kk) - n + 1;
            if (gap == 0) continue;
            v[kk] = rhs / (S(2 * gap) * omega_);
        }
        v.resize(deg);
        GaussPoly out(omega_, std::move(v));
        S cf = out.dot(f) / f.dot(f);
        GaussPoly fc = f;
        fc *= cf;
        out -= fc;
        return out;
    }
    bool is_even(double tol = 0.0) const { return parity_part(1) <= tol; }
    bool is_odd(double tol = 0.0) const { return parity_part(0) <= tol; }
    double value(double sigma) const {
        double r = 0.0;
        for (std::size_t k = p_.size(); k-- > 0;) r = r * sigma + ScalarTraits<S>::to_double(p_[k]);
        return r * std::exp(-ScalarTraits<S>::to_double(omega_) * sigma * sigma / 2.0);
    }

private:
    static bool is_zero(const S& x) {
        if constexpr (ScalarTraits<S>::exact)
            return x.is_zero();
        else
            return x == S(0);
    }
    double parity_part(std::size_t start) const {
        double m = 0.0;
        for (std::size_t k = start; k < p_.size(); k += 2) m = std::max(m, ScalarTraits<S>::abs_value(p_[k]));
        return m;
    }
    GaussPoly shift() const {
        std::vector<S> r(p_.size() + 1, S(0));
        for (std::size_t k = 0; k < p_.size(); ++k) r[k + 1] = p_[k];
        return {omega_, std::move(r)};
    }
    GaussPoly poly_derivative() const {
        std::vector<S> r(p_.size() > 0 ? p_.size() - 1 : 0, S(0));
        for (std::size_t k = 1; k < p_.size(); ++k) r[k - 1] = S(static_cast<int>(k)) * p_[k];
        return {omega_, std::move(r)};
    }

    S omega_ = S(1);
    std::vector<S> p_;
};

/// Sum_k v_k(sigma) tau^k e^{-tau}; by_tau[k] is the sigma factor of tau^k e^{-tau}.
template <class Sigma>
class ProductState {
public:
    using S = typename Sigma::scalar_type;

    ProductState() = default;
    explicit ProductState(Sigma zero) : zero_(std::move(zero)) {}
    /// e^{-tau} (x) v
    static ProductState ground(const Sigma& v) {
        ProductState p(v.zero());
        p.by_tau_.push_back(v);
        return p;
    }

    const Sigma& zero_sigma() const { return zero_; }
    const std::vector<Sigma>& by_tau() const { return by_tau_; }
    std::vector<Sigma>& by_tau() { return by_tau_; }
    const Sigma& at(std::size_t k) const { return k < by_tau_.size() ? by_tau_[k] : zero_; }
    bool empty() const { return by_tau_.empty(); }
    /// (sigma factor, monomial tau profile) pairs
    std::vector<std::pair<Sigma, std::size_t>> terms() const {
        std::vector<std::pair<Sigma, std::size_t>> t;
        for (std::size_t k = 0; k < by_tau_.size(); ++k) t.emplace_back(by_tau_[k], k);
        return t;
    }

    ProductState& operator+=(const ProductState& o) {
        if (o.by_tau_.size() > by_tau_.size()) by_tau_.resize(o.by_tau_.size(), zero_);
        for (std::size_t k = 0; k < o.by_tau_.size(); ++k) by_tau_[k] += o.by_tau_[k];
        return *this;
    }
    ProductState& operator-=(const ProductState& o) {
        if (o.by_tau_.size() > by_tau_.size()) by_tau_.resize(o.by_tau_.size(), zero_);
        for (std::size_t k = 0; k < o.by_tau_.size(); ++k) by_tau_[k] -= o.by_tau_[k];
        return *this;
    }
    ProductState& operator*=(const S& s) {
        for (auto& v : by_tau_) v *= s;
        return *this;
    }

    ProductState mul_tau(std::size_t power = 1) const {
        ProductState r(zero_);
        if (by_tau_.empty()) return r;
        r.by_tau_.assign(power, zero_);
        r.by_tau_.insert(r.by_tau_.end(), by_tau_.begin(), by_tau_.end());
        return r;
    }
    /// d/dtau (tau^k e^{-tau}) = k tau^{k-1} e^{-tau} - tau^k e^{-tau}
    ProductState d_tau() const {
        ProductState r(zero_);
        r.by_tau_.assign(by_tau_.size(), zero_);
        for (std::size_t k = 0; k < by_tau_.size(); ++k) {
            r.by_tau_[k] -= by_tau_[k];
            if (k > 0) {
                Sigma t = by_tau_[k];
                t *= S(static_cast<int>(k));
                r.by_tau_[k - 1] += t;
            }
        }
        return r;
    }
    ProductState map_sigma(Sigma (Sigma::*f)() const) const {
        ProductState r(zero_);
        for (const auto& v : by_tau_) r.by_tau_.push_back((v.*f)());
        return r;
    }
    ProductState mul_sigma() const { return map_sigma(&Sigma::mul_sigma); }
    ProductState d_sigma() const { return map_sigma(&Sigma::d_sigma); }

    S inner(const ProductState& o) const {
        S r = S(0);
        for (std::size_t k = 0; k < by_tau_.size(); ++k)
            for (std::size_t l = 0; l < o.by_tau_.size(); ++l)
                r += by_tau_[k].dot(o.by_tau_[l]) * tau_moment<S>(k + l);
        return r;
    }
    /// Sigma factor phi with Pi(psi) = e^{-tau} (x) phi.
    Sigma project_ground() const {
        return basis::project_ground<Sigma, S>(TauPoly<Sigma>{by_tau_}, zero_);
    }
    /// -(P0 + 1)^{-1} is not applied here; this solves (P0 + 1) g = *this.
    ProductState solve_P0_plus_1(double rel_tol = 1e-12) const {
        Sigma par = project_ground();
        double scale = std::sqrt(std::abs(ScalarTraits<S>::to_double(inner(*this))));
        if (!ScalarTraits<S>::negligible(par.dot(par), scale * scale, rel_tol * rel_tol))
            fail(ErrorCode::NotOrthogonal, "state has a component along u0");
        Sigma defect = zero_;
        auto g = basis::solve_P0_plus_1<Sigma, S>(TauPoly<Sigma>{by_tau_}, zero_, &defect);
        if (!ScalarTraits<S>::negligible(defect.dot(defect), scale * scale, rel_tol * rel_tol))
            fail(ErrorCode::InternalSolvabilityFailure, "Robin condition violated after inversion");
        ProductState r(zero_);
        r.by_tau_ = std::move(g.coeffs);
        return r;
    }
    ProductState apply_P0_plus_1() const {
        auto w = basis::apply_P0_plus_1<Sigma, S>(TauPoly<Sigma>{by_tau_}, zero_);
        ProductState r(zero_);
        r.by_tau_ = std::move(w.coeffs);
        return r;
    }
    double value(double sigma, double tau) const {
        double r = 0.0, tp = 1.0;
        for (const auto& v : by_tau_) {
            r += v.value(sigma) * tp;
            tp *= tau;
        }
        return r * std::exp(-tau);
    }

private:
    Sigma zero_;
    std::vector<Sigma> by_tau_;
};

/// Differential factor of a formal operator term.
enum class Deriv { Identity, DTau, DTau2, DSigma, DSigma2 };

/// c(sigma, tau) * D with c = sum c_ab sigma^a tau^b.
template <class S>
struct OperatorTerm {
    Deriv deriv = Deriv::Identity;
    std::vector<std::vector<S>> coeff;  // coeff[a][b]
};

template <class Sigma, class S = typename Sigma::scalar_type>
ProductState<Sigma> apply_poly_diff_op(const ProductState<Sigma>& state, const OperatorTerm<S>& op) {
    ProductState<Sigma> d = state;
    switch (op.deriv) {
        case Deriv::Identity: break;
        case Deriv::DTau: d = state.d_tau(); break;
        case Deriv::DTau2: d = state.d_tau().d_tau(); break;
        case Deriv::DSigma: d = state.d_sigma(); break;
        case Deriv::DSigma2: d = state.d_sigma().d_sigma(); break;
    }
    ProductState<Sigma> out(state.zero_sigma());
    ProductState<Sigma> sig = d;
    for (std::size_t a = 0; a < op.coeff.size(); ++a) {
        if (a > 0) sig = sig.mul_sigma();
        for (std::size_t b = 0; b < op.coeff[a].size(); ++b) {
            const S& c = op.coeff[a][b];
            if constexpr (ScalarTraits<S>::exact) {
                if (c.is_zero()) continue;
            } else {
                if (c == 0.0) continue;
            }
            ProductState<Sigma> t = sig.mul_tau(b);
            t *= c;
            out += t;
        }
    }
    return out;
}

}  // namespace robinspec::basis
