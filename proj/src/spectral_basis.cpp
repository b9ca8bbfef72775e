#include "robinspec/spectral_basis.hpp"

#include <algorithm>
#include <numbers>

namespace robinspec::basis {

double inner(const TauProfile& a, const TauProfile& b) {
    double r = 0.0;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k)
        for (std::size_t l = 0; l < b.coeffs.size(); ++l) r += a.coeffs[k] * b.coeffs[l] * tau_moment<double>(k + l);
    return r;
}

TauProfile apply_P0_plus_1(const TauProfile& w) { return apply_P0_plus_1<double, double>(w, 0.0); }

TauProfile invert_P0_plus_1(const TauProfile& w) {
    double nrm = std::sqrt(inner(w, w));
    double par = inner(w, u0_profile());
    if (std::abs(par) > 1e-12 * nrm) fail(ErrorCode::NotOrthogonal, "tau profile not orthogonal to u0");
    double defect = 0.0;
    TauProfile g = solve_P0_plus_1<double, double>(w, 0.0, &defect);
    if (std::abs(defect) > 1e-12 * std::max(1.0, nrm))
        fail(ErrorCode::InternalSolvabilityFailure, "Robin condition violated after inversion");
    return g;
}

double evaluate(const TauProfile& w, double tau) {
    double r = 0.0;
    for (std::size_t k = w.coeffs.size(); k-- > 0;) r = r * tau + w.coeffs[k];
    return r * std::exp(-tau);
}

HermiteVector HermiteVector::from_k2(double k2, std::vector<double> coeffs) {
    if (!(k2 > 0.0)) fail(ErrorCode::InvalidArgument, "k2 must be positive");
    return {std::sqrt(k2 / 2.0), std::move(coeffs)};
}

HermiteVector HermiteVector::ground(double omega, int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "level index starts at 1");
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    c.back() = 1.0;
    return {omega, std::move(c)};
}

HermiteVector& HermiteVector::operator+=(const HermiteVector& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

HermiteVector& HermiteVector::operator-=(const HermiteVector& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

HermiteVector& HermiteVector::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

// sigma f_m = (sqrt(m) f_{m-1} + sqrt(m+1) f_{m+1}) / sqrt(2 omega), 0-based m
HermiteVector HermiteVector::mul_sigma() const {
    std::vector<double> r(c_.size() + 1, 0.0);
    double s = 1.0 / std::sqrt(2.0 * omega_);
    for (std::size_t m = 0; m < c_.size(); ++m) {
        if (m > 0) r[m - 1] += s * std::sqrt(static_cast<double>(m)) * c_[m];
        r[m + 1] += s * std::sqrt(static_cast<double>(m + 1)) * c_[m];
    }
    return {omega_, std::move(r)};
}

// d/dsigma f_m = sqrt(omega/2) (sqrt(m) f_{m-1} - sqrt(m+1) f_{m+1})
HermiteVector HermiteVector::d_sigma() const {
    std::vector<double> r(c_.size() + 1, 0.0);
    double s = std::sqrt(omega_ / 2.0);
    for (std::size_t m = 0; m < c_.size(); ++m) {
        if (m > 0) r[m - 1] += s * std::sqrt(static_cast<double>(m)) * c_[m];
        r[m + 1] -= s * std::sqrt(static_cast<double>(m + 1)) * c_[m];
    }
    return {omega_, std::move(r)};
}

HermiteVector HermiteVector::harm() const {
    std::vector<double> r(c_);
    for (std::size_t m = 0; m < r.size(); ++m) r[m] *= (2.0 * static_cast<double>(m) + 1.0) * omega_;
    return {omega_, std::move(r)};
}

double HermiteVector::dot(const HermiteVector& o) const {
    double r = 0.0;
    std::size_t n = std::min(c_.size(), o.c_.size());
    for (std::size_t i = 0; i < n; ++i) r += c_[i] * o.c_[i];
    return r;
}

double HermiteVector::component(int n) const { return coeff(static_cast<std::size_t>(n - 1)); }

HermiteVector HermiteVector::resolvent(int n, double rel_tol) const {
    std::size_t idx = static_cast<std::size_t>(n - 1);
    if (std::abs(coeff(idx)) > rel_tol * norm()) fail(ErrorCode::NotOrthogonal, "HermiteVector has an f_n component");
    std::vector<double> r(c_.size(), 0.0);
    for (std::size_t m = 0; m < c_.size(); ++m) {
        if (m == idx) continue;
        r[m] = c_[m] / (2.0 * (static_cast<double>(m) - static_cast<double>(idx)) * omega_);
    }
    return {omega_, std::move(r)};
}

bool HermiteVector::is_even(double tol) const {
    for (std::size_t m = 1; m < c_.size(); m += 2)
        if (std::abs(c_[m]) > tol) return false;
    return true;
}

bool HermiteVector::is_odd(double tol) const {
    for (std::size_t m = 0; m < c_.size(); m += 2)
        if (std::abs(c_[m]) > tol) return false;
    return true;
}

double HermiteVector::value(double sigma) const {
    double x = std::sqrt(omega_) * sigma;
    double pm1 = 0.0, p = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2.0);
    double r = 0.0;
    for (std::size_t m = 0; m < c_.size(); ++m) {
        r += c_[m] * p;
        double next = std::sqrt(2.0 / static_cast<double>(m + 1)) * x * p -
                      std::sqrt(static_cast<double>(m) / static_cast<double>(m + 1)) * pm1;
        pm1 = p;
        p = next;
    }
    return r * std::pow(omega_, 0.25);
}

}  // namespace robinspec::basis
