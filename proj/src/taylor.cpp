#include "robinspec/taylor.hpp"

#include "robinspec/errors.hpp"

#include <algorithm>
#include <cmath>

namespace robinspec {

Taylor Taylor::constant(double v, std::size_t order) {
    Taylor t(order);
    t.c_[0] = v;
    return t;
}

Taylor Taylor::variable(double at, std::size_t order) {
    Taylor t(order);
    t.c_[0] = at;
    if (order >= 1) t.c_[1] = 1.0;
    return t;
}

Taylor& Taylor::operator+=(const Taylor& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Taylor& Taylor::operator*=(double a) {
    for (auto& v : c_) v *= a;
    return *this;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
    std::size_t n = std::min(a.c_.size(), b.c_.size());
    Taylor r(n == 0 ? 0 : n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
    std::size_t n = std::min(a.c_.size(), b.c_.size());
    if (n == 0 || b.c_[0] == 0.0) fail(ErrorCode::InvalidArgument, "series division by zero");
    Taylor r(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        double s = a.c_[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
        r.c_[k] = s / b.c_[0];
    }
    return r;
}

Taylor Taylor::sqrt() const {
    if (c_.empty() || c_[0] <= 0.0) fail(ErrorCode::InvalidArgument, "series sqrt needs positive constant term");
    Taylor r(order());
    r.c_[0] = std::sqrt(c_[0]);
    for (std::size_t k = 1; k < c_.size(); ++k) {
        double s = c_[k];
        for (std::size_t j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
        r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
}

Taylor Taylor::derivative() const {
    if (c_.size() <= 1) return Taylor(0);
    Taylor r(order() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = static_cast<double>(k) * c_[k];
    return r;
}

Taylor Taylor::integral() const {
    Taylor r(order());
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) r.c_[k + 1] = c_[k] / static_cast<double>(k + 1);
    return r;
}

Taylor Taylor::truncated(std::size_t order) const {
    Taylor r(order);
    for (std::size_t i = 0; i <= order && i < c_.size(); ++i) r.c_[i] = c_[i];
    return r;
}

Taylor Taylor::compose(const Taylor& inner) const {
    if (inner[0] != 0.0) fail(ErrorCode::InvalidArgument, "compose needs inner series without constant term");
    std::size_t n = std::min(c_.size(), inner.c_.size());
    Taylor r = Taylor::constant(c_.empty() ? 0.0 : c_[0], n - 1);
    Taylor p = Taylor::constant(1.0, n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        p = p * inner;
        r += p * c_[k];
    }
    return r;
}

Taylor Taylor::revert() const {
    if (c_.size() < 2 || c_[0] != 0.0 || c_[1] == 0.0)
        fail(ErrorCode::InvalidArgument, "series reversion needs c0 = 0, c1 != 0");
    std::size_t n = order();
    Taylor x = Taylor::variable(0.0, n);
    Taylor higher = *this;
    higher.c_[1] = 0.0;
    Taylor d = x * (1.0 / c_[1]);
    for (std::size_t it = 0; it < n; ++it) d = (x - higher.compose(d)) * (1.0 / c_[1]);
    return d;
}

double Taylor::eval(double d) const {
    double r = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) r = r * d + c_[k];
    return r;
}

double Taylor::derivative_at(std::size_t m) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
    return (*this)[m] * f;
}

}  // namespace robinspec
