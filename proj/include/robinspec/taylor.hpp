#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robinspec {

/// Truncated power series c_0 + c_1 d + ... + c_N d^N.
class Taylor {
public:
    Taylor() = default;
    explicit Taylor(std::size_t order) : c_(order + 1, 0.0) {}
    Taylor(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    static Taylor constant(double v, std::size_t order);
    static Taylor variable(double at, std::size_t order);

    std::size_t order() const { return c_.empty() ? 0 : c_.size() - 1; }
    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
    std::span<const double> coeffs() const { return c_; }

    Taylor& operator+=(const Taylor& o);
    Taylor& operator-=(const Taylor& o);
    Taylor& operator*=(double a);

    friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
    friend Taylor operator*(Taylor a, double s) { return a *= s; }
    friend Taylor operator*(double s, Taylor a) { return a *= s; }
    friend Taylor operator*(const Taylor& a, const Taylor& b);
    friend Taylor operator/(const Taylor& a, const Taylor& b);
    Taylor operator-() const { return *this * -1.0; }

    Taylor sqrt() const;
    Taylor derivative() const;
    Taylor integral() const;
    Taylor truncated(std::size_t order) const;
    /// this(inner(d)); inner must have zero constant term.
    Taylor compose(const Taylor& inner) const;
    /// Compositional inverse; requires c_0 = 0, c_1 != 0.
    Taylor revert() const;
    double eval(double d) const;
    /// m-th derivative at the expansion point.
    double derivative_at(std::size_t m) const;

private:
    std::vector<double> c_;
};

}  // namespace robinspec
