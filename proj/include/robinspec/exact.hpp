#pragma once

#include <gmpxx.h>

#include <string>

namespace robinspec {

/// Best rational approximation of x with relative error below rel_tol.
mpq_class rationalize(double x, double rel_tol = 1e-12);

/// Element a + b w of Q(w), w = sqrt(d) for a rational d > 0 fixed per thread.
/// When d is a perfect square, w is stored as the rational sqrt(d) and b stays 0.
class QuadRational {
public:
    QuadRational() = default;
    QuadRational(int a) : a_(a) {}
    QuadRational(const mpq_class& a) : a_(a) {}
    QuadRational(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {}

    /// Sets d for the current thread while in scope.
    class Field {
    public:
        explicit Field(const mpq_class& d);
        ~Field();
        Field(const Field&) = delete;
        Field& operator=(const Field&) = delete;

    private:
        mpq_class saved_d_;
        bool saved_square_;
        mpq_class saved_root_;
    };

    static QuadRational omega();
    static const mpq_class& d();

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    double to_double() const;
    std::string str() const;

    QuadRational& operator+=(const QuadRational& o);
    QuadRational& operator-=(const QuadRational& o);
    QuadRational& operator*=(const QuadRational& o);
    QuadRational& operator/=(const QuadRational& o);
    QuadRational operator-() const { return {-a_, -b_}; }
    friend QuadRational operator+(QuadRational x, const QuadRational& y) { return x += y; }
    friend QuadRational operator-(QuadRational x, const QuadRational& y) { return x -= y; }
    friend QuadRational operator*(QuadRational x, const QuadRational& y) { return x *= y; }
    friend QuadRational operator/(QuadRational x, const QuadRational& y) { return x /= y; }
    friend bool operator==(const QuadRational& x, const QuadRational& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    mpq_class a_{0};
    mpq_class b_{0};
};

}  // namespace robinspec
