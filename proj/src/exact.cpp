#include "robinspec/exact.hpp"

#include "robinspec/errors.hpp"

#include <cmath>

namespace robinspec {

namespace {

struct FieldState {
    mpq_class d{1};
    bool square = true;
    mpq_class root{1};
};

thread_local FieldState g_field;

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
    mpz_class n = q.get_num(), m = q.get_den();
    if (sgn(n) < 0) return false;
    mpz_class rn = sqrt(n), rm = sqrt(m);
    if (rn * rn != n || rm * rm != m) return false;
    root = mpq_class(rn, rm);
    root.canonicalize();
    return true;
}

}  // namespace

mpq_class rationalize(double x, double rel_tol) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "cannot rationalize non-finite value");
    if (x == 0.0) return mpq_class(0);
    mpq_class exact(x);
    // continued fraction convergents of the exact dyadic value
    mpq_class rem = exact;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int it = 0; it < 200; ++it) {
        mpz_class a = rem.get_num() / rem.get_den();
        if (rem < 0 && a * rem.get_den() != rem.get_num()) a -= 1;
        mpz_class h2 = a * h0 + h1, k2 = a * k0 + k1;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        mpq_class conv(h0, k0);
        conv.canonicalize();
        mpq_class err = conv - exact;
        if (abs(err) <= abs(exact) * mpq_class(rel_tol)) return conv;
        mpq_class frac = rem - mpq_class(a);
        if (sgn(frac) == 0) return conv;
        rem = 1 / frac;
    }
    return exact;
}

QuadRational::Field::Field(const mpq_class& d)
    : saved_d_(g_field.d), saved_square_(g_field.square), saved_root_(g_field.root) {
    if (sgn(d) <= 0) fail(ErrorCode::InvalidArgument, "field generator must be positive");
    g_field.d = d;
    g_field.square = rational_sqrt(d, g_field.root);
}

QuadRational::Field::~Field() {
    g_field.d = saved_d_;
    g_field.square = saved_square_;
    g_field.root = saved_root_;
}

QuadRational QuadRational::omega() {
    if (g_field.square) return QuadRational(g_field.root);
    return QuadRational(mpq_class(0), mpq_class(1));
}

const mpq_class& QuadRational::d() { return g_field.d; }

double QuadRational::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(g_field.d.get_d());
}

std::string QuadRational::str() const {
    if (sgn(b_) == 0) return a_.get_str();
    return a_.get_str() + " + (" + b_.get_str() + ")*sqrt(" + g_field.d.get_str() + ")";
}

QuadRational& QuadRational::operator+=(const QuadRational& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadRational& QuadRational::operator-=(const QuadRational& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadRational& QuadRational::operator*=(const QuadRational& o) {
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
        a_ *= o.a_;
        return *this;
    }
    mpq_class na = a_ * o.a_ + b_ * o.b_ * g_field.d;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadRational& QuadRational::operator/=(const QuadRational& o) {
    if (o.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero in Q(w)");
    if (sgn(o.b_) == 0) {
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    mpq_class den = o.a_ * o.a_ - o.b_ * o.b_ * g_field.d;
    QuadRational conj(o.a_ / den, -o.b_ / den);
    return *this *= conj;
}

}  // namespace robinspec
