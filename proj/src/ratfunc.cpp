#include "dulac/ratfunc.hpp"

namespace dulac {

namespace {

// divide out gcd(x, y) from both; returns the gcd
BiPoly cross_cancel(BiPoly& x, BiPoly& y) {
    BiPoly g = bipoly_gcd(x, y);
    if (!g.is_one() && !g.is_zero()) {
        x = *x.divided_by(g);
        y = *y.divided_by(g);
    }
    return g;
}

} // namespace

RatFunc::RatFunc(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("RatFunc: zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = BiPoly(Rational(1));
        return;
    }
    if (!den_.is_constant()) cross_cancel(num_, den_);
    Rational lead = den_.leading_coeff();
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    RatFunc out;
    if (x.den_ == y.den_) {
        out.num_ = x.num_ + y.num_;
        out.den_ = x.den_;
        out.normalize();
        return out;
    }
    // Henrici: with g = gcd of denominators, only g can cancel into the sum
    BiPoly xd = x.den_, yd = y.den_;
    BiPoly g = cross_cancel(xd, yd); // xd = x.den/g, yd = y.den/g
    out.num_ = x.num_ * yd + y.num_ * xd;
    if (out.num_.is_zero()) return RatFunc();
    out.den_ = x.den_ * yd;
    if (!g.is_constant()) {
        BiPoly h = bipoly_gcd(out.num_, g);
        if (!h.is_one()) {
            out.num_ = *out.num_.divided_by(h);
            out.den_ = *out.den_.divided_by(h);
        }
    }
    Rational lead = out.den_.leading_coeff();
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        out.num_ *= inv;
        out.den_ *= inv;
    }
    return out;
}

RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }

RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return RatFunc();
    BiPoly xn = x.num_, yd = y.den_;
    BiPoly yn = y.num_, xd = x.den_;
    if (!yd.is_constant()) cross_cancel(xn, yd);
    if (!xd.is_constant()) cross_cancel(yn, xd);
    RatFunc out;
    out.num_ = xn * yn;
    out.den_ = xd * yd;
    Rational lead = out.den_.leading_coeff();
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        out.num_ *= inv;
        out.den_ *= inv;
    }
    return out;
}

RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    if (y.is_zero()) throw Error("RatFunc: division by zero");
    return x * y.reciprocal();
}

RatFunc RatFunc::reciprocal() const {
    if (is_zero()) throw Error("RatFunc: reciprocal of zero");
    RatFunc out;
    out.num_ = den_;
    out.den_ = num_;
    Rational lead = out.den_.leading_coeff();
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        out.num_ *= inv;
        out.den_ *= inv;
    }
    return out;
}

double RatFunc::eval(double a, double b) const { return num_.eval(a, b) / den_.eval(a, b); }

Rational RatFunc::eval_exact(const Rational& a, const Rational& b) const {
    Rational d = den_.eval_exact(a, b);
    if (d == 0) throw PoleAtPoint("RatFunc::eval_exact: denominator vanishes");
    return num_.eval_exact(a, b) / d;
}

std::string RatFunc::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc parse_ratfunc(const std::string& s) {
    // split "(num)/(den)" at the top-level ")/(" if present; otherwise a poly
    int depth = 0;
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') {
            --depth;
            if (depth == 0 && s[i + 1] == '/' && s[i + 2] == '(') {
                BiPoly num = parse_bipoly(s.substr(0, i + 1));
                BiPoly den = parse_bipoly(s.substr(i + 2));
                return RatFunc(num, den);
            }
        }
    }
    return RatFunc(parse_bipoly(s));
}

} // namespace dulac
