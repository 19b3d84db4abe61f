#ifndef DULAC_RATFUNC_HPP
#define DULAC_RATFUNC_HPP

#include <string>

#include "dulac/bipoly.hpp"

namespace dulac {

// Rational functions p(a,b)/q(a,b): the coefficient ring O restricted to its
// rational-in-(alpha,beta) part (the smooth u0-dependence is carried by the
// jet module and enters only through evaluated Rational values).
//
// Canonical form: gcd(num,den) = 1 and the grlex-leading coefficient of den
// is 1, so equality is coefficient equality.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    explicit RatFunc(const BiPoly& p) : num_(p), den_(Rational(1)) {}
    RatFunc(BiPoly num, BiPoly den);

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& x, const RatFunc& y);
    friend RatFunc operator-(const RatFunc& x, const RatFunc& y);
    friend RatFunc operator*(const RatFunc& x, const RatFunc& y);
    friend RatFunc operator/(const RatFunc& x, const RatFunc& y);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend bool operator==(const RatFunc& x, const RatFunc& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }

    RatFunc reciprocal() const;

    double eval(double a, double b) const; // no pole guard; callers test den first
    Rational eval_exact(const Rational& a, const Rational& b) const;

    std::string str() const; // "num" or "(num)/(den)"

  private:
    void normalize();
    BiPoly num_, den_;
};

RatFunc parse_ratfunc(const std::string& s);

} // namespace dulac

#endif
