#ifndef DULAC_BIPOLY_HPP
#define DULAC_BIPOLY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "dulac/rational.hpp"

namespace dulac {

// Monomial order used for canonical forms: graded lex with a > b.
struct GrlexLess {
    bool operator()(const std::array<int, 2>& x, const std::array<int, 2>& y) const {
        int dx = x[0] + x[1], dy = y[0] + y[1];
        if (dx != dy) return dx < dy;
        return x[0] < y[0]; // same degree: smaller a-power first
    }
};

// Polynomials in Q[a,b], sparse.  The formal parameters a,b stand for the
// eigenvalue deviations alpha_1(u0), beta_1(u0).
class BiPoly {
  public:
    using Terms = std::map<std::array<int, 2>, Rational, GrlexLess>;

    BiPoly() = default;
    explicit BiPoly(const Rational& c);
    static BiPoly var_a();
    static BiPoly var_b();
    static BiPoly monomial(int ea, int eb, const Rational& c);
    // n1*a + n2*b
    static BiPoly linear_form(long n1, long n2);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // 0 if no constant term
    bool is_one() const;

    int total_degree() const;  // -1 for zero
    int valuation() const;     // min total degree; large sentinel for zero
    int degree_a() const;      // -1 for zero

    // leading term in grlex order
    const Rational& leading_coeff() const;

    BiPoly homogeneous_part(int d) const;
    BiPoly truncate_degree(int maxdeg) const;

    void add_term(int ea, int eb, const Rational& c);

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly x, const BiPoly& y) { return x += y; }
    friend BiPoly operator-(BiPoly x, const BiPoly& y) { return x -= y; }
    friend BiPoly operator*(const BiPoly& x, const BiPoly& y);
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    BiPoly& operator*=(const Rational& c);
    friend BiPoly operator*(BiPoly x, const Rational& c) { return x *= c; }
    friend bool operator==(const BiPoly& x, const BiPoly& y) { return x.terms_ == y.terms_; }

    double eval(double a, double b) const;
    Rational eval_exact(const Rational& a, const Rational& b) const;
    // sum_i |c_i| * max(1,|a|)^{ea_i} * max(1,|b|)^{eb_i}; scale for pole tests
    double magnitude_bound(double a, double b) const;

    // Exact division; nullopt if not divisible.
    std::optional<BiPoly> divided_by(const BiPoly& d) const;

    std::string str() const; // e.g. "3/2*a^2*b - b + 1"

  private:
    Terms terms_;
};

// GCD in Q[a,b] (primitive PRS over Q[b][a]); result normalized to leading
// coefficient 1 in grlex order.  gcd(0,0) = 0.
BiPoly bipoly_gcd(const BiPoly& p, const BiPoly& q);

// lcm(p,q) = p*q/gcd, leading coefficient 1.
BiPoly bipoly_lcm(const BiPoly& p, const BiPoly& q);

BiPoly parse_bipoly(const std::string& s);

} // namespace dulac

#endif
