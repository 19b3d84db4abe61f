#ifndef DULAC_EXPPOLY_HPP
#define DULAC_EXPPOLY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dulac/ratfunc.hpp"

namespace dulac {

// Univariate polynomials in t over Q; the value ring of the two-parameter
// limit (Lemma: P(0,0;t) is polynomial in t).
class TPoly {
  public:
    TPoly() = default;
    explicit TPoly(const Rational& c) {
        if (c != 0) c_.push_back(c);
    }
    static TPoly monomial(int j, const Rational& c);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int j) const {
        return j >= 0 && j < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(j)] : Rational(0);
    }

    TPoly& operator+=(const TPoly& o);
    friend TPoly operator+(TPoly x, const TPoly& y) { return x += y; }
    friend TPoly operator*(const TPoly& x, const TPoly& y);
    TPoly& operator*=(const Rational& c);
    friend bool operator==(const TPoly& x, const TPoly& y) { return x.c_ == y.c_; }

    double eval(double t) const;
    std::string str() const;

  private:
    void trim();
    std::vector<Rational> c_; // c_[j] * t^j
};

// Key of one exp-monomial t^j * e^{(n1*a + n2*b) t}.
struct ExpKey {
    int j;
    int n1;
    int n2;
    friend auto operator<=>(const ExpKey&, const ExpKey&) = default;
};

// Canonical elements of R_{alpha,beta}: finite sums
//   sum c_{j,n1,n2}(a,b) t^j e^{(n1 a + n2 b) t}
// with RatFunc coefficients.  The exp-monomial basis is the internal form;
// the Omega basis below is a derived view.
class ExpPoly {
  public:
    using Terms = std::map<ExpKey, RatFunc>;

    ExpPoly() = default;
    explicit ExpPoly(const RatFunc& c) { add_term({0, 0, 0}, c); }

    static ExpPoly t_power(int j);                 // t^j
    static ExpPoly exponential(int n1, int n2);    // e^{(n1 a + n2 b) t}
    static ExpPoly omega_a();                      // Omega(a,t)  = (e^{at}-1)/a
    static ExpPoly omega_b();                      // Omega(b,t)
    static ExpPoly omega_form(long n1, long n2);   // Omega(n1*a+n2*b, t), (n1,n2) != 0

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const ExpKey& k, const RatFunc& c);

    ExpPoly operator-() const;
    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    friend ExpPoly operator+(ExpPoly x, const ExpPoly& y) { return x += y; }
    friend ExpPoly operator-(ExpPoly x, const ExpPoly& y) { return x -= y; }
    friend ExpPoly operator*(const ExpPoly& x, const ExpPoly& y);
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
    friend bool operator==(const ExpPoly& x, const ExpPoly& y) { return x.terms_ == y.terms_; }

    ExpPoly scaled(const RatFunc& c) const;
    // multiply by e^{(n1 a + n2 b)t}: key shift, exact
    ExpPoly shifted_exp(int n1, int n2) const;

    int max_tdegree() const;

  private:
    Terms terms_;
};

// antiderivative with q(0) = 0, via the K_j recurrence (exact)
ExpPoly integrate(const ExpPoly& p);
// term-wise d/dt (exact)
ExpPoly differentiate(const ExpPoly& p);

// Omega-basis view: polynomials in the commuting indeterminates
//   Opa = Omega(a,t), Oma = Omega(-a,t), Opb = Omega(b,t), Omb = Omega(-b,t), T = t
// with RatFunc coefficients.  Exponent order: (Opa, Oma, Opb, Omb, T).
class OmegaPoly {
  public:
    using Key = std::array<int, 5>;
    using Terms = std::map<Key, RatFunc>;

    OmegaPoly() = default;
    explicit OmegaPoly(const RatFunc& c) { add_term({0, 0, 0, 0, 0}, c); }
    static OmegaPoly indeterminate(int which); // 0..4 in key order

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Key& k, const RatFunc& c);

    OmegaPoly& operator+=(const OmegaPoly& o);
    friend OmegaPoly operator+(OmegaPoly x, const OmegaPoly& y) { return x += y; }
    friend OmegaPoly operator*(const OmegaPoly& x, const OmegaPoly& y);
    OmegaPoly scaled(const RatFunc& c) const;
    friend bool operator==(const OmegaPoly& x, const OmegaPoly& y) { return x.terms_ == y.terms_; }

  private:
    Terms terms_;
};

// rewrite with e^{at} = 1 + a*Opa, e^{-at} = 1 - a*Oma (same for b)
OmegaPoly omega_basis(const ExpPoly& p);
// expand the indeterminates back; omega_expand(omega_basis(p)) == p exactly
ExpPoly omega_expand(const OmegaPoly& w);

// Two-parameter limit a,b -> 0 at fixed truncation order (total degree of the
// (a,b)-expansion).  order < 0 selects the default: deg(common denominator) +
// max t-degree + 2.  nullopt = NotInRbar (a nonzero coefficient at negative
// total degree survives, or the expansion is not a power series at the
// truncation).
std::optional<TPoly> limit_params_zero(const ExpPoly& p, int order = -1);

// Numerically stable Omega(kappa, t): 6-term Taylor branch for |kappa*t| < 1e-4.
double omega_kernel(double kappa, double t);
// omega(kappa, x0) = Omega(kappa, -ln x0)
double omega_x(double kappa, double x0);

// Evaluation.  eval_exp routes through the Omega basis, then through
// limit_params_zero near (a,b) = (0,0), when coefficient denominators come
// within relative 1e-6 of vanishing; throws PoleAtPoint when no route is
// stable.
double eval_exp(const ExpPoly& p, double a, double b, double t);
double eval_omega(const OmegaPoly& w, double a, double b, double t);

// The series in x0 induced by t = -ln x0 (Omega(kappa,t) becomes
// omega(kappa,x0)).  Same polynomial data, evaluation semantics on (0,1].
struct OmegaXExpr {
    OmegaPoly poly;
    double eval(double a, double b, double x0) const;
};
OmegaXExpr subst_neg_log(const ExpPoly& p);

std::string exp_str(const ExpPoly& p);
std::string omega_str(const OmegaPoly& w);

} // namespace dulac

#endif
