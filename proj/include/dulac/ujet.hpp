#ifndef DULAC_UJET_HPP
#define DULAC_UJET_HPP

#include <map>
#include <tuple>
#include <vector>

#include "dulac/rational.hpp"

namespace dulac {

// Truncated multivariate power series in the centre variables u_1..u_k over Q,
// everything mod total degree > J.  The desk-scale model of the coefficient
// ring C.
class UJet {
  public:
    using Index = std::vector<int>; // length k, total degree <= J
    using Terms = std::map<Index, Rational>;

    UJet() : k_(1), order_(0) {}
    UJet(int k, int order);
    static UJet constant(int k, int order, const Rational& c);
    static UJet variable(int k, int order, int i);

    int dim() const { return k_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational value_at_zero() const;
    Rational coeff(const Index& idx) const;
    void set_coeff(const Index& idx, const Rational& c); // validates degree <= J
    bool is_constant() const;

    UJet operator-() const;
    UJet& operator+=(const UJet& o);
    UJet& operator-=(const UJet& o);
    friend UJet operator+(UJet x, const UJet& y) { return x += y; }
    friend UJet operator-(UJet x, const UJet& y) { return x -= y; }
    friend UJet operator*(const UJet& x, const UJet& y); // truncated product
    UJet& operator*=(const UJet& o) { return *this = *this * o; }
    UJet& operator*=(const Rational& c);
    friend UJet operator*(UJet x, const Rational& c) { return x *= c; }
    friend bool operator==(const UJet& x, const UJet& y) {
        return x.k_ == y.k_ && x.order_ == y.order_ && x.terms_ == y.terms_;
    }

    UJet derivative(int i) const; // d/du_i, exact on the stored polynomial

    double eval(const std::vector<double>& u) const;
    Rational eval_exact(const std::vector<Rational>& u) const;

    std::string str(const std::vector<std::string>& names = {}) const;

  private:
    void check_compatible(const UJet& o) const;
    int k_;
    int order_;
    Terms terms_;
};

// f * invert_unit(f) = 1 mod degree > J; throws NotAUnit when f(0) = 0.
UJet invert_unit(const UJet& f);

// Weierstrass division at truncation: F = r + q*f mod degree > J with
// deg_{u1}(r) < m, where f(u1,0,..,0) = u1^m g(u1), g(0) != 0.
// Throws ZeroJet when f = 0 mod J, NeedsLinearChange when f(u1,0,..,0) = 0
// but f != 0 (the caller owns any linear change of u).
struct WeierstrassResult {
    UJet q;
    UJet r;
    int m;
};
WeierstrassResult weierstrass_divide(const UJet& F, const UJet& f);

} // namespace dulac

#endif
