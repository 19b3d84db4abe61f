#ifndef DULAC_RESONANCE_HPP
#define DULAC_RESONANCE_HPP

#include <array>
#include <set>
#include <utility>

#include "dulac/rational.hpp"

namespace dulac {

// Eigenvalue data at u = 0: lambda(0) = (1, -alpha0, -beta0) with
// alpha0 >= beta0 > 0.  Case 2 iff alpha0/beta0 is a positive integer, in
// which case alpha0 = m*p/q, beta0 = p/q with p,q coprime.
struct EigenData {
    Rational alpha0;
    Rational beta0;
    bool case2 = false;
    long m = 0, p = 0, q = 0; // valid when case2

    long p1() const { return alpha0.get_num().get_si(); }
    long q1() const { return alpha0.get_den().get_si(); }
    long p2() const { return beta0.get_num().get_si(); }
    long q2() const { return beta0.get_den().get_si(); }
};

EigenData classify(const Rational& alpha0, const Rational& beta0);

enum class Component { X = 0, Y = 1, Z = 2, U = 3 };

// A monomial vector field x^{n1} y^{n2} z^{n3} d/d(component) satisfying the
// exact resonance equation for its component, with n1+n2+n3 >= 2.  The U entry
// stands for every centre direction at once.
struct ResonantMonomial {
    std::array<long, 3> n;
    Component comp;
    friend auto operator<=>(const ResonantMonomial&, const ResonantMonomial&) = default;
};

// All resonant monomials of total degree in [2, D], by direct scan of the
// simplex with exact rational tests.
std::set<ResonantMonomial> enumerate_resonances(const EigenData& eig, int D);

// Case-2 index families (y/z/u lattices).  Pairs (n1,n2); the induced
// monomials are x^{p n2} y^{1+n1} z^{q n2 - m n1} (N1, y-component),
// x^{p n2} y^{n1} z^{1+q n2 - m n1} (N2, z), x^{p n2} y^{n1} z^{q n2 - m n1}
// (N3, u).   Families are filtered to induced degree in [2, D].
struct IndexFamilies {
    std::set<std::pair<long, long>> N1, N2, N3;
};

IndexFamilies index_families(const EigenData& eig, int D);

} // namespace dulac

#endif
