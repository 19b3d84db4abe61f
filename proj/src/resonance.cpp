#include "dulac/resonance.hpp"

namespace dulac {

EigenData classify(const Rational& alpha0, const Rational& beta0) {
    if (!(beta0 > 0) || alpha0 < beta0)
        throw InvalidOrdering("classify: need alpha0 >= beta0 > 0, got alpha0=" +
                              to_string(alpha0) + ", beta0=" + to_string(beta0));
    EigenData eig;
    eig.alpha0 = alpha0;
    eig.beta0 = beta0;
    Rational ratio = alpha0 / beta0;
    if (is_integer(ratio)) {
        eig.case2 = true;
        eig.m = ratio.get_num().get_si();
        eig.p = beta0.get_num().get_si();
        eig.q = beta0.get_den().get_si();
    }
    return eig;
}

std::set<ResonantMonomial> enumerate_resonances(const EigenData& eig, int D) {
    if (D < 2) return {};
    std::set<ResonantMonomial> out;
    const Rational& a = eig.alpha0;
    const Rational& b = eig.beta0;
    for (long deg = 2; deg <= D; ++deg) {
        for (long n1 = 0; n1 <= deg; ++n1) {
            for (long n2 = 0; n2 + n1 <= deg; ++n2) {
                long n3 = deg - n1 - n2;
                Rational dot = Rational(n1) - a * Rational(n2) - b * Rational(n3);
                if (dot == 1) out.insert({{n1, n2, n3}, Component::X});
                if (dot == -a) out.insert({{n1, n2, n3}, Component::Y});
                if (dot == -b) out.insert({{n1, n2, n3}, Component::Z});
                if (dot == 0) out.insert({{n1, n2, n3}, Component::U});
            }
        }
    }
    return out;
}

IndexFamilies index_families(const EigenData& eig, int D) {
    if (!eig.case2) throw WrongCase("index_families: Case 1 eigendata has no N1/N2/N3");
    IndexFamilies fam;
    long m = eig.m, p = eig.p, q = eig.q;
    // induced degrees grow with n1 and n2; a generous scan box suffices
    for (long n1 = -1; n1 <= D; ++n1) {
        for (long n2 = 0; p * n2 <= D; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            long ez = q * n2 - m * n1;
            long deg1 = 1 + n1 + p * n2 + ez; // y-monomial
            long deg2 = n1 + p * n2 + 1 + ez; // z-monomial
            long deg3 = n1 + p * n2 + ez;     // u-monomial
            if (n1 >= -1 && ez >= 0 && deg1 >= 2 && deg1 <= D) fam.N1.insert({n1, n2});
            if (n1 >= 0 && ez >= -1 && deg2 >= 2 && deg2 <= D) fam.N2.insert({n1, n2});
            if (n1 >= 0 && ez >= 0 && deg3 >= 2 && deg3 <= D) fam.N3.insert({n1, n2});
        }
    }
    return fam;
}

} // namespace dulac
