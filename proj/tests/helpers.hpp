#ifndef DULAC_TEST_HELPERS_HPP
#define DULAC_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "dulac/exppoly.hpp"

namespace dulac::testing {

inline Rational random_rational(std::mt19937& rng, int maxnum = 6, int maxden = 4) {
    std::uniform_int_distribution<int> num(-maxnum, maxnum);
    std::uniform_int_distribution<int> den(1, maxden);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline Rational random_nonzero_rational(std::mt19937& rng, int maxnum = 6, int maxden = 4) {
    Rational r;
    do {
        r = random_rational(rng, maxnum, maxden);
    } while (r == 0);
    return r;
}

inline BiPoly random_bipoly(std::mt19937& rng, int maxdeg = 2, int nterms = 3) {
    BiPoly p;
    std::uniform_int_distribution<int> e(0, maxdeg);
    for (int i = 0; i < nterms; ++i) {
        int ea = e(rng), eb = e(rng);
        if (ea + eb > maxdeg) continue;
        p.add_term(ea, eb, random_rational(rng));
    }
    return p;
}

// Random element with polynomial coefficients (poles enter through the ring's
// own operations, e.g. integrate).
inline ExpPoly random_exppoly(std::mt19937& rng, int maxj = 4, int maxn = 3, int nterms = 4,
                              bool nonneg_exps = false) {
    ExpPoly p;
    std::uniform_int_distribution<int> j(0, maxj);
    std::uniform_int_distribution<int> n(nonneg_exps ? 0 : -maxn, maxn);
    for (int i = 0; i < nterms; ++i) {
        BiPoly c = random_bipoly(rng);
        if (c.is_zero()) c = BiPoly(Rational(1));
        p.add_term({j(rng), n(rng), n(rng)}, RatFunc(c));
    }
    return p;
}

// Evaluation point away from every coefficient pole of p; the pole distance
// is degree-normalized so a high power of a linear form is judged per factor.
inline std::array<double, 3> safe_point(std::mt19937& rng, const ExpPoly& p) {
    std::uniform_real_distribution<double> mag(0.15, 1.2), tv(0.2, 2.0);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int tries = 0; tries < 500; ++tries) {
        double a = mag(rng) * (sign(rng) ? 1 : -1);
        double b = mag(rng) * (sign(rng) ? 1 : -1);
        bool ok = true;
        for (auto& [k, c] : p.terms()) {
            const BiPoly& q = c.den();
            if (q.is_constant()) continue;
            double rel = std::abs(q.eval(a, b)) / q.magnitude_bound(a, b);
            if (rel < std::pow(0.15, std::max(1, q.total_degree()))) ok = false;
        }
        if (ok) return {a, b, tv(rng)};
    }
    return {0.9, (std::sqrt(5.0) - 1) / 2, 1.3}; // irrational ratio dodges linear forms
}

inline bool close_rel(double x, double y, double rel) {
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

} // namespace dulac::testing

#endif
