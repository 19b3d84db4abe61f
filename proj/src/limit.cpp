#include <limits>
#include <map>

#include "dulac/exppoly.hpp"

namespace dulac {

namespace {

using NumMap = std::map<std::array<int, 2>, TPoly, GrlexLess>; // (ea,eb) -> t-poly

void add_num(NumMap& N, int ea, int eb, const TPoly& t) {
    if (t.is_zero()) return;
    auto key = std::array<int, 2>{ea, eb};
    auto it = N.find(key);
    if (it == N.end()) {
        N[key] = t;
    } else {
        it->second += t;
        if (it->second.is_zero()) N.erase(it);
    }
}

int num_valuation(const NumMap& N) {
    int v = std::numeric_limits<int>::max();
    for (auto& [k, t] : N) v = std::min(v, k[0] + k[1]);
    return v;
}

// Exact division of a homogeneous layer (degree n, TPoly coefficients) by a
// homogeneous rational layer (degree v).  Dehomogenize at b=1: monomial
// a^i b^{n-i} <-> s^i.  Divisible iff the univariate division is exact and
// the quotient degree fits below n-v (b-exponents of the quotient stay >= 0).
std::optional<std::map<int, TPoly>> hom_divide(const std::map<int, TPoly>& num, int n,
                                               const BiPoly& den_layer, int v) {
    std::vector<Rational> ud(static_cast<std::size_t>(v) + 1, Rational(0));
    int du = -1;
    for (auto& [k, c] : den_layer.terms()) {
        ud[static_cast<std::size_t>(k[0])] = c;
        du = std::max(du, k[0]);
    }
    int dn = -1;
    for (auto& [i, t] : num)
        if (!t.is_zero()) dn = std::max(dn, i);
    if (dn < 0) return std::map<int, TPoly>{};
    int dq = dn - du;
    if (dq < 0 || dq > n - v) return std::nullopt;

    std::vector<TPoly> rem(static_cast<std::size_t>(dn) + 1);
    for (auto& [i, t] : num) rem[static_cast<std::size_t>(i)] = t;
    Rational lead_inv = Rational(1) / ud[static_cast<std::size_t>(du)];
    std::vector<TPoly> quot(static_cast<std::size_t>(dq) + 1);
    for (int d = dn; d >= du; --d) {
        TPoly q = rem[static_cast<std::size_t>(d)];
        if (q.is_zero()) continue;
        q *= lead_inv;
        quot[static_cast<std::size_t>(d - du)] = q;
        for (int i = 0; i <= du; ++i) {
            TPoly sub = q;
            sub *= Rational(-ud[static_cast<std::size_t>(i)]);
            rem[static_cast<std::size_t>(d - du + i)] += sub;
        }
    }
    for (auto& t : rem)
        if (!t.is_zero()) return std::nullopt;
    std::map<int, TPoly> out;
    for (int i = 0; i <= dq; ++i)
        if (!quot[static_cast<std::size_t>(i)].is_zero()) out[i] = quot[static_cast<std::size_t>(i)];
    return out;
}

} // namespace

std::optional<TPoly> limit_params_zero(const ExpPoly& p, int order) {
    if (p.is_zero()) return TPoly();

    BiPoly D{Rational(1)};
    for (auto& [k, c] : p.terms()) D = bipoly_lcm(D, c.den());
    int W = order >= 0 ? order : D.total_degree() + p.max_tdegree() + 2;

    // numerator of p over D, exponentials expanded through (a,b)-degree W
    NumMap N;
    for (auto& [k, c] : p.terms()) {
        BiPoly mult = *D.divided_by(c.den()) * c.num();
        BiPoly lf = BiPoly::linear_form(k.n1, k.n2);
        BiPoly pw{Rational(1)};
        Rational fact(1);
        for (int s = 0; s <= W; ++s) {
            if (s > 0) {
                pw = pw * lf;
                fact *= s;
                if (pw.is_zero()) break;
            }
            BiPoly contrib = (mult * pw).truncate_degree(W);
            Rational scale = Rational(1) / fact;
            for (auto& [mk, mc] : contrib.terms())
                add_num(N, mk[0], mk[1], TPoly::monomial(k.j + s, mc * scale));
        }
    }

    // graded division of N by D; Laurent part (degrees < 0) must vanish
    int v = D.valuation();
    TPoly h0;
    while (!N.empty()) {
        int nv = num_valuation(N);
        if (nv > W) break;
        if (nv < v) return std::nullopt;
        std::map<int, TPoly> layer;
        for (auto& [k, t] : N)
            if (k[0] + k[1] == nv) layer[k[0]] = t;
        auto H = hom_divide(layer, nv, D.homogeneous_part(v), v);
        if (!H) return std::nullopt;
        if (nv == v) {
            auto it = H->find(0);
            h0 = it == H->end() ? TPoly() : it->second;
        }
        // N -= D * H, truncated at total degree W
        for (auto& [dk, dc] : D.terms()) {
            for (auto& [hi, ht] : *H) {
                int ea = dk[0] + hi, eb = dk[1] + (nv - v - hi);
                if (ea + eb > W) continue;
                TPoly sub = ht;
                sub *= Rational(-dc);
                add_num(N, ea, eb, sub);
            }
        }
    }
    return h0;
}

} // namespace dulac
