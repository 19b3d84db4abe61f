#include "dulac/bipoly.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

namespace dulac {

BiPoly::BiPoly(const Rational& c) {
    if (c != 0) terms_[{0, 0}] = c;
}

BiPoly BiPoly::var_a() { return monomial(1, 0, Rational(1)); }
BiPoly BiPoly::var_b() { return monomial(0, 1, Rational(1)); }

BiPoly BiPoly::monomial(int ea, int eb, const Rational& c) {
    BiPoly p;
    if (c != 0) p.terms_[{ea, eb}] = c;
    return p;
}

BiPoly BiPoly::linear_form(long n1, long n2) {
    BiPoly p;
    if (n1 != 0) p.terms_[{1, 0}] = Rational(n1);
    if (n2 != 0) p.terms_[{0, 1}] = Rational(n2);
    return p;
}

bool BiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::array<int, 2>{0, 0});
}

Rational BiPoly::constant_value() const {
    auto it = terms_.find({0, 0});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool BiPoly::is_one() const { return is_constant() && constant_value() == 1; }

int BiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    auto& k = terms_.rbegin()->first;
    return k[0] + k[1];
}

int BiPoly::valuation() const {
    if (terms_.empty()) return std::numeric_limits<int>::max();
    auto& k = terms_.begin()->first;
    return k[0] + k[1];
}

int BiPoly::degree_a() const {
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k[0]);
    return d;
}

const Rational& BiPoly::leading_coeff() const {
    static const Rational zero(0);
    if (terms_.empty()) return zero;
    return terms_.rbegin()->second;
}

BiPoly BiPoly::homogeneous_part(int d) const {
    BiPoly out;
    for (auto& [k, c] : terms_)
        if (k[0] + k[1] == d) out.terms_[k] = c;
    return out;
}

BiPoly BiPoly::truncate_degree(int maxdeg) const {
    BiPoly out;
    for (auto& [k, c] : terms_)
        if (k[0] + k[1] <= maxdeg) out.terms_[k] = c;
    return out;
}

void BiPoly::add_term(int ea, int eb, const Rational& c) {
    if (c == 0) return;
    auto key = std::array<int, 2>{ea, eb};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_[key] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BiPoly BiPoly::operator-() const {
    BiPoly out;
    for (auto& [k, c] : terms_) out.terms_[k] = -c;
    return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], -c);
    return *this;
}

BiPoly operator*(const BiPoly& x, const BiPoly& y) {
    BiPoly out;
    for (auto& [kx, cx] : x.terms_)
        for (auto& [ky, cy] : y.terms_) out.add_term(kx[0] + ky[0], kx[1] + ky[1], cx * cy);
    return out;
}

BiPoly& BiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

double BiPoly::eval(double a, double b) const {
    double s = 0;
    for (auto& [k, c] : terms_) s += to_double(c) * std::pow(a, k[0]) * std::pow(b, k[1]);
    return s;
}

Rational BiPoly::eval_exact(const Rational& a, const Rational& b) const {
    Rational s(0);
    for (auto& [k, c] : terms_) s += c * pow_rational(a, k[0]) * pow_rational(b, k[1]);
    return s;
}

double BiPoly::magnitude_bound(double a, double b) const {
    double ma = std::max(1.0, std::abs(a)), mb = std::max(1.0, std::abs(b));
    double s = 0;
    for (auto& [k, c] : terms_) s += std::abs(to_double(c)) * std::pow(ma, k[0]) * std::pow(mb, k[1]);
    return s;
}

std::optional<BiPoly> BiPoly::divided_by(const BiPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    BiPoly rem = *this, quot;
    auto dlead = *d.terms_.rbegin();
    while (!rem.is_zero()) {
        auto rlead = *rem.terms_.rbegin();
        int ea = rlead.first[0] - dlead.first[0];
        int eb = rlead.first[1] - dlead.first[1];
        if (ea < 0 || eb < 0) return std::nullopt;
        Rational c = rlead.second / dlead.second;
        BiPoly t = monomial(ea, eb, c);
        quot += t;
        rem -= t * d;
    }
    return quot;
}

// ---------------------------------------------------------------------------
// GCD machinery: view a BiPoly as a polynomial in a with coefficients in Q[b].

namespace {

using UPoly = std::vector<Rational>; // univariate in b, c[i] * b^i

void utrim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bool uis_zero(const UPoly& p) { return p.empty(); }

UPoly umul(const UPoly& x, const UPoly& y) {
    if (x.empty() || y.empty()) return {};
    UPoly out(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    utrim(out);
    return out;
}

UPoly usub(UPoly x, const UPoly& y) {
    if (x.size() < y.size()) x.resize(y.size(), Rational(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    utrim(x);
    return x;
}

// remainder of x / y, y monic-scaled inside
UPoly urem(UPoly x, const UPoly& y) {
    utrim(x);
    while (x.size() >= y.size() && !x.empty()) {
        Rational c = x.back() / y.back();
        std::size_t shift = x.size() - y.size();
        for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] -= c * y[i];
        utrim(x);
    }
    return x;
}

// exact quotient; asserts divisibility (internal use after gcd)
UPoly udivexact(UPoly x, const UPoly& y) {
    utrim(x);
    UPoly q;
    if (x.empty()) return q;
    q.assign(x.size() - y.size() + 1, Rational(0));
    while (x.size() >= y.size() && !x.empty()) {
        Rational c = x.back() / y.back();
        std::size_t shift = x.size() - y.size();
        q[shift] = c;
        for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] -= c * y[i];
        utrim(x);
    }
    if (!x.empty()) throw Error("udivexact: not divisible");
    return q;
}

// scale to a primitive integer coefficient vector (controls Euclid growth)
void unormalize(UPoly& p) {
    utrim(p);
    if (p.empty()) return;
    mpz_class g(0), l(1);
    for (auto& c : p) {
        g = gcd(g, c.get_num());
        l = lcm(l, c.get_den());
    }
    Rational scale(l, g);
    scale.canonicalize();
    if (scale == 1) return;
    for (auto& c : p) c *= scale;
}

UPoly ugcd(UPoly x, UPoly y) {
    utrim(x);
    utrim(y);
    while (!y.empty()) {
        UPoly r = urem(x, y);
        unormalize(r);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        Rational lead = x.back();
        for (auto& c : x) c /= lead; // monic
    }
    return x;
}

// BiPoly <-> vector of UPoly coefficients of a^i
std::vector<UPoly> to_acoeffs(const BiPoly& p) {
    std::vector<UPoly> out(static_cast<std::size_t>(std::max(0, p.degree_a() + 1)));
    for (auto& [k, c] : p.terms()) {
        auto& u = out[static_cast<std::size_t>(k[0])];
        if (u.size() <= static_cast<std::size_t>(k[1])) u.resize(static_cast<std::size_t>(k[1]) + 1, Rational(0));
        u[static_cast<std::size_t>(k[1])] = c;
    }
    for (auto& u : out) utrim(u);
    return out;
}

BiPoly from_acoeffs(const std::vector<UPoly>& v) {
    BiPoly p;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) p.add_term(static_cast<int>(i), static_cast<int>(j), v[i][j]);
    return p;
}

int adeg(const std::vector<UPoly>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (!uis_zero(v[static_cast<std::size_t>(i)])) return i;
    return -1;
}

UPoly content_b(const std::vector<UPoly>& v) {
    UPoly g;
    for (auto& u : v)
        if (!uis_zero(u)) g = ugcd(g, u);
    return g;
}

std::vector<UPoly> divide_content(const std::vector<UPoly>& v, const UPoly& cont) {
    std::vector<UPoly> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!uis_zero(v[i])) out[i] = udivexact(v[i], cont);
    return out;
}

// strip b-content and rational content; scaling by Q[b]-units is harmless for
// gcd purposes and keeps PRS coefficients small
void make_primitive(std::vector<UPoly>& P) {
    UPoly cont = content_b(P);
    if (cont.empty()) return;
    if (cont.size() > 1 || cont[0] != 1) P = divide_content(P, cont);
    mpz_class g(0), l(1);
    for (auto& u : P)
        for (auto& c : u) {
            g = gcd(g, c.get_num());
            l = lcm(l, c.get_den());
        }
    if (g == 0) return;
    Rational scale(l, g);
    scale.canonicalize();
    if (scale == 1) return;
    for (auto& u : P)
        for (auto& c : u) c *= scale;
}

// pseudo-remainder of P by Q in Q[b][a], kept primitive at each step
std::vector<UPoly> aprem(std::vector<UPoly> P, const std::vector<UPoly>& Q) {
    int dq = adeg(Q);
    UPoly lq = Q[static_cast<std::size_t>(dq)];
    int dp = adeg(P);
    while (dp >= dq && dp >= 0) {
        // P <- lq*P - lp*a^{dp-dq}*Q
        UPoly lp = P[static_cast<std::size_t>(dp)];
        std::vector<UPoly> next(std::max(P.size(), Q.size() + static_cast<std::size_t>(dp - dq)));
        for (std::size_t i = 0; i < P.size(); ++i) next[i] = umul(P[i], lq);
        for (std::size_t i = 0; i < Q.size(); ++i) {
            std::size_t idx = i + static_cast<std::size_t>(dp - dq);
            next[idx] = usub(next[idx], umul(Q[i], lp));
        }
        P = std::move(next);
        make_primitive(P);
        int nd = adeg(P);
        if (nd >= dp) throw Error("aprem: degree did not drop");
        dp = nd;
    }
    return P;
}

} // namespace

BiPoly bipoly_gcd(const BiPoly& p, const BiPoly& q) {
    auto normalize = [](BiPoly g) {
        if (!g.is_zero()) {
            Rational inv = Rational(1) / g.leading_coeff();
            g *= inv;
        }
        return g;
    };
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);

    auto P = to_acoeffs(p);
    auto Q = to_acoeffs(q);
    UPoly cp = content_b(P), cq = content_b(Q);
    UPoly gcont = ugcd(cp, cq);
    P = divide_content(P, cp);
    Q = divide_content(Q, cq);
    if (adeg(P) < adeg(Q)) std::swap(P, Q);
    while (true) {
        if (adeg(Q) < 0) break;
        std::vector<UPoly> R = aprem(P, Q);
        if (adeg(R) < 0) {
            P = std::move(Q);
            break;
        }
        UPoly cr = content_b(R);
        P = std::move(Q);
        Q = divide_content(R, cr);
    }
    UPoly cP = content_b(P);
    P = divide_content(P, cP); // primitive part
    std::vector<UPoly> G(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) G[i] = umul(P[i], gcont);
    return normalize(from_acoeffs(G));
}

BiPoly bipoly_lcm(const BiPoly& p, const BiPoly& q) {
    if (p.is_zero() || q.is_zero()) return BiPoly();
    BiPoly g = bipoly_gcd(p, q);
    auto quot = p.divided_by(g);
    BiPoly l = *quot * q;
    Rational inv = Rational(1) / l.leading_coeff();
    l *= inv;
    return l;
}

// ---------------------------------------------------------------------------
// printing / parsing

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest grlex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& k = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational ac = neg ? Rational(-c) : c;
        bool havevars = k[0] > 0 || k[1] > 0;
        if (ac != 1 || !havevars) {
            os << to_string(ac);
            if (havevars) os << "*";
        }
        if (k[0] > 0) {
            os << "a";
            if (k[0] > 1) os << "^" << k[0];
            if (k[1] > 0) os << "*";
        }
        if (k[1] > 0) {
            os << "b";
            if (k[1] > 1) os << "^" << k[1];
        }
    }
    return os.str();
}

namespace {

// recursive-descent parser for the dialect emitted by str():
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*       (no implicit multiplication)
//   factor := base ('^' uint)?
//   base   := rational | 'a' | 'b' | '(' expr ')' | '-' factor
struct PolyParser {
    const std::string& s;
    std::size_t i = 0;
    explicit PolyParser(const std::string& src) : s(src) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(i) + " in '" + s + "'");
    }

    BiPoly expr() {
        BiPoly acc = term();
        while (true) {
            skip();
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    BiPoly term() {
        BiPoly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }
    BiPoly factor() {
        BiPoly base_ = base();
        if (eat('^')) {
            skip();
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("expected exponent");
            int e = std::atoi(s.substr(i, j - i).c_str());
            i = j;
            BiPoly out{Rational(1)};
            for (int t = 0; t < e; ++t) out *= base_;
            return out;
        }
        return base_;
    }
    BiPoly base() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (c == '(') {
            ++i;
            BiPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++i;
            return -factor();
        }
        if (c == 'a') {
            ++i;
            return BiPoly::var_a();
        }
        if (c == 'b') {
            ++i;
            return BiPoly::var_b();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            // allow p/q only when followed by digits (fraction literal)
            if (j < s.size() && s[j] == '/' && j + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                Rational r = parse_rational(s.substr(i, k - i));
                i = k;
                return BiPoly(r);
            }
            Rational r = parse_rational(s.substr(i, j - i));
            i = j;
            return BiPoly(r);
        }
        fail("unexpected character");
    }
};

} // namespace

BiPoly parse_bipoly(const std::string& s) {
    PolyParser p(s);
    BiPoly out = p.expr();
    p.skip();
    if (p.i != s.size()) p.fail("trailing input");
    return out;
}

} // namespace dulac
