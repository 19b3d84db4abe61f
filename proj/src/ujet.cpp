#include "dulac/ujet.hpp"

#include <numeric>
#include <sstream>

namespace dulac {

namespace {
int total(const UJet::Index& idx) { return std::accumulate(idx.begin(), idx.end(), 0); }
} // namespace

UJet::UJet(int k, int order) : k_(k), order_(order) {
    if (k < 1) throw DimensionMismatch("UJet: centre dimension must be >= 1");
    if (order < 0) throw Error("UJet: negative truncation order");
}

UJet UJet::constant(int k, int order, const Rational& c) {
    UJet j(k, order);
    if (c != 0) j.terms_[Index(static_cast<std::size_t>(k), 0)] = c;
    return j;
}

UJet UJet::variable(int k, int order, int i) {
    UJet j(k, order);
    if (i < 0 || i >= k) throw DimensionMismatch("UJet::variable: index out of range");
    if (order >= 1) {
        Index idx(static_cast<std::size_t>(k), 0);
        idx[static_cast<std::size_t>(i)] = 1;
        j.terms_[idx] = Rational(1);
    }
    return j;
}

Rational UJet::value_at_zero() const {
    auto it = terms_.find(Index(static_cast<std::size_t>(k_), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational UJet::coeff(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : it->second;
}

void UJet::set_coeff(const Index& idx, const Rational& c) {
    if (static_cast<int>(idx.size()) != k_) throw DimensionMismatch("UJet::set_coeff: index length");
    for (int e : idx)
        if (e < 0) throw Error("UJet::set_coeff: negative exponent");
    if (total(idx) > order_) throw Error("UJet::set_coeff: degree exceeds truncation order");
    if (c == 0)
        terms_.erase(idx);
    else
        terms_[idx] = c;
}

bool UJet::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

void UJet::check_compatible(const UJet& o) const {
    if (k_ != o.k_ || order_ != o.order_)
        throw DimensionMismatch("UJet: mixing jets of different dimension or order");
}

UJet UJet::operator-() const {
    UJet out(k_, order_);
    for (auto& [k, c] : terms_) out.terms_[k] = -c;
    return out;
}

UJet& UJet::operator+=(const UJet& o) {
    check_compatible(o);
    for (auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

UJet& UJet::operator-=(const UJet& o) { return *this += -o; }

UJet operator*(const UJet& x, const UJet& y) {
    x.check_compatible(y);
    UJet out(x.k_, x.order_);
    for (auto& [kx, cx] : x.terms_) {
        int dx = total(kx);
        for (auto& [ky, cy] : y.terms_) {
            if (dx + total(ky) > x.order_) continue;
            UJet::Index k(kx.size());
            for (std::size_t i = 0; i < k.size(); ++i) k[i] = kx[i] + ky[i];
            auto it = out.terms_.find(k);
            if (it == out.terms_.end()) {
                out.terms_[k] = cx * cy;
            } else {
                it->second += cx * cy;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

UJet& UJet::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

UJet UJet::derivative(int i) const {
    if (i < 0 || i >= k_) throw DimensionMismatch("UJet::derivative: index out of range");
    UJet out(k_, order_);
    for (auto& [k, c] : terms_) {
        int e = k[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        Index idx = k;
        idx[static_cast<std::size_t>(i)] = e - 1;
        out.terms_[idx] = c * Rational(e);
    }
    return out;
}

double UJet::eval(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != k_) throw DimensionMismatch("UJet::eval: point dimension");
    double s = 0;
    for (auto& [k, c] : terms_) {
        double m = to_double(c);
        for (std::size_t i = 0; i < k.size(); ++i)
            for (int e = 0; e < k[i]; ++e) m *= u[i];
        s += m;
    }
    return s;
}

Rational UJet::eval_exact(const std::vector<Rational>& u) const {
    if (static_cast<int>(u.size()) != k_) throw DimensionMismatch("UJet::eval_exact: point dimension");
    Rational s(0);
    for (auto& [k, c] : terms_) {
        Rational m = c;
        for (std::size_t i = 0; i < k.size(); ++i) m *= pow_rational(u[i], k[i]);
        s += m;
    }
    return s;
}

std::string UJet::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        Rational v = c;
        bool neg = v < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational av = neg ? Rational(-v) : v;
        bool havevars = total(k) > 0;
        if (av != 1 || !havevars) os << to_string(av);
        bool star = av != 1 || !havevars;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (star) os << "*";
            star = true;
            if (i < names.size())
                os << names[i];
            else
                os << "u" << (i + 1);
            if (k[i] > 1) os << "^" << k[i];
        }
    }
    return os.str();
}

UJet invert_unit(const UJet& f) {
    Rational c0 = f.value_at_zero();
    if (c0 == 0) throw NotAUnit("invert_unit: constant term is zero");
    int k = f.dim(), J = f.order();
    // f = c0 (1 - r), val(r) >= 1:  f^{-1} = (1/c0) sum r^s, s <= J
    UJet r = UJet::constant(k, J, Rational(1)) - f * (Rational(1) / c0);
    UJet acc = UJet::constant(k, J, Rational(1));
    UJet pw = UJet::constant(k, J, Rational(1));
    for (int s = 1; s <= J; ++s) {
        pw = pw * r;
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc * (Rational(1) / c0);
}

namespace {

// split g = u1^m * high + low with deg_{u1}(low) < m; returns (high, low)
std::pair<UJet, UJet> split_u1(const UJet& g, int m) {
    UJet high(g.dim(), g.order()), low(g.dim(), g.order());
    for (auto& [k, c] : g.terms()) {
        if (k[0] >= m) {
            UJet::Index idx = k;
            idx[0] -= m;
            high.set_coeff(idx, c);
        } else {
            low.set_coeff(k, c);
        }
    }
    return {high, low};
}

} // namespace

WeierstrassResult weierstrass_divide(const UJet& F, const UJet& f) {
    if (F.dim() != f.dim() || F.order() != f.order())
        throw DimensionMismatch("weierstrass_divide: mixed jets");
    if (f.is_zero()) throw ZeroJet("weierstrass_divide: divisor vanishes at truncation order");

    // m = least pure-u1 power with nonzero coefficient in f(u1,0,..,0)
    int m = -1;
    for (auto& [k, c] : f.terms()) {
        bool pure = true;
        for (std::size_t i = 1; i < k.size(); ++i) pure = pure && k[i] == 0;
        if (pure && (m < 0 || k[0] < m)) m = k[0];
    }
    if (m < 0)
        throw NeedsLinearChange("weierstrass_divide: f(u1,0,..,0) vanishes identically; "
                                "apply a linear change of u first");

    // f = u1^m * W + R with W a unit and R supported away from the pure u1-axis
    auto [W, R] = split_u1(f, m);
    UJet Winv = invert_unit(W);

    // fixed point q = Q(F - q*R) * W^{-1}; each pass gains one order in
    // (u2..uk)-degree, so J+1 passes suffice at truncation
    int J = F.order();
    UJet q(F.dim(), J);
    for (int pass = 0; pass <= J + 1; ++pass) {
        UJet next = split_u1(F - q * R, m).first * Winv;
        if (next == q) break;
        q = std::move(next);
    }
    UJet r = split_u1(F - q * R, m).second;
    return {q, r, m};
}

} // namespace dulac
