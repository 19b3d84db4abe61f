#include "dulac/exppoly.hpp"

#include <cmath>
#include <sstream>

namespace dulac {

// ---------------------------------------------------------------------------
// TPoly

TPoly TPoly::monomial(int j, const Rational& c) {
    TPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<std::size_t>(j) + 1, Rational(0));
        p.c_.back() = c;
    }
    return p;
}

void TPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

TPoly& TPoly::operator+=(const TPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

TPoly operator*(const TPoly& x, const TPoly& y) {
    TPoly out;
    if (x.is_zero() || y.is_zero()) return out;
    out.c_.assign(x.c_.size() + y.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
        for (std::size_t j = 0; j < y.c_.size(); ++j) out.c_[i + j] += x.c_[i] * y.c_[j];
    out.trim();
    return out;
}

TPoly& TPoly::operator*=(const Rational& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= c;
    return *this;
}

double TPoly::eval(double t) const {
    double s = 0;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * t + to_double(c_[i]);
    return s;
}

std::string TPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = degree(); j >= 0; --j) {
        Rational c = coeff(j);
        if (c == 0) continue;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational ac = neg ? Rational(-c) : c;
        if (ac != 1 || j == 0) os << to_string(ac);
        if (j > 0) {
            if (ac != 1) os << "*";
            os << "t";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// ExpPoly

ExpPoly ExpPoly::t_power(int j) {
    ExpPoly p;
    p.add_term({j, 0, 0}, RatFunc(Rational(1)));
    return p;
}

ExpPoly ExpPoly::exponential(int n1, int n2) {
    ExpPoly p;
    p.add_term({0, n1, n2}, RatFunc(Rational(1)));
    return p;
}

ExpPoly ExpPoly::omega_a() { return omega_form(1, 0); }
ExpPoly ExpPoly::omega_b() { return omega_form(0, 1); }

ExpPoly ExpPoly::omega_form(long n1, long n2) {
    if (n1 == 0 && n2 == 0) throw Error("omega_form: zero linear form; use t_power(1)");
    RatFunc inv = RatFunc(BiPoly(Rational(1)), BiPoly::linear_form(n1, n2));
    ExpPoly p;
    p.add_term({0, static_cast<int>(n1), static_cast<int>(n2)}, inv);
    p.add_term({0, 0, 0}, -inv);
    return p;
}

void ExpPoly::add_term(const ExpKey& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_[k] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly out;
    for (auto& [k, c] : terms_) out.terms_[k] = -c;
    return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ExpPoly operator*(const ExpPoly& x, const ExpPoly& y) {
    ExpPoly out;
    for (auto& [kx, cx] : x.terms_)
        for (auto& [ky, cy] : y.terms_)
            out.add_term({kx.j + ky.j, kx.n1 + ky.n1, kx.n2 + ky.n2}, cx * cy);
    return out;
}

ExpPoly ExpPoly::scaled(const RatFunc& c) const {
    ExpPoly out;
    if (c.is_zero()) return out;
    for (auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

ExpPoly ExpPoly::shifted_exp(int n1, int n2) const {
    ExpPoly out;
    for (auto& [k, v] : terms_) out.terms_[{k.j, k.n1 + n1, k.n2 + n2}] = v;
    return out;
}

int ExpPoly::max_tdegree() const {
    int d = 0;
    for (auto& [k, v] : terms_) d = std::max(d, k.j);
    return d;
}

// ---------------------------------------------------------------------------
// calculus

ExpPoly differentiate(const ExpPoly& p) {
    // D_t(t^j e^{l t}) = (j t^{j-1} + l t^j) e^{l t}
    ExpPoly out;
    for (auto& [k, c] : p.terms()) {
        if (k.j > 0) out.add_term({k.j - 1, k.n1, k.n2}, c * RatFunc(Rational(k.j)));
        if (k.n1 != 0 || k.n2 != 0) {
            RatFunc lf{BiPoly::linear_form(k.n1, k.n2)};
            out.add_term(k, c * lf);
        }
    }
    return out;
}

namespace {

// K_j = int_0^t tau^j e^{l tau} dtau for l = n1*a+n2*b != 0 (as a form):
// K_j = t^j e^{lt}/l - (j/l) K_{j-1},  K_0 = (e^{lt}-1)/l.
ExpPoly kj_integral(int j, int n1, int n2) {
    RatFunc inv = RatFunc(BiPoly(Rational(1)), BiPoly::linear_form(n1, n2));
    ExpPoly acc; // K_0
    acc.add_term({0, n1, n2}, inv);
    acc.add_term({0, 0, 0}, -inv);
    for (int i = 1; i <= j; ++i) {
        ExpPoly next;
        next.add_term({i, n1, n2}, inv);
        next += acc.scaled(-(inv * RatFunc(Rational(i))));
        acc = std::move(next);
    }
    return acc;
}

} // namespace

ExpPoly integrate(const ExpPoly& p) {
    ExpPoly out;
    for (auto& [k, c] : p.terms()) {
        if (k.n1 == 0 && k.n2 == 0) {
            out.add_term({k.j + 1, 0, 0}, c * RatFunc(Rational(1, k.j + 1)));
        } else {
            out += kj_integral(k.j, k.n1, k.n2).scaled(c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Omega basis

OmegaPoly OmegaPoly::indeterminate(int which) {
    OmegaPoly p;
    Key k{0, 0, 0, 0, 0};
    k[static_cast<std::size_t>(which)] = 1;
    p.add_term(k, RatFunc(Rational(1)));
    return p;
}

void OmegaPoly::add_term(const Key& k, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_[k] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OmegaPoly& OmegaPoly::operator+=(const OmegaPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

OmegaPoly operator*(const OmegaPoly& x, const OmegaPoly& y) {
    OmegaPoly out;
    for (auto& [kx, cx] : x.terms_)
        for (auto& [ky, cy] : y.terms_) {
            OmegaPoly::Key k;
            for (std::size_t i = 0; i < 5; ++i) k[i] = kx[i] + ky[i];
            out.add_term(k, cx * cy);
        }
    return out;
}

OmegaPoly OmegaPoly::scaled(const RatFunc& c) const {
    OmegaPoly out;
    if (c.is_zero()) return out;
    for (auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

OmegaPoly omega_basis(const ExpPoly& p) {
    // e^{at} = 1 + a*Opa, e^{-at} = 1 - a*Oma; same pattern in b.
    OmegaPoly out;
    for (auto& [k, c] : p.terms()) {
        OmegaPoly term(c);
        if (k.j > 0) {
            OmegaPoly::Key tk{0, 0, 0, 0, k.j};
            OmegaPoly tp;
            tp.add_term(tk, RatFunc(Rational(1)));
            term = term * tp;
        }
        auto mul_binom = [&term](int count, int which, const BiPoly& v, int sign) {
            OmegaPoly base(RatFunc(Rational(1)));
            OmegaPoly::Key k1{0, 0, 0, 0, 0};
            k1[static_cast<std::size_t>(which)] = 1;
            base.add_term(k1, RatFunc(v * Rational(sign)));
            for (int i = 0; i < count; ++i) term = term * base;
        };
        if (k.n1 > 0) mul_binom(k.n1, 0, BiPoly::var_a(), +1);
        if (k.n1 < 0) mul_binom(-k.n1, 1, BiPoly::var_a(), -1);
        if (k.n2 > 0) mul_binom(k.n2, 2, BiPoly::var_b(), +1);
        if (k.n2 < 0) mul_binom(-k.n2, 3, BiPoly::var_b(), -1);
        out += term;
    }
    return out;
}

ExpPoly omega_expand(const OmegaPoly& w) {
    ExpPoly opa = ExpPoly::omega_form(1, 0);
    ExpPoly oma = ExpPoly::omega_form(-1, 0);
    ExpPoly opb = ExpPoly::omega_form(0, 1);
    ExpPoly omb = ExpPoly::omega_form(0, -1);
    ExpPoly t = ExpPoly::t_power(1);
    const ExpPoly* basis[5] = {&opa, &oma, &opb, &omb, &t};
    ExpPoly out;
    for (auto& [k, c] : w.terms()) {
        ExpPoly term{c};
        for (std::size_t i = 0; i < 5; ++i)
            for (int e = 0; e < k[i]; ++e) term *= *basis[i];
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// numerics

double omega_kernel(double kappa, double t) {
    double x = kappa * t;
    if (std::abs(x) < 1e-4) {
        // t * (1 + x/2! + x^2/3! + x^3/4! + x^4/5! + x^5/6!)
        double s = 1 + x / 2 * (1 + x / 3 * (1 + x / 4 * (1 + x / 5 * (1 + x / 6))));
        return t * s;
    }
    return (std::exp(x) - 1.0) / kappa;
}

double omega_x(double kappa, double x0) { return omega_kernel(kappa, -std::log(x0)); }

namespace {

constexpr double kPoleRel = 1e-6;   // relative denominator threshold for rerouting
constexpr double kNearZero = 1e-6;  // |a|,|b| below this may collapse to the limit

// smallest relative denominator magnitude over the coefficients
template <typename TermsT>
double min_den_rel(const TermsT& terms, double a, double b) {
    double worst = 1.0;
    for (auto& [k, c] : terms) {
        const BiPoly& q = c.den();
        if (q.is_constant()) continue;
        double scale = q.magnitude_bound(a, b);
        double val = std::abs(q.eval(a, b));
        worst = std::min(worst, val / scale);
    }
    return worst;
}

double eval_exp_direct(const ExpPoly& p, double a, double b, double t) {
    double s = 0;
    for (auto& [k, c] : p.terms())
        s += c.eval(a, b) * std::pow(t, k.j) * std::exp((k.n1 * a + k.n2 * b) * t);
    return s;
}

double eval_omega_direct(const OmegaPoly& w, double a, double b, double t) {
    double vals[5] = {omega_kernel(a, t), omega_kernel(-a, t), omega_kernel(b, t),
                      omega_kernel(-b, t), t};
    double s = 0;
    for (auto& [k, c] : w.terms()) {
        double m = c.eval(a, b);
        for (std::size_t i = 0; i < 5; ++i)
            for (int e = 0; e < k[i]; ++e) m *= vals[i];
        s += m;
    }
    return s;
}

} // namespace

double eval_exp(const ExpPoly& p, double a, double b, double t) {
    if (min_den_rel(p.terms(), a, b) >= kPoleRel) return eval_exp_direct(p, a, b, t);
    OmegaPoly w = omega_basis(p);
    if (min_den_rel(w.terms(), a, b) >= kPoleRel) return eval_omega_direct(w, a, b, t);
    if (std::abs(a) <= kNearZero && std::abs(b) <= kNearZero) {
        auto lim = limit_params_zero(p);
        if (lim) return lim->eval(t);
        throw PoleAtPoint("eval_exp: no finite limit at (0,0)");
    }
    throw PoleAtPoint("eval_exp: coefficient denominator vanishes at the point");
}

double eval_omega(const OmegaPoly& w, double a, double b, double t) {
    if (min_den_rel(w.terms(), a, b) >= kPoleRel) return eval_omega_direct(w, a, b, t);
    return eval_exp(omega_expand(w), a, b, t);
}

OmegaXExpr subst_neg_log(const ExpPoly& p) { return OmegaXExpr{omega_basis(p)}; }

double OmegaXExpr::eval(double a, double b, double x0) const {
    if (!(x0 > 0.0 && x0 <= 1.0)) throw Error("OmegaXExpr::eval: x0 must be in (0,1]");
    return eval_omega(poly, a, b, -std::log(x0));
}

// ---------------------------------------------------------------------------
// printing

std::string exp_str(const ExpPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        if (k.j > 0) os << "*t" << (k.j > 1 ? "^" + std::to_string(k.j) : "");
        if (k.n1 != 0 || k.n2 != 0) os << "*e^{(" << BiPoly::linear_form(k.n1, k.n2).str() << ")t}";
    }
    return os.str();
}

std::string omega_str(const OmegaPoly& w) {
    if (w.is_zero()) return "0";
    static const char* names[5] = {"W(a)", "W(-a)", "W(b)", "W(-b)", "T"};
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : w.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        for (std::size_t i = 0; i < 5; ++i) {
            if (k[i] > 0) {
                os << "*" << names[i];
                if (k[i] > 1) os << "^" << k[i];
            }
        }
    }
    return os.str();
}

} // namespace dulac
