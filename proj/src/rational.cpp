#include "dulac/rational.hpp"

#include <cctype>

namespace dulac {

Rational parse_rational(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string t = s.substr(b, e - b);
    if (t.empty()) throw ParseError("empty rational literal");
    for (std::size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  ((c == '-' || c == '+') && (i == 0 || t[i - 1] == '/'));
        if (!ok) throw ParseError("bad rational literal '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational pow_rational(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0 && e < 0) throw Error("pow_rational: 0 to negative power");
    Rational base = e > 0 ? r : Rational(1) / r;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational out(1);
    while (n) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

} // namespace dulac
