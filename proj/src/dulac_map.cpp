#include "dulac/dulac_map.hpp"

#include <algorithm>
#include <cmath>

namespace dulac {

std::optional<std::pair<long, long>> NFCoeffs::lattice_label(int comp, const SeriesKey& e) const {
    long gy = e[0], gz = e[1];
    if (eig.case2) {
        long m = eig.m, q = eig.q;
        long n1 = comp == 1 ? gy - 1 : gy;
        long zpart = comp == 2 ? gz - 1 : gz;
        if ((zpart + m * n1) % q != 0) return std::nullopt;
        long n2 = (zpart + m * n1) / q;
        if (n2 < 0) return std::nullopt;
        return std::make_pair(n1, n2);
    }
    long q1 = eig.q1(), q2 = eig.q2();
    long ypart = comp == 1 ? gy - 1 : gy;
    long zpart = comp == 2 ? gz - 1 : gz;
    if (ypart % q1 != 0 || zpart % q2 != 0) return std::nullopt;
    return std::make_pair(ypart / q1, zpart / q2);
}

NFCoeffs nf_coeffs_from_field(const PolyVectorField& X, const std::vector<Rational>& u0,
                              bool propagate_u) {
    for (auto& [key, jet] : X.terms()) {
        (void)jet;
        if (key.comp == 0)
            throw NotInNormalForm("the x-component is not exactly x; run normalize "
                                  "(it ends with the time rescaling)");
    }
    if (!is_normal_form(X))
        throw NotInNormalForm("the field carries non-resonant terms; run normalize first");
    if (static_cast<int>(u0.size()) != X.centre_dim())
        throw DimensionMismatch("nf_coeffs_from_field: u0 dimension");

    NFCoeffs nf;
    nf.eig = X.eig();
    nf.k = X.centre_dim();
    nf.J = X.jet_order();
    nf.u0 = u0;
    nf.alpha_jet = X.alpha();
    nf.beta_jet = X.beta();
    nf.a0 = X.alpha().eval_exact(u0) - nf.eig.alpha0;
    nf.b0 = X.beta().eval_exact(u0) - nf.eig.beta0;
    nf.delta_tab.resize(static_cast<std::size_t>(nf.k));
    nf.propagate_u = propagate_u;

    // in U-coordinates a resonant term c(u) x^A y^B z^C becomes c(u) U_y^B U_z^C
    for (auto& [key, jet] : X.terms()) {
        SeriesKey g{key.mono[1], key.mono[2]};
        if (key.comp == 1)
            nf.alpha_tab[g] = jet;
        else if (key.comp == 2)
            nf.beta_tab[g] = jet;
        else
            nf.delta_tab[static_cast<std::size_t>(key.comp - 3)][g] = jet;
    }
    return nf;
}

DulacSeries dulac_series(const NFCoeffs& nf, int order) {
    VariationSeries vs = variation_coeffs(nf, order);
    DulacSeries D;
    D.eig = nf.eig;
    D.k = nf.k;
    D.a0 = nf.a0;
    D.b0 = nf.b0;
    D.u0 = nf.u0;
    D.order = order;
    D.u.resize(static_cast<std::size_t>(nf.k));

    Rational maxw(order);
    auto emit = [&](int comp, const Series& s, DulacComponent& out) {
        for (auto& [e, c] : s) {
            if (entry_weight(nf, comp, e) > maxw) continue;
            DulacEntry ent;
            ent.e = e;
            ent.lattice = nf.lattice_label(comp, e);
            ent.x0_exp = nf.rho_y() * Rational(e[0]) + nf.rho_z() * Rational(e[1]);
            ExpPoly stripped = comp == 1 ? c.shifted_exp(1, 0)
                               : comp == 2 ? c.shifted_exp(0, 1)
                                           : c;
            if (comp == 1 && nf.eig.case2 && e[0] == 0 && e[1] == nf.eig.m) {
                // resonant Case-2 term: split off tab * Omega(a - m b, t) in
                // closed form so it evaluates as omega(gamma1, x0)
                auto it = nf.alpha_tab.find(SeriesKey{0, nf.eig.m});
                if (it != nf.alpha_tab.end()) {
                    Rational c0 = it->second.eval_exact(nf.u0);
                    if (c0 != 0) {
                        ent.special_coeff = c0;
                        stripped -= ExpPoly::omega_form(1, -nf.eig.m).scaled(RatFunc(c0));
                    }
                }
            }
            ent.coeff = omega_basis(stripped);
            if (ent.coeff.is_zero() && ent.special_coeff == 0) continue;
            out.entries.push_back(std::move(ent));
        }
    };
    emit(1, vs.y, D.y);
    emit(2, vs.z, D.z);
    for (int i = 0; i < nf.k; ++i) emit(3 + i, vs.u[static_cast<std::size_t>(i)], D.u[static_cast<std::size_t>(i)]);
    return D;
}

namespace {

double ipow(double x, long e) {
    double r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

double entry_value(const DulacEntry& ent, const EigenData& eig, double a, double b, double x0,
                   double y0, double z0, double t0) {
    double v = ent.coeff.is_zero() ? 0.0 : eval_omega(ent.coeff, a, b, t0);
    if (ent.special_coeff != 0)
        v += to_double(ent.special_coeff) * omega_x(a - static_cast<double>(eig.m) * b, x0);
    return v * std::pow(x0, to_double(ent.x0_exp)) * ipow(y0, ent.e[0]) * ipow(z0, ent.e[1]);
}

} // namespace

DulacValue eval_dulac(const DulacSeries& D, double x0, double y0, double z0,
                      std::optional<double> a0, std::optional<double> b0) {
    if (!(x0 > 0.0 && x0 <= 1.0)) throw ValidationError("eval_dulac: x0 must be in (0,1]");
    double a = a0.value_or(to_double(D.a0));
    double b = b0.value_or(to_double(D.b0));
    double t0 = -std::log(x0);
    DulacValue out;
    for (auto& ent : D.y.entries) out.y1 += entry_value(ent, D.eig, a, b, x0, y0, z0, t0);
    out.y1 *= std::pow(x0, a);
    for (auto& ent : D.z.entries) out.z1 += entry_value(ent, D.eig, a, b, x0, y0, z0, t0);
    out.z1 *= std::pow(x0, b);
    out.u1.resize(D.u.size());
    for (std::size_t i = 0; i < D.u.size(); ++i) {
        double s = to_double(D.u0[i]);
        for (auto& ent : D.u[i].entries) s += entry_value(ent, D.eig, a, b, x0, y0, z0, t0);
        out.u1[i] = s;
    }
    return out;
}

std::optional<double> smallest_omitted_exponent(const NFCoeffs& nf, int comp, int order,
                                                double a0, double b0, int extra_levels) {
    int levels;
    Rational deep(order + extra_levels);
    if (nf.eig.case2) {
        levels = order + extra_levels + 1;
    } else {
        long qmax = std::max(nf.eig.q1(), nf.eig.q2());
        levels = 1 + static_cast<int>(qmax) * (order + extra_levels);
    }
    VariationSeries vs = variation_coeffs_levels_capped(nf, levels, deep);
    const Series* s = comp == 1   ? &vs.y
                      : comp == 2 ? &vs.z
                                  : &vs.u[static_cast<std::size_t>(comp - 3)];
    Rational maxw(order);
    std::optional<double> best;
    for (auto& [e, c] : *s) {
        if (c.is_zero()) continue;
        if (entry_weight(nf, comp, e) <= maxw) continue;
        double exp = to_double(nf.rho_y()) * static_cast<double>(e[0]) +
                     to_double(nf.rho_z()) * static_cast<double>(e[1]);
        if (comp == 1) exp += a0;
        if (comp == 2) exp += b0;
        if (!best || exp < *best) best = exp;
    }
    return best;
}

} // namespace dulac
