#include "dulac/dulac_map.hpp"

#include <algorithm>

namespace dulac {

namespace {

void series_add(Series& acc, const SeriesKey& k, const ExpPoly& c) {
    if (c.is_zero()) return;
    auto it = acc.find(k);
    if (it == acc.end()) {
        acc[k] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

Series series_mul(const Series& a, const Series& b, int maxlevel) {
    Series out;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) {
            SeriesKey k{ka[0] + kb[0], ka[1] + kb[1]};
            if (k[0] + k[1] > maxlevel) continue;
            series_add(out, k, ca * cb);
        }
    return out;
}

Series series_one() { return Series{{SeriesKey{0, 0}, ExpPoly(RatFunc(Rational(1)))}}; }

Series series_pow(const Series& a, long e, int maxlevel) {
    Series out = series_one();
    for (long i = 0; i < e; ++i) out = series_mul(out, a, maxlevel);
    return out;
}

// the value of a coefficient jet along u = u0 + Delta u, as a series;
// Delta empty (gate off) freezes the jet at u0
Series jet_series(const UJet& jet, const std::vector<Rational>& u0,
                  const std::vector<Series>* Delta, int maxlevel) {
    if (Delta == nullptr) {
        Rational v = jet.eval_exact(u0);
        Series out;
        if (v != 0) out[SeriesKey{0, 0}] = ExpPoly(RatFunc(v));
        return out;
    }
    Series acc;
    for (auto& [idx, c] : jet.terms()) {
        Series term = series_one();
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] == 0) continue;
            Series base = (*Delta)[i];
            if (u0[i] != 0) series_add(base, SeriesKey{0, 0}, ExpPoly(RatFunc(u0[i])));
            for (int e = 0; e < idx[i]; ++e) term = series_mul(term, base, maxlevel);
        }
        for (auto& [k, v] : term) series_add(acc, k, v.scaled(RatFunc(c)));
    }
    return acc;
}

struct RhsContext {
    const NFCoeffs& nf;
    const VariationSeries& vs;
    int maxlevel;
    const std::vector<Series>* Delta; // u-variation when the gate is on
};

// Full nonlinear right-hand side of one component of the transformed system,
// as a series in (U_y0, U_z0): sum of table(u) * U_y^{gy} U_z^{gz} plus the
// diagonal deviation -(alpha1(u) - alpha1(u0)) U_y (and the z analogue) when
// the gate is on.
Series rhs_series(const RhsContext& cx, int comp) {
    const auto& nf = cx.nf;
    const std::map<SeriesKey, UJet>* tab = nullptr;
    if (comp == 1) tab = &nf.alpha_tab;
    else if (comp == 2) tab = &nf.beta_tab;
    else tab = &nf.delta_tab[static_cast<std::size_t>(comp - 3)];

    Series out;
    for (auto& [g, jet] : *tab) {
        Series c = jet_series(jet, nf.u0, cx.Delta, cx.maxlevel);
        if (c.empty()) continue;
        Series term = series_mul(c, series_pow(cx.vs.y, g[0], cx.maxlevel), cx.maxlevel);
        term = series_mul(term, series_pow(cx.vs.z, g[1], cx.maxlevel), cx.maxlevel);
        for (auto& [k, v] : term) series_add(out, k, v);
    }
    if (cx.Delta != nullptr && (comp == 1 || comp == 2)) {
        const UJet& ev = comp == 1 ? nf.alpha_jet : nf.beta_jet;
        Series dev = jet_series(ev, nf.u0, cx.Delta, cx.maxlevel);
        Rational at_u0 = ev.eval_exact(nf.u0);
        if (at_u0 != 0) series_add(dev, SeriesKey{0, 0}, ExpPoly(RatFunc(-at_u0)));
        // dev = alpha(u0+Du) - alpha(u0); pure weight >= 1
        if (!dev.empty()) {
            Series corr = series_mul(dev, comp == 1 ? cx.vs.y : cx.vs.z, cx.maxlevel);
            for (auto& [k, v] : corr) series_add(out, k, -v);
        }
    }
    return out;
}

// e^{-st} * int_0^t e^{s tau} R(tau) dtau for the diagonal symbol s in
// {a, b, 0} encoded by the exp-key shift
ExpPoly solve_linear(const ExpPoly& R, int na, int nb) {
    return integrate(R.shifted_exp(na, nb)).shifted_exp(-na, -nb);
}

} // namespace

Rational entry_weight(const NFCoeffs& nf, int comp, const SeriesKey& e) {
    if (nf.eig.case2) {
        long w = e[0] + e[1];
        return Rational(comp == 1 || comp == 2 ? w - 1 : w);
    }
    long q1 = nf.eig.q1(), q2 = nf.eig.q2();
    Rational wy(comp == 1 ? e[0] - 1 : e[0], q1);
    Rational wz(comp == 2 ? e[1] - 1 : e[1], q2);
    wy.canonicalize();
    wz.canonicalize();
    return wy + wz;
}

VariationSeries variation_coeffs_levels(const NFCoeffs& nf, int levels) {
    return variation_coeffs_levels_capped(nf, levels, std::nullopt);
}

VariationSeries variation_coeffs_levels_capped(const NFCoeffs& nf, int levels,
                                               std::optional<Rational> max_weight) {
    VariationSeries vs;
    vs.u.resize(static_cast<std::size_t>(nf.k));
    std::vector<Series> delta_holder;
    auto prune = [&](Series& s, int comp) {
        if (!max_weight) return;
        for (auto it = s.begin(); it != s.end();) {
            if (entry_weight(nf, comp, it->first) > *max_weight)
                it = s.erase(it);
            else
                ++it;
        }
    };

    for (int L = 1; L <= levels; ++L) {
        const std::vector<Series>* Delta = nf.propagate_u ? &vs.u : nullptr;
        RhsContext cx{nf, vs, L, Delta};

        // order within a level: y, then z (its single-factor terms may pull
        // level-L y coefficients), then u (pulls both)
        for (int comp = 1; comp <= 2 + nf.k; ++comp) {
            Series R = rhs_series(cx, comp);
            Series* target = comp == 1   ? &vs.y
                             : comp == 2 ? &vs.z
                                         : &vs.u[static_cast<std::size_t>(comp - 3)];
            for (auto& [e, r] : R) {
                if (e[0] + e[1] != L) continue;
                ExpPoly sol = comp == 1   ? solve_linear(r, 1, 0)
                              : comp == 2 ? solve_linear(r, 0, 1)
                                          : integrate(r);
                series_add(*target, e, sol);
            }
            if (L == 1 && comp == 1) series_add(*target, SeriesKey{1, 0}, ExpPoly::exponential(-1, 0));
            if (L == 1 && comp == 2) series_add(*target, SeriesKey{0, 1}, ExpPoly::exponential(0, -1));
            prune(*target, comp);
        }
        vs.max_level = L;
    }
    return vs;
}

VariationSeries variation_coeffs(const NFCoeffs& nf, int order) {
    if (order < 1) throw ValidationError("variation_coeffs: order must be >= 1");
    int levels;
    if (nf.eig.case2) {
        levels = order + 1;
    } else {
        long qmax = std::max(nf.eig.q1(), nf.eig.q2());
        levels = 1 + static_cast<int>(qmax) * order;
    }
    return variation_coeffs_levels_capped(nf, levels, Rational(order));
}

VariationalRhs build_variational_rhs(const NFCoeffs& nf, const VariationSeries& series, long n1,
                                     long n2) {
    SeriesKey ey, ez, eu;
    if (nf.eig.case2) {
        long q = nf.eig.q, m = nf.eig.m;
        ey = {1 + n1, q * n2 - m * n1};
        ez = {n1, 1 + q * n2 - m * n1};
        eu = {n1, q * n2 - m * n1};
    } else {
        long q1 = nf.eig.q1(), q2 = nf.eig.q2();
        ey = {1 + q1 * n1, q2 * n2};
        ez = {q1 * n1, 1 + q2 * n2};
        eu = {q1 * n1, q2 * n2};
    }
    // a lattice point may fall outside a component's family (e.g. (-1,0) only
    // indexes the y-equation); the corresponding R is zero
    bool has_y = ey[0] >= 0 && ey[1] >= 0;
    bool has_z = ez[0] >= 0 && ez[1] >= 0;
    bool has_u = eu[0] >= 0 && eu[1] >= 0;
    if (!has_y && !has_z && !has_u)
        throw ValidationError("build_variational_rhs: index outside every family");
    long need = 0, maxlevel = 0;
    if (has_y) {
        need = std::max(need, ey[0] + ey[1] - 1);
        maxlevel = std::max(maxlevel, ey[0] + ey[1]);
    }
    if (has_z) {
        need = std::max(need, ez[0] + ez[1]);
        maxlevel = std::max(maxlevel, ez[0] + ez[1]);
    }
    if (has_u) {
        need = std::max(need, eu[0] + eu[1]);
        maxlevel = std::max(maxlevel, eu[0] + eu[1]);
    }
    if (series.max_level < need)
        throw MissingLowerOrder("build_variational_rhs: series computed to level " +
                                std::to_string(series.max_level) + ", need " + std::to_string(need));
    const std::vector<Series>* Delta = nf.propagate_u ? &series.u : nullptr;
    RhsContext cx{nf, series, static_cast<int>(maxlevel), Delta};
    VariationalRhs out;
    if (has_y) {
        Series Ry = rhs_series(cx, 1);
        if (auto it = Ry.find(ey); it != Ry.end()) out.R_y = it->second;
    }
    if (has_z) {
        Series Rz = rhs_series(cx, 2);
        if (auto it = Rz.find(ez); it != Rz.end()) out.R_z = it->second;
    }
    out.R_u.resize(static_cast<std::size_t>(nf.k));
    if (has_u) {
        for (int i = 0; i < nf.k; ++i) {
            Series Ru = rhs_series(cx, 3 + i);
            if (auto it = Ru.find(eu); it != Ru.end()) out.R_u[static_cast<std::size_t>(i)] = it->second;
        }
    }
    return out;
}

bool variation_in_rbar(const NFCoeffs& nf, const VariationSeries& vs) {
    (void)nf;
    for (auto& [e, c] : vs.y)
        if (!limit_params_zero(c.shifted_exp(1, 0))) return false;
    for (auto& [e, c] : vs.z)
        if (!limit_params_zero(c.shifted_exp(0, 1))) return false;
    for (auto& comp : vs.u)
        for (auto& [e, c] : comp)
            if (!limit_params_zero(c)) return false;
    return true;
}

} // namespace dulac
