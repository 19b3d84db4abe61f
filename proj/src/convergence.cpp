#include <algorithm>
#include <cmath>

#include "dulac/dulac_map.hpp"
#include "dulac/oracle.hpp"

namespace dulac {

std::vector<double> numerical_dulac_decoupled(const NFCoeffs& nf, double x0, double y0, double z0,
                                              double tol) {
    if (!(x0 > 0 && x0 < 1)) throw ValidationError("numerical_dulac_decoupled: x0 must be in (0,1)");
    // state = (U_y, U_z, u_1..u_k); a table entry at (gy,gz) is the whole
    // monomial U_y^{gy} U_z^{gz} of its equation
    OdeRhs rhs = [&nf](const std::vector<double>& s) {
        std::vector<double> u(s.begin() + 2, s.end());
        std::vector<double> out(s.size(), 0.0);
        out[0] = -(nf.alpha_jet.eval(u) - to_double(nf.eig.alpha0)) * s[0];
        out[1] = -(nf.beta_jet.eval(u) - to_double(nf.eig.beta0)) * s[1];
        auto add_terms = [&](const std::map<SeriesKey, UJet>& tab, std::size_t slot) {
            for (auto& [g, jet] : tab) {
                double m = jet.eval(u);
                for (long e = 0; e < g[0]; ++e) m *= s[0];
                for (long e = 0; e < g[1]; ++e) m *= s[1];
                out[slot] += m;
            }
        };
        add_terms(nf.alpha_tab, 0);
        add_terms(nf.beta_tab, 1);
        for (std::size_t i = 0; i < nf.delta_tab.size(); ++i) add_terms(nf.delta_tab[i], 2 + i);
        return out;
    };
    std::vector<double> s{std::pow(x0, to_double(nf.eig.alpha0)) * y0,
                          std::pow(x0, to_double(nf.eig.beta0)) * z0};
    for (auto& u : nf.u0) s.push_back(to_double(u));
    FlowResult r = integrate_flow(rhs, s, -std::log(x0), tol);
    // on {x = 1} the U-coordinates coincide with (y, z)
    return r.state;
}

SlopeFit convergence_order(const DulacSeries& D, const PolyVectorField& X,
                           const std::vector<double>& x0_grid, int comp, double tol) {
    if (x0_grid.size() < 2) throw ValidationError("convergence_order: need at least two x0 values");
    double lo = *std::min_element(x0_grid.begin(), x0_grid.end());
    double hi = *std::max_element(x0_grid.begin(), x0_grid.end());
    if (!(lo > 0 && hi < 1)) throw ValidationError("convergence_order: grid must lie in (0,1)");
    std::vector<double> u0(D.u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = to_double(D.u0[i]);
    const double y0 = 1.0, z0 = 1.0;
    std::vector<double> xs, errs;
    double scale = 0;
    for (double x0 : x0_grid) {
        auto num = numerical_dulac(X, x0, y0, z0, u0, tol);
        DulacValue v = eval_dulac(D, x0, y0, z0);
        double e = 0;
        if (comp == 1) {
            e = std::abs(v.y1 - num[0]);
            scale = std::max(scale, std::abs(num[0]));
        } else if (comp == 2) {
            e = std::abs(v.z1 - num[1]);
            scale = std::max(scale, std::abs(num[1]));
        } else {
            std::size_t i = static_cast<std::size_t>(comp - 3);
            e = std::abs(v.u1[i] - num[2 + i]);
            scale = std::max(scale, std::abs(num[2 + i]));
        }
        xs.push_back(x0);
        errs.push_back(e);
    }
    double floor = std::max(1e-15, 100 * tol) * std::max(1.0, scale);
    return fit_slope(xs, errs, floor);
}

} // namespace dulac
