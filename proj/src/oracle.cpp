#include "dulac/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace dulac {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace

FlowResult integrate_flow(const OdeRhs& rhs, std::vector<double> y, double T, double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-6))
        throw ValidationError("integrate_flow: tol must be in [1e-14, 1e-6]");
    const std::size_t n = y.size();
    double t = 0;
    double direction = T >= 0 ? 1.0 : -1.0;
    double remaining = std::abs(T);
    if (remaining == 0) return {y, 0.0, 0};

    double h = std::min(remaining, 0.01);
    FlowResult res;
    std::vector<double> k1 = rhs(y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
    double err_prev = 1.0;
    const double atol = tol * 1e-2;

    auto stage = [&](const std::vector<double>& base, std::vector<double>& out) { out = rhs(base); };

    while (t < remaining - 1e-300) {
        h = std::min(h, remaining - t);
        if (h < 1e-14 * std::max(1.0, remaining))
            throw StepUnderflow("integrate_flow: step size underflow at t=" + std::to_string(t));
        double hd = h * direction;

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hd * a21 * k1[i];
        stage(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hd * (a31 * k1[i] + a32 * k2[i]);
        stage(tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        stage(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        stage(tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        stage(tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y5[i] = y[i] + hd * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        stage(y5, k7); // FSAL

        double err = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double y4i = y[i] + hd * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]);
            double sc = atol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            double d = (y5[i] - y4i) / sc;
            err += d * d;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;
            res.steps += 1;
            res.err_bound = std::max(res.err_bound, err * tol); // worst local error
            // PI controller (Gustafsson)
            double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                         std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = err > 0 ? err : 1e-10;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -1.0 / 5.0), 0.1, 1.0);
        }
    }
    res.state = std::move(y);
    return res;
}

FlowResult integrate_flow(const PolyVectorField& X, const std::vector<double>& init, double T,
                          double tol) {
    return integrate_flow([&X](const std::vector<double>& s) { return X.rhs(s); }, init, T, tol);
}

std::vector<double> numerical_dulac(const PolyVectorField& X, double x0, double y0, double z0,
                                    const std::vector<double>& u0, double tol) {
    if (!(x0 > 0 && x0 < 1)) throw ValidationError("numerical_dulac: x0 must be in (0,1)");
    for (auto& [key, jet] : X.terms()) {
        (void)jet;
        if (key.comp == 0)
            throw ValidationError("numerical_dulac: x-component must be exactly x "
                                  "(run rescale_time first)");
    }
    std::vector<double> s{x0, y0, z0};
    s.insert(s.end(), u0.begin(), u0.end());
    double T = -std::log(x0);
    FlowResult r = integrate_flow(X, s, T, tol);
    if (std::abs(r.state[0] - 1.0) > 1e3 * tol + 1e-9)
        throw Error("numerical_dulac: trajectory missed the section {x=1}");
    return std::vector<double>(r.state.begin() + 1, r.state.end());
}

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, double floor) {
    if (xs.size() != ys.size()) throw DimensionMismatch("fit_slope: length mismatch");
    SlopeFit fit;
    std::vector<std::pair<double, double>> grid;
    for (std::size_t i = 0; i < xs.size(); ++i) grid.emplace_back(xs[i], ys[i]);
    std::sort(grid.begin(), grid.end());
    // middle 80% of the grid first (asymptotic-regime onset lives at the
    // ends), then drop whatever sits at the rounding floor
    std::size_t trim = (grid.size() + 5) / 10;
    while (trim > 0 && grid.size() - 2 * trim < 4) --trim;
    if (trim > 0) {
        grid.erase(grid.end() - static_cast<long>(trim), grid.end());
        grid.erase(grid.begin(), grid.begin() + static_cast<long>(trim));
    }
    std::vector<std::pair<double, double>> pts;
    for (auto& [x, y] : grid)
        if (y > floor) pts.emplace_back(std::log(x), std::log(y));
    fit.n_used = static_cast<int>(pts.size());
    if (pts.size() < 4) {
        fit.degenerate = true;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (auto& [x, y] : pts) {
        double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
        fit.logx.push_back(x);
        fit.logy.push_back(y);
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

std::set<ResonantMonomial> brute_resonance(const EigenData& eig, int D) {
    if (D > 20) throw ValidationError("brute_resonance: D must be <= 20");
    std::set<ResonantMonomial> out;
    if (D < 2) return out;
    // clear denominators: with alpha = pa/qa, beta = pb/qb and Q = qa*qb,
    // test Q*n1 - pa*qb*n2 - pb*qa*n3 == Q*target in integers
    long pa = eig.p1(), qa = eig.q1(), pb = eig.p2(), qb = eig.q2();
    long Q = qa * qb, ca = pa * qb, cb = pb * qa;
    for (long deg = 2; deg <= D; ++deg)
        for (long n1 = 0; n1 <= deg; ++n1)
            for (long n2 = 0; n1 + n2 <= deg; ++n2) {
                long n3 = deg - n1 - n2;
                long lhs = Q * n1 - ca * n2 - cb * n3;
                if (lhs == Q) out.insert({{n1, n2, n3}, Component::X});
                if (lhs == -ca) out.insert({{n1, n2, n3}, Component::Y});
                if (lhs == -cb) out.insert({{n1, n2, n3}, Component::Z});
                if (lhs == 0) out.insert({{n1, n2, n3}, Component::U});
            }
    return out;
}

namespace {

// time-1 flow of a homogeneous generator (jet coefficients evaluated along
// the trajectory)
std::vector<double> generator_time1_flow(const Generator& gen, int k,
                                         const std::vector<double>& p, double tol, bool backward) {
    OdeRhs rhs = [&gen, k](const std::vector<double>& s) {
        std::vector<double> u(s.begin() + 3, s.end());
        std::vector<double> out(s.size(), 0.0);
        for (auto& [key, jet] : gen.terms) {
            double m = jet.eval(u);
            for (int i = 0; i < 3; ++i)
                for (int e = 0; e < key.mono[static_cast<std::size_t>(i)]; ++e)
                    m *= s[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(key.comp)] += m;
        }
        return out;
    };
    return integrate_flow(rhs, p, backward ? -1.0 : 1.0, tol).state;
}

} // namespace

SlopeFit conjugacy_check(const PolyVectorField& X, const std::vector<Generator>& gens,
                         const PolyVectorField& NF_scaled, const std::vector<double>& amplitudes,
                         const std::vector<double>& direction, double T, double tol) {
    if (static_cast<int>(direction.size()) != X.ncomp())
        throw DimensionMismatch("conjugacy_check: direction dimension");
    // Phi = phi_{U_1} o phi_{U_2} o ... o phi_{U_K} maps normal-form
    // coordinates to original ones;  flow_X(T, Phi(p)) = Phi(flow_NF(T, p)).
    auto Phi = [&](std::vector<double> p) {
        for (auto it = gens.rbegin(); it != gens.rend(); ++it)
            p = generator_time1_flow(*it, X.centre_dim(), p, tol, false);
        return p;
    };
    std::vector<double> xs, ys;
    for (double A : amplitudes) {
        std::vector<double> p(direction.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = A * direction[i];
        std::vector<double> lhs = integrate_flow(X, Phi(p), T, tol).state;
        std::vector<double> rhs_ = Phi(integrate_flow(NF_scaled, p, T, tol).state);
        double err = 0;
        for (std::size_t i = 0; i < p.size(); ++i) err = std::max(err, std::abs(lhs[i] - rhs_[i]));
        xs.push_back(A);
        ys.push_back(err);
    }
    // generator flows and the two main flows each contribute ~tol of noise
    return fit_slope(xs, ys, std::max(1e-14, 100 * tol));
}

} // namespace dulac
