#ifndef DULAC_ORACLE_HPP
#define DULAC_ORACLE_HPP

#include <functional>
#include <set>
#include <vector>

#include "dulac/vectorfield.hpp"

namespace dulac {

// Independent numerical verification: everything in this header is
// deliberately decoupled from the symbolic pipeline it checks.

struct FlowResult {
    std::vector<double> state;
    double err_bound = 0; // largest accepted local-error estimate; <= 10 * tol
    long steps = 0;
};

using OdeRhs = std::function<std::vector<double>(const std::vector<double>&)>;

// Adaptive Dormand-Prince 5(4) with PI step control; deterministic.
// tol must lie in [1e-14, 1e-6].  Throws StepUnderflow on stiffness/blowup.
FlowResult integrate_flow(const OdeRhs& rhs, std::vector<double> y0, double T, double tol);

FlowResult integrate_flow(const PolyVectorField& X, const std::vector<double>& init, double T,
                          double tol);

// Transition to the section {x=1}: the x-component is exactly x, so the
// crossing time is exactly -ln x0.  Returns (y1, z1, u1..uk).
std::vector<double> numerical_dulac(const PolyVectorField& X, double x0, double y0, double z0,
                                    const std::vector<double>& u0, double tol);

struct SlopeFit {
    std::vector<double> logx, logy; // the fitted sample pairs
    double slope = 0;
    double intercept = 0;
    double residual = 0; // rms residual of the fit
    bool degenerate = false; // fewer than 4 points above the rounding floor
    int n_used = 0;
};

// Least squares of logy against logx on the middle 80% of the samples, after
// dropping points with y below `floor` (rounding-floor contamination).
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, double floor);

// Exhaustive exact-rational scan; reference implementation for the resonance
// module (integer arithmetic with cleared denominators, a separate route).
std::set<ResonantMonomial> brute_resonance(const EigenData& eig, int D);

struct DulacSeries; // dulac_map.hpp
struct NFCoeffs;    // dulac_map.hpp

// Same transition computed in the decoupled (U_y, U_z, u) coordinates: start
// from (x0^{alpha0} y0, x0^{beta0} z0, u0), integrate for exactly -ln x0 with
// the right-hand side built from the coefficient tables.  Agrees with
// numerical_dulac within a few tol.
std::vector<double> numerical_dulac_decoupled(const NFCoeffs& nf, double x0, double y0, double z0,
                                              double tol);

// Fits log |numerical_dulac - truncated series| against log x0 for one output
// component (1 = y, 2 = z, 3+i = u_i) at (y0, z0) = (1, 1); the slope should
// match the smallest omitted exponent.  Errors at the rounding floor are
// excluded; DegenerateFit is reported via SlopeFit::degenerate.
SlopeFit convergence_order(const DulacSeries& D, const PolyVectorField& X,
                           const std::vector<double>& x0_grid, int comp, double tol);

// Composes the time-1 generator flows numerically into Phi and fits
// log |flow_X(T, Phi(p)) - Phi(flow_NF(T, p))| against log amplitude.
// NF must carry the time factor (use scalar_multiply(nf, time_factor)).
SlopeFit conjugacy_check(const PolyVectorField& X, const std::vector<Generator>& gens,
                         const PolyVectorField& NF_scaled, const std::vector<double>& amplitudes,
                         const std::vector<double>& direction, double T, double tol);

} // namespace dulac

#endif
