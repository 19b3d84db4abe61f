#ifndef DULAC_DULAC_MAP_HPP
#define DULAC_DULAC_MAP_HPP

#include <optional>
#include <utility>

#include "dulac/exppoly.hpp"
#include "dulac/vectorfield.hpp"

namespace dulac {

// Exponent pair of a (U_y0, U_z0)-monomial.
using SeriesKey = std::array<long, 2>;
// Series in (U_y0, U_z0) with ExpPoly coefficients.
using Series = std::map<SeriesKey, ExpPoly>;

// Normal-form coefficient data around a base point u0 on the manifold.
//
// In the coordinates U_y = x^{alpha0} y, U_z = x^{beta0} z (both cases) every
// resonant term c(u) x^A y^B z^C of the y/z/u equations becomes
// c(u) U_y^B U_z^C, so the tables are keyed by the monomial exponents (B,C);
// the paper's (n1,n2) lattice labels are a derived reporting view.
//
// The symbols a, b of the ring stand for alpha1(u0) = alpha(u0) - alpha0 and
// beta1(u0); their exact values a0, b0 enter only at evaluation.
struct NFCoeffs {
    EigenData eig;
    int k = 1, J = 0;
    std::vector<Rational> u0;
    UJet alpha_jet, beta_jet; // full alpha(u), beta(u) about u = 0
    Rational a0, b0;          // alpha(u0) - alpha0, beta(u0) - beta0

    std::map<SeriesKey, UJet> alpha_tab, beta_tab;  // y- and z-equation terms
    std::vector<std::map<SeriesKey, UJet>> delta_tab; // per centre direction

    // re-expand tables at u0 + Delta u along the variation (off: tables are
    // frozen at u0)
    bool propagate_u = false;

    const Rational& rho_y() const { return eig.alpha0; }
    const Rational& rho_z() const { return eig.beta0; }

    // paper lattice label of a series key, per case/component  (comp: 1=y,2=z,3=u)
    std::optional<std::pair<long, long>> lattice_label(int comp, const SeriesKey& e) const;
};

// Extract the coefficient tables from a normal form (x-component must be
// exactly x; run normalize first).  Throws NotInNormalForm otherwise.
NFCoeffs nf_coeffs_from_field(const PolyVectorField& X, const std::vector<Rational>& u0,
                              bool propagate_u = false);

// Variation of the base orbit (U_y,U_z,u) = (0,0,u0): per-component series of
// coefficients; y[e] multiplies U_y0^{e1} U_z0^{e2} etc.  The first-order
// factors are y[(1,0)] = e^{-at} and z[(0,1)] = e^{-bt}.
struct VariationSeries {
    Series y, z;
    std::vector<Series> u;
    int max_level = 0; // all coefficients with e1+e2 <= max_level are present
};

// Right-hand sides of the order-(n1,n2) variational equations (paper lattice
// labels).  R_u has one entry per centre direction.  Throws MissingLowerOrder
// when `series` is not computed deep enough.
struct VariationalRhs {
    ExpPoly R_y, R_z;
    std::vector<ExpPoly> R_u;
};
VariationalRhs build_variational_rhs(const NFCoeffs& nf, const VariationSeries& series, long n1,
                                     long n2);

// Recursive fill-in through (U_y0,U_z0)-degree `levels` via ring integration.
VariationSeries variation_coeffs_levels(const NFCoeffs& nf, int levels);
// Same, dropping coefficients whose paper weight exceeds max_weight (safe:
// they never feed lower-weight ones).
VariationSeries variation_coeffs_levels_capped(const NFCoeffs& nf, int levels,
                                               std::optional<Rational> max_weight);

// Spec-facing wrapper: `order` counts the paper weight (Case 1: n1+n2,
// Case 2: n1 + q n2 - m n1).
VariationSeries variation_coeffs(const NFCoeffs& nf, int order);

// paper weight of a series entry (rational in Case 1 off the product lattice)
Rational entry_weight(const NFCoeffs& nf, int comp, const SeriesKey& e);

// Proposition-style structure check: every stored coefficient, after
// stripping its exponential prefactor, has a finite (a,b) -> 0 limit.
bool variation_in_rbar(const NFCoeffs& nf, const VariationSeries& vs);

// One term of the asymptotic series of a Dulac-map component.
struct DulacEntry {
    SeriesKey e;                                  // (y0,z0)-exponents
    std::optional<std::pair<long, long>> lattice; // paper (n1,n2) when integral
    Rational x0_exp;                              // rational part of the x0-exponent
    OmegaPoly coeff;                              // omega-basis coefficient (prefactor stripped)
    // Case-2 resonant part split off in closed form:
    // coeff_total = special_coeff * omega(gamma1, x0) + coeff
    Rational special_coeff = 0;
};

struct DulacComponent {
    // component value = x0^{prefactor} * sum over entries
    //   entry(x0) * x0^{x0_exp} * y0^{e1} * z0^{e2}
    // where prefactor is a0 (y), b0 (z) or absent (u), plus u0_i for u.
    std::vector<DulacEntry> entries;
};

struct DulacSeries {
    EigenData eig;
    int k = 1;
    Rational a0, b0;
    std::vector<Rational> u0;
    int order = 0;
    DulacComponent y, z;
    std::vector<DulacComponent> u;
    // Convention note (printed by the CLI): y1 carries x0^{alpha(u0)}, z1
    // carries x0^{beta(u0)}, following the integrated system rather than the
    // swapped display in the paper's final theorem.
};

DulacSeries dulac_series(const NFCoeffs& nf, int order);

struct DulacValue {
    double y1 = 0, z1 = 0;
    std::vector<double> u1;
};

// Evaluate the truncated series at x0 in (0,1]; a0/b0 default to the series'
// exact values and may be overridden for parameter sweeps.
DulacValue eval_dulac(const DulacSeries& D, double x0, double y0, double z0,
                      std::optional<double> a0 = std::nullopt,
                      std::optional<double> b0 = std::nullopt);

// Smallest x0-exponent among nonzero terms beyond `order` (computed from a
// deeper symbolic run; assumes the omega content saturates, i.e. does not
// contribute growing powers -- true when only omega(kappa,.) with kappa <= 0
// at the evaluation point appear).  comp: 1=y, 2=z, 3+i=u_i.
std::optional<double> smallest_omitted_exponent(const NFCoeffs& nf, int comp, int order,
                                                double a0, double b0, int extra_levels = 3);

} // namespace dulac

#endif
