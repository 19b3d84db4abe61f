#ifndef DULAC_VECTORFIELD_HPP
#define DULAC_VECTORFIELD_HPP

#include <array>
#include <map>
#include <vector>

#include "dulac/resonance.hpp"
#include "dulac/ujet.hpp"

namespace dulac {

// Component index: 0 = x, 1 = y, 2 = z, 3+i = u_i.
using Mono = std::array<int, 3>; // exponents of (x,y,z)

struct TermKey {
    int comp;
    Mono mono;
    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

using VFTerms = std::map<TermKey, UJet>;

inline int mono_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

// A truncated polynomial vector field in pre-normal form:
//   x' = x + f_x,  y' = -alpha(u) y + f_y,  z' = -beta(u) z + f_z,
//   u_i' = f_{u_i},
// with every f-term of normal degree in [2, K+1] (grade 1..K) and UJet
// coefficients at a single global jet order J.  The grade-0 slice is exactly
// A(u) = diag(1, -alpha(u), -beta(u)); anything else at degree <= 1 is not a
// pre-normal form and is rejected at construction.
//
// Co-dimension-2 manifolds are modeled as the same object with trivial
// z-dynamics (no z-terms anywhere).
class PolyVectorField {
  public:
    PolyVectorField() = default;
    PolyVectorField(int k, int J, int K, UJet alpha, UJet beta);

    int centre_dim() const { return k_; }
    int jet_order() const { return J_; }
    int max_grade() const { return K_; }
    int ncomp() const { return 3 + k_; }
    const UJet& alpha() const { return alpha_; }
    const UJet& beta() const { return beta_; }
    EigenData eig() const;

    const VFTerms& terms() const { return terms_; }
    void add_term(int comp, const Mono& mono, const UJet& coeff);
    const UJet* term(int comp, const Mono& mono) const;

    // linear + nonlinear terms in one map (for bracket arithmetic)
    VFTerms full_terms() const;

    // right-hand side at a numeric state (x,y,z,u_1..u_k)
    std::vector<double> rhs(const std::vector<double>& state) const;

    friend bool operator==(const PolyVectorField& x, const PolyVectorField& y) {
        return x.k_ == y.k_ && x.J_ == y.J_ && x.K_ == y.K_ && x.alpha_ == y.alpha_ &&
               x.beta_ == y.beta_ && x.terms_ == y.terms_;
    }

  private:
    int k_ = 1, J_ = 0, K_ = 1;
    UJet alpha_, beta_;
    VFTerms terms_;
};

// Scalar polynomial functions c(x,y,z,u) with UJet coefficients; used for the
// time-rescaling factor.
using ScalarPoly = std::map<Mono, UJet>;

double scalar_eval(const ScalarPoly& s, const std::vector<double>& state);

// Degree slices: slice d holds the grade-d terms (normal degree d+1); slice 0
// is empty by the pre-normal-form invariant (the linear part lives in A).
struct GradedField {
    std::vector<VFTerms> slices; // index d = 0..K
};

GradedField grade(const PolyVectorField& X);

// Homogeneous generator of the degree-d transformation.
struct Generator {
    int degree = 0; // terms have normal degree == degree+1
    VFTerms terms;
    bool is_zero() const { return terms.empty(); }
};

// One degree of the modified cohomological equation: splits the slice into a
// removable part (the generator) and the resonant remainder, coefficient by
// coefficient via unit inversion / Weierstrass division.
struct CohomResult {
    Generator U;
    VFTerms resid;
};
CohomResult cohom_solve(const VFTerms& slice, int d, const PolyVectorField& X);

// Pull back X along the time-1 flow of U: truncated Lie series
// exp(ad_U) X = sum_j ad_U^j X / j!, exact at normal degree <= K+1.
PolyVectorField apply_generator(const PolyVectorField& X, const Generator& U);

// Divide the field by 1+h where x' = x(1+h); trajectories unchanged up to
// time parametrization.  Throws NonUnitTimeFactor if the x-component is not
// of that shape.
struct RescaleResult {
    PolyVectorField field;
    ScalarPoly time_factor; // 1 + h
};
RescaleResult rescale_time(const PolyVectorField& X);

struct NormalizeResult {
    PolyVectorField nf;
    std::vector<Generator> generators;
    ScalarPoly time_factor; // exp-chain conjugates the input to time_factor * nf
};
NormalizeResult normalize(const PolyVectorField& X, int K);

// multiply a field by a scalar polynomial (used to rebuild time_factor * nf)
PolyVectorField scalar_multiply(const PolyVectorField& X, const ScalarPoly& s);

// true iff every term is a resonant monomial for X's eigendata
bool is_normal_form(const PolyVectorField& X);

} // namespace dulac

#endif
