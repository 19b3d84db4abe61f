#include "dulac/vectorfield.hpp"

#include <cmath>

namespace dulac {

PolyVectorField::PolyVectorField(int k, int J, int K, UJet alpha, UJet beta)
    : k_(k), J_(J), K_(K), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (k < 1) throw ValidationError("PolyVectorField: centre dimension must be >= 1");
    if (K < 1) throw ValidationError("PolyVectorField: truncation grade must be >= 1");
    if (alpha_.dim() != k || alpha_.order() != J || beta_.dim() != k || beta_.order() != J)
        throw DimensionMismatch("PolyVectorField: eigenvalue jets must match (k, J)");
    (void)eig(); // validates alpha(0) >= beta(0) > 0
}

EigenData PolyVectorField::eig() const {
    return classify(alpha_.value_at_zero(), beta_.value_at_zero());
}

void PolyVectorField::add_term(int comp, const Mono& mono, const UJet& coeff) {
    if (comp < 0 || comp >= ncomp()) throw ValidationError("add_term: component out of range");
    if (mono[0] < 0 || mono[1] < 0 || mono[2] < 0) throw ValidationError("add_term: negative exponent");
    int d = mono_degree(mono);
    if (d < 2)
        throw ValidationError("add_term: degree-" + std::to_string(d) +
                              " term; the grade-0 slice must be exactly A(u), so a pre-normal "
                              "form admits no other terms of normal degree <= 1");
    if (d > K_ + 1) throw ValidationError("add_term: degree exceeds truncation");
    if (coeff.dim() != k_ || coeff.order() != J_)
        throw DimensionMismatch("add_term: coefficient jet must match (k, J)");
    if (coeff.is_zero()) return;
    TermKey key{comp, mono};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_[key] = coeff;
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const UJet* PolyVectorField::term(int comp, const Mono& mono) const {
    auto it = terms_.find(TermKey{comp, mono});
    return it == terms_.end() ? nullptr : &it->second;
}

VFTerms PolyVectorField::full_terms() const {
    VFTerms out = terms_;
    out[TermKey{0, {1, 0, 0}}] = UJet::constant(k_, J_, Rational(1));
    UJet ma = -alpha_, mb = -beta_;
    if (!ma.is_zero()) out[TermKey{1, {0, 1, 0}}] = ma;
    if (!mb.is_zero()) out[TermKey{2, {0, 0, 1}}] = mb;
    return out;
}

std::vector<double> PolyVectorField::rhs(const std::vector<double>& state) const {
    if (static_cast<int>(state.size()) != ncomp())
        throw DimensionMismatch("PolyVectorField::rhs: state dimension");
    std::vector<double> u(state.begin() + 3, state.end());
    std::vector<double> out(static_cast<std::size_t>(ncomp()), 0.0);
    out[0] = state[0];
    out[1] = -alpha_.eval(u) * state[1];
    out[2] = -beta_.eval(u) * state[2];
    for (auto& [key, jet] : terms_) {
        double m = jet.eval(u);
        for (int i = 0; i < 3; ++i)
            for (int e = 0; e < key.mono[static_cast<std::size_t>(i)]; ++e) m *= state[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(key.comp)] += m;
    }
    return out;
}

double scalar_eval(const ScalarPoly& s, const std::vector<double>& state) {
    std::vector<double> u(state.begin() + 3, state.end());
    double acc = 0;
    for (auto& [mono, jet] : s) {
        double m = jet.eval(u);
        for (int i = 0; i < 3; ++i)
            for (int e = 0; e < mono[static_cast<std::size_t>(i)]; ++e) m *= state[static_cast<std::size_t>(i)];
        acc += m;
    }
    return acc;
}

GradedField grade(const PolyVectorField& X) {
    GradedField g;
    g.slices.assign(static_cast<std::size_t>(X.max_grade()) + 1, VFTerms{});
    for (auto& [key, jet] : X.terms()) {
        int d = mono_degree(key.mono) - 1;
        g.slices[static_cast<std::size_t>(d)][key] = jet;
    }
    return g;
}

} // namespace dulac
