#include "dulac/vectorfield.hpp"

namespace dulac {

namespace {

void add_into(VFTerms& acc, const TermKey& key, const UJet& jet) {
    if (jet.is_zero()) return;
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc[key] = jet;
    } else {
        it->second += jet;
        if (it->second.is_zero()) acc.erase(it);
    }
}

// [V,W]^c = sum_{c'} V^{c'} d_{c'} W^c - W^{c'} d_{c'} V^c, truncated at
// normal degree <= maxdeg.  d over normal variables acts on monomials, d over
// centre variables acts on the jet coefficients.
VFTerms bracket(const VFTerms& V, const VFTerms& W, int maxdeg) {
    VFTerms out;
    auto accumulate = [&](const VFTerms& A, const VFTerms& B, int sign) {
        // sign * A^{c'} d_{c'} B^c
        for (auto& [kb, jb] : B) {
            for (auto& [ka, ja] : A) {
                int cp = ka.comp;
                if (cp < 3) {
                    int e = kb.mono[static_cast<std::size_t>(cp)];
                    if (e == 0) continue;
                    Mono m = kb.mono;
                    m[static_cast<std::size_t>(cp)] -= 1;
                    Mono sum{m[0] + ka.mono[0], m[1] + ka.mono[1], m[2] + ka.mono[2]};
                    if (mono_degree(sum) > maxdeg) continue;
                    add_into(out, TermKey{kb.comp, sum}, ja * jb * Rational(sign * e));
                } else {
                    UJet dj = jb.derivative(cp - 3);
                    if (dj.is_zero()) continue;
                    Mono sum{kb.mono[0] + ka.mono[0], kb.mono[1] + ka.mono[1],
                             kb.mono[2] + ka.mono[2]};
                    if (mono_degree(sum) > maxdeg) continue;
                    add_into(out, TermKey{kb.comp, sum}, ja * dj * Rational(sign));
                }
            }
        }
    };
    accumulate(V, W, +1);
    accumulate(W, V, -1);
    return out;
}

// eigenvalue jet of the modified homological operator on x^mono d/d(comp):
// <lambda(u), mono> - lambda_comp(u) with lambda = (1, -alpha, -beta, 0,..,0)
UJet cohom_eigen(const Mono& mono, int comp, const PolyVectorField& X) {
    int k = X.centre_dim(), J = X.jet_order();
    UJet f = UJet::constant(k, J, Rational(mono[0]));
    f -= X.alpha() * Rational(mono[1]);
    f -= X.beta() * Rational(mono[2]);
    if (comp == 0) f -= UJet::constant(k, J, Rational(1));
    if (comp == 1) f += X.alpha();
    if (comp == 2) f += X.beta();
    return f;
}

} // namespace

namespace {

std::string term_tag(const TermKey& key) {
    static const char* comps[3] = {"x", "y", "z"};
    std::string c = key.comp < 3 ? comps[key.comp] : "u" + std::to_string(key.comp - 2);
    return c + "-term (" + std::to_string(key.mono[0]) + "," + std::to_string(key.mono[1]) + "," +
           std::to_string(key.mono[2]) + ")";
}

} // namespace

CohomResult cohom_solve(const VFTerms& slice, int d, const PolyVectorField& X) {
    CohomResult res;
    res.U.degree = d;
    for (auto& [key, F] : slice) {
        if (mono_degree(key.mono) != d + 1)
            throw ValidationError("cohom_solve: slice term of wrong degree");
        UJet f = cohom_eigen(key.mono, key.comp, X);
        if (f.value_at_zero() != 0) {
            // non-resonant: the operator is a unit on this submodule
            res.U.terms[key] = F * invert_unit(f);
        } else if (f.is_zero()) {
            // the operator annihilates the submodule; the whole coefficient
            // survives and the generator gets the minimal (zero) choice
            res.resid[key] = F;
        } else {
            try {
                auto w = weierstrass_divide(F, f);
                if (!w.q.is_zero()) res.U.terms[key] = w.q;
                if (!w.r.is_zero()) res.resid[key] = w.r;
            } catch (const Error& e) {
                throw Error(std::string(e.what()) + " [while dividing the " + term_tag(key) +
                            " at degree " + std::to_string(d) + "]");
            }
        }
    }
    return res;
}

PolyVectorField apply_generator(const PolyVectorField& X, const Generator& U) {
    if (U.degree < 1) throw ValidationError("apply_generator: generator degree must be >= 1");
    for (auto& [key, jet] : U.terms) {
        (void)jet;
        if (mono_degree(key.mono) != U.degree + 1)
            throw ValidationError("apply_generator: generator not homogeneous");
    }
    int maxdeg = X.max_grade() + 1;
    VFTerms acc = X.full_terms();
    VFTerms term = acc;
    Rational fact(1);
    // ad_U raises normal degree by at least U.degree each time
    for (int s = 1; s * U.degree <= maxdeg; ++s) {
        term = bracket(U.terms, term, maxdeg);
        if (term.empty()) break;
        fact *= s;
        Rational inv = Rational(1) / fact;
        for (auto& [key, jet] : term) add_into(acc, key, jet * inv);
    }

    // reassemble; the linear slice is invariant under grade >= 1 generators
    PolyVectorField out(X.centre_dim(), X.jet_order(), X.max_grade(), X.alpha(), X.beta());
    UJet one = UJet::constant(X.centre_dim(), X.jet_order(), Rational(1));
    for (auto& [key, jet] : acc) {
        int deg = mono_degree(key.mono);
        if (deg >= 2) {
            out.add_term(key.comp, key.mono, jet);
            continue;
        }
        bool ok = (key.comp == 0 && key.mono == Mono{1, 0, 0} && jet == one) ||
                  (key.comp == 1 && key.mono == Mono{0, 1, 0} && jet == -X.alpha()) ||
                  (key.comp == 2 && key.mono == Mono{0, 0, 1} && jet == -X.beta());
        if (!ok) throw Error("apply_generator: linear slice changed (internal)");
    }
    return out;
}

namespace {

ScalarPoly scalar_mul(const ScalarPoly& a, const ScalarPoly& b, int maxdeg) {
    ScalarPoly out;
    for (auto& [ma, ja] : a)
        for (auto& [mb, jb] : b) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            if (mono_degree(m) > maxdeg) continue;
            UJet prod = ja * jb;
            if (prod.is_zero()) continue;
            auto it = out.find(m);
            if (it == out.end()) {
                out[m] = prod;
            } else {
                it->second += prod;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

} // namespace

RescaleResult rescale_time(const PolyVectorField& X) {
    int k = X.centre_dim(), J = X.jet_order(), maxdeg = X.max_grade() + 1;
    UJet one = UJet::constant(k, J, Rational(1));

    // x' = x (1 + h): every x-term must be divisible by x
    ScalarPoly h;
    for (auto& [key, jet] : X.terms()) {
        if (key.comp != 0) continue;
        if (key.mono[0] < 1)
            throw NonUnitTimeFactor("rescale_time: x-component term " +
                                    std::to_string(key.mono[0]) + "," + std::to_string(key.mono[1]) +
                                    "," + std::to_string(key.mono[2]) + " is not divisible by x");
        Mono m = key.mono;
        m[0] -= 1;
        h[m] = jet;
    }

    RescaleResult res;
    res.time_factor = h; // h has no constant term (its keys come from degree >= 2 x-terms)
    res.time_factor.emplace(Mono{0, 0, 0}, one);

    if (h.empty()) {
        res.field = X;
        return res;
    }

    // (1+h)^{-1} = sum (-h)^s; h has normal degree >= 1, so this terminates
    ScalarPoly inv{{Mono{0, 0, 0}, one}};
    ScalarPoly pw{{Mono{0, 0, 0}, one}};
    ScalarPoly mh;
    for (auto& [m, jet] : h) mh[m] = -jet;
    for (int s = 1; s <= maxdeg; ++s) {
        pw = scalar_mul(pw, mh, maxdeg);
        if (pw.empty()) break;
        for (auto& [m, jet] : pw) {
            auto it = inv.find(m);
            if (it == inv.end()) {
                inv[m] = jet;
            } else {
                it->second += jet;
                if (it->second.is_zero()) inv.erase(it);
            }
        }
    }

    PolyVectorField out(k, J, X.max_grade(), X.alpha(), X.beta());
    VFTerms scaled;
    for (auto& [key, jet] : X.full_terms()) {
        for (auto& [m, ijet] : inv) {
            Mono sum{key.mono[0] + m[0], key.mono[1] + m[1], key.mono[2] + m[2]};
            if (mono_degree(sum) > maxdeg) continue;
            add_into(scaled, TermKey{key.comp, sum}, jet * ijet);
        }
    }
    for (auto& [key, jet] : scaled) {
        int deg = mono_degree(key.mono);
        if (deg >= 2) {
            out.add_term(key.comp, key.mono, jet);
            continue;
        }
        // x(1+h)/(1+h) = x exactly; the linear slice must come back unchanged
        bool ok = (key.comp == 0 && key.mono == Mono{1, 0, 0} && jet == one) ||
                  (key.comp == 1 && key.mono == Mono{0, 1, 0} && jet == -X.alpha()) ||
                  (key.comp == 2 && key.mono == Mono{0, 0, 1} && jet == -X.beta());
        if (!ok) throw Error("rescale_time: linear slice changed (internal)");
    }
    res.field = std::move(out);
    return res;
}

NormalizeResult normalize(const PolyVectorField& X, int K) {
    if (K < 1) throw ValidationError("normalize: K must be >= 1");
    // working copy truncated at grade K
    PolyVectorField work(X.centre_dim(), X.jet_order(), K, X.alpha(), X.beta());
    for (auto& [key, jet] : X.terms())
        if (mono_degree(key.mono) <= K + 1) work.add_term(key.comp, key.mono, jet);

    NormalizeResult res;
    for (int d = 1; d <= K; ++d) {
        GradedField g = grade(work);
        auto& slice = g.slices[static_cast<std::size_t>(d)];
        if (slice.empty()) continue;
        CohomResult ch = cohom_solve(slice, d, work);
        if (ch.U.is_zero()) continue; // already resonant at this grade
        work = apply_generator(work, ch.U);
        res.generators.push_back(std::move(ch.U));
        // the transformed grade-d slice is exactly the resonant remainder
        GradedField g2 = grade(work);
        if (g2.slices[static_cast<std::size_t>(d)] != ch.resid)
            throw Error("normalize: cohomological equation not satisfied (internal)");
    }
    // one final time rescaling moves the x-resonances into the other
    // components; the generator chain conjugates X to time_factor * nf
    RescaleResult rs = rescale_time(work);
    res.nf = std::move(rs.field);
    res.time_factor = std::move(rs.time_factor);
    return res;
}

PolyVectorField scalar_multiply(const PolyVectorField& X, const ScalarPoly& s) {
    int maxdeg = X.max_grade() + 1;
    VFTerms scaled;
    for (auto& [key, jet] : X.full_terms())
        for (auto& [m, sjet] : s) {
            Mono sum{key.mono[0] + m[0], key.mono[1] + m[1], key.mono[2] + m[2]};
            if (mono_degree(sum) > maxdeg) continue;
            add_into(scaled, TermKey{key.comp, sum}, jet * sjet);
        }
    // the product is a vector field whose grade-0 slice must still be A(u)
    PolyVectorField out(X.centre_dim(), X.jet_order(), X.max_grade(), X.alpha(), X.beta());
    UJet one = UJet::constant(X.centre_dim(), X.jet_order(), Rational(1));
    for (auto& [key, jet] : scaled) {
        if (mono_degree(key.mono) >= 2) {
            out.add_term(key.comp, key.mono, jet);
            continue;
        }
        bool ok = (key.comp == 0 && key.mono == Mono{1, 0, 0} && jet == one) ||
                  (key.comp == 1 && key.mono == Mono{0, 1, 0} && jet == -X.alpha()) ||
                  (key.comp == 2 && key.mono == Mono{0, 0, 1} && jet == -X.beta());
        if (!ok) throw ValidationError("scalar_multiply: product is not in pre-normal form");
    }
    return out;
}

bool is_normal_form(const PolyVectorField& X) {
    EigenData eig = X.eig();
    auto res = enumerate_resonances(eig, X.max_grade() + 1);
    for (auto& [key, jet] : X.terms()) {
        (void)jet;
        Component c = key.comp == 0   ? Component::X
                      : key.comp == 1 ? Component::Y
                      : key.comp == 2 ? Component::Z
                                      : Component::U;
        ResonantMonomial rm{{key.mono[0], key.mono[1], key.mono[2]}, c};
        if (res.count(rm) == 0) return false;
    }
    return true;
}

} // namespace dulac
