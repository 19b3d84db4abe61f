#include <doctest.h>

#include <cmath>
#include <random>

#include "dulac/dulac_map.hpp"
#include "dulac/oracle.hpp"
#include "helpers.hpp"

using namespace dulac;

namespace {
UJet cjet(int k, int J, const Rational& c) { return UJet::constant(k, J, c); }
} // namespace

TEST_CASE("integrate_flow: exact exponentials") {
    // x' = x from 0.01 over T = ln 100 lands on 1
    OdeRhs rhs = [](const std::vector<double>& s) { return std::vector<double>{s[0]}; };
    FlowResult r = integrate_flow(rhs, {0.01}, std::log(100.0), 1e-12);
    CHECK(std::abs(r.state[0] - 1.0) < 1e-10);
    CHECK(r.err_bound <= 10 * 1e-12);
    CHECK(r.steps > 0);

    // linear diagonal system matches the closed form
    PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(2, 3)), cjet(1, 1, Rational(1, 2)));
    FlowResult r2 = integrate_flow(X, {0.5, 1.0, -1.0, 0.3}, 2.0, 1e-12);
    CHECK(std::abs(r2.state[0] - 0.5 * std::exp(2.0)) < 1e-9);
    CHECK(std::abs(r2.state[1] - std::exp(-4.0 / 3)) < 1e-11);
    CHECK(std::abs(r2.state[2] + std::exp(-1.0)) < 1e-11);
    CHECK(std::abs(r2.state[3] - 0.3) < 1e-13);

    CHECK_THROWS_AS(integrate_flow(rhs, {1.0}, 1.0, 1e-3), ValidationError);
}

TEST_CASE("integrate_flow: blowup triggers StepUnderflow") {
    // x' = x^2 from x = 1 escapes to infinity at t = 1
    OdeRhs rhs = [](const std::vector<double>& s) { return std::vector<double>{s[0] * s[0]}; };
    CHECK_THROWS_AS(integrate_flow(rhs, {1.0}, 2.0, 1e-10), StepUnderflow);
}

TEST_CASE("integrate_flow: Case-2 resonant closed form") {
    // x'=x, y'=-y+z^2, z'=-z/2: y(T) = e^{-T}(y0 + z0^2 T)
    PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(1)), cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {0, 0, 2}, cjet(1, 1, Rational(1)));
    double T = 3.0, y0 = 0.7, z0 = -1.1;
    FlowResult r = integrate_flow(X, {0.01, y0, z0, 0.0}, T, 1e-12);
    double want = std::exp(-T) * (y0 + z0 * z0 * T);
    CHECK(std::abs(r.state[1] - want) < 1e-11);
}

TEST_CASE("integrator: halving tolerance does not worsen achieved error") {
    PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(1)), cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {0, 0, 2}, cjet(1, 1, Rational(1)));
    double T = 2.0;
    double prev = 1e9;
    for (double tol : {1e-7, 1e-9, 1e-11, 1e-13}) {
        FlowResult r = integrate_flow(X, {0.1, 1.0, 1.0, 0.0}, T, tol);
        double want = std::exp(-T) * (1.0 + T);
        double err = std::abs(r.state[1] - want);
        CHECK(err < std::max(prev * 1.5, 1e-13)); // monotone modulo floor
        prev = err;
    }
}

TEST_CASE("numerical_dulac: spec examples") {
    SUBCASE("linear field") {
        PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(2, 3)), cjet(1, 1, Rational(1, 2)));
        auto out = numerical_dulac(X, 0.1, 0.8, 0.5, {0.2}, 1e-12);
        CHECK(std::abs(out[0] - std::pow(0.1, 2.0 / 3) * 0.8) < 1e-11);
        CHECK(std::abs(out[1] - std::pow(0.1, 0.5) * 0.5) < 1e-11);
        CHECK(std::abs(out[2] - 0.2) < 1e-12);
    }
    SUBCASE("Case-2 example lands on 0.01 (1 + ln 100)") {
        PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(1)), cjet(1, 1, Rational(1, 2)));
        X.add_term(1, {0, 0, 2}, cjet(1, 1, Rational(1)));
        auto out = numerical_dulac(X, 0.01, 1.0, 1.0, {0.0}, 1e-12);
        CHECK(std::abs(out[0] - 0.01 * (1 + std::log(100.0))) < 1e-10);
        CHECK(std::abs(out[1] - 0.1) < 1e-11); // z1 = x0^{1/2} z0
    }
    SUBCASE("u stays constant when no u-terms") {
        PolyVectorField X(2, 1, 2, cjet(2, 1, Rational(1)), cjet(2, 1, Rational(1, 2)));
        X.add_term(1, {0, 1, 1}, cjet(2, 1, Rational(1, 3)));
        auto out = numerical_dulac(X, 0.05, 0.3, 0.4, {0.7, -0.2}, 1e-11);
        CHECK(std::abs(out[2] - 0.7) < 2e-11);
        CHECK(std::abs(out[3] + 0.2) < 2e-11);
    }
    SUBCASE("x-terms are refused") {
        PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(1)), cjet(1, 1, Rational(1, 2)));
        X.add_term(0, {1, 1, 0}, cjet(1, 1, Rational(1)));
        CHECK_THROWS_AS(numerical_dulac(X, 0.1, 1, 1, {0.0}, 1e-10), ValidationError);
    }
}

TEST_CASE("brute_resonance agrees with enumerate_resonances") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> num(1, 9), den(1, 5);
    int done = 0;
    while (done < 10) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        if (a < b) std::swap(a, b);
        if (!(b > 0)) continue;
        EigenData eig = classify(a, b);
        CHECK(brute_resonance(eig, 10) == enumerate_resonances(eig, 10));
        ++done;
    }
    EigenData c2 = classify(Rational(1), Rational(1, 2));
    CHECK(brute_resonance(c2, 1).empty());
    CHECK(brute_resonance(c2, 6).count({{0, 0, 2}, Component::Y}) == 1);
}

TEST_CASE("numerical_dulac: full system vs decoupled subsystem") {
    // u-dependent alpha and a moving centre exercise both routes properly
    int J = 2;
    UJet alpha = cjet(1, J, Rational(2, 3)) + UJet::variable(1, J, 0);
    PolyVectorField X(1, J, 7, alpha, cjet(1, J, Rational(1, 2)));
    X.add_term(3, {2, 3, 0}, cjet(1, J, Rational(1, 2)));
    X.add_term(1, {1, 1, 2}, cjet(1, J, Rational(1, 3)));
    NFCoeffs nf = nf_coeffs_from_field(X, {Rational(1, 20)});
    double tol = 1e-12;
    for (double x0 : {0.2, 0.05}) {
        auto full = numerical_dulac(X, x0, 0.9, 0.7, {0.05}, tol);
        auto dec = numerical_dulac_decoupled(nf, x0, 0.9, 0.7, tol);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(full[static_cast<std::size_t>(i)] - dec[static_cast<std::size_t>(i)]) <
                  50 * tol);
    }
}

TEST_CASE("conjugacy_check: empty generator list on X = NF sits at the floor") {
    PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(1)), cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {0, 0, 2}, cjet(1, 1, Rational(1)));
    std::vector<double> amps{0.1, 0.05, 0.02, 0.01, 0.005};
    SlopeFit fit = conjugacy_check(X, {}, X, amps, {0.9, 0.7, -0.8, 0.4}, 0.6, 1e-12);
    CHECK(fit.degenerate);
}

TEST_CASE("conjugacy_check: single degree-1 generator gives slope 3 for K = 1") {
    PolyVectorField X(1, 1, 1, cjet(1, 1, Rational(2, 3)), cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {1, 0, 1}, cjet(1, 1, Rational(1)));
    X.add_term(2, {1, 1, 0}, cjet(1, 1, Rational(-1, 2)));
    NormalizeResult r = normalize(X, 1);
    REQUIRE(r.generators.size() == 1);
    CHECK(r.generators[0].degree == 1);
    PolyVectorField nfs = scalar_multiply(r.nf, r.time_factor);
    std::vector<double> amps;
    for (int i = 0; i <= 12; ++i) amps.push_back(std::pow(10.0, -1.0 - i / 6.0));
    SlopeFit fit = conjugacy_check(X, r.generators, nfs, amps, {0.9, 0.8, -0.7, 0.5}, 0.5, 1e-13);
    REQUIRE_FALSE(fit.degenerate);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("conjugacy slope is independent of T on [0.1, 1]") {
    PolyVectorField X(1, 1, 2, cjet(1, 1, Rational(2, 3)), cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {1, 0, 1}, cjet(1, 1, Rational(1)));
    X.add_term(2, {0, 1, 1}, cjet(1, 1, Rational(1, 2)));
    X.add_term(1, {2, 1, 0}, cjet(1, 1, Rational(-1, 3)));
    NormalizeResult r = normalize(X, 2);
    PolyVectorField nfs = scalar_multiply(r.nf, r.time_factor);
    std::vector<double> amps;
    for (int i = 0; i <= 12; ++i) amps.push_back(std::pow(10.0, -1.0 - i / 6.0));
    std::vector<double> dir{0.9, 0.8, -0.7, 0.5};
    SlopeFit f1 = conjugacy_check(X, r.generators, nfs, amps, dir, 0.1, 1e-13);
    SlopeFit f2 = conjugacy_check(X, r.generators, nfs, amps, dir, 1.0, 1e-13);
    REQUIRE_FALSE(f1.degenerate);
    REQUIRE_FALSE(f2.degenerate);
    CHECK(f1.slope == doctest::Approx(4.0).epsilon(0.1));
    CHECK(f2.slope == doctest::Approx(4.0).epsilon(0.1));
    CHECK(std::abs(f1.slope - f2.slope) < 0.4);
}

TEST_CASE("fit_slope recovers exponents and reports degeneracy") {
    std::vector<double> xs, ys, flat;
    for (int i = 0; i <= 9; ++i) {
        double x = std::pow(10.0, -1.0 - 0.25 * i);
        xs.push_back(x);
        ys.push_back(3.5 * std::pow(x, 2.75));
        flat.push_back(1e-16);
    }
    SlopeFit fit = fit_slope(xs, ys, 1e-14);
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.slope == doctest::Approx(2.75).epsilon(1e-6));
    CHECK(fit.residual < 1e-9);
    SlopeFit deg = fit_slope(xs, flat, 1e-14);
    CHECK(deg.degenerate);
}
