#include "dulac/io.hpp"

#include <fstream>
#include <sstream>


namespace dulac {

namespace {

std::string index_str(const UJet::Index& idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + ")";
}

UJet::Index parse_index(const std::string& s, int k) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("bad multi-index '" + s + "'");
    UJet::Index idx;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ParseError("bad multi-index '" + s + "'");
        idx.push_back(std::stoi(tok));
    }
    if (static_cast<int>(idx.size()) != k)
        throw ParseError("multi-index '" + s + "' has wrong length (centre_dim = " +
                         std::to_string(k) + ")");
    return idx;
}

int component_id(const std::string& name, int k) {
    if (name == "x") return 0;
    if (name == "y") return 1;
    if (name == "z") return 2;
    if (name.size() >= 2 && name[0] == 'u') {
        int i = std::stoi(name.substr(1));
        if (i >= 1 && i <= k) return 2 + i;
    }
    throw ParseError("unknown component '" + name + "'");
}

std::string component_name(int comp) {
    switch (comp) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "z";
        default: return "u" + std::to_string(comp - 2);
    }
}

} // namespace

json jet_to_json(const UJet& jet) {
    json j = json::object();
    for (auto& [idx, c] : jet.terms()) j[index_str(idx)] = to_string(c);
    return j;
}

UJet jet_from_json(const json& j, int k, int J) {
    UJet out(k, J);
    if (!j.is_object()) throw ParseError("jet coefficients must be an object");
    for (auto& [key, val] : j.items()) {
        UJet::Index idx = parse_index(key, k);
        out.set_coeff(idx, parse_rational(val.get<std::string>()));
    }
    return out;
}

PolyVectorField field_from_json(const json& j) {
    try {
        int k = j.at("centre_dim").get<int>();
        int J = j.at("jet_order").get<int>();
        int K = j.at("degree").get<int>();
        int normal_dim = j.value("normal_dim", 3);
        if (normal_dim != 2 && normal_dim != 3)
            throw ParseError("normal_dim must be 2 or 3");
        Rational alpha = parse_rational(j.at("eigenvalues").at("alpha").get<std::string>());
        Rational beta = parse_rational(j.at("eigenvalues").at("beta").get<std::string>());
        UJet alpha_jet = UJet::constant(k, J, alpha);
        UJet beta_jet = UJet::constant(k, J, beta);
        if (j.contains("alpha_jet")) {
            alpha_jet = jet_from_json(j.at("alpha_jet"), k, J);
            if (alpha_jet.value_at_zero() != alpha)
                throw ParseError("alpha_jet constant term must equal eigenvalues.alpha");
        }
        if (j.contains("beta_jet")) {
            beta_jet = jet_from_json(j.at("beta_jet"), k, J);
            if (beta_jet.value_at_zero() != beta)
                throw ParseError("beta_jet constant term must equal eigenvalues.beta");
        }
        PolyVectorField X(k, J, K, alpha_jet, beta_jet);
        if (j.contains("terms")) {
            for (auto& t : j.at("terms")) {
                int comp = component_id(t.at("component").get<std::string>(), k);
                auto ex = t.at("exponents");
                if (!ex.is_array() || ex.size() != 3)
                    throw ParseError("exponents must be an [n1,n2,n3] triple");
                Mono m{ex[0].get<int>(), ex[1].get<int>(), ex[2].get<int>()};
                if (normal_dim == 2 && (comp == 2 || m[2] != 0))
                    throw ParseError("normal_dim 2 forbids z-terms and z-exponents");
                X.add_term(comp, m, jet_from_json(t.at("coeff"), k, J));
            }
        }
        return X;
    } catch (const json::exception& e) {
        throw ParseError(std::string("vector field spec: ") + e.what());
    }
}

json field_to_json(const PolyVectorField& X, int normal_dim) {
    json j;
    j["eigenvalues"] = {{"alpha", to_string(X.alpha().value_at_zero())},
                        {"beta", to_string(X.beta().value_at_zero())}};
    j["centre_dim"] = X.centre_dim();
    j["jet_order"] = X.jet_order();
    j["degree"] = X.max_grade();
    j["normal_dim"] = normal_dim;
    if (!X.alpha().is_constant()) j["alpha_jet"] = jet_to_json(X.alpha());
    if (!X.beta().is_constant()) j["beta_jet"] = jet_to_json(X.beta());
    json terms = json::array();
    for (auto& [key, jet] : X.terms()) {
        json t;
        t["component"] = component_name(key.comp);
        t["exponents"] = {key.mono[0], key.mono[1], key.mono[2]};
        t["coeff"] = jet_to_json(jet);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

json generators_to_json(const NormalizeResult& r) {
    json j;
    json gens = json::array();
    for (auto& g : r.generators) {
        json t;
        t["degree"] = g.degree;
        json terms = json::array();
        for (auto& [key, jet] : g.terms) {
            json e;
            e["component"] = component_name(key.comp);
            e["exponents"] = {key.mono[0], key.mono[1], key.mono[2]};
            e["coeff"] = jet_to_json(jet);
            terms.push_back(std::move(e));
        }
        t["terms"] = std::move(terms);
        gens.push_back(std::move(t));
    }
    j["generators"] = std::move(gens);
    json tf = json::array();
    for (auto& [mono, jet] : r.time_factor) {
        json e;
        e["exponents"] = {mono[0], mono[1], mono[2]};
        e["coeff"] = jet_to_json(jet);
        tf.push_back(std::move(e));
    }
    j["time_factor"] = std::move(tf);
    return j;
}

std::pair<std::vector<Generator>, ScalarPoly> generators_from_json(const json& j, int k, int J) {
    std::vector<Generator> gens;
    for (auto& t : j.at("generators")) {
        Generator g;
        g.degree = t.at("degree").get<int>();
        for (auto& e : t.at("terms")) {
            int comp = component_id(e.at("component").get<std::string>(), k);
            auto ex = e.at("exponents");
            Mono m{ex[0].get<int>(), ex[1].get<int>(), ex[2].get<int>()};
            g.terms[TermKey{comp, m}] = jet_from_json(e.at("coeff"), k, J);
        }
        gens.push_back(std::move(g));
    }
    ScalarPoly tf;
    for (auto& e : j.at("time_factor")) {
        auto ex = e.at("exponents");
        Mono m{ex[0].get<int>(), ex[1].get<int>(), ex[2].get<int>()};
        tf[m] = jet_from_json(e.at("coeff"), k, J);
    }
    return {std::move(gens), std::move(tf)};
}

json exppoly_to_json(const ExpPoly& p) {
    json terms = json::array();
    for (auto& [k, c] : p.terms()) {
        json t;
        t["key"] = {k.j, k.n1, k.n2};
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

ExpPoly exppoly_from_json(const json& j) {
    ExpPoly p;
    for (auto& t : j) {
        auto key = t.at("key");
        p.add_term({key[0].get<int>(), key[1].get<int>(), key[2].get<int>()},
                   parse_ratfunc(t.at("coeff").get<std::string>()));
    }
    return p;
}

json omegapoly_to_json(const OmegaPoly& w) {
    json terms = json::array();
    for (auto& [k, c] : w.terms()) {
        json t;
        t["exps"] = {k[0], k[1], k[2], k[3], k[4]};
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

OmegaPoly omegapoly_from_json(const json& j) {
    OmegaPoly w;
    for (auto& t : j) {
        auto e = t.at("exps");
        OmegaPoly::Key k{e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>(),
                         e[4].get<int>()};
        w.add_term(k, parse_ratfunc(t.at("coeff").get<std::string>()));
    }
    return w;
}

json dulac_series_to_json(const DulacSeries& D) {
    json j;
    j["case"] = D.eig.case2 ? 2 : 1;
    j["eigenvalues"] = {{"alpha", to_string(D.eig.alpha0)}, {"beta", to_string(D.eig.beta0)}};
    if (D.eig.case2) {
        j["m"] = D.eig.m;
        j["p"] = D.eig.p;
        j["q"] = D.eig.q;
        j["gamma1"] = {{"rational", to_string(D.eig.alpha0 - Rational(D.eig.m) * D.eig.beta0)},
                       {"symbolic", "a - " + std::to_string(D.eig.m) + "*b"}};
    }
    j["a0"] = to_string(D.a0);
    j["b0"] = to_string(D.b0);
    json u0 = json::array();
    for (auto& u : D.u0) u0.push_back(to_string(u));
    j["u0"] = std::move(u0);
    j["order"] = D.order;
    j["convention"] = "y1 carries x0^{alpha(u0)} and z1 carries x0^{beta(u0)} "
                      "(the integrated-system convention of the linear case)";
    json terms = json::array();
    auto emit = [&terms](const std::string& name, const DulacComponent& comp) {
        for (auto& e : comp.entries) {
            json t;
            t["component"] = name;
            if (e.lattice) {
                t["n1"] = e.lattice->first;
                t["n2"] = e.lattice->second;
            } else {
                t["n1"] = nullptr;
                t["n2"] = nullptr;
            }
            t["y0_exponent"] = e.e[0];
            t["z0_exponent"] = e.e[1];
            t["x0_exponent"] = to_string(e.x0_exp);
            t["coefficient"] = omegapoly_to_json(e.coeff);
            if (e.special_coeff != 0) t["special_coeff"] = to_string(e.special_coeff);
            terms.push_back(std::move(t));
        }
    };
    emit("y1", D.y);
    emit("z1", D.z);
    for (std::size_t i = 0; i < D.u.size(); ++i) emit("u1_" + std::to_string(i + 1), D.u[i]);
    j["terms"] = std::move(terms);
    return j;
}

DulacSeries dulac_series_from_json(const json& j) {
    DulacSeries D;
    Rational alpha = parse_rational(j.at("eigenvalues").at("alpha").get<std::string>());
    Rational beta = parse_rational(j.at("eigenvalues").at("beta").get<std::string>());
    D.eig = classify(alpha, beta);
    D.a0 = parse_rational(j.at("a0").get<std::string>());
    D.b0 = parse_rational(j.at("b0").get<std::string>());
    for (auto& u : j.at("u0")) D.u0.push_back(parse_rational(u.get<std::string>()));
    D.k = static_cast<int>(D.u0.size());
    D.order = j.at("order").get<int>();
    D.u.resize(D.u0.size());
    for (auto& t : j.at("terms")) {
        DulacEntry e;
        e.e = SeriesKey{t.at("y0_exponent").get<long>(), t.at("z0_exponent").get<long>()};
        if (!t.at("n1").is_null())
            e.lattice = std::make_pair(t.at("n1").get<long>(), t.at("n2").get<long>());
        e.x0_exp = parse_rational(t.at("x0_exponent").get<std::string>());
        e.coeff = omegapoly_from_json(t.at("coefficient"));
        if (t.contains("special_coeff"))
            e.special_coeff = parse_rational(t.at("special_coeff").get<std::string>());
        std::string name = t.at("component").get<std::string>();
        if (name == "y1")
            D.y.entries.push_back(std::move(e));
        else if (name == "z1")
            D.z.entries.push_back(std::move(e));
        else if (name.rfind("u1_", 0) == 0)
            D.u[static_cast<std::size_t>(std::stoi(name.substr(3)) - 1)].entries.push_back(std::move(e));
        else
            throw ParseError("unknown series component '" + name + "'");
    }
    return D;
}

PolyVectorField load_field(const std::string& path) { return field_from_json(load_json(path)); }

void save_field(const std::string& path, const PolyVectorField& X, int normal_dim) {
    save_json(path, field_to_json(X, normal_dim));
}

void save_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace {

// omega-basis indeterminates under t = -ln x0, in the paper's notation
const char* kOmegaNames[5] = {"omega(a,x0)", "omega(-a,x0)", "omega(b,x0)", "omega(-b,x0)",
                              "(-ln x0)"};

std::string omega_pretty(const OmegaPoly& w) {
    if (w.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : w.terms()) {
        if (!first) os << " + ";
        first = false;
        bool trivial = true;
        for (int e : k) trivial = trivial && e == 0;
        os << (c.is_constant() && c.den().is_one() ? c.str() : "(" + c.str() + ")");
        for (std::size_t i = 0; i < 5; ++i) {
            if (k[i] == 0) continue;
            os << "*" << kOmegaNames[i];
            if (k[i] > 1) os << "^" << k[i];
        }
        (void)trivial;
    }
    return os.str();
}

std::string x0_power(const Rational& e) {
    if (e == 0) return "";
    if (e == 1) return " * x0";
    return " * x0^(" + to_string(e) + ")";
}

std::string var_power(const char* v, long e) {
    if (e == 0) return "";
    if (e == 1) return std::string(" * ") + v;
    return std::string(" * ") + v + "^" + std::to_string(e);
}

void pretty_component(std::ostringstream& os, const std::string& lhs, const DulacComponent& comp,
                      const char* prefactor, const Rational& rho, const std::string& base) {
    os << lhs << " ~ ";
    if (prefactor) os << "x0^" << prefactor << " * ( ";
    bool first = true;
    if (!base.empty()) {
        os << base;
        first = false;
    }
    std::optional<Rational> lead_correction;
    for (auto& e : comp.entries) {
        bool leading = (prefactor && ((lhs == "y1" && e.e == SeriesKey{1, 0}) ||
                                      (lhs == "z1" && e.e == SeriesKey{0, 1})));
        if (leading) continue;
        Rational rel = e.x0_exp - (prefactor ? rho : Rational(0));
        if (!lead_correction || rel < *lead_correction) lead_correction = rel;
        os << "\n     " << (first ? "  " : "+ ");
        first = false;
        if (e.special_coeff != 0) {
            os << "alpha_{-1,0}" << var_power("z0", e.e[1]) << " * omega(gamma1, x0)";
            if (!e.coeff.is_zero()) os << " + ";
        }
        if (!e.coeff.is_zero() || e.special_coeff == 0) {
            os << "[" << omega_pretty(e.coeff) << "]" << x0_power(rel) << var_power("y0", e.e[0])
               << var_power("z0", e.e[1]);
        }
    }
    if (prefactor) os << " )";
    os << "\n";
    if (lead_correction)
        os << "     leading correction exponent (relative): " << to_string(*lead_correction)
           << "\n";
}

} // namespace

std::string pretty_dulac(const DulacSeries& D) {
    std::ostringstream os;
    os << "Dulac map, " << (D.eig.case2 ? "Case 2" : "Case 1") << ": alpha(0) = "
       << to_string(D.eig.alpha0) << ", beta(0) = " << to_string(D.eig.beta0);
    if (D.eig.case2)
        os << "  (m = " << D.eig.m << ", p = " << D.eig.p << ", q = " << D.eig.q
           << ", gamma1 = alpha - " << D.eig.m << "*beta)";
    os << "\n";
    os << "a = alpha1(u0) = " << to_string(D.a0) << ", b = beta1(u0) = " << to_string(D.b0)
       << ", truncation order " << D.order << "\n";
    os << "convention: y1 carries x0^alpha(u0), z1 carries x0^beta(u0)\n\n";
    pretty_component(os, "y1", D.y, "alpha(u0)", D.eig.alpha0, "y0");
    pretty_component(os, "z1", D.z, "beta(u0)", D.eig.beta0, "z0");
    for (std::size_t i = 0; i < D.u.size(); ++i)
        pretty_component(os, "u1_" + std::to_string(i + 1), D.u[i], nullptr, Rational(0),
                         "u0_" + std::to_string(i + 1));
    return os.str();
}

json report_to_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    bool all = true;
    for (auto& c : checks) {
        json e;
        e["name"] = c.name;
        e["expected"] = c.expected;
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(std::move(e));
        all = all && c.pass;
    }
    json j;
    j["checks"] = std::move(arr);
    j["pass"] = all;
    return j;
}

} // namespace dulac
