#pragma once

// JSON serialization of scalars, polynomials, operators, certificates and
// reports; parsing of model specifications.

#include "qes/numverify.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace qes {

using json = nlohmann::json;

struct ConfigError : Error {
    using Error::Error;
};

/// Significant digits for printed floats: QES_PRECISION, default 15.
inline int float_precision() {
    if (const char* env = std::getenv("QES_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 17) return static_cast<int>(v);
    }
    return 15;
}

/// Rounds to the configured number of significant digits.
inline double rounded(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", float_precision(), v);
    return std::strtod(buf, nullptr);
}

inline json to_json(const Scalar& s) {
    if (s.is_rational()) return to_string(s.a());
    return json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"r", to_string(s.radicand())}};
}

inline json to_json(const std::complex<double>& z) { return json{{"re", rounded(z.real())}, {"im", rounded(z.imag())}}; }

inline json to_json(const LaurentPoly& p) { return p.str(); }

inline json to_json(const DiffOp& op) {
    json out = json::object();
    for (const auto& [order, c] : op.terms()) {
        json row = json::object();
        for (const auto& [k, a] : c.terms()) row[std::to_string(k)] = to_json(a);
        out[std::to_string(order)] = row;
    }
    return out;
}

inline json to_json(const MatDiffOp2& op) {
    return json{{"var", var_name(op.var())},
                {"e11", to_json(op.e[0])},
                {"e12", to_json(op.e[1])},
                {"e21", to_json(op.e[2])},
                {"e22", to_json(op.e[3])}};
}

inline json to_json(const EllipticElement& u) {
    json parts = json::object();
    for (int i = 0; i < 8; ++i)
        if (!u.part(i).is_zero()) parts[EllipticMonomial::from_index(i).key()] = to_json(u.part(i));
    return json{{"ksq", to_json(u.ksq())}, {"parts", parts}};
}

inline json to_json(const MatEllipticOp& H) {
    return json{{"e11", to_json(H.potential[0])},
                {"e12", to_json(H.potential[1])},
                {"e21", to_json(H.potential[2])},
                {"e22", to_json(H.potential[3])}};
}

inline json to_json(const MixerSpec& m) {
    return json{{"orientation", m.orientation == MixerSpec::Orientation::upper ? "upper" : "lower"},
                {"kappa0", to_json(m.kappa0)},
                {"kappa1", to_json(m.kappa1)},
                {"kappa2", to_json(m.kappa2)},
                {"kappa3", to_json(m.kappa3)}};
}

inline json to_json(const SpaceDescriptor& sp) {
    json j{{"label", sp.label}, {"n", sp.n}, {"m", sp.m}, {"dim", sp.dim()}, {"var", var_name(sp.var)},
           {"mixer", to_json(sp.mixer)}};
    if (const auto* g = std::get_if<GaugeFactor>(&sp.prefactor))
        j["prefactor"] = json{{"kind", "gauge"}, {"eps", to_string(g->eps)}, {"W", to_json(g->W)}};
    else if (const auto* d = std::get_if<EllipticDiag>(&sp.prefactor))
        j["prefactor"] = json{{"kind", "elliptic"}, {"top", d->top.str()}, {"bottom", d->bottom.str()}};
    else
        j["prefactor"] = json{{"kind", "none"}};
    if (!sp.kappa_formula.empty()) j["kappa_formula"] = sp.kappa_formula;
    if (sp.kappa_sq) j["kappa_sq"] = to_string(*sp.kappa_sq);
    return j;
}

inline json to_json(const ExactMatrix& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(to_json(s));
    return a;
}

inline json to_json(const SpectrumReport& s) {
    json a = json::array();
    for (const auto& z : s.values) a.push_back(to_json(z));
    return a;
}

inline json to_json(const CertifyResult& r) {
    if (const auto* c = std::get_if<Certificate>(&r)) {
        return json{{"status", "certificate"},
                    {"dim", c->dim},
                    {"matrix", to_json(c->matrix)},
                    {"charpoly", to_json(c->charpoly)},
                    {"eigenvalues", to_json(algebraic_spectrum(*c))},
                    {"residual_zero", c->residual_zero},
                    {"space", to_json(c->space)}};
    }
    const auto& x = std::get<Counterexample>(r);
    return json{{"status", "counterexample"},
                {"failing_index", x.failing_index},
                {"residual", x.residual},
                {"locator", x.locator},
                {"space", to_json(x.space)}};
}

inline json to_json(const SpectrumMatchReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json j{{"algebraic", to_json(e.algebraic)}, {"confirmed", e.confirmed}};
        j["numeric"] = e.numeric ? json(rounded(*e.numeric)) : json(nullptr);
        j["rel_err"] = e.numeric ? json(rounded(e.rel_err)) : json(nullptr);
        if (!e.note.empty()) j["note"] = e.note;
        entries.push_back(j);
    }
    return json{{"entries", entries}, {"all_confirmed", rep.all_confirmed()}, {"confirmed", rep.confirmed_count()}};
}

// ---------------------------------------------------------------------------
// Config parsing

/// Rational from a JSON string ("p/q", decimal) or number.
inline Rational rational_field(const json& j, const std::string& key, const Rational& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_number()) return parse_rational(v.dump());
    } catch (const ParseError& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
    throw ConfigError("field '" + key + "' must be a rational string or a number");
}

inline int int_field(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
    return v.get<int>();
}

inline double double_field(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(rational_field(j, key, 0));
    throw ConfigError("field '" + key + "' must be a number");
}

inline std::string string_field(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError("field '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

struct SexticSpec {
    SexticParams params;
    Rational kappa1{0}, kappa2{0}, kappa3{0};
    std::optional<int> n;  // degree override of the top slot
};

struct LameSpec {
    LameParams params;
    std::optional<int> space;  // 1..8, all applicable when absent
    Rational d_kappa{0}, d_A{0}, d_two_theta_k{0};
};

struct GoldstoneSpec {
    Rational coupling{4};
    std::optional<int> space;  // 1..4
    int M = 2;
};

struct CalogeroSpec {
    CalogeroParams params;
    CalogeroReading reading = CalogeroReading::printed;
    CalogeroMixer mixer = CalogeroMixer::kappa0;
};

using ModelSpec = std::variant<SexticSpec, LameSpec, GoldstoneSpec, CalogeroSpec>;

inline int space_index(const json& j, char prefix, int lo, int hi) {
    const std::string s = string_field(j, "space", "");
    if (s.empty()) return 0;
    if (s.size() < 2 || s[0] != prefix) throw ConfigError("space must look like " + std::string(1, prefix) + std::to_string(lo));
    int idx = 0;
    try {
        idx = std::stoi(s.substr(1));
    } catch (const std::exception&) {
        throw ConfigError("bad space label '" + s + "'");
    }
    if (idx < lo || idx > hi) throw ConfigError("space label '" + s + "' out of range");
    return idx;
}

inline ModelSpec parse_model(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const std::string model = string_field(j, "model", "");
    if (model == "sextic") {
        SexticSpec s;
        auto& p = s.params;
        p.p1 = rational_field(j, "p1", p.p1);
        p.p2 = rational_field(j, "p2", p.p2);
        p.kappa0 = rational_field(j, "kappa0", p.kappa0);
        p.m = int_field(j, "m", p.m);
        p.eps = rational_field(j, "eps", p.eps);
        s.kappa1 = rational_field(j, "kappa1", 0);
        s.kappa2 = rational_field(j, "kappa2", 0);
        s.kappa3 = rational_field(j, "kappa3", 0);
        if (j.contains("n")) s.n = int_field(j, "n", 0);
        return s;
    }
    if (model == "lame") {
        LameSpec s;
        auto& p = s.params;
        p.lame_case = int_field(j, "case", p.lame_case);
        p.m = int_field(j, "m", p.m);
        p.delta = rational_field(j, "delta", p.delta);
        p.ksq = rational_field(j, "ksq", p.ksq);
        if (j.contains("flip_kappa")) p.flip_kappa = j.at("flip_kappa").get<bool>();
        if (int idx = space_index(j, 'V', 1, 8)) s.space = idx;
        if (j.contains("perturb")) {
            const json& d = j.at("perturb");
            s.d_kappa = rational_field(d, "kappa", 0);
            s.d_A = rational_field(d, "A", 0);
            s.d_two_theta_k = rational_field(d, "two_theta_k", 0);
        }
        return s;
    }
    if (model == "goldstone") {
        GoldstoneSpec s;
        s.coupling = rational_field(j, "coupling", s.coupling);
        s.M = int_field(j, "M", s.M);
        if (int idx = space_index(j, 'G', 1, 4)) s.space = idx;
        return s;
    }
    if (model == "calogero") {
        CalogeroSpec s;
        auto& p = s.params;
        p.N = int_field(j, "N", p.N);
        p.nu = rational_field(j, "nu", p.nu);
        p.p1 = rational_field(j, "p1", p.p1);
        p.p2 = rational_field(j, "p2", p.p2);
        p.eps = rational_field(j, "eps", p.eps);
        p.m = int_field(j, "m", p.m);
        p.kappa0 = rational_field(j, "kappa0", p.kappa0);
        const std::string reading = string_field(j, "reading", "printed");
        if (reading == "printed") s.reading = CalogeroReading::printed;
        else if (reading == "gauge_quartic") s.reading = CalogeroReading::gauge_quartic;
        else if (reading == "gauge_quadratic") s.reading = CalogeroReading::gauge_quadratic;
        else throw ConfigError("unknown Calogero reading '" + reading + "'");
        const std::string mixer = string_field(j, "mixer", "kappa0");
        if (mixer == "kappa0") s.mixer = CalogeroMixer::kappa0;
        else if (mixer == "kappa0/p2") s.mixer = CalogeroMixer::kappa0_over_p2;
        else throw ConfigError("unknown Calogero mixer '" + mixer + "'");
        return s;
    }
    throw ConfigError(model.empty() ? "missing field 'model'" : "unknown model '" + model + "'");
}

inline json model_echo(const ModelSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SexticSpec>) {
                const auto& p = s.params;
                json j{{"model", "sextic"}, {"p1", to_string(p.p1)}, {"p2", to_string(p.p2)}, {"kappa0", to_string(p.kappa0)},
                       {"m", p.m}, {"eps", to_string(p.eps)}};
                if (s.kappa1 != 0) j["kappa1"] = to_string(s.kappa1);
                if (s.kappa2 != 0) j["kappa2"] = to_string(s.kappa2);
                if (s.kappa3 != 0) j["kappa3"] = to_string(s.kappa3);
                if (s.n) j["n"] = *s.n;
                return j;
            } else if constexpr (std::is_same_v<T, LameSpec>) {
                const auto& p = s.params;
                json j{{"model", "lame"}, {"case", p.lame_case}, {"m", p.m}, {"delta", to_string(p.delta)}, {"ksq", to_string(p.ksq)}};
                if (s.space) j["space"] = "V" + std::to_string(*s.space);
                if (p.flip_kappa) j["flip_kappa"] = true;
                return j;
            } else if constexpr (std::is_same_v<T, GoldstoneSpec>) {
                json j{{"model", "goldstone"}, {"coupling", to_string(s.coupling)}, {"M", s.M}};
                if (s.space) j["space"] = "G" + std::to_string(*s.space);
                return j;
            } else {
                const auto& p = s.params;
                return json{{"model", "calogero"}, {"N", p.N}, {"nu", to_string(p.nu)}, {"p1", to_string(p.p1)},
                            {"p2", to_string(p.p2)}, {"eps", to_string(p.eps)}, {"m", p.m},
                            {"kappa0", to_string(p.kappa0)}, {"reading", reading_name(s.reading)},
                            {"mixer", mixer_name(s.mixer)}};
            }
        },
        spec);
}

}  // namespace qes
