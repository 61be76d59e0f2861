#pragma once

// qes2x2 command-line front end.
//   qes2x2 <verify|spectrum|crosscheck|scan|catalog> --config <path> [--out <path>] [--format json|csv]
// Exit codes: 0 success, 1 usage or config error, 2 counterexample,
// 3 certified but numerically unconfirmed.

#include "qes/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace qes::cli {

enum ExitCode { ok = 0, usage = 1, counterexample = 2, unconfirmed = 3 };

struct RunOptions {
    int npoints = 0;  // 0: 2000 on the line, 4096 periodic
    double tol = 1e-3;
    int count = 0;    // 0: enough to pass the largest algebraic value
    double L = 0;
    int samples = 100;
};

inline RunOptions parse_options(const json& j) {
    RunOptions o;
    o.npoints = int_field(j, "npoints", 0);
    o.tol = double_field(j, "tol", o.tol);
    o.count = int_field(j, "count", 0);
    o.L = double_field(j, "L", 0);
    o.samples = int_field(j, "samples", o.samples);
    if (o.tol <= 0) throw ConfigError("tol must be > 0");
    if (o.npoints != 0 && o.npoints < 64) throw ConfigError("npoints must be >= 64");
    return o;
}

/// One (model, space) pair to certify and optionally cross-check.
struct Target {
    std::string model;
    std::string label;
    std::optional<std::string> rejected;
    std::function<CertifyResult()> certify;
    std::function<std::vector<double>(int)> numeric;  // lowest `count` eigenvalues
    int numeric_size = 0;                            // matrix size of the numeric problem
    std::function<json(const Certificate&)> oracle;   // model-specific check (Calogero)
    bool decoupled = false;
    Scalar ksq;  // modulus of elliptic tracks
};

inline std::vector<Target> sextic_targets(const SexticSpec& s, const RunOptions& o) {
    const PolynomialModel model = build_sextic(s.params);
    SpaceDescriptor sp = model.space;
    sp.mixer = MixerSpec::upper(Scalar(s.params.kappa0), Scalar(s.kappa1), Scalar(s.kappa2), Scalar(s.kappa3));
    if (s.n) sp.n = *s.n;
    Target t;
    t.model = "sextic";
    t.label = sp.label;
    t.decoupled = s.params.kappa0 == 0 && s.kappa1 == 0 && s.kappa2 == 0 && s.kappa3 == 0;
    t.certify = [reduced = model.reduced, sp] { return certify_realized(reduced, sp); };
    if (s.params.p2 > 0 && is_zero_or_one(s.params.eps)) {
        const GridSpec grid{o.npoints ? o.npoints : 2000, o.L};
        t.numeric = [p = s.params, grid](int count) { return solve_line(p, grid, count); };
        t.numeric_size = 2 * grid.npoints;
    }
    return {t};
}

inline MatEllipticOp perturbed_lame_operator(const LameSpec& s, const LameModel& model) {
    return lame_operator(Scalar(s.params.ksq), model.derived.A + s.d_A, model.derived.C, s.params.delta,
                         model.field.two_theta_k + Scalar(s.d_two_theta_k));
}

inline std::vector<Target> lame_targets(const LameSpec& s, const RunOptions& o) {
    const LameModel model = build_lame(s.params);
    const MatEllipticOp H = perturbed_lame_operator(s, model);
    const int npoints = o.npoints ? o.npoints : 4096;
    std::vector<int> indices;
    if (s.space) indices.push_back(*s.space);
    else
        for (int i = 0; i < 4; ++i) indices.push_back(i + (s.params.lame_case == 1 ? 1 : 5));
    std::vector<Target> out;
    for (int idx : indices) {
        Target t;
        t.model = "lame";
        t.label = "V" + std::to_string(idx);
        t.ksq = Scalar(s.params.ksq);
        t.decoupled = model.decoupled;
        std::string why;
        auto sp = lame_space(s.params, idx, &why);
        if (!sp) {
            t.rejected = why;
            out.push_back(t);
            continue;
        }
        if (s.d_kappa != 0) {
            Scalar& k = sp->mixer.kappa3.is_zero() ? sp->mixer.kappa1 : sp->mixer.kappa3;
            k = k + Scalar(s.d_kappa);
        }
        t.certify = [H, space = *sp] { return certify(H, space); };
        t.numeric = [H, npoints](int count) { return solve_periodic(H, npoints, count); };
        t.numeric_size = 2 * npoints;
        out.push_back(t);
    }
    return out;
}

inline std::vector<Target> goldstone_targets(const GoldstoneSpec& s, const RunOptions& o) {
    const MatEllipticOp H = build_goldstone(s.coupling);
    const int npoints = o.npoints ? o.npoints : 4096;
    std::vector<Target> out;
    for (int idx = 1; idx <= 4; ++idx) {
        if (s.space && *s.space != idx) continue;
        Target t;
        t.model = "goldstone";
        t.label = "G" + std::to_string(idx);
        std::string why;
        auto sp = goldstone_space(idx, s.M, &why);
        if (!sp) {
            t.rejected = why;
            out.push_back(t);
            continue;
        }
        t.certify = [H, space = *sp] { return certify(H, space); };
        t.numeric = [H, npoints](int count) { return solve_periodic(H, npoints, count); };
        t.numeric_size = 2 * npoints;
        out.push_back(t);
    }
    return out;
}

inline json calogero_oracle_report(const CalogeroParams& p, const Certificate& cert, const RunOptions& o) {
    json states = json::array();
    double worst = 0;
    for (const auto& st : calogero_states(p, cert)) {
        const auto rep = calogero_residual(st, o.samples);
        worst = std::max(worst, rep.max_residual);
        states.push_back(json{{"energy", rounded(st.energy)}, {"max_residual", rounded(rep.max_residual)}});
    }
    return json{{"states", states}, {"max_residual", rounded(worst)}, {"samples", o.samples}};
}

inline std::vector<Target> calogero_targets(const CalogeroSpec& s, const RunOptions& o) {
    const PolynomialModel model = build_calogero_reduced(s.params, s.reading, s.mixer);
    Target t;
    t.model = "calogero";
    t.label = model.space.label;
    t.certify = [reduced = model.reduced, sp = model.space] { return certify_realized(reduced, sp); };
    t.oracle = [p = s.params, o](const Certificate& c) { return calogero_oracle_report(p, c, o); };
    return {t};
}

inline std::vector<Target> build_targets(const ModelSpec& spec, const RunOptions& o) {
    return std::visit(
        [&](const auto& s) -> std::vector<Target> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SexticSpec>) return sextic_targets(s, o);
            else if constexpr (std::is_same_v<T, LameSpec>) return lame_targets(s, o);
            else if constexpr (std::is_same_v<T, GoldstoneSpec>) return goldstone_targets(s, o);
            else return calogero_targets(s, o);
        },
        spec);
}

inline std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
        if (!quote) {
            line += cells[i];
            continue;
        }
        line += '"';
        for (char c : cells[i]) {
            if (c == '"') line += '"';
            line += c;
        }
        line += '"';
    }
    return line + "\n";
}

inline std::string fmt(double v) {
    std::ostringstream s;
    s.precision(float_precision());
    s << v;
    return s.str();
}

inline std::string eigen_list(const SpectrumReport& s) {
    std::string out;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) out += ';';
        out += fmt(s.values[i].real());
        if (s.is_complex[i]) out += (s.values[i].imag() < 0 ? "" : "+") + fmt(s.values[i].imag()) + "i";
    }
    return out;
}

struct Output {
    json doc;
    std::string csv;
    int code = ok;
};

inline Output cmd_verify(const ModelSpec& spec, const RunOptions& o, bool with_vectors) {
    Output out;
    out.doc = json{{"command", with_vectors ? "spectrum" : "verify"}, {"model", model_echo(spec)}};
    out.csv = csv_join({"model", "space", "status", "dim", "eigenvalues"});
    json results = json::array();
    bool any = false;
    for (const auto& t : build_targets(spec, o)) {
        if (t.rejected) {
            results.push_back(json{{"label", t.label}, {"status", "rejected"}, {"reason", *t.rejected}});
            out.csv += csv_join({t.model, t.label, "rejected", "", ""});
            continue;
        }
        any = true;
        const CertifyResult r = t.certify();
        json j = to_json(r);
        j["label"] = t.label;
        if (t.decoupled) j["decoupled"] = true;
        if (const auto* c = std::get_if<Certificate>(&r)) {
            const SpectrumReport s = algebraic_spectrum(*c);
            if (with_vectors) {
                json vecs = json::array();
                for (const auto& lam : s.values) {
                    json v = json::array();
                    for (const auto& x : eigenvector(c->matrix, lam)) v.push_back(to_json(x));
                    vecs.push_back(v);
                }
                j["eigenvectors"] = vecs;
                const std::vector<double> ones(c->dim, 1.0);
                j["eigenfunction"] = reconstruct_eigenfunction(ones, c->space, t.ksq).description;
                j["converged"] = s.converged;
            }
            if (!c->residual_zero) out.code = std::max<int>(out.code, counterexample);
            out.csv += csv_join({t.model, t.label, "certificate", std::to_string(c->dim), eigen_list(s)});
        } else {
            out.code = counterexample;
            out.csv += csv_join({t.model, t.label, "counterexample", "", ""});
        }
        results.push_back(j);
    }
    out.doc["results"] = results;
    if (!any) throw ConfigError("no applicable invariant space for this configuration");
    return out;
}

inline Output cmd_crosscheck(const ModelSpec& spec, const RunOptions& o) {
    Output out;
    out.doc = json{{"command", "crosscheck"}, {"model", model_echo(spec)}, {"tol", o.tol}};
    out.csv = csv_join({"model", "space", "algebraic", "numeric", "rel_err", "confirmed"});
    json results = json::array();
    bool any = false;
    for (const auto& t : build_targets(spec, o)) {
        if (t.rejected) continue;
        any = true;
        const CertifyResult r = t.certify();
        const auto* c = std::get_if<Certificate>(&r);
        if (!c) {
            json j = to_json(r);
            j["label"] = t.label;
            results.push_back(j);
            out.code = counterexample;
            continue;
        }
        json j{{"label", t.label}, {"status", "certificate"}, {"dim", c->dim}};
        if (t.oracle) {
            json rep = t.oracle(*c);
            const bool good = rep["max_residual"].get<double>() < 1e-5;
            rep["confirmed"] = good;
            j["oracle"] = rep;
            if (!good && out.code == ok) out.code = unconfirmed;
            for (const auto& st : rep["states"])
                out.csv += csv_join({t.model, t.label, fmt(st["energy"].get<double>()), "", fmt(st["max_residual"].get<double>()),
                                     st["max_residual"].get<double>() < 1e-5 ? "true" : "false"});
        } else if (t.numeric) {
            const SpectrumReport s = algebraic_spectrum(*c);
            double upper = 0;
            for (const auto& v : s.values) upper = std::max(upper, v.real());
            const int cap = t.numeric_size;
            const std::vector<double> w =
                o.count ? t.numeric(std::min(o.count, cap))
                        : eigenvalues_through(t.numeric, upper, std::min(cap, std::max(16, 2 * c->dim)), cap);
            const SpectrumMatchReport rep = match_spectra(s.values, w, o.tol);
            j["match"] = to_json(rep);
            if (!rep.all_confirmed() && out.code == ok) out.code = unconfirmed;
            for (const auto& e : rep.entries)
                out.csv += csv_join({t.model, t.label, fmt(e.algebraic.real()), e.numeric ? fmt(*e.numeric) : "",
                                     e.numeric ? fmt(e.rel_err) : "", e.confirmed ? "true" : "false"});
        } else {
            throw ConfigError("no numeric cross-check available for model " + t.model);
        }
        results.push_back(j);
    }
    out.doc["results"] = results;
    if (!any) throw ConfigError("no applicable invariant space for this configuration");
    return out;
}

/// Sets the scan axis on a model spec; throws for axes the model lacks.
inline void apply_axis(ModelSpec& spec, const std::string& axis, const Rational& v) {
    auto need_int = [&] {
        if (v.get_den() != 1) throw ConfigError("m scan needs integer grid points");
        return static_cast<int>(v.get_num().get_si());
    };
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SexticSpec> || std::is_same_v<T, CalogeroSpec>) {
                if (axis == "p1") s.params.p1 = v;
                else if (axis == "p2") s.params.p2 = v;
                else if (axis == "m") s.params.m = need_int();
                else throw ConfigError("axis '" + axis + "' does not apply to this model");
            } else if constexpr (std::is_same_v<T, LameSpec>) {
                if (axis == "delta") s.params.delta = v;
                else if (axis == "ksq") s.params.ksq = v;
                else if (axis == "m") s.params.m = need_int();
                else throw ConfigError("axis '" + axis + "' does not apply to this model");
            } else {
                throw ConfigError("scan is not available for this model");
            }
        },
        spec);
}

inline Output cmd_scan(const json& config, const ModelSpec& base, const RunOptions& o) {
    if (!config.contains("scan") || !config.at("scan").is_object()) throw ConfigError("scan needs a 'scan' object");
    const json& sc = config.at("scan");
    const std::string axis = string_field(sc, "axis", "");
    if (axis != "delta" && axis != "ksq" && axis != "p1" && axis != "p2" && axis != "m")
        throw ConfigError("invalid scan axis '" + axis + "'");
    const Rational from = rational_field(sc, "from", 0), to = rational_field(sc, "to", 0);
    const int steps = int_field(sc, "steps", 0);
    if (steps < 1 || (steps == 1 && from != to)) throw ConfigError("scan needs steps >= 1");
    {
        ModelSpec probe = base;
        apply_axis(probe, axis, from);
    }

    Output out;
    out.doc = json{{"command", "scan"}, {"model", model_echo(base)}, {"axis", axis}};
    out.csv = csv_join({"index", axis, "model", "space", "status", "dim", "eigenvalues"});
    json rows = json::array();
    for (int i = 0; i < steps; ++i) {
        const Rational v = steps == 1 ? from : Rational(from + (to - from) * i / (steps - 1));
        ModelSpec spec = base;
        apply_axis(spec, axis, v);
        auto row_base = [&](const std::string& label) {
            return json{{"index", i}, {"value", to_string(v)}, {"space", label}};
        };
        std::vector<Target> targets;
        try {
            targets = build_targets(spec, o);
        } catch (const Error& e) {
            json r = row_base("");
            r["status"] = "error";
            r["note"] = e.what();
            rows.push_back(r);
            out.csv += csv_join({std::to_string(i), to_string(v), "", "", "error", "", ""});
            continue;
        }
        for (const auto& t : targets) {
            json r = row_base(t.label);
            std::string status, dim, eig;
            if (t.rejected) {
                status = "rejected";
                r["note"] = *t.rejected;
            } else {
                try {
                    const CertifyResult res = t.certify();
                    if (const auto* c = std::get_if<Certificate>(&res)) {
                        status = "certificate";
                        dim = std::to_string(c->dim);
                        const SpectrumReport s = algebraic_spectrum(*c);
                        eig = eigen_list(s);
                        r["dim"] = c->dim;
                        r["eigenvalues"] = to_json(s);
                    } else {
                        status = "counterexample";
                        r["residual"] = std::get<Counterexample>(res).residual;
                    }
                } catch (const Error& e) {
                    status = "error";
                    r["note"] = e.what();
                }
            }
            if (t.decoupled) {
                r["decoupled"] = true;
                r["flag"] = "decoupled (theta=0)";
                status += " decoupled (theta=0)";
            }
            r["status"] = status;
            rows.push_back(r);
            out.csv += csv_join({std::to_string(i), to_string(v), t.model, t.label, status, dim, eig});
        }
    }
    out.doc["rows"] = rows;
    return out;
}

inline Output cmd_catalog(const std::optional<LameParams>& p) {
    Output out;
    json spaces = json::array();
    std::string text;
    out.csv = csv_join({"space", "case", "prefactor", "mixer", "degrees", "dim", "kappa_sq"});
    for (const auto& s : detail::kLameSpaces) {
        const std::string label = "V" + std::to_string(s.index);
        const std::string pref = "diag(" + s.top.str() + ", " + s.bottom.str() + ")";
        const std::string entry = s.linear ? "kappa*x" : "kappa";
        const std::string mixer = std::string(s.orientation == MixerSpec::Orientation::upper ? "upper " : "lower ") + entry;
        auto deg = [](int d) { return d == 0 ? std::string("m") : "m" + std::to_string(d); };
        const std::string degrees = "(" + deg(s.dn) + ", " + deg(s.dm) + ")";
        const int dsum = s.dn + s.dm + 2;
        const std::string dim = dsum == 0 ? "2m" : "2m" + std::string(dsum > 0 ? "+" : "") + std::to_string(dsum);
        const int lame_case = s.index <= 4 ? 1 : 2;
        json j{{"label", label}, {"case", lame_case}, {"prefactor", pref}, {"mixer", mixer}, {"degrees", degrees},
               {"dim", dim}, {"kappa_formula", s.formula}};
        std::string dims_line;
        json dims = json::object();
        for (int m = 0; m <= 4; ++m) {
            const int d = 2 * m + dsum;
            if (m + s.dn < -1 || m + s.dm < -1 || d <= 0) continue;
            dims[std::to_string(m)] = d;
            dims_line += " m=" + std::to_string(m) + ":" + std::to_string(d);
        }
        j["dims"] = dims;
        if (p && p->lame_case == lame_case) {
            std::string why;
            if (auto sp = lame_space(*p, s.index, &why)) j["instance"] = to_json(*sp);
            else j["instance"] = json{{"rejected", why}};
        }
        spaces.push_back(j);
        text += label + "  case " + std::to_string(lame_case) + "  prefactor " + pref + "  mixer " + mixer + "  degrees " +
                degrees + "  dim " + dim + "  " + s.formula + "  dims" + dims_line + "\n";
        out.csv += csv_join({label, std::to_string(lame_case), pref, mixer, degrees, dim, s.formula});
    }
    out.doc = json{{"command", "catalog"}, {"spaces", spaces}};
    out.doc["text"] = text;
    return out;
}

inline json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in '") + path + "': " + e.what());
    }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact certification of quasi-exactly solvable 2x2 matrix Schroedinger operators", "qes2x2"};
    std::string command, config_path, out_path, format;
    app.add_option("command", command, "verify | spectrum | crosscheck | scan | catalog")
        ->required()
        ->check(CLI::IsMember({"verify", "spectrum", "crosscheck", "scan", "catalog"}));
    app.add_option("--config", config_path, "model configuration (JSON)");
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }
    if (format.empty()) format = command == "scan" ? "csv" : (command == "catalog" ? "text" : "json");

    Output result;
    try {
        if (command == "catalog") {
            std::optional<LameParams> p;
            if (!config_path.empty()) {
                const ModelSpec spec = parse_model(read_config(config_path));
                if (const auto* l = std::get_if<LameSpec>(&spec)) p = l->params;
            }
            result = cmd_catalog(p);
        } else {
            if (config_path.empty()) throw ConfigError("--config is required for " + command);
            const json config = read_config(config_path);
            const ModelSpec spec = parse_model(config);
            const RunOptions opts = parse_options(config);
            if (command == "verify") result = cmd_verify(spec, opts, false);
            else if (command == "spectrum") result = cmd_verify(spec, opts, true);
            else if (command == "crosscheck") result = cmd_crosscheck(spec, opts);
            else result = cmd_scan(config, spec, opts);
        }
    } catch (const ConfigError& e) {
        err << "qes2x2: " << e.what() << "\n";
        return usage;
    } catch (const Error& e) {
        err << "qes2x2: " << e.what() << "\n";
        return usage;
    } catch (const json::exception& e) {
        err << "qes2x2: config: " << e.what() << "\n";
        return usage;
    }

    std::string payload;
    if (format == "csv") payload = result.csv;
    else if (format == "text") payload = result.doc["text"].get<std::string>();
    else {
        result.doc.erase("text");
        payload = result.doc.dump(2) + "\n";
    }
    if (out_path.empty()) {
        out << payload;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "qes2x2: cannot write '" << out_path << "'\n";
            return usage;
        }
        f << payload;
    }
    return result.code;
}

}  // namespace qes::cli
