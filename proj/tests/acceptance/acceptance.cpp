// One line per criterion: "PASS|FAIL criterion N: summary (seconds)".
// Details for failures and choices follow on indented lines.

#include "../support.hpp"
#include "qes/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace qes;
using qes::testing::Gen;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;

    void fail(std::string why) {
        pass = false;
        notes.push_back(std::move(why));
    }
    void note(std::string s) { notes.push_back(std::move(s)); }
};

std::string str(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

std::string rstr(const Rational& q) { return to_string(q); }

bool all_zero(const std::vector<PolyVec2>& v) {
    return std::all_of(v.begin(), v.end(), [](const PolyVec2& p) { return p.is_zero(); });
}

bool all_zero(const std::vector<EllipticPair>& v) {
    return std::all_of(v.begin(), v.end(), [](const EllipticPair& p) { return p.top.is_zero() && p.bottom.is_zero(); });
}

const std::vector<SexticParams> kSexticSets = {
    {0, 1, 1, 2, 0},
    {make_rational(1, 2), make_rational(1, 4), 3, 2, 0},
    {-1, 1, 3, 2, 0},
};

std::string sextic_name(const SexticParams& p) {
    return "m=" + std::to_string(p.m) + " eps=" + rstr(p.eps) + " p1=" + rstr(p.p1) + " p2=" + rstr(p.p2) +
           " kappa0=" + rstr(p.kappa0);
}

Outcome sextic_certification() {
    Outcome o;
    int count = 0;
    for (auto p : kSexticSets)
        for (int m = 2; m <= 6; ++m)
            for (int eps = 0; eps <= 1; ++eps) {
                p.m = m;
                p.eps = eps;
                const MatDiffOp2 op = build_sextic_gauged(p);
                const CertifyResult r = certify(op, build_sextic(p).space);
                const auto* c = std::get_if<Certificate>(&r);
                if (!c) {
                    o.fail(sextic_name(p) + ": counterexample " + std::get<Counterexample>(r).locator);
                    continue;
                }
                if (c->dim != 2 * m) o.fail(sextic_name(p) + ": dim " + std::to_string(c->dim));
                if (!c->residual_zero || !all_zero(certificate_residuals(op, *c)))
                    o.fail(sextic_name(p) + ": residual recheck nonzero");
                ++count;
            }
    o.summary = std::to_string(count) + "/30 sextic instances certified with dim 2m and zero exact residual";
    return o;
}

Outcome sextic_necessity() {
    Outcome o;
    int count = 0, total = 0;
    for (auto p : kSexticSets)
        for (int m = 2; m <= 6; ++m)
            for (int eps = 0; eps <= 1; ++eps) {
                p.m = m;
                p.eps = eps;
                const PolynomialModel model = build_sextic(p);
                std::vector<std::pair<std::string, SpaceDescriptor>> variants;
                for (int j = 1; j <= 3; ++j) {
                    SpaceDescriptor sp = model.space;
                    (j == 1 ? sp.mixer.kappa1 : j == 2 ? sp.mixer.kappa2 : sp.mixer.kappa3) = make_rational(1, 2);
                    variants.push_back({"kappa" + std::to_string(j) + "=1/2", sp});
                }
                for (int shift : {1, 3}) {
                    SpaceDescriptor sp = model.space;
                    sp.n = m - shift;
                    variants.push_back({"degrees (m-" + std::to_string(shift) + ",m)", sp});
                }
                for (const auto& [what, sp] : variants) {
                    ++total;
                    const MatDiffOp2 op = mixer_conjugate(model.reduced, sp.mixer);
                    if (is_certificate(certify(op, sp)))
                        o.fail(sextic_name(p) + " " + what + ": unexpectedly certified");
                    else
                        ++count;
                }
            }
    o.summary = std::to_string(count) + "/" + std::to_string(total) + " deformations rejected with a counterexample";
    return o;
}

std::string lame_name(const LameParams& p) {
    return "case " + std::to_string(p.lame_case) + " m=" + std::to_string(p.m) + " delta=" + rstr(p.delta) +
           " k^2=" + rstr(p.ksq);
}

Outcome lame_certification() {
    Outcome o;
    int certified = 0, rejected = 0, spaces = 0, perturbations = 0;
    const Rational bump = make_rational(1, 1000);
    for (int c = 1; c <= 2; ++c)
        for (int m = c == 1 ? 0 : 1; m <= 4; ++m)
            for (int delta : {0, 1, 2})
                for (const Rational& k2 : {make_rational(1, 2), make_rational(1, 3), make_rational(9, 16)}) {
                    const LameParams p{c, m, delta, k2};
                    const LameModel model = build_lame(p);
                    const auto& d = model.derived;
                    const Scalar ksq(k2), ttk = model.field.two_theta_k;
                    const MatEllipticOp bumped_A = lame_operator(ksq, d.A + bump, d.C, p.delta, ttk);
                    const MatEllipticOp bumped_t = lame_operator(ksq, d.A, d.C, p.delta, ttk + Scalar(bump));
                    for (const auto& sp : model.spaces) {
                        ++spaces;
                        const CertifyResult r = certify(model.H, sp);
                        const auto* cert = std::get_if<Certificate>(&r);
                        if (!cert) {
                            o.fail(lame_name(p) + " " + sp.label + ": counterexample " + std::get<Counterexample>(r).locator);
                            continue;
                        }
                        if (cert->dim != sp.n + sp.m + 2) o.fail(lame_name(p) + " " + sp.label + ": wrong dim");
                        if (!all_zero(certificate_residuals(model.H, *cert)))
                            o.fail(lame_name(p) + " " + sp.label + ": residual recheck nonzero");
                        ++certified;

                        SpaceDescriptor moved = sp;
                        (sp.mixer.kappa3.is_zero() ? moved.mixer.kappa1 : moved.mixer.kappa3) += Scalar(bump);
                        const std::vector<std::pair<std::string, bool>> checks{
                            {"kappa", is_certificate(certify(model.H, moved))},
                            {"A", is_certificate(certify(bumped_A, sp))},
                            {"2 theta k", is_certificate(certify(bumped_t, sp))},
                        };
                        for (const auto& [what, ok] : checks) {
                            ++perturbations;
                            if (ok)
                                o.fail(lame_name(p) + " " + sp.label + ": " + what + " + 1/1000 still certified");
                            else
                                ++rejected;
                        }
                    }
                }
    o.summary = std::to_string(certified) + "/" + std::to_string(spaces) + " Lame spaces certified, " +
                std::to_string(rejected) + "/" + std::to_string(perturbations) + " perturbations rejected";
    return o;
}

Outcome sextic_crosscheck() {
    Outcome o;
    const SexticParams p{0, 1, 1, 2, 0};
    const auto cert = std::get<Certificate>(certify(build_sextic_gauged(p), build_sextic(p).space));
    const auto alg = algebraic_spectrum(cert).values;
    const double L = auto_line_length(p.p1, p.p2);
    const auto coarse = match_spectra(alg, solve_line(p, {2000, L}, 40), 1e-3);
    // halving h = 2L/(N+1) means N -> 2N + 1
    const auto fine = match_spectra(alg, solve_line(p, {4001, L}, 40), 1e-3);
    if (coarse.confirmed_count() != 4) o.fail("only " + std::to_string(coarse.confirmed_count()) + "/4 confirmed");
    const double ratio = coarse.worst_rel_err() / fine.worst_rel_err();
    if (ratio < 3) o.fail("step halving reduced the worst error by only " + str(ratio));
    o.summary = std::to_string(coarse.confirmed_count()) + "/4 confirmed at npoints=2000, L=" + str(L) +
                ", worst rel err " + str(coarse.worst_rel_err()) + " -> " + str(fine.worst_rel_err()) + " (ratio " +
                str(ratio) + ")";
    return o;
}

Outcome lame_crosscheck() {
    Outcome o;
    int confirmed = 0, total = 0;
    double worst = 0;
    for (int m : {0, 1}) {
        const LameModel model = build_lame({1, m, 1, make_rational(1, 2)});
        for (const auto& sp : model.spaces) {
            if (sp.label != "V1" && sp.label != "V3") continue;
            const auto r = certify(model.H, sp);
            if (!is_certificate(r)) {
                o.fail("m=" + std::to_string(m) + " " + sp.label + " not certified");
                continue;
            }
            const auto spec = algebraic_spectrum(std::get<Certificate>(r));
            double top = 0;
            for (const auto& v : spec.values) top = std::max(top, v.real());
            const auto num = eigenvalues_through([&](int n) { return solve_periodic(model.H, 4096, n); }, top, 16, 512);
            const auto rep = match_spectra(spec.values, num, 1e-3);
            confirmed += rep.confirmed_count();
            total += static_cast<int>(rep.entries.size());
            worst = std::max(worst, rep.worst_rel_err());
            if (!rep.all_confirmed()) o.fail("m=" + std::to_string(m) + " " + sp.label + " unconfirmed");
        }
    }
    o.summary = std::to_string(confirmed) + "/" + std::to_string(total) +
                " eigenvalues confirmed by the periodic solver (npoints=4096), worst rel err " + str(worst);
    return o;
}

Outcome jacobi() {
    Outcome o;
    Gen g(2024);
    double worst_identity = 0;
    for (double k2 : {0.1, 0.5, 0.9}) {
        const double K = agm_complete_K(k2);
        for (int i = 0; i < 1000; ++i) {
            const double z = g.uniform(-4 * K, 4 * K);
            const JacobiValues j = jacobi_eval(z, k2);
            worst_identity = std::max({worst_identity, std::abs(j.sn * j.sn + j.cn * j.cn - 1),
                                       std::abs(j.dn * j.dn + k2 * j.sn * j.sn - 1)});
        }
        const double snK = jacobi_eval(K, k2).sn;
        if (std::abs(snK - 1) > 1e-12) o.fail("sn(K) - 1 = " + str(snK - 1) + " at k^2=" + str(k2));
    }
    if (worst_identity > 1e-12) o.fail("identity defect " + str(worst_identity));
    const double K0 = std::abs(agm_complete_K(0) - std::numbers::pi / 2);
    if (K0 > 1e-15) o.fail("K(0) - pi/2 = " + str(K0));
    double worst_sin = 0;
    for (int i = 0; i < 1000; ++i) {
        const double z = g.uniform(-10, 10);
        worst_sin = std::max(worst_sin, std::abs(jacobi_eval(z, 0).sn - std::sin(z)));
    }
    if (worst_sin > 1e-12) o.fail("sn(z,0) - sin z = " + str(worst_sin));
    o.summary = "identity defect " + str(worst_identity) + ", |K(0)-pi/2| " + str(K0) + ", |sn(z,0)-sin z| " + str(worst_sin);
    return o;
}

Outcome algebra_oracle() {
    Outcome o;
    Gen g(7);
    int leibniz = 0;
    const Scalar k2(make_rational(1, 2));
    for (int i = 0; i < 100; ++i) {
        const EllipticElement u = g.elliptic(k2, 3), v = g.elliptic(k2, 3);
        if (ell_diff(u * v) == ell_diff(u) * v + u * ell_diff(v))
            ++leibniz;
        else
            o.fail("Leibniz rule fails on pair " + std::to_string(i));
    }
    double worst = 0;
    const double kd = k2.to_double();
    for (const auto& shape : detail::kLameSpaces)
        for (const EllipticMonomial& mono : {shape.top, shape.bottom}) {
            const EllipticElement f = EllipticElement::monomial(k2, mono);
            const EllipticElement d2 = ell_diff(ell_diff(f));
            for (int t = 0; t < 20; ++t) {
                const double z = g.uniform(-3, 3);
                const double fd = qes::testing::d2_fd6([&](double w) { return evaluate(f, jacobi_eval(w, kd)); }, z, 1e-2);
                worst = std::max(worst, std::abs(evaluate(d2, jacobi_eval(z, kd)) - fd));
            }
        }
    if (worst > 1e-6) o.fail("prefactor second derivative off by " + str(worst));
    o.summary = std::to_string(leibniz) + "/100 Leibniz pairs exact, V1-V8 prefactor d2 vs FD6 max diff " + str(worst);
    return o;
}

Outcome decoupling() {
    Outcome o;
    auto check = [&](const std::string& name, const Certificate& cert, std::size_t top) {
        for (std::size_t i = 0; i < top; ++i)
            for (std::size_t j = top; j < cert.matrix.cols(); ++j)
                if (!cert.matrix(i, j).is_zero() || !cert.matrix(j, i).is_zero()) {
                    o.fail(name + ": off-diagonal block entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
                    return;
                }
        const auto product = poly_mul(charpoly_exact(submatrix(cert.matrix, 0, top)),
                                      charpoly_exact(submatrix(cert.matrix, top, cert.matrix.rows())));
        if (product != cert.charpoly) o.fail(name + ": charpoly differs from the block product");
    };
    int checked = 0;
    for (int m = 2; m <= 6; ++m) {
        const SexticParams p{make_rational(1, 2), 1, 0, m, 0};
        const auto r = certify(build_sextic_gauged(p), build_sextic(p).space);
        if (!is_certificate(r)) {
            o.fail("sextic kappa0=0 m=" + std::to_string(m) + " not certified");
            continue;
        }
        check("sextic m=" + std::to_string(m), std::get<Certificate>(r), m - 1);
        ++checked;
    }
    for (int m = 0; m <= 3; ++m) {
        const LameParams p{1, m, 4 * m + 3, make_rational(1, 2)};
        const LameModel model = build_lame(p);
        if (!model.decoupled || !model.H.is_diagonal()) o.fail(lame_name(p) + ": operator not diagonal");
        for (const auto& sp : model.spaces) {
            const auto r = certify(model.H, sp);
            if (!is_certificate(r)) {
                o.fail(lame_name(p) + " " + sp.label + " not certified");
                continue;
            }
            check(lame_name(p) + " " + sp.label, std::get<Certificate>(r), sp.n + 1);
            ++checked;
        }
    }
    o.summary = std::to_string(checked) + " decoupled certificates block-diagonal with charpoly = product of block charpolys";
    return o;
}

Outcome calogero() {
    Outcome o;
    std::vector<std::string> good;
    for (auto reading : {CalogeroReading::printed, CalogeroReading::gauge_quartic, CalogeroReading::gauge_quadratic})
        for (auto mixer : {CalogeroMixer::kappa0, CalogeroMixer::kappa0_over_p2}) {
            const std::string name = std::string(reading_name(reading)) + ", mixer " + mixer_name(mixer);
            bool ok = true;
            std::string detail;
            for (int m : {2, 3}) {
                CalogeroParams p;
                p.m = m;
                const PolynomialModel model = build_calogero_reduced(p, reading, mixer);
                const auto r = certify(mixer_conjugate(model.reduced, model.space.mixer), model.space);
                if (!is_certificate(r)) {
                    ok = false;
                    detail += " m=" + std::to_string(m) + " not invariant;";
                    continue;
                }
                double worst = 0;
                for (const auto& s : calogero_states(p, std::get<Certificate>(r))) {
                    try {
                        worst = std::max(worst, calogero_residual(s, 100).max_residual);
                    } catch (const NumericalError& e) {
                        worst = std::numeric_limits<double>::infinity();
                    }
                }
                detail += " m=" + std::to_string(m) + " residual " + str(worst) + ";";
                ok = ok && worst < 1e-5;
            }
            o.note(std::string(ok ? "holds: " : "fails: ") + name + ":" + detail);
            if (ok) good.push_back(name);
        }
    if (good.empty())
        o.fail("no reading reproduces N-body eigenstates");
    std::string list;
    for (const auto& g : good) list += (list.empty() ? "" : "; ") + g;
    o.summary = "N=3 nu=2 m=2,3 N-body residual < 1e-5 under reading: " + (good.empty() ? std::string("none") : list);
    return o;
}

Outcome determinism(const std::string& exe) {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("qes_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::string> configs{
        R"({"model":"sextic","p1":"1/2","p2":"1/4","kappa0":"3","m":4,"eps":"1"})",
        R"({"model":"lame","case":1,"m":2,"delta":"1","ksq":"1/3"})",
        R"({"model":"lame","case":2,"m":3,"delta":"2","ksq":"9/16"})",
        R"({"model":"goldstone","coupling":"4","M":2})",
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    int same = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const fs::path cfg = dir / ("c" + std::to_string(i) + ".json");
        std::ofstream(cfg) << configs[i];
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / ("o" + std::to_string(i) + "_" + std::to_string(run) + ".json");
            const std::string cmd = "\"" + exe + "\" verify --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"";
            const int code = std::system(cmd.c_str());
            if (code != 0) o.fail("run failed for config " + std::to_string(i));
            outputs[run] = slurp(out);
        }
        if (!outputs[0].empty() && outputs[0] == outputs[1])
            ++same;
        else
            o.fail("config " + std::to_string(i) + " differs between runs");
    }
    fs::remove_all(dir);
    o.summary = std::to_string(same) + "/" + std::to_string(configs.size()) + " certificate files byte-identical across two process runs";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : QES2X2_PATH;
    struct Criterion {
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {10, sextic_certification},
        {10, sextic_necessity},
        {60, lame_certification},
        {120, sextic_crosscheck},
        {0, lame_crosscheck},
        {0, jacobi},
        {0, algebra_oracle},
        {0, decoupling},
        {0, calogero},
        {0, [&] { return determinism(exe); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].limit > 0 && secs > criteria[i].limit)
            o.fail("took " + str(secs) + " s, limit " + str(criteria[i].limit) + " s");
        std::printf("%s criterion %zu: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, o.summary.c_str(), secs);
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
