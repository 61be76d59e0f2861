#pragma once

// Constructors for the operator families (sextic matrix oscillator, matrix
// Lame operator, Calogero matrix extension, Goldstone trigonometric limit)
// and their candidate invariant spaces.

#include "qes/diffop.hpp"
#include "qes/elliptic.hpp"

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qes {

// ---------------------------------------------------------------------------
// Space descriptors

/// diag(top, bottom) prefactor made of Jacobi monomials.
struct EllipticDiag {
    EllipticMonomial top;
    EllipticMonomial bottom;
};

using Prefactor = std::variant<std::monostate, GaugeFactor, EllipticDiag>;

/// prefactor * P * (P(n) (+) P(m)), with basis ordered top degrees 0..n then bottom 0..m.
struct SpaceDescriptor {
    std::string label;
    Prefactor prefactor;
    MixerSpec mixer;
    int n = 0;
    int m = 0;
    Var var = Var::x;
    std::string kappa_formula;          // e.g. "kappa^2 = k^2*R1"
    std::optional<Rational> kappa_sq;   // exact kappa^2 where it applies

    int dim() const { return n + m + 2; }
    bool is_elliptic() const { return std::holds_alternative<EllipticDiag>(prefactor); }
};

// ---------------------------------------------------------------------------
// Sextic matrix oscillator

struct SexticParams {
    Rational p1{0};
    Rational p2{1};
    Rational kappa0{1};
    int m = 2;
    Rational eps{0};
};

/// An operator on the line together with its reduced polynomial form.
struct PolynomialModel {
    MatDiffOp2 original;   // H in the physical variable (y or tau)
    MatDiffOp2 reduced;    // after gauge and pushforward, before the mixer
    SpaceDescriptor space;
    std::vector<std::string> warnings;
};

inline GaugeFactor sextic_gauge(const SexticParams& p) {
    LaurentPoly W(Var::y);
    W.add_term(4, Scalar(Rational(p.p2 / 2)));
    W.add_term(2, Scalar(p.p1));
    return GaugeFactor(p.eps, W);
}

inline bool is_zero_or_one(const Rational& e) { return e == 0 || e == 1; }

/// M6(y): scalar sextic part, (8 p2 y^2 + 4 p1) sigma_3 and -8 m p2 kappa0 sigma_1,
/// plus eps(eps-1)/y^2 on the diagonal when eps is not 0 or 1.
inline PolyMat2 sextic_potential(const SexticParams& p) {
    const Var y = Var::y;
    const Rational m(p.m);
    LaurentPoly s(y);
    s.add_term(6, Scalar(Rational(4 * p.p2 * p.p2)));
    s.add_term(4, Scalar(Rational(8 * p.p1 * p.p2)));
    s.add_term(2, Scalar(Rational(4 * p.p1 * p.p1 - 8 * m * p.p2 + 2 * (1 - 2 * p.eps) * p.p2)));
    if (!is_zero_or_one(p.eps)) s.add_term(-2, Scalar(Rational(p.eps * (p.eps - 1))));

    LaurentPoly s3(y);
    s3.add_term(2, Scalar(Rational(8 * p.p2)));
    s3.add_term(0, Scalar(Rational(4 * p.p1)));
    const Scalar s1 = Rational(-8 * m * p.p2 * p.kappa0);

    return PolyMat2::diagonal(s, s) + s3 * PolyMat2::sigma3(y) + s1 * PolyMat2::sigma1(y);
}

inline PolynomialModel build_sextic(const SexticParams& p) {
    if (p.m < 2) throw DomainError("sextic model requires m >= 2, got " + std::to_string(p.m));
    PolynomialModel model;
    if (p.p2 <= 0) model.warnings.push_back("p2 <= 0: spectrum not normalizable");
    const Var y = Var::y;
    model.original = MatDiffOp2::scalar(-DiffOp::derivative(y, 2)) + MatDiffOp2::potential(sextic_potential(p));
    model.reduced = pushforward_even(gauge_conjugate(model.original, sextic_gauge(p)));

    auto& sp = model.space;
    sp.label = "sextic";
    sp.prefactor = sextic_gauge(p);
    sp.mixer = MixerSpec::upper(Scalar(p.kappa0));
    sp.n = p.m - 2;
    sp.m = p.m;
    sp.var = Var::x;
    return model;
}

/// Laurent-tail terms (negative exponents) of every coefficient.
inline std::vector<std::string> laurent_tail(const MatDiffOp2& op) {
    static const char* names[] = {"e11", "e12", "e21", "e22"};
    std::vector<std::string> out;
    for (int k = 0; k < 4; ++k)
        for (const auto& [i, c] : op.e[k].terms()) {
            LaurentPoly tail = c.outside(0, std::numeric_limits<int>::max());
            if (!tail.is_zero())
                out.push_back(std::string(names[k]) + " D^" + std::to_string(i) + ": " + tail.str());
        }
    return out;
}

struct LaurentTailError : Error {
    using Error::Error;
};

/// Gauge, pushforward x = y^2 and mixer conjugation, in that order.
inline MatDiffOp2 build_sextic_gauged(const SexticParams& p, const MixerSpec& mixer) {
    const PolynomialModel model = build_sextic(p);
    MatDiffOp2 op = mixer_conjugate(model.reduced, mixer);
    if (auto tail = laurent_tail(op); !tail.empty()) {
        std::string msg = "non-polynomial coefficients:";
        for (const auto& t : tail) msg += " [" + t + "]";
        throw LaurentTailError(msg);
    }
    return op;
}

inline MatDiffOp2 build_sextic_gauged(const SexticParams& p) { return build_sextic_gauged(p, build_sextic(p).space.mixer); }

// ---------------------------------------------------------------------------
// Matrix Lame operator

struct LameParams {
    int lame_case = 1;
    int m = 0;
    Rational delta{1};
    Rational ksq{1, 2};
    bool flip_kappa = false;  // use the opposite sign of kappa (not invariant for theta > 0)
};

struct LameDerived {
    Rational A, C;
    Rational two_theta_sq;      // (2 theta)^2
    Rational two_theta_k_sq;    // (2 theta k)^2
    std::optional<Rational> R;  // R1 or R2; undefined when the denominator vanishes
    int base = 3;               // 4m+3 (case 1) or 4m+1 (case 2)
    bool decoupled = false;     // theta == 0
};

inline LameDerived lame_derived(const LameParams& p) {
    if (p.lame_case != 1 && p.lame_case != 2) throw DomainError("Lame case must be 1 or 2");
    if (p.m < 0) throw DomainError("Lame m must be >= 0");
    if (p.ksq < 0 || p.ksq >= 1) throw DomainError("Lame k^2 must lie in [0, 1)");
    LameDerived d;
    const Rational m(p.m);
    const Rational diag = p.lame_case == 1 ? Rational(4 * m * m + 6 * m + 3) : Rational(4 * m * m + 2 * m + 1);
    d.base = p.lame_case == 1 ? 4 * p.m + 3 : 4 * p.m + 1;
    const Rational base(d.base);
    d.A = diag - p.delta;
    d.C = diag + p.delta;
    d.two_theta_sq = base * base - p.delta * p.delta;
    if (d.two_theta_sq < 0)
        throw DomainError("theta is not real: |delta| = " + to_string(abs(p.delta)) + " exceeds " + std::to_string(d.base));
    d.two_theta_k_sq = d.two_theta_sq * p.ksq;
    d.decoupled = d.two_theta_sq == 0;
    if (base + p.delta != 0) d.R = Rational((base - p.delta) / (base + p.delta));
    return d;
}

/// Squarefree integer r with q = s^2 r for rational s (trial division; inputs are small).
inline Rational canonical_radicand(const Rational& q) {
    if (q <= 0) throw DomainError("radicand must be positive");
    Integer n = q.get_num() * q.get_den();
    Integer r = 1;
    for (Integer f = 2; f * f <= n; ++f) {
        int power = 0;
        while (mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t())) {
            n /= f;
            ++power;
        }
        if (power % 2 == 1) r *= f;
    }
    r *= n;
    return Rational(r);
}

struct FieldPlan {
    bool rational = true;
    Rational radicand{0};  // 0 when everything is rational
    Scalar two_theta_k;
    std::optional<Scalar> kappa;
    std::string note;
};

/// kappa^2 for one of V1..V8, or nullopt when the formula is undefined.
inline std::optional<Rational> lame_kappa_sq(const LameParams& p, const LameDerived& d, int space) {
    const Rational& k2 = p.ksq;
    if (!d.R) return std::nullopt;
    const Rational R = *d.R;
    switch (space) {
        case 1: case 3: case 5: case 7: return Rational(k2 * R);
        case 2: case 8:
            if (R == 0) return std::nullopt;
            return Rational(k2 / R);
        case 4: case 6:
            if (k2 == 0) return std::nullopt;
            return Rational(R / k2);
        default: throw DomainError("space index must be 1..8");
    }
}

/// Decides whether kappa (for the given space) and 2 theta k are rational, and
/// otherwise picks the single radicand r with both in Q(sqrt r). This always
/// exists: (2 theta k)^2 * kappa^2 is a rational square for every space.
inline FieldPlan lame_field_analysis(const LameParams& p, int space = 0) {
    const LameDerived d = lame_derived(p);
    FieldPlan plan;
    std::optional<Rational> ksq_space;
    if (space != 0) ksq_space = lame_kappa_sq(p, d, space);

    std::vector<Rational> needed{d.two_theta_k_sq};
    if (ksq_space) needed.push_back(*ksq_space);
    for (const auto& q : needed) {
        if (q == 0 || rational_sqrt_check(q)) continue;
        const Rational r = canonical_radicand(q);
        if (plan.rational) {
            plan.rational = false;
            plan.radicand = r;
        } else if (r != plan.radicand) {
            plan.note = "no common quadratic field for kappa and 2*theta*k";
            throw RadicandMismatch(plan.note);
        }
    }
    plan.two_theta_k = Scalar::sqrt_in(d.two_theta_k_sq, plan.radicand);
    if (ksq_space) plan.kappa = Scalar::sqrt_in(*ksq_space, plan.radicand);
    plan.note = plan.rational ? "all rational" : "Q(sqrt " + to_string(plan.radicand) + ")";
    return plan;
}

struct LameModel {
    MatEllipticOp H;
    std::vector<SpaceDescriptor> spaces;
    std::vector<std::string> rejected;   // space label and reason
    LameDerived derived;
    FieldPlan field;
    bool decoupled = false;
};

namespace detail {

struct LameSpaceShape {
    int index;
    EllipticMonomial top, bottom;
    MixerSpec::Orientation orientation;
    bool linear;        // mixer entry kappa*x (else constant kappa)
    int dn, dm;         // degrees (m + dn, m + dm)
    int sign;           // sign of kappa that pairs with theta > 0
    const char* formula;
};

// Prefactors, mixers and degree offsets of V1..V8.
inline constexpr LameSpaceShape kLameSpaces[8] = {
    {1, {0, 0, 0}, {0, 1, 1}, MixerSpec::Orientation::upper, true, 0, 0, 1, "kappa^2 = k^2*R1"},
    {2, {0, 1, 1}, {0, 0, 0}, MixerSpec::Orientation::lower, true, 0, 0, 1, "kappa^2 = k^2/R1"},
    {3, {1, 1, 0}, {1, 0, 1}, MixerSpec::Orientation::upper, false, -1, 0, -1, "kappa^2 = k^2*R1"},
    {4, {1, 0, 1}, {1, 1, 0}, MixerSpec::Orientation::upper, false, -1, 0, -1, "kappa^2 = R1/k^2"},
    {5, {0, 1, 0}, {0, 0, 1}, MixerSpec::Orientation::upper, false, -1, 0, -1, "kappa^2 = k^2*R2"},
    {6, {0, 0, 1}, {0, 1, 0}, MixerSpec::Orientation::upper, false, -1, 0, -1, "kappa^2 = R2/k^2"},
    {7, {1, 0, 0}, {1, 1, 1}, MixerSpec::Orientation::upper, true, -1, -1, 1, "kappa^2 = k^2*R2"},
    {8, {1, 1, 1}, {1, 0, 0}, MixerSpec::Orientation::lower, true, -1, -1, 1, "kappa^2 = k^2/R2"},
};

}  // namespace detail

inline MixerSpec make_mixer(MixerSpec::Orientation o, bool linear, const Scalar& kappa) {
    MixerSpec mx;
    mx.orientation = o;
    (linear ? mx.kappa3 : mx.kappa1) = kappa;
    return mx;
}

/// Descriptor of V_index (1..8), or nullopt with a reason. kappa = +-sqrt(kappa^2)
/// with the sign fixed by 2 theta k > 0: + for the x-mixers, - for the constant ones.
inline std::optional<SpaceDescriptor> lame_space(const LameParams& p, int index, std::string* reason = nullptr) {
    const auto& shape = detail::kLameSpaces[index - 1];
    auto fail = [&](std::string why) -> std::optional<SpaceDescriptor> {
        if (reason) *reason = "V" + std::to_string(index) + ": " + why;
        return std::nullopt;
    };
    if ((index <= 4) != (p.lame_case == 1)) return fail("belongs to the other case");
    const LameDerived d = lame_derived(p);
    SpaceDescriptor sp;
    sp.label = "V" + std::to_string(index);
    sp.n = p.m + shape.dn;
    sp.m = p.m + shape.dm;
    if (sp.n < -1 || sp.m < -1 || sp.dim() <= 0) return fail("negative degree for m = " + std::to_string(p.m));
    const auto ksq = lame_kappa_sq(p, d, index);
    if (!ksq) return fail("kappa^2 undefined (R or k^2 vanishes)");
    const FieldPlan plan = lame_field_analysis(p, index);
    sp.prefactor = EllipticDiag{shape.top, shape.bottom};
    const int sign = p.flip_kappa ? -shape.sign : shape.sign;
    sp.mixer = make_mixer(shape.orientation, shape.linear, sign > 0 ? *plan.kappa : -*plan.kappa);
    sp.kappa_formula = shape.formula;
    sp.kappa_sq = *ksq;
    sp.var = Var::x;
    return sp;
}

inline MatEllipticOp lame_operator(const Scalar& ksq, const Rational& A, const Rational& C, const Rational& delta,
                                   const Scalar& two_theta_k) {
    const Rational k2 = ksq.as_rational();
    const Rational shift = delta * (1 + k2) / 2;
    LaurentPoly top(Var::x), bottom(Var::x);
    top.add_term(1, Scalar(Rational(A * k2)));
    top.add_term(0, Scalar(shift));
    bottom.add_term(1, Scalar(Rational(C * k2)));
    bottom.add_term(0, Scalar(Rational(-shift)));
    const EllipticElement off = EllipticElement::monomial(ksq, {0, 1, 1}, LaurentPoly::constant(two_theta_k, Var::x));
    return {{EllipticElement::polynomial(ksq, top), off, off, EllipticElement::polynomial(ksq, bottom)}};
}

inline LameModel build_lame(const LameParams& p) {
    LameModel model;
    model.derived = lame_derived(p);
    model.decoupled = model.derived.decoupled;
    model.field = lame_field_analysis(p);
    // 2*theta*k lies in the field of every space's kappa
    const int first = p.lame_case == 1 ? 1 : 5;
    for (int i = first; i < first + 4; ++i) {
        std::string why;
        if (auto sp = lame_space(p, i, &why))
            model.spaces.push_back(*sp);
        else
            model.rejected.push_back(why);
    }
    model.H = lame_operator(Scalar(p.ksq), model.derived.A, model.derived.C, p.delta, model.field.two_theta_k);
    return model;
}

// ---------------------------------------------------------------------------
// Generalized elliptic ansatz

struct GeneralizedLameAnsatz {
    LaurentPoly V1{Var::x}, V2{Var::x};
    Scalar theta;
    std::array<int, 3> alpha{};
    std::array<int, 3> beta{};
    std::array<int, 3> gamma{};
};

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<std::string> violations;
};

/// beta_j, gamma_j in {0,1} and alpha_j +/- (beta_j - gamma_j) non-negative even, j = 1..3.
inline AdmissibilityReport admissibility_check(const GeneralizedLameAnsatz& g) {
    AdmissibilityReport rep;
    auto violate = [&](std::string s) {
        rep.admissible = false;
        rep.violations.push_back(std::move(s));
    };
    for (int j = 0; j < 3; ++j) {
        const std::string idx = std::to_string(j + 1);
        if (g.alpha[j] < 0) violate("j=" + idx + ": alpha negative");
        if (g.beta[j] != 0 && g.beta[j] != 1) violate("j=" + idx + ": beta not in {0,1}");
        if (g.gamma[j] != 0 && g.gamma[j] != 1) violate("j=" + idx + ": gamma not in {0,1}");
        const int diff = g.beta[j] - g.gamma[j];
        for (int sign : {+1, -1}) {
            const int v = g.alpha[j] + sign * diff;
            if (v < 0 || v % 2 != 0)
                violate("j=" + idx + ": alpha" + (sign > 0 ? " + " : " - ") + "(beta - gamma) = " + std::to_string(v) +
                        " is not a non-negative even integer");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Goldstone potential, k = 0

/// coupling * [[cos^2, cos sin], [cos sin, sin^2]] with cos^2 = 1 - x at k = 0.
inline MatEllipticOp build_goldstone(const Rational& coupling) {
    const Scalar k2;
    const Scalar c(coupling);
    LaurentPoly top(Var::x), bottom(Var::x);
    top.add_term(0, c);
    top.add_term(1, -c);
    bottom.add_term(1, c);
    const EllipticElement off = EllipticElement::monomial(k2, {1, 1, 0}, LaurentPoly::constant(c, Var::x));
    return {{EllipticElement::polynomial(k2, top), off, off, EllipticElement::polynomial(k2, bottom)}};
}

/// Invariant spaces of the Goldstone operator, one per symmetry class under
/// z -> -z (with sigma_3) and z -> z + pi; level M >= 0.
inline std::optional<SpaceDescriptor> goldstone_space(int index, int M, std::string* reason = nullptr) {
    struct Shape {
        EllipticMonomial top, bottom;
        MixerSpec::Orientation o;
        bool linear;
        int kappa;
        int dn;
    };
    static constexpr Shape shapes[4] = {
        {{0, 0, 0}, {1, 1, 0}, MixerSpec::Orientation::upper, true, -1, 0},
        {{0, 1, 0}, {1, 0, 0}, MixerSpec::Orientation::upper, false, 1, -1},
        {{1, 1, 0}, {0, 0, 0}, MixerSpec::Orientation::lower, true, 1, 0},
        {{1, 0, 0}, {0, 1, 0}, MixerSpec::Orientation::upper, false, -1, -1},
    };
    if (index < 1 || index > 4 || M < 0) {
        if (reason) *reason = "G" + std::to_string(index) + ": invalid index or level";
        return std::nullopt;
    }
    const Shape& s = shapes[index - 1];
    SpaceDescriptor sp;
    sp.label = "G" + std::to_string(index);
    sp.prefactor = EllipticDiag{s.top, s.bottom};
    sp.mixer = make_mixer(s.o, s.linear, Scalar(s.kappa));
    sp.n = M + s.dn;
    sp.m = M;
    sp.kappa_formula = "kappa = " + std::to_string(s.kappa);
    sp.kappa_sq = Rational(1);
    return sp;
}

// ---------------------------------------------------------------------------
// Calogero matrix extension

struct CalogeroParams {
    int N = 3;
    Rational nu{2};
    Rational p1{0};
    Rational p2{1, 4};
    Rational eps{0};
    int m = 2;
    Rational kappa0{1};

    Rational b() const { return Rational((1 + nu * N) * (N - 1) / 2); }
    Rational gamma() const { return Rational(2 * eps * (eps - 1 + b())); }
    Rational a() const { return Rational(p1 * (2 - p1) + p2 * (2 * m + 3 * eps - 1 + b())); }
    /// Ground energy of the Calogero part with unit frequency.
    double ground_energy() const { return 0.5 * N + nu.get_d() * N * (N - 1) / 2.0; }
};

/// How the reduced operator in tau is obtained.
enum class CalogeroReading {
    printed,          // tau D^2 + (4 tau + 2b) D + V*, verbatim
    gauge_quartic,    // G^-1 (L0 + V*) G with G = tau^eps exp(-(p2/2) tau^4 - p1 tau^2)
    gauge_quadratic,  // same with G = tau^eps exp(-(p2/2) tau^2 - p1 tau)
};

inline const char* reading_name(CalogeroReading r) {
    switch (r) {
        case CalogeroReading::printed: return "printed";
        case CalogeroReading::gauge_quartic: return "gauge_quartic";
        case CalogeroReading::gauge_quadratic: return "gauge_quadratic";
    }
    return "?";
}

/// Mixer coefficient of the invariant space: kappa0 itself, or kappa0/p2,
/// which is the value matching the coupling 2 m kappa0 sigma_1 of V*.
enum class CalogeroMixer { kappa0, kappa0_over_p2 };

inline const char* mixer_name(CalogeroMixer m) {
    return m == CalogeroMixer::kappa0 ? "kappa0" : "kappa0/p2";
}

/// V*(tau) = -p2^2 tau^3 + 2 p2 (1-p1) tau^2 + (a - 2 p2 sigma_3) tau + (1-p1) sigma_3 + gamma/tau + 2 m kappa0 sigma_1.
inline PolyMat2 calogero_potential(const CalogeroParams& p) {
    const Var t = Var::tau;
    LaurentPoly s(t);
    s.add_term(3, Scalar(Rational(-p.p2 * p.p2)));
    s.add_term(2, Scalar(Rational(2 * p.p2 * (1 - p.p1))));
    s.add_term(1, Scalar(p.a()));
    s.add_term(-1, Scalar(p.gamma()));
    LaurentPoly s3(t);
    s3.add_term(1, Scalar(Rational(-2 * p.p2)));
    s3.add_term(0, Scalar(Rational(1 - p.p1)));
    const Scalar s1 = Rational(2 * p.m * p.kappa0);
    return PolyMat2::diagonal(s, s) + s3 * PolyMat2::sigma3(t) + s1 * PolyMat2::sigma1(t);
}

inline GaugeFactor calogero_gauge(const CalogeroParams& p, CalogeroReading r) {
    LaurentPoly W(Var::tau);
    if (r == CalogeroReading::gauge_quartic) {
        W.add_term(4, Scalar(Rational(p.p2 / 2)));
        W.add_term(2, Scalar(p.p1));
    } else if (r == CalogeroReading::gauge_quadratic) {
        W.add_term(2, Scalar(Rational(p.p2 / 2)));
        W.add_term(1, Scalar(p.p1));
    }
    return GaugeFactor(p.eps, W);
}

/// Radial part of the Calogero operator on functions of tau (tau built on the
/// centroid): tau D^2 + (2 tau + b) D, i.e. psi0^-1 (H_cal - E0) psi0.
inline DiffOp calogero_radial(const CalogeroParams& p) {
    const Var t = Var::tau;
    DiffOp L(t);
    L.add_term(2, LaurentPoly::variable(t));
    LaurentPoly c1(t);
    c1.add_term(1, 2);
    c1.add_term(0, Scalar(p.b()));
    L.add_term(1, c1);
    return L;
}

inline PolynomialModel build_calogero_reduced(const CalogeroParams& p,
                                              CalogeroReading reading = CalogeroReading::printed,
                                              CalogeroMixer mixer = CalogeroMixer::kappa0) {
    const Var t = Var::tau;
    PolynomialModel model;
    const MatDiffOp2 V = MatDiffOp2::potential(calogero_potential(p));
    if (reading == CalogeroReading::printed) {
        DiffOp h(t);
        h.add_term(2, LaurentPoly::variable(t));
        LaurentPoly c1(t);
        c1.add_term(1, 4);
        c1.add_term(0, Scalar(Rational(2 * p.b())));
        h.add_term(1, c1);
        model.original = MatDiffOp2::scalar(h) + V;
        model.reduced = model.original;
        model.space.prefactor = std::monostate{};
    } else {
        model.original = MatDiffOp2::scalar(calogero_radial(p)) + V;
        model.reduced = gauge_conjugate(model.original, calogero_gauge(p, reading));
        model.space.prefactor = calogero_gauge(p, reading);
    }
    Scalar kappa(p.kappa0);
    if (mixer == CalogeroMixer::kappa0_over_p2) {
        if (p.p2 == 0) throw DomainError("kappa0/p2 mixer requires p2 != 0");
        kappa = Scalar(Rational(p.kappa0 / p.p2));
    }
    model.space.label = std::string("calogero/") + reading_name(reading) + "/" + mixer_name(mixer);
    model.space.mixer = MixerSpec::upper(kappa);
    model.space.n = p.m - 2;
    model.space.m = p.m;
    model.space.var = t;
    return model;
}

}  // namespace qes
