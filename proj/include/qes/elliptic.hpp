#pragma once

// Exact Jacobi function algebra: elements sum p_abe(x) sn^a cn^b dn^e with
// a, b, e in {0,1} and x = sn^2, closed under products and d/dz. Also the
// floating-point evaluators for K(k) and sn, cn, dn.

#include "qes/polyalg.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

namespace qes {

struct ModulusMismatch : Error {
    using Error::Error;
};

/// sn^a cn^b dn^e with exponents in {0,1}.
struct EllipticMonomial {
    int a = 0, b = 0, e = 0;

    constexpr int index() const { return 4 * a + 2 * b + e; }
    static constexpr EllipticMonomial from_index(int i) { return {(i >> 2) & 1, (i >> 1) & 1, i & 1}; }

    std::string str() const {
        std::string s;
        auto put = [&](bool on, const char* name) {
            if (!on) return;
            if (!s.empty()) s += '*';
            s += name;
        };
        put(a, "sn");
        put(b, "cn");
        put(e, "dn");
        return s.empty() ? "1" : s;
    }
    /// Key used in JSON: "(a,b,e)".
    std::string key() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(e) + ")";
    }

    friend constexpr bool operator==(const EllipticMonomial&, const EllipticMonomial&) = default;
};

class EllipticElement {
public:
    explicit EllipticElement(Scalar ksq = Scalar()) : ksq_(std::move(ksq)) { parts_.fill(LaurentPoly(Var::x)); }

    static EllipticElement monomial(const Scalar& ksq, EllipticMonomial m, const LaurentPoly& p) {
        EllipticElement u(ksq);
        u.add(m, p);
        return u;
    }
    static EllipticElement monomial(const Scalar& ksq, EllipticMonomial m) {
        return monomial(ksq, m, LaurentPoly::constant(1, Var::x));
    }
    static EllipticElement polynomial(const Scalar& ksq, const LaurentPoly& p) { return monomial(ksq, {}, p); }
    static EllipticElement constant(const Scalar& ksq, const Scalar& c) {
        return polynomial(ksq, LaurentPoly::constant(c, Var::x));
    }
    static EllipticElement sn(const Scalar& ksq) { return monomial(ksq, {1, 0, 0}); }
    static EllipticElement cn(const Scalar& ksq) { return monomial(ksq, {0, 1, 0}); }
    static EllipticElement dn(const Scalar& ksq) { return monomial(ksq, {0, 0, 1}); }
    static EllipticElement x(const Scalar& ksq) { return polynomial(ksq, LaurentPoly::variable(Var::x)); }

    const Scalar& ksq() const { return ksq_; }
    const LaurentPoly& part(EllipticMonomial m) const { return parts_[m.index()]; }
    const LaurentPoly& part(int index) const { return parts_[index]; }

    void add(EllipticMonomial m, const LaurentPoly& p) {
        // at k = 0, dn == 1 identically and its parts fold into the dn-free ones
        if (m.e == 1 && ksq_.is_zero()) m.e = 0;
        parts_[m.index()] += p.with_var(Var::x);
    }

    bool is_zero() const {
        for (const auto& p : parts_)
            if (!p.is_zero()) return false;
        return true;
    }

    int max_degree() const {
        int d = -1;
        for (const auto& p : parts_) d = std::max(d, p.max_degree());
        return d;
    }

    EllipticElement operator-() const { return Scalar(-1) * *this; }
    friend EllipticElement operator+(const EllipticElement& u, const EllipticElement& v) {
        check_modulus(u, v);
        EllipticElement r = u;
        for (int i = 0; i < 8; ++i) r.parts_[i] += v.parts_[i];
        return r;
    }
    friend EllipticElement operator-(const EllipticElement& u, const EllipticElement& v) { return u + (-v); }
    friend EllipticElement operator*(const Scalar& s, const EllipticElement& u) {
        EllipticElement r(u.ksq_);
        for (int i = 0; i < 8; ++i) r.parts_[i] = s * u.parts_[i];
        return r;
    }
    friend EllipticElement operator*(const LaurentPoly& p, const EllipticElement& u) {
        EllipticElement r(u.ksq_);
        for (int i = 0; i < 8; ++i) r.parts_[i] = p.with_var(Var::x) * u.parts_[i];
        return r;
    }
    friend EllipticElement operator*(const EllipticElement& u, const EllipticElement& v) {
        check_modulus(u, v);
        EllipticElement r(u.ksq_);
        const LaurentPoly x = LaurentPoly::variable(Var::x);
        const LaurentPoly one = LaurentPoly::constant(1, Var::x);
        const LaurentPoly cn2 = one - x;
        const LaurentPoly dn2 = one - u.ksq_ * x;
        for (int i = 0; i < 8; ++i) {
            if (u.parts_[i].is_zero()) continue;
            const auto mi = EllipticMonomial::from_index(i);
            for (int j = 0; j < 8; ++j) {
                if (v.parts_[j].is_zero()) continue;
                const auto mj = EllipticMonomial::from_index(j);
                LaurentPoly p = u.parts_[i] * v.parts_[j];
                if (mi.a + mj.a == 2) p *= x;
                if (mi.b + mj.b == 2) p *= cn2;
                if (mi.e + mj.e == 2) p *= dn2;
                r.add({(mi.a + mj.a) % 2, (mi.b + mj.b) % 2, (mi.e + mj.e) % 2}, p);
            }
        }
        return r;
    }
    EllipticElement& operator+=(const EllipticElement& v) { return *this = *this + v; }

    friend bool operator==(const EllipticElement& u, const EllipticElement& v) {
        return u.ksq_ == v.ksq_ && u.parts_ == v.parts_;
    }
    friend bool operator!=(const EllipticElement& u, const EllipticElement& v) { return !(u == v); }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < 8; ++i) {
            if (parts_[i].is_zero()) continue;
            if (!first) os << " + ";
            os << '(' << parts_[i].str() << ")*" << EllipticMonomial::from_index(i).str();
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    static void check_modulus(const EllipticElement& u, const EllipticElement& v) {
        if (u.ksq_ != v.ksq_) throw ModulusMismatch("modulus mismatch: k^2 = " + u.ksq_.str() + " vs " + v.ksq_.str());
    }

    Scalar ksq_;
    std::array<LaurentPoly, 8> parts_;
};

inline EllipticElement ell_mul(const EllipticElement& u, const EllipticElement& v) { return u * v; }

/// d/dz using sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn and dx/dz = 2 sn cn dn.
inline EllipticElement ell_diff(const EllipticElement& u) {
    const Scalar& k2 = u.ksq();
    const EllipticElement dxdz = Scalar(2) * EllipticElement::monomial(k2, {1, 1, 1});
    EllipticElement r(k2);
    for (int i = 0; i < 8; ++i) {
        const LaurentPoly& p = u.part(i);
        if (p.is_zero()) continue;
        const auto m = EllipticMonomial::from_index(i);
        const EllipticElement mono = EllipticElement::monomial(k2, m);
        r += EllipticElement::polynomial(k2, p.derivative()) * dxdz * mono;

        EllipticElement dmono(k2);
        if (m.a)
            dmono += EllipticElement::monomial(k2, {0, 1, 1}) * EllipticElement::monomial(k2, {0, m.b, m.e});
        if (m.b)
            dmono += Scalar(-1) * EllipticElement::monomial(k2, {1, 0, 1}) * EllipticElement::monomial(k2, {m.a, 0, m.e});
        if (m.e) dmono += (-k2) * EllipticElement::monomial(k2, {1, 1, 0}) * EllipticElement::monomial(k2, {m.a, m.b, 0});
        r += EllipticElement::polynomial(k2, p) * dmono;
    }
    return r;
}

/// Pair (top, bottom) of elements; the function-space analogue of PolyVec2.
struct EllipticPair {
    EllipticElement top;
    EllipticElement bottom;

    const EllipticElement& operator[](int slot) const { return slot == 0 ? top : bottom; }

    friend EllipticPair operator+(const EllipticPair& u, const EllipticPair& v) { return {u.top + v.top, u.bottom + v.bottom}; }
    friend EllipticPair operator*(const Scalar& s, const EllipticPair& v) { return {s * v.top, s * v.bottom}; }
    friend bool operator==(const EllipticPair& u, const EllipticPair& v) { return u.top == v.top && u.bottom == v.bottom; }
};

/// H = -d^2/dz^2 + potential, with a Hermitian 2x2 potential of elements.
struct MatEllipticOp {
    std::array<EllipticElement, 4> potential;

    const Scalar& ksq() const { return potential[0].ksq(); }
    const EllipticElement& operator()(int i, int j) const { return potential[2 * i + j]; }
    bool is_hermitian() const { return potential[1] == potential[2]; }
    bool is_diagonal() const { return potential[1].is_zero() && potential[2].is_zero(); }
};

inline EllipticPair apply_elliptic(const MatEllipticOp& H, const EllipticPair& psi) {
    const EllipticElement top = -ell_diff(ell_diff(psi.top)) + H(0, 0) * psi.top + H(0, 1) * psi.bottom;
    const EllipticElement bottom = -ell_diff(ell_diff(psi.bottom)) + H(1, 0) * psi.top + H(1, 1) * psi.bottom;
    return {top, bottom};
}

// ---------------------------------------------------------------------------
// Floating-point evaluation

struct JacobiValues {
    double sn, cn, dn;
};

namespace detail {

struct AgmLadder {
    std::array<double, 40> a{}, c{};
    int levels = 0;
};

inline void check_modulus_range(double ksq) {
    if (!(ksq >= 0.0 && ksq < 1.0)) throw DomainError("modulus k^2 = " + std::to_string(ksq) + " outside [0, 1)");
}

// Arithmetic-geometric mean ladder; stops at the first level with c_n below 1e-16 a_n.
inline AgmLadder agm_ladder(double ksq) {
    check_modulus_range(ksq);
    AgmLadder L;
    double a = 1.0, b = std::sqrt(1.0 - ksq), c = std::sqrt(ksq);
    L.a[0] = a;
    L.c[0] = c;
    int n = 0;
    while (std::abs(c) > 1e-16 * a && n + 1 < static_cast<int>(L.a.size())) {
        const double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        ++n;
        L.a[n] = a;
        L.c[n] = c;
    }
    L.levels = n;
    return L;
}

}  // namespace detail

/// Complete elliptic integral of the first kind, K = pi / (2 AGM(1, k')).
inline double agm_complete_K(double ksq) {
    const auto L = detail::agm_ladder(ksq);
    return std::numbers::pi / (2.0 * L.a[L.levels]);
}

/// sn, cn, dn by the descending Landen (AGM) backward recurrence.
inline JacobiValues jacobi_eval(double z, double ksq) {
    const auto L = detail::agm_ladder(ksq);
    double phi = std::ldexp(L.a[L.levels] * z, L.levels);
    for (int j = L.levels; j >= 1; --j) phi = 0.5 * (phi + std::asin(L.c[j] * std::sin(phi) / L.a[j]));
    const double sn = std::sin(phi), cn = std::cos(phi);
    return {sn, cn, std::sqrt(1.0 - ksq * sn * sn)};
}

inline double evaluate(const EllipticElement& u, const JacobiValues& j) {
    const double x = j.sn * j.sn;
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        const LaurentPoly& p = u.part(i);
        if (p.is_zero()) continue;
        const auto m = EllipticMonomial::from_index(i);
        double mono = 1.0;
        if (m.a) mono *= j.sn;
        if (m.b) mono *= j.cn;
        if (m.e) mono *= j.dn;
        sum += p(x) * mono;
    }
    return sum;
}

inline double evaluate(const EllipticElement& u, double z) {
    return evaluate(u, jacobi_eval(z, u.ksq().to_double()));
}

}  // namespace qes
