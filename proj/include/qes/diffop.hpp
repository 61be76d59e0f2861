#pragma once

// Matrix differential operators with Laurent-polynomial coefficients and the
// exact transformations applied to them: gauge conjugation, pushforward under
// x = y^2, and conjugation by a triangular mixer.

#include "qes/polyalg.hpp"

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qes {

struct ParityViolation : Error {
    using Error::Error;
};

/// Scalar operator sum_i c_i(t) D^i.
class DiffOp {
public:
    using Terms = std::map<int, LaurentPoly>;

    explicit DiffOp(Var v = Var::none) : var_(v) {}

    static DiffOp multiplication(const LaurentPoly& c) {
        DiffOp op(c.var());
        op.add_term(0, c);
        return op;
    }
    static DiffOp derivative(Var v, int order = 1) {
        DiffOp op(v);
        op.add_term(order, LaurentPoly::constant(1, v));
        return op;
    }
    static DiffOp identity(Var v) { return multiplication(LaurentPoly::constant(1, v)); }

    Var var() const { return var_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    LaurentPoly coeff(int i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? LaurentPoly(var_) : it->second;
    }

    void add_term(int order, const LaurentPoly& c) {
        var_ = unify(var_, c.var());
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(order, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly apply(const LaurentPoly& f) const {
        LaurentPoly out(unify(var_, f.var()));
        LaurentPoly df = f;
        int done = 0;
        for (const auto& [i, c] : terms_) {
            while (done < i) {
                df = df.derivative();
                ++done;
            }
            out += c * df;
        }
        return out;
    }

    DiffOp operator-() const { return Scalar(-1) * *this; }
    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        DiffOp r = a;
        r.var_ = unify(a.var_, b.var_);
        for (const auto& [i, c] : b.terms_) r.add_term(i, c);
        return r;
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }
    friend DiffOp operator*(const Scalar& s, const DiffOp& a) {
        DiffOp r(a.var_);
        for (const auto& [i, c] : a.terms_) r.add_term(i, s * c);
        return r;
    }
    /// Left multiplication by a function.
    friend DiffOp operator*(const LaurentPoly& p, const DiffOp& a) {
        DiffOp r(unify(p.var(), a.var_));
        for (const auto& [i, c] : a.terms_) r.add_term(i, p * c);
        return r;
    }
    DiffOp& operator+=(const DiffOp& b) { return *this = *this + b; }

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            os << '(' << it->second.str() << ')';
            if (it->first > 0) os << "*D^" << it->first;
            first = false;
        }
        return os.str();
    }

private:
    Var var_;
    Terms terms_;
};

inline Scalar binomial(int n, int k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(Rational(b));
}

/// a o b by Leibniz: (c D^i) o (d D^j) = c sum_k C(i,k) d^(k) D^(i-k+j).
inline DiffOp compose(const DiffOp& a, const DiffOp& b) {
    DiffOp r(unify(a.var(), b.var()));
    for (const auto& [i, c] : a.terms())
        for (const auto& [j, d] : b.terms()) {
            LaurentPoly dk = d;
            for (int k = 0; k <= i; ++k) {
                if (dk.is_zero()) break;
                r.add_term(i - k + j, binomial(i, k) * (c * dk));
                dk = dk.derivative();
            }
        }
    return r;
}

/// 2x2 matrix of DiffOp; e[0]=e11, e[1]=e12, e[2]=e21, e[3]=e22.
struct MatDiffOp2 {
    std::array<DiffOp, 4> e;

    const DiffOp& operator()(int i, int j) const { return e[2 * i + j]; }
    DiffOp& operator()(int i, int j) { return e[2 * i + j]; }

    static MatDiffOp2 diagonal(const DiffOp& a, const DiffOp& b) {
        return {{a, DiffOp(a.var()), DiffOp(a.var()), b}};
    }
    static MatDiffOp2 scalar(const DiffOp& a) { return diagonal(a, a); }
    static MatDiffOp2 identity(Var v) { return scalar(DiffOp::identity(v)); }
    static MatDiffOp2 potential(const PolyMat2& m) {
        MatDiffOp2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = DiffOp::multiplication(m.e[i]);
        return r;
    }

    Var var() const {
        Var v = Var::none;
        for (const auto& op : e) v = unify(v, op.var());
        return v;
    }
    int order() const {
        int o = -1;
        for (const auto& op : e) o = std::max(o, op.order());
        return o;
    }
    bool is_diagonal() const { return e[1].is_zero() && e[2].is_zero(); }

    PolyVec2 apply(const PolyVec2& v) const {
        return {e[0].apply(v.top) + e[1].apply(v.bottom), e[2].apply(v.top) + e[3].apply(v.bottom)};
    }

    friend MatDiffOp2 operator+(const MatDiffOp2& a, const MatDiffOp2& b) {
        MatDiffOp2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    friend MatDiffOp2 operator-(const MatDiffOp2& a, const MatDiffOp2& b) {
        MatDiffOp2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }
    friend MatDiffOp2 operator*(const Scalar& s, const MatDiffOp2& a) {
        MatDiffOp2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
        return r;
    }
    friend bool operator==(const MatDiffOp2& a, const MatDiffOp2& b) { return a.e == b.e; }
};

inline MatDiffOp2 compose(const MatDiffOp2& a, const MatDiffOp2& b) {
    MatDiffOp2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = compose(a(i, 0), b(0, j)) + compose(a(i, 1), b(1, j));
    return r;
}

/// g(t) = t^eps * exp(-W(t)); W is a plain polynomial with no constant term.
struct GaugeFactor {
    Rational eps{0};
    LaurentPoly W;

    GaugeFactor() = default;
    GaugeFactor(Rational e, LaurentPoly w) : eps(std::move(e)), W(std::move(w)) {
        if (!W.is_polynomial()) throw DomainError("gauge exponent must be a polynomial");
        W.add_term(0, -W.coeff(0));
    }

    /// g'/g = eps/t - W'(t).
    LaurentPoly log_derivative(Var v) const {
        return LaurentPoly::monomial(Scalar(eps), -1, v) - W.derivative().with_var(v);
    }

    double evaluate(double t) const { return std::pow(t, eps.get_d()) * std::exp(-W(t)); }
};

/// g^-1 o op o g via D -> D + g'/g, applied termwise.
inline MatDiffOp2 gauge_conjugate(const MatDiffOp2& op, const GaugeFactor& g) {
    const Var v = op.var();
    const DiffOp shifted = DiffOp::derivative(v) + DiffOp::multiplication(g.log_derivative(v));
    std::vector<DiffOp> powers{DiffOp::identity(v)};
    MatDiffOp2 r;
    for (int k = 0; k < 4; ++k) {
        r.e[k] = DiffOp(v);
        for (const auto& [i, c] : op.e[k].terms()) {
            while (static_cast<int>(powers.size()) <= i) powers.push_back(compose(shifted, powers.back()));
            r.e[k] += c * powers[i];
        }
    }
    return r;
}

/// Rewrites an even-parity operator in y as an operator in x = y^2, acting on
/// u with f(y) = u(y^2). D_y^i on even functions is E_i(x, D_x) for even i and
/// y * O_i(x, D_x) for odd i, with O_{i+1} = 2 D_x E_i and E_{i+1} = (1 + 2x D_x) O_i.
inline MatDiffOp2 pushforward_even(const MatDiffOp2& op) {
    if (op.var() != Var::y && op.var() != Var::none) throw VariableMismatch(op.var(), Var::y);
    const int max_order = std::max(op.order(), 0);
    const DiffOp Dx = DiffOp::derivative(Var::x);
    const DiffOp lift = DiffOp::identity(Var::x) + Scalar(2) * compose(DiffOp::multiplication(LaurentPoly::variable(Var::x)), Dx);
    std::vector<DiffOp> chain{DiffOp::identity(Var::x)};
    for (int i = 1; i <= max_order; ++i)
        chain.push_back(i % 2 == 1 ? compose(Scalar(2) * Dx, chain.back()) : compose(lift, chain.back()));

    static const char* names[] = {"e11", "e12", "e21", "e22"};
    MatDiffOp2 r;
    for (int k = 0; k < 4; ++k) {
        r.e[k] = DiffOp(Var::x);
        for (const auto& [i, c] : op.e[k].terms()) {
            auto [even, odd] = parity_split(c);
            const bool odd_order = i % 2 == 1;
            const LaurentPoly& wrong = odd_order ? even : odd;
            if (!wrong.is_zero()) {
                LaurentPoly offending = odd_order ? parity_join(even, LaurentPoly(Var::x)) : parity_join(LaurentPoly(Var::x), odd);
                throw ParityViolation(std::string("pushforward_even: entry ") + names[k] + ", order " + std::to_string(i) +
                                      " has wrong-parity coefficient part " + offending.str());
            }
            // odd order: c(y) * y * O_i = x * odd(x) * O_i
            LaurentPoly factor = odd_order ? odd.shifted(1) : even;
            r.e[k] += factor * chain[i];
        }
    }
    return r;
}

/// Triangular change of basis P = I + N with N holding
/// kappa0 D + kappa1 + kappa2 x D + kappa3 x in the off-diagonal slot.
struct MixerSpec {
    enum class Orientation { upper, lower };

    Orientation orientation = Orientation::upper;
    Scalar kappa0, kappa1, kappa2, kappa3;

    static MixerSpec identity() { return {}; }
    static MixerSpec upper(Scalar k0, Scalar k1 = {}, Scalar k2 = {}, Scalar k3 = {}) {
        return {Orientation::upper, std::move(k0), std::move(k1), std::move(k2), std::move(k3)};
    }
    static MixerSpec lower(Scalar k0, Scalar k1 = {}, Scalar k2 = {}, Scalar k3 = {}) {
        return {Orientation::lower, std::move(k0), std::move(k1), std::move(k2), std::move(k3)};
    }

    bool is_identity() const { return kappa0.is_zero() && kappa1.is_zero() && kappa2.is_zero() && kappa3.is_zero(); }

    DiffOp entry(Var v) const {
        const LaurentPoly t = LaurentPoly::variable(v);
        DiffOp op(v);
        op.add_term(1, LaurentPoly::constant(kappa0, v) + kappa2 * t);
        op.add_term(0, LaurentPoly::constant(kappa1, v) + kappa3 * t);
        return op;
    }

    MatDiffOp2 nilpotent(Var v) const {
        MatDiffOp2 n{{DiffOp(v), DiffOp(v), DiffOp(v), DiffOp(v)}};
        (orientation == Orientation::upper ? n(0, 1) : n(1, 0)) = entry(v);
        return n;
    }
    MatDiffOp2 matrix(Var v) const { return MatDiffOp2::identity(v) + nilpotent(v); }
    MatDiffOp2 inverse(Var v) const { return MatDiffOp2::identity(v) - nilpotent(v); }
};

/// P^-1 o op o P, with P^-1 = I - N exactly since N^2 = 0.
inline MatDiffOp2 mixer_conjugate(const MatDiffOp2& op, const MixerSpec& mixer) {
    if (mixer.is_identity()) return op;
    const Var v = op.var() == Var::none ? Var::x : op.var();
    return compose(mixer.inverse(v), compose(op, mixer.matrix(v)));
}

}  // namespace qes
