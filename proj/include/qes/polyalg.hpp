#pragma once

// Univariate Laurent polynomials over Scalar, their 2-vectors and 2x2
// matrices, parity decomposition, and fraction-free exact linear solving.

#include "qes/exactfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qes {

enum class Var { none, x, y, tau };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::y: return "y";
        case Var::tau: return "tau";
        case Var::none: break;
    }
    return "1";
}

struct VariableMismatch : Error {
    VariableMismatch(Var a, Var b)
        : Error(std::string("variable mismatch: ") + var_name(a) + " vs " + var_name(b)) {}
};

/// Result variable of combining two tags; Var::none acts as a wildcard.
inline Var unify(Var a, Var b) {
    if (a == Var::none) return b;
    if (b == Var::none || a == b) return a;
    throw VariableMismatch(a, b);
}

/// Sparse Laurent polynomial: exponent -> nonzero coefficient.
class LaurentPoly {
public:
    using Terms = std::map<int, Scalar>;

    explicit LaurentPoly(Var v = Var::none) : var_(v) {}
    LaurentPoly(Var v, Terms terms) : var_(v), terms_(std::move(terms)) { prune(); }

    static LaurentPoly constant(const Scalar& c, Var v = Var::none) { return monomial(c, 0, v); }
    static LaurentPoly monomial(const Scalar& c, int k, Var v) {
        LaurentPoly p(v);
        p.add_term(k, c);
        return p;
    }
    static LaurentPoly variable(Var v) { return monomial(1, 1, v); }

    Var var() const { return var_; }
    LaurentPoly with_var(Var v) const {
        LaurentPoly p = *this;
        p.var_ = v;
        return p;
    }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
    bool is_polynomial() const { return terms_.empty() || min_degree() >= 0; }

    /// Membership in P(n): the zero polynomial lies in every P(n), including n = -1.
    bool in_degree_bound(int n) const { return is_zero() || (is_polynomial() && max_degree() <= n); }

    Scalar coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(int k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly derivative() const {
        LaurentPoly d(var_);
        for (const auto& [k, c] : terms_)
            if (k != 0) d.add_term(k - 1, c * Scalar(k));
        return d;
    }

    LaurentPoly nth_derivative(int order) const {
        LaurentPoly d = *this;
        for (int i = 0; i < order; ++i) d = d.derivative();
        return d;
    }

    /// Multiplies by var^shift.
    LaurentPoly shifted(int shift) const {
        LaurentPoly p(var_);
        for (const auto& [k, c] : terms_) p.terms_.emplace(k + shift, c);
        return p;
    }

    /// Terms with exponent outside [lo, hi].
    LaurentPoly outside(int lo, int hi) const {
        LaurentPoly p(var_);
        for (const auto& [k, c] : terms_)
            if (k < lo || k > hi) p.terms_.emplace(k, c);
        return p;
    }

    template <class F>
    F evaluate(const F& t) const {
        F sum = F(0);
        for (const auto& [k, c] : terms_) sum += F(c.to_double()) * std::pow(t, k);
        return sum;
    }
    double operator()(double t) const { return evaluate<double>(t); }

    LaurentPoly operator-() const {
        LaurentPoly p(var_);
        for (const auto& [k, c] : terms_) p.terms_.emplace(k, -c);
        return p;
    }

    friend LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
        LaurentPoly r(unify(p.var_, q.var_), p.terms_);
        for (const auto& [k, c] : q.terms_) r.add_term(k, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) { return p + (-q); }
    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        LaurentPoly r(unify(p.var_, q.var_));
        for (const auto& [i, a] : p.terms_)
            for (const auto& [j, b] : q.terms_) r.add_term(i + j, a * b);
        return r;
    }
    friend LaurentPoly operator*(const Scalar& s, const LaurentPoly& p) {
        LaurentPoly r(p.var_);
        if (s.is_zero()) return r;
        for (const auto& [k, c] : p.terms_) r.terms_.emplace(k, s * c);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& q) { return *this = *this + q; }
    LaurentPoly& operator-=(const LaurentPoly& q) { return *this = *this - q; }
    LaurentPoly& operator*=(const LaurentPoly& q) { return *this = *this * q; }

    /// Compares coefficients only; the variable tag is not part of the value.
    friend bool operator==(const LaurentPoly& p, const LaurentPoly& q) { return p.terms_ == q.terms_; }
    friend bool operator!=(const LaurentPoly& p, const LaurentPoly& q) { return !(p == q); }

    /// Canonical text, descending exponents: "3/2*x^2 - 1*x^-1".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            std::string cs;
            bool negative = false;
            if (c.is_rational()) {
                negative = c.a() < 0;
                cs = to_string(negative ? Rational(-c.a()) : c.a());
            } else {
                cs = c.str();
            }
            if (first)
                os << (negative ? "-" : "");
            else
                os << (negative ? " - " : " + ");
            os << cs;
            if (k != 0) os << '*' << var_name(var_) << '^' << k;
            first = false;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    Var var_;
    Terms terms_;
};

/// Couple of polynomials (top, bottom).
struct PolyVec2 {
    LaurentPoly top;
    LaurentPoly bottom;

    const LaurentPoly& operator[](int slot) const { return slot == 0 ? top : bottom; }
    LaurentPoly& operator[](int slot) { return slot == 0 ? top : bottom; }

    bool is_zero() const { return top.is_zero() && bottom.is_zero(); }

    friend PolyVec2 operator+(const PolyVec2& u, const PolyVec2& v) { return {u.top + v.top, u.bottom + v.bottom}; }
    friend PolyVec2 operator-(const PolyVec2& u, const PolyVec2& v) { return {u.top - v.top, u.bottom - v.bottom}; }
    friend PolyVec2 operator*(const Scalar& s, const PolyVec2& v) { return {s * v.top, s * v.bottom}; }
    friend bool operator==(const PolyVec2& u, const PolyVec2& v) { return u.top == v.top && u.bottom == v.bottom; }
};

/// 2x2 matrix of polynomials; e[0]=e11, e[1]=e12, e[2]=e21, e[3]=e22.
struct PolyMat2 {
    std::array<LaurentPoly, 4> e;

    const LaurentPoly& operator()(int i, int j) const { return e[2 * i + j]; }
    LaurentPoly& operator()(int i, int j) { return e[2 * i + j]; }

    static PolyMat2 identity(Var v) { return diagonal(LaurentPoly::constant(1, v), LaurentPoly::constant(1, v)); }
    static PolyMat2 diagonal(const LaurentPoly& a, const LaurentPoly& b) {
        return {{a, LaurentPoly(a.var()), LaurentPoly(a.var()), b}};
    }
    /// Pauli sigma_1 = [[0,1],[1,0]].
    static PolyMat2 sigma1(Var v) {
        return {{LaurentPoly(v), LaurentPoly::constant(1, v), LaurentPoly::constant(1, v), LaurentPoly(v)}};
    }
    /// Pauli sigma_3 = [[1,0],[0,-1]].
    static PolyMat2 sigma3(Var v) { return diagonal(LaurentPoly::constant(1, v), LaurentPoly::constant(-1, v)); }

    friend PolyMat2 operator+(const PolyMat2& a, const PolyMat2& b) {
        PolyMat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    friend PolyMat2 operator*(const LaurentPoly& s, const PolyMat2& a) {
        PolyMat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
        return r;
    }
    friend PolyMat2 operator*(const Scalar& s, const PolyMat2& a) {
        PolyMat2 r;
        for (int i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
        return r;
    }
    friend PolyVec2 operator*(const PolyMat2& a, const PolyVec2& v) {
        return {a.e[0] * v.top + a.e[1] * v.bottom, a.e[2] * v.top + a.e[3] * v.bottom};
    }
    friend bool operator==(const PolyMat2& a, const PolyMat2& b) { return a.e == b.e; }
};

/// p(y) = even(y^2) + y * odd(y^2); both halves are returned in the variable x.
inline std::pair<LaurentPoly, LaurentPoly> parity_split(const LaurentPoly& p) {
    LaurentPoly even(Var::x), odd(Var::x);
    for (const auto& [k, c] : p.terms()) {
        // floor division keeps negative exponents consistent: y^-1 = y * (y^2)^-1
        int q = k >= 0 ? k / 2 : -((-k + 1) / 2);
        if (k - 2 * q == 0)
            even.add_term(q, c);
        else
            odd.add_term(q, c);
    }
    return {even, odd};
}

/// Inverse of parity_split: even(y^2) + y * odd(y^2).
inline LaurentPoly parity_join(const LaurentPoly& even, const LaurentPoly& odd) {
    LaurentPoly p(Var::y);
    for (const auto& [k, c] : even.terms()) p.add_term(2 * k, c);
    for (const auto& [k, c] : odd.terms()) p.add_term(2 * k + 1, c);
    return p;
}

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<Scalar>;
using ExactVector = std::vector<Scalar>;

inline ExactVector mat_vec(const ExactMatrix& a, const ExactVector& x) {
    ExactVector r(a.rows(), Scalar());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
    return r;
}

/// Solves A x = b exactly for a possibly rectangular A using fraction-free
/// (Bareiss) elimination. Returns nullopt when the system is inconsistent;
/// free variables of an underdetermined system are set to zero.
inline std::optional<ExactVector> exact_solve(const ExactMatrix& A, const ExactVector& b) {
    const std::size_t rows = A.rows(), cols = A.cols();
    if (b.size() != rows) throw DomainError("exact_solve: dimension mismatch");
    ExactMatrix M(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = A(i, j);
        M(i, cols) = b[i];
    }

    std::vector<std::size_t> pivot_cols;
    Scalar prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j <= cols; ++j) std::swap(M(p, j), M(r, j));
        const Scalar pivot = M(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar lead = M(i, c);
            for (std::size_t j = c + 1; j <= cols; ++j) M(i, j) = (pivot * M(i, j) - lead * M(r, j)) / prev;
            M(i, c) = Scalar();
        }
        prev = pivot;
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!M(i, cols).is_zero()) return std::nullopt;

    ExactVector x(cols, Scalar());
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t c = pivot_cols[k];
        Scalar sum = M(k, cols);
        for (std::size_t j = c + 1; j < cols; ++j)
            if (!x[j].is_zero()) sum -= M(k, j) * x[j];
        x[c] = sum / M(k, c);
    }
    return x;
}

/// Reduces v modulo the column span of A. The remainder is zero iff v lies in
/// the span; otherwise it is the part of v on non-pivot coordinates after
/// elimination, a canonical witness of non-membership.
inline ExactVector reduce_modulo_span(const ExactMatrix& A, ExactVector v) {
    const std::size_t rows = A.rows(), cols = A.cols();
    // Work with the basis vectors as rows, echelonized over the field.
    std::vector<ExactVector> basis;
    std::vector<std::size_t> pivots;
    for (std::size_t j = 0; j < cols; ++j) {
        ExactVector w(rows);
        for (std::size_t i = 0; i < rows; ++i) w[i] = A(i, j);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Scalar f = w[pivots[k]];
            if (f.is_zero()) continue;
            for (std::size_t i = 0; i < rows; ++i) w[i] -= f * basis[k][i];
        }
        std::size_t p = 0;
        while (p < rows && w[p].is_zero()) ++p;
        if (p == rows) continue;
        const Scalar inv = w[p].inv();
        for (auto& e : w) e *= inv;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Scalar f = basis[k][p];
            if (f.is_zero()) continue;
            for (std::size_t i = 0; i < rows; ++i) basis[k][i] -= f * w[i];
        }
        basis.push_back(std::move(w));
        pivots.push_back(p);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Scalar f = v[pivots[k]];
        if (f.is_zero()) continue;
        for (std::size_t i = 0; i < rows; ++i) v[i] -= f * basis[k][i];
    }
    return v;
}

}  // namespace qes
