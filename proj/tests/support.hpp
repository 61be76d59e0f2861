#pragma once

#include "qes/qes.hpp"

#include <random>

namespace qes::testing {

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(int span = 9, int den = 6) {
        return make_rational(integer(-span, span), integer(1, den));
    }

    Rational nonzero_rational(int span = 9, int den = 6) {
        for (;;) {
            Rational q = rational(span, den);
            if (q != 0) return q;
        }
    }

    /// a + b sqrt(r); b may be zero.
    Scalar scalar(const Rational& r) {
        if (r == 0) return Scalar(rational());
        return Scalar::quadratic(rational(), rational(), r);
    }

    Scalar nonzero_scalar(const Rational& r) {
        for (;;) {
            Scalar s = scalar(r);
            if (!s.is_zero()) return s;
        }
    }

    LaurentPoly poly(Var v, int lo, int hi, int terms = 3) {
        LaurentPoly p(v);
        for (int i = 0; i < terms; ++i) p.add_term(integer(lo, hi), Scalar(rational()));
        return p;
    }

    DiffOp diffop(Var v, int max_order, int lo, int hi) {
        DiffOp op(v);
        for (int i = 0; i <= max_order; ++i) op.add_term(i, poly(v, lo, hi, 2));
        return op;
    }

    MatDiffOp2 matdiffop(Var v, int max_order, int lo, int hi) {
        MatDiffOp2 op;
        for (auto& e : op.e) e = diffop(v, max_order, lo, hi);
        return op;
    }

    EllipticElement elliptic(const Scalar& ksq, int max_deg = 2) {
        EllipticElement u(ksq);
        for (int i = 0; i < 8; ++i)
            if (integer(0, 2) > 0) u.add(EllipticMonomial::from_index(i), poly(Var::x, 0, max_deg, 2));
        return u;
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline LaurentPoly px(std::initializer_list<std::pair<int, Rational>> terms, Var v = Var::x) {
    LaurentPoly p(v);
    for (const auto& [k, c] : terms) p.add_term(k, Scalar(c));
    return p;
}

/// Sixth-order central second derivative.
template <class F>
double d2_fd6(F&& f, double z, double h) {
    return (2 * f(z - 3 * h) - 27 * f(z - 2 * h) + 270 * f(z - h) - 490 * f(z) + 270 * f(z + h) - 27 * f(z + 2 * h) +
            2 * f(z + 3 * h)) /
           (180 * h * h);
}

}  // namespace qes::testing
