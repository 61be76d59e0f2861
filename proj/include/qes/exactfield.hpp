#pragma once

// Exact scalar arithmetic: GMP rationals and the quadratic extension Q(sqrt r).

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qes {

using Integer = mpz_class;
using Rational = mpq_class;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
struct RadicandMismatch : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a decimal such as "-1.25" / "3e-2".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty rational");
    if (s.front() == '+') s.erase(s.begin());

    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
        if (q.get_den() == 0) throw DivisionByZero();
        q.canonicalize();
        return q;
    }

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '-') {
        negative = true;
        ++pos;
    }
    std::string mantissa;
    long exponent = 0;
    bool seen_point = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == 'e' || c == 'E') {
            std::string tail = s.substr(pos + 1);
            char* end = nullptr;
            long e = std::strtol(tail.c_str(), &end, 10);
            if (tail.empty() || *end != '\0') throw ParseError("bad exponent in '" + s + "'");
            exponent += e;
            pos = s.size();
            break;
        } else {
            throw ParseError("bad number '" + s + "'");
        }
    }
    if (!seen_digit) throw ParseError("bad number '" + s + "'");
    Integer num(mantissa, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

/// "p" for integers, otherwise "p/q".
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Returns s >= 0 with s*s == r when r is the square of a rational.
inline std::optional<Rational> rational_sqrt_check(const Rational& r) {
    if (r < 0) throw DomainError("rational_sqrt_check: negative input " + to_string(r));
    Integer num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational s(sn, sd);
    s.canonicalize();
    return s;
}

/// Element a + b*sqrt(r) of Q(sqrt r). A rational value has b == 0 and r == 0.
///
/// The radicand is never a rational square: such values collapse to a
/// Rational on construction. Binary operations require both operands to be
/// rational or to share the radicand.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : a_(v) {}
    Scalar(long v) : a_(v) {}
    Scalar(Rational v) : a_(std::move(v)) {}

    static Scalar quadratic(Rational a, Rational b, Rational r) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.r_ = std::move(r);
        s.normalize();
        return s;
    }

    /// sqrt(q) expressed in Q(sqrt radicand), positive branch.
    /// Fails unless q/radicand is a rational square (or q itself is one).
    static Scalar sqrt_in(const Rational& q, const Rational& radicand) {
        if (q < 0) throw DomainError("sqrt of negative " + to_string(q));
        if (auto s = rational_sqrt_check(q)) return Scalar(*s);
        if (radicand <= 0) throw RadicandMismatch("sqrt(" + to_string(q) + ") is irrational and no radicand given");
        auto ratio = rational_sqrt_check(Rational(q / radicand));
        if (!ratio)
            throw RadicandMismatch("sqrt(" + to_string(q) + ") does not lie in Q(sqrt " + to_string(radicand) + ")");
        return quadratic(0, *ratio, radicand);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& radicand() const { return r_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    const Rational& as_rational() const {
        if (!is_rational()) throw DomainError("irrational scalar used where a rational is required");
        return a_;
    }

    double to_double() const {
        if (is_rational()) return a_.get_d();
        return a_.get_d() + b_.get_d() * std::sqrt(r_.get_d());
    }

    /// High-precision value (bits of mantissa).
    mpf_class to_mpf(mp_bitcnt_t bits) const {
        mpf_class av(0, bits), bv(0, bits), rv(0, bits);
        av = mpf_class(a_, bits);
        if (is_rational()) return av;
        bv = mpf_class(b_, bits);
        rv = mpf_class(r_, bits);
        mpf_class root(0, bits);
        mpf_sqrt(root.get_mpf_t(), rv.get_mpf_t());
        return av + bv * root;
    }

    Scalar operator-() const { return quadratic(-a_, -b_, r_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.a_ + y.a_));
        return quadratic(x.a_ + y.a_, x.b_ + y.b_, common_radicand(x, y));
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.a_ * y.a_));
        Rational r = common_radicand(x, y);
        return quadratic(x.a_ * y.a_ + x.b_ * y.b_ * r, x.a_ * y.b_ + x.b_ * y.a_, r);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

    Scalar inv() const {
        if (is_zero()) throw DivisionByZero();
        if (is_rational()) return Scalar(Rational(1 / a_));
        Rational norm = a_ * a_ - b_ * b_ * r_;
        return quadratic(a_ / norm, -b_ / norm, r_);
    }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.is_rational() != y.is_rational()) return false;
        if (x.is_rational()) return x.a_ == y.a_;
        return x.a_ == y.a_ && x.b_ == y.b_ && x.r_ == y.r_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    /// Canonical text: "p/q" or "(p/q + p/q*sqrt(r))".
    std::string str() const {
        if (is_rational()) return to_string(a_);
        std::ostringstream os;
        os << '(' << to_string(a_) << " + " << to_string(b_) << "*sqrt(" << to_string(r_) << "))";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    static Rational common_radicand(const Scalar& x, const Scalar& y) {
        if (x.is_rational()) return y.r_;
        if (y.is_rational()) return x.r_;
        if (x.r_ != y.r_)
            throw RadicandMismatch("radicand mismatch: " + to_string(x.r_) + " vs " + to_string(y.r_));
        return x.r_;
    }

    void normalize() {
        if (b_ == 0) {
            r_ = 0;
            return;
        }
        if (r_ < 0) throw DomainError("negative radicand " + to_string(r_));
        if (auto s = rational_sqrt_check(r_)) {
            a_ += b_ * *s;
            b_ = 0;
            r_ = 0;
        }
    }

    Rational a_{0};
    Rational b_{0};
    Rational r_{0};
};

}  // namespace qes
