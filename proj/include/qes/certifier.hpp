#pragma once

// Invariance certifier: proves H V <= V by exact computation, returns the
// representation matrix, the exact characteristic polynomial, its roots, and
// closed-form eigenfunctions.

#include "qes/models.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace qes {

struct TrackMismatch : Error {
    using Error::Error;
};

struct Certificate {
    SpaceDescriptor space;
    int dim = 0;
    ExactMatrix matrix;            // column j = coordinates of H b_j
    std::vector<Scalar> charpoly;  // det(lambda I - M), ascending powers
    bool residual_zero = false;    // exact recheck after assembly
};

struct Counterexample {
    SpaceDescriptor space;
    int failing_index = -1;
    std::string residual;  // the non-member part of H b_j
    std::string locator;
};

using CertifyResult = std::variant<Certificate, Counterexample>;

inline bool is_certificate(const CertifyResult& r) { return std::holds_alternative<Certificate>(r); }

/// Human-readable name of basis element j: "top x^2" / "bottom x^0".
inline std::string basis_label(const SpaceDescriptor& sp, int j) {
    const int top_count = sp.n + 1;
    const bool top = j < top_count;
    return std::string(top ? "top " : "bottom ") + var_name(sp.var) + "^" + std::to_string(top ? j : j - top_count);
}

/// Coordinate monomial vectors (x^j, 0), j = 0..n, then (0, x^j), j = 0..m.
inline std::vector<PolyVec2> coordinate_basis(const SpaceDescriptor& sp) {
    std::vector<PolyVec2> basis;
    for (int j = 0; j <= sp.n; ++j) basis.push_back({LaurentPoly::monomial(1, j, sp.var), LaurentPoly(sp.var)});
    for (int j = 0; j <= sp.m; ++j) basis.push_back({LaurentPoly(sp.var), LaurentPoly::monomial(1, j, sp.var)});
    return basis;
}

/// P applied to the coordinate basis.
inline std::vector<PolyVec2> realize_polynomial_basis(const SpaceDescriptor& sp) {
    const MatDiffOp2 P = sp.mixer.matrix(sp.var);
    std::vector<PolyVec2> out;
    for (const auto& e : coordinate_basis(sp)) out.push_back(P.apply(e));
    return out;
}

inline std::vector<EllipticPair> realize_elliptic_basis(const SpaceDescriptor& sp, const Scalar& ksq) {
    const auto* diag = std::get_if<EllipticDiag>(&sp.prefactor);
    if (!diag) throw TrackMismatch("space " + sp.label + " has no elliptic prefactor");
    std::vector<EllipticPair> out;
    for (const auto& v : realize_polynomial_basis(sp))
        out.push_back({EllipticElement::monomial(ksq, diag->top, v.top), EllipticElement::monomial(ksq, diag->bottom, v.bottom)});
    return out;
}

namespace detail {

using CoordKey = std::tuple<int, int, int>;  // slot, Jacobi part, exponent
using Coords = std::map<CoordKey, Scalar>;

inline Coords flatten(const PolyVec2& v) {
    Coords c;
    for (int s = 0; s < 2; ++s)
        for (const auto& [k, a] : v[s].terms()) c.emplace(CoordKey{s, 0, k}, a);
    return c;
}

inline Coords flatten(const EllipticPair& v) {
    Coords c;
    for (int s = 0; s < 2; ++s)
        for (int part = 0; part < 8; ++part)
            for (const auto& [k, a] : v[s].part(part).terms()) c.emplace(CoordKey{s, part, k}, a);
    return c;
}

inline std::string coords_str(const Coords& c, Var v, bool elliptic) {
    std::array<std::map<int, LaurentPoly>, 2> slots;
    for (const auto& [key, a] : c) {
        auto [s, part, k] = key;
        auto [it, _] = slots[s].try_emplace(part, LaurentPoly(v));
        it->second.add_term(k, a);
    }
    std::string out;
    for (int s = 0; s < 2; ++s) {
        out += s == 0 ? "top: " : "; bottom: ";
        if (slots[s].empty()) out += "0";
        bool first = true;
        for (const auto& [part, p] : slots[s]) {
            if (!first) out += " + ";
            out += elliptic ? "(" + p.str() + ")*" + EllipticMonomial::from_index(part).str() : p.str();
            first = false;
        }
    }
    return out;
}

/// Decomposes images over a realized basis in the ambient coordinate space.
template <class Element, class Apply>
CertifyResult certify_realized(const std::vector<Element>& basis, Apply&& apply, const SpaceDescriptor& space,
                               bool elliptic) {
    const int d = static_cast<int>(basis.size());
    std::vector<Coords> bflat, iflat;
    std::map<CoordKey, std::size_t> rows;
    for (const auto& b : basis) bflat.push_back(flatten(b));
    for (const auto& b : basis) iflat.push_back(flatten(apply(b)));
    for (const auto* set : {&bflat, &iflat})
        for (const auto& c : *set)
            for (const auto& [key, _] : c) rows.try_emplace(key, 0);
    std::size_t r = 0;
    for (auto& [key, idx] : rows) idx = r++;

    ExactMatrix A(rows.size(), d);
    for (int j = 0; j < d; ++j)
        for (const auto& [key, a] : bflat[j]) A(rows[key], j) = a;

    Certificate cert;
    cert.space = space;
    cert.dim = d;
    cert.matrix = ExactMatrix(d, d);
    for (int j = 0; j < d; ++j) {
        ExactVector rhs(rows.size());
        for (const auto& [key, a] : iflat[j]) rhs[rows[key]] = a;
        auto sol = exact_solve(A, rhs);
        if (!sol) {
            ExactVector rem = reduce_modulo_span(A, rhs);
            Coords rc;
            for (const auto& [key, idx] : rows)
                if (!rem[idx].is_zero()) rc.emplace(key, rem[idx]);
            return Counterexample{space, j, coords_str(rc, space.var, elliptic),
                                  "image of basis element " + std::to_string(j) + " (" + basis_label(space, j) +
                                      ") leaves the space"};
        }
        for (int i = 0; i < d; ++i) cert.matrix(i, j) = (*sol)[i];
    }

    // recheck: H b_j - sum_i M_ij b_i vanishes identically
    cert.residual_zero = true;
    for (int j = 0; j < d && cert.residual_zero; ++j) {
        ExactVector rhs(rows.size());
        for (const auto& [key, a] : iflat[j]) rhs[rows[key]] = a;
        ExactVector col(d);
        for (int i = 0; i < d; ++i) col[i] = cert.matrix(i, j);
        const ExactVector recon = mat_vec(A, col);
        cert.residual_zero = recon == rhs;
    }
    return cert;
}

}  // namespace detail

/// Exact Faddeev-LeVerrier recurrence; coefficients of det(lambda I - M), ascending.
inline std::vector<Scalar> charpoly_exact(const ExactMatrix& M) {
    const std::size_t d = M.rows();
    std::vector<Scalar> c(d + 1);
    c[d] = 1;
    ExactMatrix Mk(d, d);  // M_0 = 0
    for (std::size_t k = 1; k <= d; ++k) {
        ExactMatrix next = M * Mk;
        for (std::size_t i = 0; i < d; ++i) next(i, i) += c[d - k + 1];
        Mk = std::move(next);
        const ExactMatrix AM = M * Mk;
        Scalar tr;
        for (std::size_t i = 0; i < d; ++i) tr += AM(i, i);
        c[d - k] = -tr / Scalar(static_cast<long>(k));
    }
    return c;
}

inline std::vector<Scalar> charpoly_exact(const Certificate& cert) { return charpoly_exact(cert.matrix); }

/// Product of two polynomials given as ascending coefficient lists.
inline std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Scalar> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// Principal submatrix on the index range [lo, hi).
inline ExactMatrix submatrix(const ExactMatrix& M, std::size_t lo, std::size_t hi) {
    ExactMatrix r(hi - lo, hi - lo);
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = lo; j < hi; ++j) r(i - lo, j - lo) = M(i, j);
    return r;
}

/// Certifies an operator whose mixer has already been conjugated away: every
/// image of a coordinate monomial must lie in P(n) (+) P(m).
inline CertifyResult certify(const MatDiffOp2& conjugated, const SpaceDescriptor& space) {
    if (space.is_elliptic()) throw TrackMismatch("elliptic space " + space.label + " given to the polynomial track");
    const auto basis = coordinate_basis(space);
    const int d = space.dim();
    Certificate cert;
    cert.space = space;
    cert.dim = d;
    cert.matrix = ExactMatrix(d, d);
    std::vector<PolyVec2> images;
    for (int j = 0; j < d; ++j) {
        PolyVec2 img = conjugated.apply(basis[j]);
        if (!img.top.in_degree_bound(space.n) || !img.bottom.in_degree_bound(space.m)) {
            PolyVec2 out{img.top.outside(0, space.n), img.bottom.outside(0, space.m)};
            return Counterexample{space, j, "top: " + out.top.str() + "; bottom: " + out.bottom.str(),
                                  "image of basis element " + std::to_string(j) + " (" + basis_label(space, j) +
                                      ") exceeds degrees (" + std::to_string(space.n) + ", " +
                                      std::to_string(space.m) + ")"};
        }
        for (int i = 0; i <= space.n; ++i) cert.matrix(i, j) = img.top.coeff(i);
        for (int i = 0; i <= space.m; ++i) cert.matrix(space.n + 1 + i, j) = img.bottom.coeff(i);
        images.push_back(std::move(img));
    }
    cert.residual_zero = true;
    for (int j = 0; j < d; ++j) {
        PolyVec2 acc{LaurentPoly(space.var), LaurentPoly(space.var)};
        for (int i = 0; i < d; ++i) acc = acc + cert.matrix(i, j) * basis[i];
        if (!(acc == images[j])) cert.residual_zero = false;
    }
    cert.charpoly = charpoly_exact(cert.matrix);
    return cert;
}

/// Certifies the unconjugated reduced operator against the realized basis P e_j.
inline CertifyResult certify_realized(const MatDiffOp2& reduced, const SpaceDescriptor& space) {
    if (space.is_elliptic()) throw TrackMismatch("elliptic space " + space.label + " given to the polynomial track");
    auto result = detail::certify_realized(
        realize_polynomial_basis(space), [&](const PolyVec2& v) { return reduced.apply(v); }, space, false);
    if (auto* c = std::get_if<Certificate>(&result)) c->charpoly = charpoly_exact(c->matrix);
    return result;
}

/// Elliptic track: images are decomposed over the realized basis in the algebra.
inline CertifyResult certify(const MatEllipticOp& H, const SpaceDescriptor& space) {
    if (!space.is_elliptic()) throw TrackMismatch("space " + space.label + " has no elliptic prefactor");
    auto result = detail::certify_realized(
        realize_elliptic_basis(space, H.ksq()), [&](const EllipticPair& v) { return apply_elliptic(H, v); }, space,
        true);
    if (auto* c = std::get_if<Certificate>(&result)) c->charpoly = charpoly_exact(c->matrix);
    return result;
}

/// Exact residuals H b_j - sum_i M_ij b_i on the elliptic track.
inline std::vector<EllipticPair> certificate_residuals(const MatEllipticOp& H, const Certificate& cert) {
    const auto basis = realize_elliptic_basis(cert.space, H.ksq());
    std::vector<EllipticPair> out;
    for (int j = 0; j < cert.dim; ++j) {
        EllipticPair r = apply_elliptic(H, basis[j]);
        for (int i = 0; i < cert.dim; ++i) r = r + (-cert.matrix(i, j)) * basis[i];
        out.push_back(r);
    }
    return out;
}

/// Exact residuals on the polynomial track (conjugated operator, coordinate basis).
inline std::vector<PolyVec2> certificate_residuals(const MatDiffOp2& conjugated, const Certificate& cert) {
    const auto basis = coordinate_basis(cert.space);
    std::vector<PolyVec2> out;
    for (int j = 0; j < cert.dim; ++j) {
        PolyVec2 r = conjugated.apply(basis[j]);
        for (int i = 0; i < cert.dim; ++i) r = r - cert.matrix(i, j) * basis[i];
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Roots of the characteristic polynomial

struct SpectrumReport {
    std::vector<std::complex<double>> values;  // sorted by real part, then imaginary part
    std::vector<bool> is_complex;
    bool converged = true;
    int iterations = 0;

    std::vector<double> real_values() const {
        std::vector<double> r;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!is_complex[i]) r.push_back(values[i].real());
        return r;
    }
};

namespace detail {

struct MpComplex {
    mpf_class re, im;
};

inline MpComplex mp_mul(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace detail

/// Aberth-Ehrlich iteration on double coefficients from deterministic starting
/// points, then Newton refinement against the exact coefficients in 256-bit
/// floating point. Pairs with |Im| > 1e-10 (1 + |Re|) are flagged complex.
inline SpectrumReport algebraic_spectrum(const std::vector<Scalar>& charpoly) {
    using cd = std::complex<double>;
    SpectrumReport rep;
    const int d = static_cast<int>(charpoly.size()) - 1;
    if (d <= 0) return rep;
    if (charpoly.back().is_zero()) throw DomainError("leading coefficient vanishes");

    std::vector<double> c(d + 1);
    const double lead = charpoly.back().to_double();
    for (int k = 0; k <= d; ++k) c[k] = charpoly[k].to_double() / lead;

    auto eval = [&](cd z, cd& dp) {
        cd p = c[d];
        dp = 0;
        for (int k = d - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        return p;
    };

    double radius = 0;
    for (int k = 1; k <= d; ++k) radius = std::max(radius, std::pow(std::abs(c[d - k]), 1.0 / k));
    radius = 2 * radius + 1e-3;
    std::vector<cd> z(d);
    for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2 * std::numbers::pi * k / d + 0.4);

    const int cap = 1000;
    int it = 0;
    for (; it < cap; ++it) {
        double worst = 0;
        for (int k = 0; k < d; ++k) {
            cd dp;
            const cd p = eval(z[k], dp);
            if (p == cd(0)) continue;
            const cd ratio = p / dp;
            cd sum = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            const cd step = ratio / (1.0 - ratio * sum);
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
        }
        if (worst < 1e-15) break;
    }
    rep.iterations = it;

    // Newton refinement on the exact polynomial
    constexpr mp_bitcnt_t bits = 256;
    std::vector<mpf_class> mc(d + 1);
    for (int k = 0; k <= d; ++k) mc[k] = charpoly[k].to_mpf(bits);
    bool all_ok = true;
    for (int k = 0; k < d; ++k) {
        detail::MpComplex w{mpf_class(z[k].real(), bits), mpf_class(z[k].imag(), bits)};
        bool ok = false;
        for (int step = 0; step < 400; ++step) {
            detail::MpComplex p{mc[d], mpf_class(0, bits)}, dp{mpf_class(0, bits), mpf_class(0, bits)};
            for (int j = d - 1; j >= 0; --j) {
                dp = detail::mp_mul(dp, w);
                dp.re += p.re;
                dp.im += p.im;
                p = detail::mp_mul(p, w);
                p.re += mc[j];
            }
            const mpf_class den = dp.re * dp.re + dp.im * dp.im;
            if (den == 0) {
                ok = p.re == 0 && p.im == 0;
                break;
            }
            const mpf_class sre = (p.re * dp.re + p.im * dp.im) / den;
            const mpf_class sim = (p.im * dp.re - p.re * dp.im) / den;
            w.re -= sre;
            w.im -= sim;
            const double sz = std::hypot(sre.get_d(), sim.get_d());
            const double wz = std::hypot(w.re.get_d(), w.im.get_d());
            if (sz <= 1e-40 * (1 + wz)) {
                ok = true;
                break;
            }
        }
        // multiple roots converge linearly; accept when the step has stalled far below double precision
        z[k] = cd(w.re.get_d(), w.im.get_d());
        if (!ok) {
            cd dp;
            const cd p = eval(z[k], dp);
            double scale = 0;
            for (int j = 0; j <= d; ++j) scale += std::abs(c[j]) * std::pow(std::abs(z[k]), j);
            ok = std::abs(p) <= 1e-12 * scale;
        }
        all_ok = all_ok && ok;
    }
    rep.converged = all_ok;

    for (auto& v : z) {
        if (std::abs(v.imag()) <= 1e-10 * (1 + std::abs(v.real()))) v = cd(v.real(), 0.0);
    }
    std::sort(z.begin(), z.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    rep.values = z;
    for (const auto& v : z) rep.is_complex.push_back(v.imag() != 0.0);
    return rep;
}

inline SpectrumReport algebraic_spectrum(const Certificate& cert) { return algebraic_spectrum(cert.charpoly); }

/// Null vector of M - lambda I by complete-pivoting elimination, normalized to
/// unit norm with its largest component real and positive.
inline std::vector<std::complex<double>> eigenvector(const ExactMatrix& M, std::complex<double> lambda) {
    using cd = std::complex<double>;
    const int d = static_cast<int>(M.rows());
    std::vector<std::vector<cd>> A(d, std::vector<cd>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A[i][j] = M(i, j).to_double() - (i == j ? lambda : cd(0));
    std::vector<int> colperm(d);
    for (int j = 0; j < d; ++j) colperm[j] = j;
    for (int k = 0; k < d - 1; ++k) {
        int pi = k, pj = k;
        for (int i = k; i < d; ++i)
            for (int j = k; j < d; ++j)
                if (std::abs(A[i][j]) > std::abs(A[pi][pj])) pi = i, pj = j;
        std::swap(A[k], A[pi]);
        for (auto& row : A) std::swap(row[k], row[pj]);
        std::swap(colperm[k], colperm[pj]);
        if (std::abs(A[k][k]) == 0) continue;
        for (int i = k + 1; i < d; ++i) {
            const cd f = A[i][k] / A[k][k];
            for (int j = k; j < d; ++j) A[i][j] -= f * A[k][j];
        }
    }
    // the last pivot is (numerically) zero: set that unknown to 1 and back-substitute
    std::vector<cd> y(d);
    y[d - 1] = 1;
    for (int k = d - 2; k >= 0; --k) {
        cd s = 0;
        for (int j = k + 1; j < d; ++j) s += A[k][j] * y[j];
        y[k] = std::abs(A[k][k]) == 0 ? cd(0) : -s / A[k][k];
    }
    std::vector<cd> v(d);
    for (int j = 0; j < d; ++j) v[colperm[j]] = y[j];
    double norm = 0;
    int big = 0;
    for (int j = 0; j < d; ++j) {
        norm += std::norm(v[j]);
        if (std::abs(v[j]) > std::abs(v[big])) big = j;
    }
    const cd phase = std::abs(v[big]) == 0 ? cd(1) : std::conj(v[big]) / std::abs(v[big]);
    for (auto& e : v) e *= phase / std::sqrt(norm);
    return v;
}

// ---------------------------------------------------------------------------
// Closed-form eigenfunctions

struct ClosedFormFunction {
    std::string description;
    std::function<std::array<double, 2>(double)> evaluate;
};

/// Combination sum_j c_j b_j of a realized polynomial basis, evaluated in double.
inline std::array<double, 2> evaluate_combination(const std::vector<PolyVec2>& basis, std::span<const double> c, double t) {
    std::array<double, 2> out{0, 0};
    for (std::size_t j = 0; j < basis.size(); ++j) {
        out[0] += c[j] * basis[j].top(t);
        out[1] += c[j] * basis[j].bottom(t);
    }
    return out;
}

/// Builds psi from basis coordinates. Gauge prefactor in y: psi(y) = phi(y) (P poly)(y^2).
/// Gauge prefactor in tau: g(tau) (P poly)(tau). Elliptic: prefactor(z) (P poly)(sn^2).
inline ClosedFormFunction reconstruct_eigenfunction(std::span<const double> coeffs, const SpaceDescriptor& space,
                                                    const Scalar& ksq = Scalar()) {
    if (static_cast<int>(coeffs.size()) != space.dim()) throw DomainError("eigenvector length differs from space dimension");
    std::vector<double> c(coeffs.begin(), coeffs.end());
    ClosedFormFunction f;
    if (const auto* diag = std::get_if<EllipticDiag>(&space.prefactor)) {
        auto basis = realize_elliptic_basis(space, ksq);
        const double k2 = ksq.to_double();
        f.description = "diag(" + diag->top.str() + ", " + diag->bottom.str() + ") * P * poly(sn^2), space " + space.label;
        f.evaluate = [basis = std::move(basis), c, k2](double z) {
            const JacobiValues jv = jacobi_eval(z, k2);
            std::array<double, 2> out{0, 0};
            for (std::size_t j = 0; j < basis.size(); ++j) {
                out[0] += c[j] * evaluate(basis[j].top, jv);
                out[1] += c[j] * evaluate(basis[j].bottom, jv);
            }
            return out;
        };
        return f;
    }
    auto basis = realize_polynomial_basis(space);
    if (const auto* g = std::get_if<GaugeFactor>(&space.prefactor)) {
        const GaugeFactor gauge = *g;
        if (space.var == Var::x) {
            f.description = "y^eps exp(-W(y)) * P * poly(y^2), space " + space.label;
            f.evaluate = [basis = std::move(basis), c, gauge](double y) {
                auto v = evaluate_combination(basis, c, y * y);
                const double g = gauge.evaluate(y);
                return std::array<double, 2>{g * v[0], g * v[1]};
            };
        } else {
            f.description = "t^eps exp(-W(t)) * P * poly(t), space " + space.label;
            f.evaluate = [basis = std::move(basis), c, gauge](double t) {
                auto v = evaluate_combination(basis, c, t);
                const double g = gauge.evaluate(t);
                return std::array<double, 2>{g * v[0], g * v[1]};
            };
        }
        return f;
    }
    f.description = "P * poly(t), space " + space.label;
    f.evaluate = [basis = std::move(basis), c](double t) { return evaluate_combination(basis, c, t); };
    return f;
}

}  // namespace qes
