#pragma once

// Floating-point cross-checks: finite-difference eigensolvers for the line and
// periodic problems, spectrum matching, and the N-body Calogero residual.

#include "qes/certifier.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qes {

struct NumericalError : Error {
    using Error::Error;
};

struct GridSpec {
    int npoints = 2000;
    double L = 0;  // half-width of the line box; 0 selects the automatic rule
};

/// Symmetric 2x2 potential value (v11, v12, v22) at a point.
using PotentialFn = std::function<std::array<double, 3>(double)>;

namespace detail {

/// Symmetric band matrix in LAPACK upper storage, column major.
class BandMatrix {
public:
    BandMatrix(int n, int kd) : n_(n), kd_(kd), ab_(static_cast<std::size_t>(kd + 1) * n, 0.0) {}

    void add(int i, int j, double v) {
        if (i > j) std::swap(i, j);
        if (j - i > kd_) throw NumericalError("band assembly outside bandwidth");
        ab_[static_cast<std::size_t>(kd_ + i - j) + static_cast<std::size_t>(j) * (kd_ + 1)] += v;
    }

    /// Eigenvalues with index il..iu (1-based, ascending).
    std::vector<double> eigenvalues(int il, int iu) {
        if (iu > n_) throw NumericalError("requested " + std::to_string(iu) + " eigenvalues of a " + std::to_string(n_) + "-dimensional matrix");
        std::vector<double> w(n_);
        std::vector<lapack_int> ifail(n_);
        double q = 0, z = 0;
        lapack_int found = 0;
        const double abstol = 2 * LAPACKE_dlamch('S');
        const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n_, kd_, ab_.data(), kd_ + 1, &q, 1, 0.0,
                                               0.0, il, iu, abstol, &found, w.data(), &z, 1, ifail.data());
        if (info != 0) throw NumericalError("dsbevx failed to converge (info " + std::to_string(info) + ")");
        w.resize(found);
        return w;
    }

private:
    int n_, kd_;
    std::vector<double> ab_;
};

}  // namespace detail

/// Smallest L (on a 1e-3 grid) beyond which (p2/2) L^4 + p1 L^2 stays above 40.
inline double auto_line_length(const Rational& p1, const Rational& p2) {
    if (p2 <= 0) throw DomainError("line solver requires p2 > 0");
    const double a = p2.get_d() / 2, b = p1.get_d();
    auto W = [&](double L) { return a * L * L * L * L + b * L * L; };
    // W is increasing beyond its last critical point
    double L = b < 0 ? std::sqrt(-b / (2 * a)) : 0.0;
    L = std::ceil(L * 1000) / 1000;
    while (W(L) <= 40) L += 1e-3;
    return L;
}

/// Lowest `count` eigenvalues of -psi'' + V(y) psi on [-L, L], Dirichlet ends,
/// second-order central differences on npoints interior nodes.
inline std::vector<double> solve_line(const PotentialFn& V, const GridSpec& grid, int count) {
    if (grid.npoints < 64) throw DomainError("npoints must be >= 64");
    if (grid.L <= 0) throw DomainError("line solver needs L > 0");
    const int N = grid.npoints;
    const double h = 2 * grid.L / (N + 1), inv = 1 / (h * h);
    detail::BandMatrix A(2 * N, 2);
    for (int i = 0; i < N; ++i) {
        const auto v = V(-grid.L + (i + 1) * h);
        A.add(2 * i, 2 * i, 2 * inv + v[0]);
        A.add(2 * i + 1, 2 * i + 1, 2 * inv + v[2]);
        A.add(2 * i, 2 * i + 1, v[1]);
        if (i + 1 < N) {
            A.add(2 * i, 2 * i + 2, -inv);
            A.add(2 * i + 1, 2 * i + 3, -inv);
        }
    }
    return A.eigenvalues(1, count);
}

inline PotentialFn potential_fn(const PolyMat2& M) {
    for (const auto& e : M.e)
        if (e.min_degree() < 0) throw DomainError("potential is singular at the origin");
    return [M](double y) { return std::array<double, 3>{M.e[0](y), M.e[1](y), M.e[3](y)}; };
}

/// Line problem for the sextic model; grid.L == 0 selects the automatic L.
inline std::vector<double> solve_line(const SexticParams& p, GridSpec grid, int count) {
    if (grid.L == 0) grid.L = auto_line_length(p.p1, p.p2);
    return solve_line(potential_fn(sextic_potential(p)), grid, count);
}

/// Lowest `count` eigenvalues of -psi'' + V psi, periodic on [0, period).
inline std::vector<double> solve_periodic(const PotentialFn& V, double period, int npoints, int count) {
    if (npoints < 64) throw DomainError("npoints must be >= 64");
    const int N = npoints;
    const double h = period / N, inv = 1 / (h * h);
    // ring folded so that neighbours stay within distance 2: 0, N-1, 1, N-2, ...
    auto pos = [N](int j) { return j < N / 2 ? 2 * j : 2 * (N - 1 - j) + 1; };
    detail::BandMatrix A(2 * N, 5);
    for (int j = 0; j < N; ++j) {
        const auto v = V(j * h);
        const int p = 2 * pos(j), q = 2 * pos((j + 1) % N);
        A.add(p, p, 2 * inv + v[0]);
        A.add(p + 1, p + 1, 2 * inv + v[2]);
        A.add(p, p + 1, v[1]);
        A.add(p, q, -inv);
        A.add(p + 1, q + 1, -inv);
    }
    return A.eigenvalues(1, count);
}

inline PotentialFn potential_fn(const MatEllipticOp& H) {
    const double k2 = H.ksq().to_double();
    return [H, k2](double z) {
        const JacobiValues j = jacobi_eval(z, k2);
        return std::array<double, 3>{evaluate(H(0, 0), j), evaluate(H(0, 1), j), evaluate(H(1, 1), j)};
    };
}

/// Periodic problem on [0, 4K(k)).
inline std::vector<double> solve_periodic(const MatEllipticOp& H, int npoints, int count) {
    const double K = agm_complete_K(H.ksq().to_double());
    return solve_periodic(potential_fn(H), 4 * K, npoints, count);
}

// ---------------------------------------------------------------------------
// Matching

struct MatchEntry {
    std::complex<double> algebraic;
    std::optional<double> numeric;
    double rel_err = std::numeric_limits<double>::infinity();
    bool confirmed = false;
    std::string note;
};

struct SpectrumMatchReport {
    std::vector<MatchEntry> entries;
    bool all_confirmed() const {
        return std::all_of(entries.begin(), entries.end(), [](const MatchEntry& e) { return e.confirmed; });
    }
    int confirmed_count() const {
        return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const MatchEntry& e) { return e.confirmed; }));
    }
    double worst_rel_err() const {
        double w = 0;
        for (const auto& e : entries)
            if (e.algebraic.imag() == 0) w = std::max(w, e.rel_err);
        return w;
    }
};

/// Greedy nearest-first matching; each numeric value is used at most once.
/// rel_err = |numeric - algebraic| / (1 + |algebraic|).
inline SpectrumMatchReport match_spectra(const std::vector<std::complex<double>>& algebraic,
                                         const std::vector<double>& numeric, double rel_tol) {
    SpectrumMatchReport rep;
    struct Pair {
        double dist;
        std::size_t a, n;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < algebraic.size(); ++a) {
        MatchEntry e;
        e.algebraic = algebraic[a];
        if (algebraic[a].imag() != 0) e.note = "complex, no numeric counterpart expected from symmetric discretization";
        rep.entries.push_back(e);
        if (algebraic[a].imag() != 0) continue;
        for (std::size_t n = 0; n < numeric.size(); ++n) pairs.push_back({std::abs(numeric[n] - algebraic[a].real()), a, n});
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
    std::vector<bool> used_a(algebraic.size()), used_n(numeric.size());
    std::vector<std::optional<std::size_t>> nearest(algebraic.size());
    for (const auto& p : pairs) {
        if (!nearest[p.a]) nearest[p.a] = p.n;
        if (used_a[p.a] || used_n[p.n]) continue;
        used_a[p.a] = used_n[p.n] = true;
        auto& e = rep.entries[p.a];
        e.numeric = numeric[p.n];
        e.rel_err = p.dist / (1 + std::abs(algebraic[p.a].real()));
        e.confirmed = e.rel_err <= rel_tol;
        if (*nearest[p.a] != p.n) e.note = "nearest numeric value claimed by another algebraic value";
    }
    for (std::size_t a = 0; a < algebraic.size(); ++a)
        if (!used_a[a] && algebraic[a].imag() == 0) rep.entries[a].note = "no numeric value left to match";
    return rep;
}

/// Number of eigenvalues to request so that the window reaches `upper`.
template <class Solve>
std::vector<double> eigenvalues_through(Solve&& solve, double upper, int start, int cap) {
    int count = start;
    for (;;) {
        auto w = solve(count);
        if (w.empty() || w.back() > upper + 1 || count >= cap) return w;
        count = std::min(cap, 2 * count);
    }
}

// ---------------------------------------------------------------------------
// N-body oracle for the Calogero extension

struct CalogeroResidualReport {
    double max_residual = 0;       // with step h
    double max_residual_half = 0;  // with step h/2
    int samples = 0;
    double energy = 0;
};

/// Psi(x) = psi0(x) f(tau(x)) with tau built on the centroid, f two-component.
struct CalogeroState {
    CalogeroParams params;
    PolyMat2 Vstar;
    std::function<std::array<double, 2>(double)> f;
    double energy = 0;
};

namespace detail {

inline double calogero_tau(const std::vector<double>& x) {
    double Y = 0;
    for (double v : x) Y += v;
    Y /= static_cast<double>(x.size());
    double t = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) t += (x[j] - Y) * (x[i] - Y);
    return t;
}

inline std::array<double, 2> calogero_psi(const CalogeroState& s, const std::vector<double>& x) {
    const double nu = s.params.nu.get_d();
    double X2 = 0, prod = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        X2 += x[i] * x[i];
        for (std::size_t j = 0; j < i; ++j) prod *= std::abs(x[i] - x[j]);
    }
    const double psi0 = std::pow(prod, nu) * std::exp(-X2 / 2);
    const auto f = s.f(calogero_tau(x));
    return {psi0 * f[0], psi0 * f[1]};
}

/// Relative residual |H Psi - E Psi| / (|E| |Psi| + floor) at one point.
inline double calogero_point_residual(const CalogeroState& s, std::vector<double> x, double h) {
    const double nu = s.params.nu.get_d();
    const auto psi = calogero_psi(s, x);
    std::array<double, 2> Hpsi{0, 0};
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = x[j];
        std::array<std::array<double, 2>, 5> f{};
        for (int k = -2; k <= 2; ++k) {
            x[j] = xj + k * h;
            f[k + 2] = calogero_psi(s, x);
        }
        x[j] = xj;
        for (int c = 0; c < 2; ++c) {
            const double d2 = (-f[0][c] + 16 * f[1][c] - 30 * f[2][c] + 16 * f[3][c] - f[4][c]) / (12 * h * h);
            Hpsi[c] += 0.5 * (-d2 + xj * xj * psi[c]);
        }
    }
    double pair = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) pair += nu * (nu - 1) / ((x[j] - x[i]) * (x[j] - x[i]));
    const double t = calogero_tau(x);
    const double v11 = s.Vstar.e[0](t), v12 = s.Vstar.e[1](t), v21 = s.Vstar.e[2](t), v22 = s.Vstar.e[3](t);
    Hpsi[0] += pair * psi[0] + v11 * psi[0] + v12 * psi[1];
    Hpsi[1] += pair * psi[1] + v21 * psi[0] + v22 * psi[1];
    const double r = std::hypot(Hpsi[0] - s.energy * psi[0], Hpsi[1] - s.energy * psi[1]);
    return r / (std::abs(s.energy) * std::hypot(psi[0], psi[1]) + 1e-300);
}

}  // namespace detail

/// Maximum relative residual over random points in [-spread, spread]^N with
/// pairwise separation >= 0.2, using 4th-order central differences. Throws when
/// the h and h/2 results disagree by more than 10 * tolerance.
inline CalogeroResidualReport calogero_residual(const CalogeroState& s, int samples, double fd_step = 1e-3,
                                                double tolerance = 1e-5, unsigned seed = 12345, double spread = 1.5) {
    const int N = s.params.N;
    if (N < 3 || N > 4) throw DomainError("calogero_residual supports N = 3 or 4");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-spread, spread);
    CalogeroResidualReport rep;
    rep.energy = s.energy;
    std::vector<double> x(N);
    while (rep.samples < samples) {
        for (auto& v : x) v = U(rng);
        bool ok = true;
        for (int i = 0; i < N && ok; ++i)
            for (int j = 0; j < i && ok; ++j) ok = std::abs(x[i] - x[j]) >= 0.2;
        if (!ok) continue;
        const double r1 = detail::calogero_point_residual(s, x, fd_step);
        const double r2 = detail::calogero_point_residual(s, x, fd_step / 2);
        if (std::abs(r1 - r2) > 10 * tolerance)
            throw NumericalError("finite-difference step too large: residuals " + std::to_string(r1) + " and " +
                                 std::to_string(r2) + " at step halving");
        rep.max_residual = std::max(rep.max_residual, r1);
        rep.max_residual_half = std::max(rep.max_residual_half, r2);
        ++rep.samples;
    }
    return rep;
}

/// Calogero eigenpairs of a certified reduced operator, lifted to N-body states.
inline std::vector<CalogeroState> calogero_states(const CalogeroParams& p, const Certificate& cert) {
    std::vector<CalogeroState> out;
    const SpectrumReport spec = algebraic_spectrum(cert);
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (spec.is_complex[i]) continue;
        const auto v = eigenvector(cert.matrix, spec.values[i]);
        std::vector<double> re;
        for (const auto& c : v) re.push_back(c.real());
        const ClosedFormFunction f = reconstruct_eigenfunction(re, cert.space);
        out.push_back({p, calogero_potential(p), f.evaluate, p.ground_energy() + spec.values[i].real()});
    }
    return out;
}

}  // namespace qes
