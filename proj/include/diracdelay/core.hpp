#pragma once

// Shared domain types for the delay-Dirac spectral library: grids, potential
// pairs, reflection kernels, spectra, and the small numeric utilities (L2
// norms, multiplicity grouping, lattice-reduced trig) the other modules build
// on.
//
// Grid conventions
//   potentials  x_m = a + m h,      m = 0..M,   h = (pi - a)/M
//   kernels     x_k = (k - M) h,    k = 0..2M,  spanning [a - pi, pi - a]
// Under the substitutions (pi + a -+ x)/2 every even kernel node lands
// exactly on a potential node and every odd kernel node lands exactly on a
// potential-grid midpoint; the maps in charfn.hpp / inverse.hpp rely on this.
//
// All types are plain value types validated at construction and treated as
// immutable afterwards; every operation on them is a pure function, so
// concurrent reads are safe.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracdelay {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

namespace detail {

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

// ── lattice-reduced trigonometry ────────────────────────────────────────────
//
// sin(pi z) and cos(pi z) with the nearest integer of Re z removed exactly
// before evaluation. Plain std::sin(pi * z) loses ~|z| ulps of absolute
// accuracy at large |Re z|; the reduced form keeps full accuracy at and near
// lattice points, which root residuals and moment right-hand sides need.

inline cplx sin_pi(cplx z) {
    const double n = std::nearbyint(z.real());
    const cplx w(z.real() - n, z.imag());
    const cplx s = std::sin(kPi * w);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

inline cplx cos_pi(cplx z) {
    const double n = std::nearbyint(z.real());
    const cplx w(z.real() - n, z.imag());
    const cplx c = std::cos(kPi * w);
    return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

// nu-th derivative of sin(pi z), i.e. pi^nu sin(pi z + nu pi/2).
inline cplx sin_pi_derivative(cplx z, int nu) {
    const double scale = std::pow(kPi, nu);
    switch (((nu % 4) + 4) % 4) {
        case 0: return scale * sin_pi(z);
        case 1: return scale * cos_pi(z);
        case 2: return -scale * sin_pi(z);
        default: return -scale * cos_pi(z);
    }
}

inline cplx cos_pi_derivative(cplx z, int nu) {
    const double scale = std::pow(kPi, nu);
    switch (((nu % 4) + 4) % 4) {
        case 0: return scale * cos_pi(z);
        case 1: return -scale * sin_pi(z);
        case 2: return -scale * cos_pi(z);
        default: return scale * sin_pi(z);
    }
}

// ── configuration ───────────────────────────────────────────────────────────

// Delay length a with pi/2 <= a < pi; the potential support is [a, pi] and
// the kernel support half-width is b = pi - a, 0 < b <= pi/2.
struct DelayConfig {
    double a;

    static constexpr double interval_end = kPi;

    explicit DelayConfig(double a_) : a(a_) {
        detail::require(std::isfinite(a) && a >= kPi / 2.0 && a < kPi,
                        "DelayConfig: delay a must lie in [pi/2, pi)");
    }

    double b() const { return kPi - a; }
};

// ── sampled data types ──────────────────────────────────────────────────────

// Complex samples of the two scalar potentials q, p on x_m = a + m h.
// M must be even (>= 2) so that kernel-grid midpoints align; all samples
// must be finite.
struct PotentialPair {
    double a;
    std::vector<cplx> q;
    std::vector<cplx> p;

    PotentialPair(const DelayConfig& cfg, std::vector<cplx> q_, std::vector<cplx> p_)
        : a(cfg.a), q(std::move(q_)), p(std::move(p_)) {
        detail::require(q.size() == p.size(), "PotentialPair: q and p sizes differ");
        detail::require(q.size() >= 3 && (q.size() - 1) % 2 == 0,
                        "PotentialPair: node count must be M+1 with M >= 2 even");
        for (cplx z : q) detail::require(detail::is_finite(z), "PotentialPair: non-finite q sample");
        for (cplx z : p) detail::require(detail::is_finite(z), "PotentialPair: non-finite p sample");
    }

    std::size_t M() const { return q.size() - 1; }
    double h() const { return (kPi - a) / static_cast<double>(M()); }
    double node(std::size_t m) const { return a + static_cast<double>(m) * h(); }
};

// Complex samples of the reflection kernels w1, w2 on the symmetric grid
// x_k = (k - M) h, k = 0..2M. The grid satisfies node(k) == -node(2M - k).
struct KernelPair {
    double a;
    std::vector<cplx> w1;
    std::vector<cplx> w2;

    KernelPair(const DelayConfig& cfg, std::vector<cplx> w1_, std::vector<cplx> w2_)
        : a(cfg.a), w1(std::move(w1_)), w2(std::move(w2_)) {
        detail::require(w1.size() == w2.size(), "KernelPair: w1 and w2 sizes differ");
        detail::require(w1.size() >= 5 && (w1.size() - 1) % 4 == 0,
                        "KernelPair: node count must be 2M+1 with M >= 2 even");
        for (cplx z : w1) detail::require(detail::is_finite(z), "KernelPair: non-finite w1 sample");
        for (cplx z : w2) detail::require(detail::is_finite(z), "KernelPair: non-finite w2 sample");
    }

    std::size_t M() const { return (w1.size() - 1) / 2; }
    double h() const { return (kPi - a) / static_cast<double>(M()); }
    double node(std::size_t k) const {
        return (static_cast<double>(k) - static_cast<double>(M())) * h();
    }
};

// One spectrum of the boundary problem pair, indexed n = -N..N. problem_j
// selects the lattice the eigenvalues cluster around: n for j = 1 and
// n - 1/2 for j = 2. Multiple eigenvalues appear as neighbouring equal
// entries.
struct Spectrum {
    int problem_j;
    int half_width;
    std::vector<cplx> values;

    Spectrum(int j, int N, std::vector<cplx> values_)
        : problem_j(j), half_width(N), values(std::move(values_)) {
        detail::require(j == 1 || j == 2, "Spectrum: problem_j must be 1 or 2");
        detail::require(N >= 0, "Spectrum: negative half width");
        detail::require(values.size() == static_cast<std::size_t>(2 * N + 1),
                        "Spectrum: value count must be 2N+1");
        for (cplx z : values) detail::require(detail::is_finite(z), "Spectrum: non-finite entry");
    }

    cplx value(int n) const { return values[static_cast<std::size_t>(n + half_width)]; }
    double lattice(int n) const { return lattice_point(problem_j, n); }

    static double lattice_point(int j, int n) {
        return static_cast<double>(n) - 0.5 * static_cast<double>(j - 1);
    }
};

// Full 2x2 complex potential matrix sampled like PotentialPair; used by the
// general characteristic-function constructors that do not assume the
// q11 = -q22, q12 = q21 reduction.
struct GeneralPotentialMatrix {
    double a;
    std::vector<cplx> q11, q12, q21, q22;

    GeneralPotentialMatrix(const DelayConfig& cfg, std::vector<cplx> q11_,
                           std::vector<cplx> q12_, std::vector<cplx> q21_,
                           std::vector<cplx> q22_)
        : a(cfg.a), q11(std::move(q11_)), q12(std::move(q12_)),
          q21(std::move(q21_)), q22(std::move(q22_)) {
        detail::require(q11.size() == q12.size() && q11.size() == q21.size() &&
                            q11.size() == q22.size(),
                        "GeneralPotentialMatrix: entry sizes differ");
        detail::require(q11.size() >= 3 && (q11.size() - 1) % 2 == 0,
                        "GeneralPotentialMatrix: node count must be M+1 with M >= 2 even");
        for (const auto* v : {&q11, &q12, &q21, &q22})
            for (cplx z : *v)
                detail::require(detail::is_finite(z), "GeneralPotentialMatrix: non-finite sample");
    }

    std::size_t M() const { return q11.size() - 1; }
    double h() const { return (kPi - a) / static_cast<double>(M()); }
};

// ── norms and distances ─────────────────────────────────────────────────────

// Trapezoidal L2 norm of uniformly sampled values with spacing h.
inline double l2_norm_trapezoid(const std::vector<cplx>& v, double h) {
    detail::require(v.size() >= 2 && h > 0.0, "l2_norm_trapezoid: bad grid");
    double s = 0.5 * (std::norm(v.front()) + std::norm(v.back()));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += std::norm(v[i]);
    return std::sqrt(h * s);
}

struct PotentialNorms {
    double q;
    double p;
    double sum() const { return q + p; }
};

inline PotentialNorms l2_norm_potential(const PotentialPair& pp) {
    return {l2_norm_trapezoid(pp.q, pp.h()), l2_norm_trapezoid(pp.p, pp.h())};
}

struct KernelNorms {
    double w1;
    double w2;
    double sum() const { return w1 + w2; }
};

inline KernelNorms l2_norm_kernels(const KernelPair& kp) {
    return {l2_norm_trapezoid(kp.w1, kp.h()), l2_norm_trapezoid(kp.w2, kp.h())};
}

// l2 distance between two spectra of the same problem and truncation,
// sqrt(sum_n |lambda_n - mu_n|^2).
inline double l2_sequence_distance(const Spectrum& s, const Spectrum& t) {
    detail::require(s.problem_j == t.problem_j,
                    "l2_sequence_distance: mismatched problem index");
    detail::require(s.half_width == t.half_width,
                    "l2_sequence_distance: mismatched truncation");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i)
        acc += std::norm(s.values[i] - t.values[i]);
    return std::sqrt(acc);
}

// l2 norm of the deviations {lambda_n - lattice_n}; the quantity the
// asymptotic-form checks and the stability ball are phrased in.
inline double spectrum_deviation_norm(const Spectrum& s) {
    double acc = 0.0;
    for (int n = -s.half_width; n <= s.half_width; ++n)
        acc += std::norm(s.value(n) - s.lattice(n));
    return std::sqrt(acc);
}

// ── multiplicity grouping ───────────────────────────────────────────────────

struct GroupedValue {
    cplx value;
    int multiplicity;
};

// Collapses runs of neighbouring entries that are pairwise within tol into
// (mean, run length). Idempotent: regrouping the representatives with the
// same tol yields multiplicities all equal to one, provided distinct
// representatives are farther apart than tol (true for any sane spectrum,
// where distinct eigenvalue clusters sit ~1 apart).
inline std::vector<GroupedValue> group_multiplicities(const std::vector<cplx>& values,
                                                      double tol = 1e-8) {
    detail::require(tol >= 0.0, "group_multiplicities: negative tolerance");
    std::vector<GroupedValue> out;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t jend = i + 1;
        while (jend < values.size()) {
            bool joins = true;
            for (std::size_t k = i; k < jend; ++k)
                if (std::abs(values[jend] - values[k]) > tol) { joins = false; break; }
            if (!joins) break;
            ++jend;
        }
        cplx mean(0.0, 0.0);
        for (std::size_t k = i; k < jend; ++k) mean += values[k];
        mean /= static_cast<double>(jend - i);
        out.push_back({mean, static_cast<int>(jend - i)});
        i = jend;
    }
    return out;
}

}  // namespace diracdelay
