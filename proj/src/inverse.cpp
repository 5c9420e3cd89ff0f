#include "diracdelay/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "diracdelay/parallel.hpp"

namespace diracdelay {

PotentialPair kernels_to_potentials(const KernelPair& kp) {
    const std::size_t M = kp.M();
    const cplx I(0.0, 1.0);
    std::vector<cplx> q(M + 1), p(M + 1);
    for (std::size_t m = 0; m <= M; ++m) {
        const cplx plus = kp.w1[2 * M - 2 * m] + I * kp.w2[2 * M - 2 * m];
        const cplx minus = kp.w1[2 * m] - I * kp.w2[2 * m];
        q[m] = -plus - minus;
        p[m] = I * plus - I * minus;
    }
    return PotentialPair(DelayConfig(kp.a), std::move(q), std::move(p));
}

static TypeReport make_report(const KernelSynthesis& syn, double threshold,
                              std::size_t n_samples) {
    TypeReport rep;
    rep.outside_energy_fraction = syn.outside_fraction;
    rep.threshold = threshold;
    rep.pass = syn.outside_fraction < threshold;
    rep.half_width = static_cast<int>((n_samples - 1) / 2);
    return rep;
}

ReconstructionResult reconstruct_from_samples(const std::vector<cplx>& d1,
                                              const std::vector<cplx>& d2,
                                              const DelayConfig& cfg,
                                              std::size_t M, double threshold) {
    detail::require(d1.size() == d2.size(), "sample vectors must have equal length");
    detail::require(d1.size() >= 3 && d1.size() % 2 == 1,
                    "sample vectors must hold an odd number (>= 3) of entries");
    const KernelSynthesis syn1 = synthesize_band_kernel(d1, cfg, M);
    const KernelSynthesis syn2 = synthesize_band_kernel(d2, cfg, M);
    std::vector<cplx> w1 = syn1.inside;
    std::vector<cplx> w2 = syn2.inside;
    // At the support edges the Fourier sum converges to half the inside
    // limit (the kernel vanishes beyond them), so the restriction doubles
    // the two edge nodes to recover the one-sided values.
    for (auto* w : {&w1, &w2}) {
        w->front() *= 2.0;
        w->back() *= 2.0;
    }
    KernelPair kp(cfg, std::move(w1), std::move(w2));
    ReconstructionResult res{kernels_to_potentials(kp),
                             make_report(syn1, threshold, d1.size()),
                             make_report(syn2, threshold, d2.size()), false};
    res.support_warning = !(res.diag1.pass && res.diag2.pass);
    return res;
}

ReconstructionResult reconstruct_from_spectra(const Spectrum& s1,
                                              const Spectrum& s2,
                                              const DelayConfig& cfg,
                                              std::size_t M, double threshold) {
    detail::require(s1.problem_j == 1 && s2.problem_j == 2,
                    "reconstruction expects the j = 1 spectrum first and the "
                    "j = 2 spectrum second");
    detail::require(s1.half_width == s2.half_width,
                    "the two spectra must share the same half width");
    const CharFunctionProductRep rep1 = spectra_to_char(s1);
    const CharFunctionProductRep rep2 = spectra_to_char(s2);
    return reconstruct_from_samples(head_subtracted_samples(rep1),
                                    head_subtracted_samples(rep2), cfg, M,
                                    threshold);
}

SubspectrumSpec::SubspectrumSpec(int j, int m_, int K, std::vector<cplx> values_,
                                 std::vector<int> mult_)
    : problem_j(j), m(m_), half_width(K), values(std::move(values_)),
      mult(std::move(mult_)) {
    detail::require(j == 1 || j == 2, "problem index must be 1 or 2");
    detail::require(m >= 2, "subspectrum stride m must be at least 2");
    detail::require(K >= 0, "half width must be nonnegative");
    const std::size_t n = 2 * static_cast<std::size_t>(K) + 1;
    detail::require(values.size() == n && mult.size() == n,
                    "subspectrum must hold 2K+1 values and run lengths");
    std::size_t i = 0;
    while (i < n) {
        const int g = mult[i];
        detail::require(g >= 1 && i + static_cast<std::size_t>(g) <= n,
                        "multiplicity run extends past the data");
        for (std::size_t t = i; t < i + static_cast<std::size_t>(g); ++t) {
            detail::require(mult[t] == g,
                            "entries of one multiplicity run must declare the "
                            "same run length");
            detail::require(std::abs(values[t] - values[i]) <= 1e-9,
                            "entries of one multiplicity run must be equal");
        }
        i += static_cast<std::size_t>(g);
    }
    for (std::size_t t = 0; t < n; ++t) {
        detail::require(detail::is_finite(values[t]), "subspectrum entries must be finite");
        const double dev =
            std::abs(values[t] - lattice(static_cast<int>(t) - half_width));
        detail::require(dev <= kDeviationNormBound,
                        "subspectrum entry strays too far from its lattice point");
    }
}

std::vector<cplx> beta_coefficients(const SubspectrumSpec& spec) {
    const std::size_t n = spec.values.size();
    std::vector<cplx> beta(n);
    std::size_t i = 0;
    while (i < n) {
        const int g = spec.mult[i];
        const cplx mu = spec.values[i];
        for (int nu = 0; nu < g; ++nu) {
            beta[i + static_cast<std::size_t>(nu)] =
                (spec.problem_j == 1) ? sin_pi_derivative(mu, nu)
                                      : -cos_pi_derivative(mu, nu);
        }
        i += static_cast<std::size_t>(g);
    }
    return beta;
}

namespace detail {

cplx symmetric_moment(cplx theta, double b, int nu) {
    const cplx I(0.0, 1.0);
    if (std::abs(theta) * b < 0.5) {
        // sum_t (i theta)^t / t! * integral x^(nu+t), even powers only
        cplx coef(1.0, 0.0);
        cplx acc(0.0, 0.0);
        double bp = std::pow(b, nu + 1);
        for (int t = 0; t < 48; ++t) {
            if ((nu + t) % 2 == 0) acc += coef * (2.0 * bp / static_cast<double>(nu + t + 1));
            bp *= b;
            coef *= I * theta / static_cast<double>(t + 1);
            if (std::abs(coef) * bp < 1e-300) break;
        }
        return acc;
    }
    const cplx it = I * theta;
    const cplx ep = std::exp(it * b);
    const cplx em = std::exp(-it * b);
    cplx cur = (ep - em) / it;
    double bpow = 1.0;
    for (int k = 1; k <= nu; ++k) {
        bpow *= b;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        cur = (bpow * ep - sign * bpow * em) / it - (static_cast<double>(k) / it) * cur;
    }
    return cur;
}

}  // namespace detail

namespace {

constexpr cplx kNuPow[4] = {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0),
                            cplx(0.0, -1.0)};

struct BasisSolve {
    std::vector<cplx> inside;
    double condition;
};

BasisSolve solve_moment_system(const SubspectrumSpec& spec, const SubspectraOptions& opts) {
    const double b = spec.config().b();
    const int K_exp = opts.expansion_order < 0 ? std::max(spec.half_width - 1, 0)
                                               : opts.expansion_order;
    const std::size_t rows = spec.values.size();
    const std::size_t fourier = 2 * static_cast<std::size_t>(K_exp) + 1;
    // Two polynomial columns absorb the value and slope mismatch of the
    // kernel across the band ends, which otherwise caps the plain Fourier
    // fit at O(K^-1/2) accuracy.
    const std::size_t poly = (fourier + 2 <= rows) ? 2 : 0;
    const std::size_t cols = fourier + poly;

    Eigen::MatrixXcd G(rows, cols);
    std::size_t i = 0;
    while (i < rows) {
        const int g = spec.mult[i];
        const cplx mu = spec.values[i];
        for (int nu = 0; nu < g; ++nu) {
            for (std::size_t c = 0; c < cols; ++c) {
                cplx entry;
                if (c < fourier) {
                    const double l = static_cast<double>(static_cast<int>(c) - K_exp);
                    entry = diracdelay::detail::symmetric_moment(
                        static_cast<double>(spec.m) * l + mu, b, nu);
                } else {
                    const int p = static_cast<int>(c - fourier) + 1;
                    entry = diracdelay::detail::symmetric_moment(mu, b, nu + p) /
                            std::pow(b, p);
                }
                G(static_cast<Eigen::Index>(i) + nu, static_cast<Eigen::Index>(c)) =
                    kNuPow[nu & 3] * entry;
            }
        }
        i += static_cast<std::size_t>(g);
    }

    const std::vector<cplx> beta = beta_coefficients(spec);
    Eigen::VectorXcd rhs(rows);
    for (std::size_t r = 0; r < rows; ++r) rhs(static_cast<Eigen::Index>(r)) = beta[r];

    const Eigen::MatrixXcd A = G.adjoint() * G;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    const double lmin = es.eigenvalues()(0);
    const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
    double cond = std::numeric_limits<double>::infinity();
    if (lmax > 0.0 && lmin > lmax * 1e-300) cond = std::sqrt(lmax / lmin);
    if (!(cond <= opts.condition_limit)) throw IllConditionedBasis(cond);

    Eigen::MatrixXcd Areg = A;
    for (Eigen::Index d = 0; d < Areg.rows(); ++d) Areg(d, d) += opts.ridge;
    const Eigen::VectorXcd c = Areg.ldlt().solve(G.adjoint() * rhs);

    const std::size_t M = opts.M;
    const double h = b / static_cast<double>(M);
    std::vector<cplx> inside(2 * M + 1);
    parallel_for(inside.size(), [&](std::size_t k) {
        const double x = (static_cast<double>(k) - static_cast<double>(M)) * h;
        cplx acc(0.0, 0.0);
        for (std::size_t cidx = 0; cidx < fourier; ++cidx) {
            const double l = static_cast<double>(static_cast<int>(cidx) - K_exp);
            acc += c(static_cast<Eigen::Index>(cidx)) *
                   std::exp(cplx(0.0, static_cast<double>(spec.m) * l * x));
        }
        for (std::size_t cidx = fourier; cidx < cols; ++cidx) {
            const int p = static_cast<int>(cidx - fourier) + 1;
            acc += c(static_cast<Eigen::Index>(cidx)) * std::pow(x / b, p);
        }
        inside[k] = acc;
    });
    return BasisSolve{std::move(inside), cond};
}

bool exactly_on_lattice(const SubspectrumSpec& spec) {
    for (std::size_t t = 0; t < spec.values.size(); ++t) {
        if (spec.mult[t] != 1) return false;
        const int k = static_cast<int>(t) - spec.half_width;
        if (spec.values[t] != cplx(spec.lattice(k), 0.0)) return false;
    }
    return true;
}

}  // namespace

SubspectraResult reconstruct_from_m_subspectra(const SubspectrumSpec& spec1,
                                               const SubspectrumSpec& spec2,
                                               const SubspectraOptions& opts) {
    detail::require(spec1.problem_j == 1 && spec2.problem_j == 2,
                    "expected the j = 1 subspectrum first and the j = 2 "
                    "subspectrum second");
    detail::require(spec1.m == spec2.m,
                    "the two subspectra must use the same stride m");
    const DelayConfig cfg = spec1.config();

    if (exactly_on_lattice(spec1) && exactly_on_lattice(spec2)) {
        std::vector<cplx> zero(opts.M + 1, cplx(0.0, 0.0));
        return SubspectraResult{PotentialPair(cfg, zero, zero), 1.0, 1.0};
    }

    BasisSolve b1 = solve_moment_system(spec1, opts);
    BasisSolve b2 = solve_moment_system(spec2, opts);
    KernelPair kp(cfg, std::move(b1.inside), std::move(b2.inside));
    return SubspectraResult{kernels_to_potentials(kp), b1.condition, b2.condition};
}

}  // namespace diracdelay
