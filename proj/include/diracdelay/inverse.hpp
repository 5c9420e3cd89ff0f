#pragma once

// Inverse half of the problem.
//
// kernels_to_potentials inverts the reflection substitutions exactly on the
// grid (only even kernel nodes are read, so inversion after
// potentials_to_kernels reproduces the potential samples to machine
// precision):
//     q(x) = -(w1 + i w2)(pi + a - 2x) - (w1 - i w2)(2x - pi - a)
//     p(x) =  i(w1 + i w2)(pi + a - 2x) - i(w1 - i w2)(2x - pi - a)
//
// reconstruct_from_spectra: both full spectra -> product reps -> integer
// samples -> band-limited kernel synthesis -> potentials. The map from
// samples to potentials is linear; reconstruct_from_samples exposes that
// seam directly.
//
// reconstruct_from_m_subspectra: for delay a = pi - pi/m the kernels live on
// (-pi/m, pi/m) where {e^{imlx}} is an orthogonal basis; each subspectrum
// entry mu of multiplicity g contributes the moment rows
//     integral w(x) (ix)^nu e^{i mu x} dx = f^(nu)(mu),   nu = 0..g-1,
// with f = sin(pi lambda) for j = 1 and f = -cos(pi lambda) for j = 2.
// The square section of the system in the basis coefficients is solved by
// ridge-regularized least squares; an ill-conditioned section is an error.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "diracdelay/products.hpp"

namespace diracdelay {

PotentialPair kernels_to_potentials(const KernelPair& kp);

struct ReconstructionResult {
    PotentialPair potentials;
    TypeReport diag1;       // outside-energy diagnostic for w1
    TypeReport diag2;       // and for w2
    bool support_warning;   // either diagnostic exceeded its threshold
};

ReconstructionResult reconstruct_from_samples(const std::vector<cplx>& d1,
                                              const std::vector<cplx>& d2,
                                              const DelayConfig& cfg,
                                              std::size_t M = 512,
                                              double threshold = 1e-3);

ReconstructionResult reconstruct_from_spectra(const Spectrum& s1,
                                              const Spectrum& s2,
                                              const DelayConfig& cfg,
                                              std::size_t M = 512,
                                              double threshold = 1e-3);

// One m-th subspectrum: entries indexed k = -K..K expected to follow the
// lattice m k (j = 1) or m k - 1/2 (j = 2), with multiple eigenvalues stored
// as neighbouring equal entries and their run length declared in mult.
struct SubspectrumSpec {
    int problem_j;
    int m;
    int half_width;
    std::vector<cplx> values;
    std::vector<int> mult;

    SubspectrumSpec(int j, int m_, int K, std::vector<cplx> values_,
                    std::vector<int> mult_);

    DelayConfig config() const { return DelayConfig(kPi - kPi / static_cast<double>(m)); }
    double lattice(int k) const {
        return static_cast<double>(m) * static_cast<double>(k) -
               0.5 * static_cast<double>(problem_j - 1);
    }
    cplx value(int k) const { return values[static_cast<std::size_t>(k + half_width)]; }
};

// Stacked right-hand sides of the moment system, one per entry: runs of
// length g contribute f(mu), f'(mu), ..., f^(g-1)(mu).
std::vector<cplx> beta_coefficients(const SubspectrumSpec& spec);

struct IllConditionedBasis : std::runtime_error {
    double condition;
    explicit IllConditionedBasis(double cond)
        : std::runtime_error("subspectra moment system is ill-conditioned "
                             "(Gram condition " +
                             std::to_string(cond) + ")"),
          condition(cond) {}
};

struct SubspectraOptions {
    int expansion_order = -1;     // columns l = -K..K; -1 means the spec half width
    double ridge = 1e-10;
    double condition_limit = 1e8;
    std::size_t M = 512;          // output grid resolution
};

struct SubspectraResult {
    PotentialPair potentials;
    double gram_condition_1;
    double gram_condition_2;
};

SubspectraResult reconstruct_from_m_subspectra(const SubspectrumSpec& spec1,
                                               const SubspectrumSpec& spec2,
                                               const SubspectraOptions& opts = {});

namespace detail {

// integral_{-b}^{b} x^nu e^{i theta x} dx, stable through theta = 0.
cplx symmetric_moment(cplx theta, double b, int nu);

}  // namespace detail

}  // namespace diracdelay
