#pragma once

// Zeros-side representation of the characteristic functions.
//
// A spectrum {lambda_n} determines its characteristic function as a canonical
// product over the zeros. Evaluation never forms that product directly:
// the trig head has the same canonical product over the unperturbed lattice,
// so the truncated quotient collapses to
//
//     Delta(lambda) ~ head(lambda) * prod_{|n|<=N} (lambda_n - lambda) /
//                                                  (lattice_n - lambda),
//
// where the convergence factors cancel exactly under symmetric truncation.
// Near a lattice point the vanishing denominator is merged analytically with
// the head's own zero (a reduced sin(pi d)/d form), so sampling at lattice
// points is exact and stable.
//
// The band-limited synthesis shared by the type-condition diagnostic and the
// full-spectra reconstruction also lives here: head-subtracted samples at
// integer frequencies are the Fourier coefficients of the kernel on
// (-pi, pi), and the truncated series is evaluated on the kernel grid plus
// the two outside segments whose energy the type check reports.

#include <cstddef>
#include <vector>

#include "diracdelay/charfn.hpp"

namespace diracdelay {

struct CharFunctionProductRep {
    Spectrum zeros;

    TrigHead head() const {
        return zeros.problem_j == 1 ? TrigHead::MinusSinPi : TrigHead::CosPi;
    }
    int half_width() const { return zeros.half_width; }
    double lattice(int n) const { return zeros.lattice(n); }
};

// Bound on the l2 norm of {lambda_n - lattice_n} accepted as consistent with
// the eigenvalue asymptotics; genuine and perturbed spectra in scope stay
// far below it, while linearly drifting zero lists are rejected.
inline constexpr double kDeviationNormBound = 50.0;

CharFunctionProductRep spectra_to_char(const Spectrum& s);

cplx eval_product(const CharFunctionProductRep& rep, cplx lambda);

// d_n = Delta(n) - head(n) for n = -N..N; the integer-frequency Fourier data
// of the kernel.
std::vector<cplx> head_subtracted_samples(const CharFunctionProductRep& rep);

struct KernelSynthesis {
    std::vector<cplx> inside;  // 2M+1 samples on the kernel grid [a-pi, pi-a]
    double inside_energy;      // integral of |w|^2 over [a-pi, pi-a]
    double outside_energy;     // integral of |w|^2 over the rest of (-pi, pi)
    double outside_fraction;   // outside / total, 0 for identically zero data
};

// Truncated Fourier synthesis w(x) = (1/2pi) sum_n d_n e^{-inx} evaluated on
// the kernel grid and on the two outside segments.
KernelSynthesis synthesize_band_kernel(const std::vector<cplx>& samples,
                                       const DelayConfig& cfg, std::size_t M);

struct TypeReport {
    double outside_energy_fraction;
    double threshold;
    bool pass;
    int half_width;  // truncation the report was computed at
};

// Empirical exponential-type check: the head-subtracted part of a genuine
// characteristic function is the transform of a kernel supported on
// [a-pi, pi-a]; energy of the synthesized kernel outside that band measures
// the violation.
TypeReport check_type_condition(const CharFunctionProductRep& rep,
                                const DelayConfig& cfg, std::size_t M = 512,
                                double threshold = 1e-3);

}  // namespace diracdelay
