#pragma once

// Forward half of the spectral problem: build reflection kernels from
// potentials and evaluate the entire characteristic functions
//
//     Delta(lambda) = head(lambda) + V(lambda) + I w(x) e^{i lambda x} dx,
//
// where head is one of -sin(pi lambda), cos(pi lambda), sin(pi lambda),
// the kernel w is supported on [a - pi, pi - a], and
// V(lambda) = v_cos cos(lambda(pi-a)) + v_sin sin(lambda(pi-a)) carries the
// potential means that survive outside the symmetric reduction (v_cos =
// v_sin = 0 for a PotentialPair).
//
// Kernel construction (reflection substitutions t-+ = (pi + a -+ x)/2):
//     w1(x) = -1/4 (q + i p)(t-)  -  1/4 (q - i p)(t+)
//     w2(x) =  1/4 (i q - p)(t-)  -  1/4 (i q + p)(t+)
// Even kernel nodes hit potential nodes exactly; odd nodes hit midpoints and
// use the two-point average of the neighbouring samples.
//
// Evaluation integrates the piecewise-linear interpolant of the kernel
// samples against x^nu e^{i lambda x} in closed form per interval (product
// quadrature). This is exact for piecewise-linear kernels, its error is
// O(h^2) uniformly in lambda, and the derivative evaluator is the exact
// lambda-derivative of the value evaluator, since both integrate the same
// interpolant. Valid in the strip |Im lambda| <= 50: the worst factor
// e^{|Im lambda| (pi - a)} ~ 1.2e34 stays far below double overflow.

#include <vector>

#include "diracdelay/core.hpp"

namespace diracdelay {

enum class TrigHead { MinusSinPi, CosPi, SinPi };

inline cplx head_value(TrigHead head, cplx lambda) {
    switch (head) {
        case TrigHead::MinusSinPi: return -sin_pi(lambda);
        case TrigHead::CosPi: return cos_pi(lambda);
        default: return sin_pi(lambda);
    }
}

inline cplx head_derivative(TrigHead head, cplx lambda, int nu) {
    switch (head) {
        case TrigHead::MinusSinPi: return -sin_pi_derivative(lambda, nu);
        case TrigHead::CosPi: return cos_pi_derivative(lambda, nu);
        default: return sin_pi_derivative(lambda, nu);
    }
}

// Kernel-side representation of one characteristic function.
// spectrum_label records which lattice its zeros cluster around:
// 1 -> integers n, 2 -> half-integers n - 1/2.
struct CharFunctionKernelRep {
    TrigHead head;
    double a;
    std::vector<cplx> kernel;  // 2M+1 samples on [a - pi, pi - a]
    cplx v_cos{0.0, 0.0};
    cplx v_sin{0.0, 0.0};
    int spectrum_label = 1;

    std::size_t M() const { return (kernel.size() - 1) / 2; }
    double h() const { return (kPi - a) / static_cast<double>(M()); }
    double b() const { return kPi - a; }
    double lattice(int n) const { return Spectrum::lattice_point(spectrum_label, n); }
};

// Largest |Im lambda| accepted by the evaluators.
inline constexpr double kImagStripBound = 50.0;

// Highest derivative order the evaluators support.
inline constexpr int kMaxDerivativeOrder = 4;

KernelPair potentials_to_kernels(const PotentialPair& pp);

CharFunctionKernelRep kernels_to_char(const KernelPair& kp, int j);

cplx eval_char(const CharFunctionKernelRep& rep, cplx lambda);

// order-nu lambda-derivative, 0 <= nu <= kMaxDerivativeOrder; order 0 equals
// eval_char.
cplx eval_char_derivative(const CharFunctionKernelRep& rep, cplx lambda, int order);

// Characteristic function of boundary problem (nu, j) for a full potential
// matrix, nu, j in {1, 2}; (1, j) reduces to kernels_to_char when the matrix
// satisfies q11 = -q22, q12 = q21.
CharFunctionKernelRep general_char_functions(const GeneralPotentialMatrix& gm,
                                             int nu, int j);

namespace detail {

// I_{x_lo}^{x_hi} (pw-linear through samples) * x^order * e^{i lambda x} dx
// over the uniform grid starting at x0 with spacing h. Shared by eval_char
// and the moment quadratures in tests.
cplx oscillatory_integral(const std::vector<cplx>& samples, double x0, double h,
                          cplx lambda, int order);

}  // namespace detail

}  // namespace diracdelay
