#pragma once

// Eigenvalue localization for kernel-side characteristic functions.
//
// Strategy: damped Newton from every lattice start point n (or n - 1/2),
// run in parallel; argument-principle contour counts recover starts where
// Newton stalls; adjacent results that coalesce are verified by a contour
// count on the enclosing disk and re-resolved from the contour power sums,
// so genuinely multiple eigenvalues come back as neighbouring equal entries.

#include <stdexcept>
#include <string>

#include "diracdelay/charfn.hpp"

namespace diracdelay {

struct RootOptions {
    double residual_tol = 1e-10;   // accepted |Delta| at a root
    int max_iterations = 50;
    double cluster_tol = 1e-4;     // adjacent-result gap that triggers contour checks
    double multiplicity_tol = 1e-8;
    int contour_points = 256;      // initial trapezoid resolution on circles
};

// Raised when a lattice disk and its subdivisions cannot account for the
// expected number of zeros; index names the offending n.
struct LocalizationError : std::runtime_error {
    int index;
    LocalizationError(int n, const std::string& what)
        : std::runtime_error(what), index(n) {}
};

Spectrum find_eigenvalues(const CharFunctionKernelRep& rep, int N,
                          const RootOptions& opts = {});

struct ForwardResult {
    Spectrum s1;
    Spectrum s2;
};

// Convenience pipeline potentials -> kernels -> both spectra.
ForwardResult forward_spectra(const PotentialPair& pp, int N,
                              const RootOptions& opts = {});

namespace detail {

// Zero count and first two power sums of the zeros inside the circle,
// via trapezoid contour integration with the point count doubled until the
// count stabilizes across two refinements.
struct ContourSums {
    int count;
    cplx s1;
    cplx s2;
};

ContourSums contour_sums(const CharFunctionKernelRep& rep, cplx center,
                         double radius, const RootOptions& opts,
                         int fail_index = 0);

}  // namespace detail

}  // namespace diracdelay
