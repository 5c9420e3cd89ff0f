#pragma once

// Empirical stability harness: draws admissible random spectra pairs inside
// a ball of radius r around the unperturbed lattice, perturbs them by a
// log-uniform amount, reconstructs both pairs, and compares the potential
// distance against the spectral distance. Every 16th trial (offsets 5 and
// 11) forces a shared eigenvalue between the two spectra or a double
// eigenvalue inside the first spectrum, so the degenerate configurations are
// always exercised.
//
// All randomness comes from a hand-rolled splitmix64 stream seeded with
// seed + trial_index, which makes every trial reproducible in isolation and
// the whole run independent of scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "diracdelay/inverse.hpp"
#include "diracdelay/rootfind.hpp"

namespace diracdelay {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct StabilityOptions {
    double a = kPi / 2.0;
    double r = 1.0;
    int trials = 200;
    int half_width = 512;
    std::uint64_t seed = 1;
    double pert_min = 1e-6;
    double pert_max = -1.0;   // -1 selects r / 2
    std::size_t M = 256;      // reconstruction grid resolution
};

struct StabilityTrial {
    int index;
    std::string kind;   // "random", "common" or "double"
    double rhs;         // spectral distance between the two pairs
    double lhs;         // potential distance between the reconstructions
    double ratio;
    bool excluded;
};

struct StabilityReport {
    double r;
    int trials;
    int excluded;
    double max_ratio;
    double p50_ratio;
    double p99_ratio;
    double loglog_slope;
    std::uint64_t seed;
    int half_width;
    std::string generator = "splitmix64";
};

struct StabilityRun {
    StabilityReport report;
    std::vector<StabilityTrial> trials;
};

StabilityRun run_stability_trials(const StabilityOptions& opts);

// Low-order cosine series with pseudo-random complex coefficients, used as a
// generic smooth test potential.
PotentialPair random_smooth_potential(const DelayConfig& cfg, std::size_t M,
                                      std::uint64_t seed, double amplitude = 0.1);

struct RoundTripResult {
    PotentialPair recovered;
    double rel_error;          // (||dq|| + ||dp||) / (||q|| + ||p||)
    double spectra_distance;   // -1 unless verify_spectra was requested
    bool support_warning;
};

// potentials -> spectra (half width N) -> potentials on the same grid;
// verify_spectra additionally runs the forward map on the reconstruction and
// accumulates the l2 distance between the two spectra pairs.
RoundTripResult run_roundtrip(const PotentialPair& pp, int N,
                              bool verify_spectra = false,
                              const RootOptions& ropts = {});

}  // namespace diracdelay
