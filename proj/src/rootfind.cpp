#include "diracdelay/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "diracdelay/parallel.hpp"

namespace diracdelay {

namespace {

std::optional<cplx> newton_root(const CharFunctionKernelRep& rep, cplx start,
                                const RootOptions& opts) {
    cplx z = start;
    cplx f = eval_char(rep, z);
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (std::abs(f) <= opts.residual_tol) return z;
        const cplx df = eval_char_derivative(rep, z, 1);
        if (std::abs(df) < 1e-300) return std::nullopt;
        const cplx step = f / df;
        double damp = 1.0;
        cplx zn, fn;
        bool moved = false;
        for (int t = 0; t < 8; ++t) {
            zn = z - damp * step;
            if (std::abs(zn.imag()) <= kImagStripBound - 1.0) {
                fn = eval_char(rep, zn);
                if (std::abs(fn) < std::abs(f)) { moved = true; break; }
            }
            damp *= 0.5;
        }
        if (!moved) return std::nullopt;
        z = zn;
        f = fn;
        if (std::abs(z - start) > 2.0) return std::nullopt;  // left the basin
    }
    return std::abs(f) <= opts.residual_tol ? std::optional<cplx>(z) : std::nullopt;
}

struct RootGroup {
    cplx value;
    int multiplicity;
};

// Recursively accounts for the zeros inside a disk; returns (value, mult)
// groups whose multiplicities sum to the disk's contour count.
std::vector<RootGroup> resolve_disk(const CharFunctionKernelRep& rep, cplx center,
                                    double radius, const RootOptions& opts,
                                    int fail_index, int depth) {
    const auto sums = detail::contour_sums(rep, center, radius, opts, fail_index);
    if (sums.count == 0) return {};

    const double cnt = static_cast<double>(sums.count);
    const cplx centroid = sums.s1 / cnt;
    // Spread of the zeros around their centroid: s2/n - centroid^2 is the
    // mean squared deviation.
    const double spread =
        std::sqrt(std::abs(sums.s2 / cnt - centroid * centroid));

    if (sums.count == 1) {
        auto polished = newton_root(rep, centroid, opts);
        return {{polished.value_or(centroid), 1}};
    }
    if (spread < 1e-7) {
        // Numerically a single multiple zero.
        return {{centroid, sums.count}};
    }
    if (sums.count == 2) {
        // Two separated zeros from the power sums: roots of
        // z^2 - s1 z + (s1^2 - s2)/2.
        const cplx e2 = 0.5 * (sums.s1 * sums.s1 - sums.s2);
        const cplx disc = std::sqrt(sums.s1 * sums.s1 - 4.0 * e2);
        cplx r1 = 0.5 * (sums.s1 + disc);
        cplx r2 = 0.5 * (sums.s1 - disc);
        if (auto p = newton_root(rep, r1, opts)) r1 = *p;
        if (auto p = newton_root(rep, r2, opts)) r2 = *p;
        return {{r1, 1}, {r2, 1}};
    }
    if (depth <= 0)
        throw LocalizationError(fail_index,
                                "eigenvalue localization: subdivision limit reached near index " +
                                    std::to_string(fail_index));

    // Four overlapping half-radius disks cover the disk; merge groups that
    // appear in more than one of them.
    const cplx offs[4] = {{0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
    std::vector<RootGroup> merged;
    for (const cplx& o : offs) {
        auto part = resolve_disk(rep, center + o * radius, 0.75 * radius, opts,
                                 fail_index, depth - 1);
        for (const auto& g : part) {
            bool seen = false;
            for (auto& mg : merged) {
                if (std::abs(mg.value - g.value) < 1e-8) {
                    mg.multiplicity = std::max(mg.multiplicity, g.multiplicity);
                    seen = true;
                    break;
                }
            }
            if (!seen) merged.push_back(g);
        }
    }
    int total = 0;
    for (const auto& g : merged) total += g.multiplicity;
    if (total != sums.count)
        throw LocalizationError(fail_index,
                                "eigenvalue localization: contour count mismatch near index " +
                                    std::to_string(fail_index));
    return merged;
}

std::vector<cplx> expand_groups(std::vector<RootGroup> groups) {
    std::sort(groups.begin(), groups.end(), [](const RootGroup& x, const RootGroup& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    std::vector<cplx> out;
    for (const auto& g : groups)
        for (int t = 0; t < g.multiplicity; ++t) out.push_back(g.value);
    return out;
}

}  // namespace

namespace detail {

ContourSums contour_sums(const CharFunctionKernelRep& rep, cplx center,
                         double radius, const RootOptions& opts, int fail_index) {
    double rad = radius;
    for (int attempt = 0; attempt < 5; ++attempt) {
        int points = std::max(opts.contour_points, 16);
        int prev_count = -1;
        ContourSums prev{};
        bool contour_ok = true;
        for (int refine = 0; refine < 8; ++refine, points *= 2) {
            cplx c0(0.0, 0.0), c1(0.0, 0.0), c2(0.0, 0.0);
            contour_ok = true;
            for (int t = 0; t < points; ++t) {
                const double th = 2.0 * kPi * static_cast<double>(t) /
                                  static_cast<double>(points);
                const cplx e(std::cos(th), std::sin(th));
                const cplx z = center + rad * e;
                const cplx f = eval_char(rep, z);
                if (std::abs(f) < 1e-13) { contour_ok = false; break; }
                const cplx g = eval_char_derivative(rep, z, 1) / f * e;
                c0 += g;
                c1 += g * z;
                c2 += g * z * z;
            }
            if (!contour_ok) break;  // zero too close to the contour; nudge radius
            const double scale = rad / static_cast<double>(points);
            const cplx n0 = c0 * scale;
            const int count = static_cast<int>(std::lround(n0.real()));
            const bool integral = std::abs(n0 - cplx(count, 0)) < 0.05 && count >= 0;
            ContourSums cur{count, c1 * scale, c2 * scale};
            if (integral && count == prev_count) return cur;
            prev_count = integral ? count : -1;
            prev = cur;
        }
        rad *= contour_ok ? 1.13 : 1.07;  // fresh circle, retry
    }
    throw LocalizationError(fail_index,
                            "contour count failed to stabilize near index " +
                                std::to_string(fail_index));
}

}  // namespace detail

Spectrum find_eigenvalues(const CharFunctionKernelRep& rep, int N,
                          const RootOptions& opts) {
    detail::require(N >= 0, "find_eigenvalues: negative half width");
    const std::size_t total = static_cast<std::size_t>(2 * N + 1);
    std::vector<cplx> roots(total);
    std::vector<char> ok(total, 0);

    parallel_for(total, [&](std::size_t i) {
        const int n = static_cast<int>(i) - N;
        const cplx start(rep.lattice(n), 0.0);
        if (auto r = newton_root(rep, start, opts)) {
            roots[i] = *r;
            ok[i] = 1;
        }
    });

    // Recover stalled starts from the lattice disk.
    for (std::size_t i = 0; i < total; ++i) {
        if (ok[i]) continue;
        const int n = static_cast<int>(i) - N;
        const cplx center(rep.lattice(n), 0.0);
        auto groups = resolve_disk(rep, center, 0.5, opts, n, 6);
        if (groups.empty())
            throw LocalizationError(n, "no eigenvalue found near lattice index " +
                                           std::to_string(n));
        // Take the zero closest to the lattice point; collisions with the
        // neighbours are sorted out by the cluster pass below.
        cplx best = groups.front().value;
        for (const auto& g : groups)
            if (std::abs(g.value - center) < std::abs(best - center)) best = g.value;
        roots[i] = best;
        ok[i] = 1;
    }

    // Verify coalescing results: a contour count over the enclosing disk
    // decides whether a cluster is a genuine multiple eigenvalue, distinct
    // close zeros, or a basin collision that lost a root.
    std::size_t i = 0;
    while (i < total) {
        std::size_t jend = i + 1;
        while (jend < total && std::abs(roots[jend] - roots[jend - 1]) <= opts.cluster_tol)
            ++jend;
        const std::size_t size = jend - i;
        if (size >= 2) {
            cplx center(0.0, 0.0);
            for (std::size_t k = i; k < jend; ++k) center += roots[k];
            center /= static_cast<double>(size);
            double dev = 0.0;
            for (std::size_t k = i; k < jend; ++k)
                dev = std::max(dev, std::abs(roots[k] - center));
            const double radius = std::min(0.35, std::max(0.02, 8.0 * dev + 1e-6));
            const int n_first = static_cast<int>(i) - N;
            auto groups = resolve_disk(rep, center, radius, opts, n_first, 6);
            int found = 0;
            for (const auto& g : groups) found += g.multiplicity;
            if (found < static_cast<int>(size)) {
                // The cluster absorbed starts whose zeros live elsewhere;
                // re-scan the individual lattice disks.
                std::vector<RootGroup> all;
                for (std::size_t k = i; k < jend; ++k) {
                    const int n = static_cast<int>(k) - N;
                    auto part = resolve_disk(rep, cplx(rep.lattice(n), 0.0), 0.5,
                                             opts, n, 6);
                    for (const auto& g : part) {
                        bool seen = false;
                        for (auto& mg : all)
                            if (std::abs(mg.value - g.value) < 1e-8) {
                                mg.multiplicity = std::max(mg.multiplicity, g.multiplicity);
                                seen = true;
                                break;
                            }
                        if (!seen) all.push_back(g);
                    }
                }
                groups = std::move(all);
                found = 0;
                for (const auto& g : groups) found += g.multiplicity;
            }
            if (found != static_cast<int>(size))
                throw LocalizationError(n_first,
                                        "contour count disagrees with coalescing Newton "
                                        "results near index " +
                                            std::to_string(n_first));
            const auto expanded = expand_groups(std::move(groups));
            for (std::size_t k = 0; k < size; ++k) roots[i + k] = expanded[k];
        }
        i = jend;
    }

    // Final multiplicity convention: entries within tol become exactly equal.
    std::vector<cplx> out;
    out.reserve(total);
    for (const auto& g : group_multiplicities(roots, opts.multiplicity_tol))
        for (int t = 0; t < g.multiplicity; ++t) out.push_back(g.value);

    return Spectrum((rep.spectrum_label == 2) ? 2 : 1, N, std::move(out));
}

ForwardResult forward_spectra(const PotentialPair& pp, int N, const RootOptions& opts) {
    const KernelPair kp = potentials_to_kernels(pp);
    return ForwardResult{find_eigenvalues(kernels_to_char(kp, 1), N, opts),
                         find_eigenvalues(kernels_to_char(kp, 2), N, opts)};
}

}  // namespace diracdelay
