#include "diracdelay/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diracdelay {

namespace {

double vec_norm(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (cplx z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

void scale_to(std::vector<cplx>& v, double target) {
    const double n = vec_norm(v);
    if (n == 0.0) return;
    const double f = target / n;
    for (cplx& z : v) z *= f;
}

// Unit-disk draws damped by 1/(1+|n|), so the sequence is square-summable
// with most of its weight near the center of the truncation window.
std::vector<cplx> draw_shape(SplitMix64& rng, int N) {
    std::vector<cplx> v(2 * static_cast<std::size_t>(N) + 1);
    for (int n = -N; n <= N; ++n) {
        const double rad = std::sqrt(rng.uniform());
        const double ang = 2.0 * kPi * rng.uniform();
        v[static_cast<std::size_t>(n + N)] =
            rad * cplx(std::cos(ang), std::sin(ang)) / (1.0 + std::abs(n));
    }
    return v;
}

struct Forced {
    int n;
    cplx deviation;
};

Spectrum to_spectrum(int j, int N, const std::vector<cplx>& dev) {
    std::vector<cplx> vals(dev.size());
    for (int n = -N; n <= N; ++n)
        vals[static_cast<std::size_t>(n + N)] =
            Spectrum::lattice_point(j, n) + dev[static_cast<std::size_t>(n + N)];
    return Spectrum(j, N, std::move(vals));
}

double potential_distance(const PotentialPair& x, const PotentialPair& y) {
    std::vector<cplx> dq(x.q.size()), dp(x.p.size());
    for (std::size_t i = 0; i < dq.size(); ++i) {
        dq[i] = x.q[i] - y.q[i];
        dp[i] = x.p[i] - y.p[i];
    }
    return l2_norm_trapezoid(dq, x.h()) + l2_norm_trapezoid(dp, x.h());
}

// Type-1 quantile of an already sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size());
    std::size_t idx = static_cast<std::size_t>(std::ceil(pos));
    idx = idx == 0 ? 0 : idx - 1;
    if (idx >= sorted.size()) idx = sorted.size() - 1;
    return sorted[idx];
}

}  // namespace

StabilityRun run_stability_trials(const StabilityOptions& opts) {
    detail::require(opts.r >= 1e-3 && opts.r <= 10.0,
                    "stability: ball radius r must lie in [1e-3, 10]");
    detail::require(opts.trials >= 1, "stability: need at least one trial");
    detail::require(opts.half_width >= 2, "stability: half width must be >= 2");
    detail::require(opts.pert_min > 0.0 && opts.pert_min <= 0.1 * opts.r,
                    "stability: pert_min must be positive and <= r/10");
    const double pert_max = opts.pert_max < 0.0 ? opts.r / 2.0 : opts.pert_max;
    detail::require(pert_max == 0.0 || pert_max >= opts.pert_min,
                    "stability: pert_max must be zero or >= pert_min");
    const DelayConfig cfg(opts.a);
    const int N = opts.half_width;

    StabilityRun run;
    run.trials.reserve(static_cast<std::size_t>(opts.trials));

    for (int t = 0; t < opts.trials; ++t) {
        SplitMix64 rng(opts.seed + static_cast<std::uint64_t>(t));

        std::string kind = "random";
        std::vector<Forced> forced1, forced2;
        if (t % 16 == 5 && opts.r >= 0.42) {
            // shared eigenvalue between the two spectra at index 0
            kind = "common";
            const cplx shared(-std::min(opts.r, 1.0) / 4.0, 0.0);
            forced1.push_back({0, shared - Spectrum::lattice_point(1, 0)});
            forced2.push_back({0, shared - Spectrum::lattice_point(2, 0)});
        } else if (t % 16 == 11 && opts.r >= 0.75) {
            // double eigenvalue of the first spectrum at indices 0, 1
            kind = "double";
            const cplx v(std::min(opts.r, 1.0) / 2.0, 0.0);
            forced1.push_back({0, v - Spectrum::lattice_point(1, 0)});
            forced1.push_back({1, v - Spectrum::lattice_point(1, 1)});
        }

        const double u_base = rng.uniform();
        std::vector<std::vector<cplx>> base(2), pert(2);
        for (int s = 0; s < 2; ++s) {
            const auto& forced = (s == 0) ? forced1 : forced2;
            std::vector<cplx> shape = draw_shape(rng, N);
            double cost2 = 0.0;
            for (const Forced& f : forced) {
                shape[static_cast<std::size_t>(f.n + N)] = cplx(0.0, 0.0);
                cost2 += std::norm(f.deviation);
            }
            const double headroom = std::sqrt(std::max(opts.r * opts.r - cost2, 0.0));
            scale_to(shape, 0.8 * u_base * headroom);
            for (const Forced& f : forced)
                shape[static_cast<std::size_t>(f.n + N)] = f.deviation;
            base[static_cast<std::size_t>(s)] = std::move(shape);
        }
        for (int s = 0; s < 2; ++s) {
            const double room = opts.r - vec_norm(base[static_cast<std::size_t>(s)]);
            double dmax = std::min(pert_max, 0.999 * room);
            if (dmax < opts.pert_min) dmax = opts.pert_min;
            const double u = rng.uniform();
            double delta = std::exp(std::log(opts.pert_min) +
                                    u * (std::log(dmax) - std::log(opts.pert_min)));
            if (pert_max == 0.0) delta = 0.0;
            std::vector<cplx> shape = draw_shape(rng, N);
            scale_to(shape, delta);
            pert[static_cast<std::size_t>(s)] = std::move(shape);
        }

        StabilityTrial row{t, kind, 0.0, 0.0, 0.0, false};
        try {
            std::vector<cplx> dev1 = base[0], dev2 = base[1];
            std::vector<cplx> tdev1 = base[0], tdev2 = base[1];
            for (std::size_t i = 0; i < tdev1.size(); ++i) {
                tdev1[i] += pert[0][i];
                tdev2[i] += pert[1][i];
            }
            row.rhs = vec_norm(pert[0]) + vec_norm(pert[1]);

            const Spectrum s1 = to_spectrum(1, N, dev1);
            const Spectrum s2 = to_spectrum(2, N, dev2);
            const Spectrum t1 = to_spectrum(1, N, tdev1);
            const Spectrum t2 = to_spectrum(2, N, tdev2);
            const ReconstructionResult ra =
                reconstruct_from_spectra(s1, s2, cfg, opts.M);
            const ReconstructionResult rb =
                reconstruct_from_spectra(t1, t2, cfg, opts.M);
            row.lhs = potential_distance(ra.potentials, rb.potentials);
            if (row.rhs > 0.0) {
                row.ratio = row.lhs / row.rhs;
            } else {
                row.excluded = true;
            }
        } catch (const std::exception&) {
            row.excluded = true;
        }
        run.trials.push_back(std::move(row));
    }

    std::vector<double> ratios;
    std::vector<double> lx, ly;
    int excluded = 0;
    double max_ratio = 0.0;
    for (const StabilityTrial& row : run.trials) {
        if (row.excluded) {
            ++excluded;
            continue;
        }
        ratios.push_back(row.ratio);
        max_ratio = std::max(max_ratio, row.ratio);
        if (row.lhs > 0.0 && row.rhs > 0.0) {
            lx.push_back(std::log(row.rhs));
            ly.push_back(std::log(row.lhs));
        }
    }
    std::sort(ratios.begin(), ratios.end());

    double slope = 0.0;
    if (lx.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        if (sxx > 0.0) slope = sxy / sxx;
    }

    run.report.r = opts.r;
    run.report.trials = opts.trials;
    run.report.excluded = excluded;
    run.report.max_ratio = max_ratio;
    run.report.p50_ratio = quantile_sorted(ratios, 0.50);
    run.report.p99_ratio = quantile_sorted(ratios, 0.99);
    run.report.loglog_slope = slope;
    run.report.seed = opts.seed;
    run.report.half_width = opts.half_width;
    return run;
}

PotentialPair random_smooth_potential(const DelayConfig& cfg, std::size_t M,
                                      std::uint64_t seed, double amplitude) {
    SplitMix64 rng(seed);
    cplx cq[4], cp[4];
    for (int k = 0; k < 4; ++k)
        cq[k] = amplitude * cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0) /
                (1.0 + static_cast<double>(k * k));
    for (int k = 0; k < 4; ++k)
        cp[k] = amplitude * cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0) /
                (1.0 + static_cast<double>(k * k));
    std::vector<cplx> q(M + 1), p(M + 1);
    for (std::size_t m = 0; m <= M; ++m) {
        const double theta = kPi * static_cast<double>(m) / static_cast<double>(M);
        cplx aq(0.0, 0.0), ap(0.0, 0.0);
        for (int k = 0; k < 4; ++k) {
            const double c = std::cos(static_cast<double>(k) * theta);
            aq += cq[k] * c;
            ap += cp[k] * c;
        }
        q[m] = aq;
        p[m] = ap;
    }
    return PotentialPair(cfg, std::move(q), std::move(p));
}

RoundTripResult run_roundtrip(const PotentialPair& pp, int N, bool verify_spectra,
                              const RootOptions& ropts) {
    const DelayConfig cfg{DelayConfig(pp.a)};
    const ForwardResult fwd = forward_spectra(pp, N, ropts);
    const ReconstructionResult rec =
        reconstruct_from_spectra(fwd.s1, fwd.s2, cfg, pp.M());

    std::vector<cplx> dq(pp.q.size()), dp(pp.p.size());
    for (std::size_t i = 0; i < dq.size(); ++i) {
        dq[i] = pp.q[i] - rec.potentials.q[i];
        dp[i] = pp.p[i] - rec.potentials.p[i];
    }
    const double err = l2_norm_trapezoid(dq, pp.h()) + l2_norm_trapezoid(dp, pp.h());
    const double denom = l2_norm_potential(pp).sum();

    RoundTripResult out{rec.potentials, denom > 0.0 ? err / denom : err, -1.0,
                        rec.support_warning};
    if (verify_spectra) {
        const ForwardResult fwd2 = forward_spectra(rec.potentials, N, ropts);
        out.spectra_distance = l2_sequence_distance(fwd.s1, fwd2.s1) +
                               l2_sequence_distance(fwd.s2, fwd2.s2);
    }
    return out;
}

}  // namespace diracdelay
