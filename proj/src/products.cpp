#include "diracdelay/products.hpp"

#include <cmath>

#include "diracdelay/parallel.hpp"

namespace diracdelay {

namespace {

// sin(pi d)/d, stable through d = 0.
cplx sin_pi_over(cplx d) {
    if (std::abs(d) < 1e-3) {
        const cplx s = kPi * d;
        const cplx s2 = s * s;
        return kPi * (1.0 - s2 / 6.0 + (s2 * s2) / 120.0);
    }
    return std::sin(kPi * d) / d;
}

double parity_sign(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// head(lambda) / (lattice_m - lambda) continued through the common zero.
// With d = lambda - lattice_m:
//   -sin(pi lambda) / (m - lambda)          = (-1)^m     sin(pi d)/d
//    cos(pi lambda) / ((m - 1/2) - lambda)  = (-1)^(m+1) sin(pi d)/d
//    sin(pi lambda) / (m - lambda)          = (-1)^(m+1) sin(pi d)/d
cplx merged_head_factor(TrigHead head, int m, cplx d) {
    switch (head) {
        case TrigHead::MinusSinPi: return parity_sign(m) * sin_pi_over(d);
        case TrigHead::CosPi: return -parity_sign(m) * sin_pi_over(d);
        default: return -parity_sign(m) * sin_pi_over(d);
    }
}

}  // namespace

CharFunctionProductRep spectra_to_char(const Spectrum& s) {
    const double dev = spectrum_deviation_norm(s);
    if (!(dev <= kDeviationNormBound))
        throw std::invalid_argument(
            "spectra_to_char: zero list is inconsistent with the eigenvalue "
            "asymptotics (deviation norm " +
            std::to_string(dev) + ")");
    return CharFunctionProductRep{s};
}

cplx eval_product(const CharFunctionProductRep& rep, cplx lambda) {
    const int N = rep.half_width();
    const int j = rep.zeros.problem_j;
    const TrigHead head = rep.head();

    // Index of the nearest lattice point, clamped to the stored range.
    int m = static_cast<int>(std::lround(lambda.real() + 0.5 * (j - 1)));
    m = std::max(-N, std::min(N, m));
    const cplx d = lambda - rep.lattice(m);
    const bool merged = std::abs(d) < 0.25;

    cplx prod = merged ? merged_head_factor(head, m, d) : head_value(head, lambda);

    // Fixed reduction order |n| ascending keeps results bit-reproducible.
    for (int k = 0; k <= N; ++k) {
        for (int sgn = 0; sgn < 2; ++sgn) {
            if (k == 0 && sgn == 1) continue;
            const int n = (sgn == 0) ? -k : k;
            const cplx num = rep.zeros.value(n) - lambda;
            if (merged && n == m)
                prod *= num;
            else
                prod *= num / (rep.lattice(n) - lambda);
        }
    }
    return prod;
}

std::vector<cplx> head_subtracted_samples(const CharFunctionProductRep& rep) {
    const int N = rep.half_width();
    std::vector<cplx> d(static_cast<std::size_t>(2 * N + 1));
    parallel_for(d.size(), [&](std::size_t i) {
        const int n = static_cast<int>(i) - N;
        const cplx ln(static_cast<double>(n), 0.0);
        d[i] = eval_product(rep, ln) - head_value(rep.head(), ln);
    });
    return d;
}

namespace {

// (1/2pi) sum_n d_n e^{-inx} for x on a uniform grid, one exp per node.
void fourier_sum(const std::vector<cplx>& d, int N, double x0, double h,
                 std::vector<cplx>& out) {
    parallel_for(out.size(), [&](std::size_t k) {
        const double x = x0 + static_cast<double>(k) * h;
        const cplx step = std::exp(cplx(0.0, -x));
        cplx phase = std::exp(cplx(0.0, static_cast<double>(N) * x));  // e^{-i(-N)x}
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            acc += d[i] * phase;
            phase *= step;
        }
        out[k] = acc / (2.0 * kPi);
    });
}

double energy_trapezoid(const std::vector<cplx>& v, double h) {
    double s = 0.5 * (std::norm(v.front()) + std::norm(v.back()));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += std::norm(v[i]);
    return h * s;
}

// Trapezoid energy over a segment one of whose ends is the band edge.  The
// support is the closed band, so that node belongs to the inside integral;
// at a kernel jump the Fourier sum lands on the half-jump value there, which
// must not be booked as outside energy.  The open end gets weight zero.
double energy_trapezoid_open(const std::vector<cplx>& v, double h,
                             bool open_front) {
    double s = 0.5 * std::norm(open_front ? v.back() : v.front());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += std::norm(v[i]);
    return h * s;
}

}  // namespace

KernelSynthesis synthesize_band_kernel(const std::vector<cplx>& samples,
                                       const DelayConfig& cfg, std::size_t M) {
    detail::require(samples.size() % 2 == 1, "synthesize_band_kernel: need 2N+1 samples");
    detail::require(M >= 2 && M % 2 == 0, "synthesize_band_kernel: M must be even, >= 2");
    const int N = static_cast<int>((samples.size() - 1) / 2);
    const double b = cfg.b();
    const double h = b / static_cast<double>(M);

    KernelSynthesis syn;
    syn.inside.resize(2 * M + 1);
    fourier_sum(samples, N, -b, h, syn.inside);
    syn.inside_energy = energy_trapezoid(syn.inside, h);

    // Outside segments [-pi, a-pi] and [pi-a, pi], M+1 nodes each.
    const double ha = cfg.a / static_cast<double>(M);
    std::vector<cplx> left(M + 1), right(M + 1);
    fourier_sum(samples, N, -kPi, ha, left);
    fourier_sum(samples, N, b, ha, right);
    syn.outside_energy = energy_trapezoid_open(left, ha, false) +
                         energy_trapezoid_open(right, ha, true);

    const double total = syn.inside_energy + syn.outside_energy;
    syn.outside_fraction = (total > 0.0) ? syn.outside_energy / total : 0.0;
    return syn;
}

TypeReport check_type_condition(const CharFunctionProductRep& rep,
                                const DelayConfig& cfg, std::size_t M,
                                double threshold) {
    const auto syn = synthesize_band_kernel(head_subtracted_samples(rep), cfg, M);
    return TypeReport{syn.outside_fraction, threshold,
                      syn.outside_fraction < threshold, rep.half_width()};
}

}  // namespace diracdelay
