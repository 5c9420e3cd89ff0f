#include "diracdelay/charfn.hpp"

#include <array>
#include <cmath>

namespace diracdelay {

namespace {

// Potential-sample lookup in half-node units: even half-indices are grid
// nodes, odd half-indices are midpoints (two-point average).
inline cplx at_half_index(const std::vector<cplx>& v, std::size_t half) {
    if (half % 2 == 0) return v[half / 2];
    return 0.5 * (v[(half - 1) / 2] + v[(half + 1) / 2]);
}

// m_p(u) = I_0^1 sigma^p e^{u sigma} dsigma for p = 0..pmax (pmax <= 5).
// Closed recurrence m_p = (e^u - p m_{p-1})/u away from u = 0; power series
// with exactly decaying terms near u = 0 where the recurrence cancels.
void segment_moments(cplx u, int pmax, cplx* m) {
    if (std::abs(u) < 0.5) {
        for (int p = 0; p <= pmax; ++p) m[p] = cplx(0.0, 0.0);
        cplx term(1.0, 0.0);  // u^t / t!
        for (int t = 0; t <= 26; ++t) {
            for (int p = 0; p <= pmax; ++p) m[p] += term / static_cast<double>(p + t + 1);
            term *= u / static_cast<double>(t + 1);
        }
        return;
    }
    const cplx eu = std::exp(u);
    m[0] = (eu - 1.0) / u;
    for (int p = 1; p <= pmax; ++p)
        m[p] = (eu - static_cast<double>(p) * m[p - 1]) / u;
}

constexpr std::array<cplx, 4> kIPow = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

namespace detail {

cplx oscillatory_integral(const std::vector<cplx>& samples, double x0, double h,
                          cplx lambda, int order) {
    const std::size_t n = samples.size();
    if (n < 2) return cplx(0.0, 0.0);

    const cplx ilam = cplx(0.0, 1.0) * lambda;
    const cplx u = ilam * h;
    cplx m[6];
    segment_moments(u, order + 1, m);

    const cplx step = std::exp(ilam * h);
    cplx phase = std::exp(ilam * x0);
    cplx acc(0.0, 0.0);

    if (order == 0) {
        const cplx a0 = m[0] - m[1];
        for (std::size_t k = 0; k + 1 < n; ++k) {
            acc += phase * (samples[k] * a0 + samples[k + 1] * m[1]);
            phase *= step;
        }
        return h * acc;
    }

    // (i x)^order expanded around the left node of each interval:
    // i^order sum_r C(order, r) x_k^(order-r) (h sigma)^r.
    double hp[6];
    hp[0] = 1.0;
    for (int r = 1; r <= order; ++r) hp[r] = hp[r - 1] * h;
    double binc[6];
    for (int r = 0; r <= order; ++r) binc[r] = binomial(order, r);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double xk = x0 + static_cast<double>(k) * h;
        const cplx wk = samples[k];
        const cplx dw = samples[k + 1] - samples[k];
        double xpow[6];
        xpow[0] = 1.0;
        for (int r = 1; r <= order; ++r) xpow[r] = xpow[r - 1] * xk;
        cplx inner(0.0, 0.0);
        for (int r = 0; r <= order; ++r) {
            const double coef = binc[r] * xpow[order - r] * hp[r];
            inner += coef * (wk * m[r] + dw * m[r + 1]);
        }
        acc += phase * inner;
        phase *= step;
    }
    return h * kIPow[static_cast<std::size_t>(order % 4)] * acc;
}

}  // namespace detail

KernelPair potentials_to_kernels(const PotentialPair& pp) {
    const std::size_t M = pp.M();
    const std::size_t K = 2 * M;
    std::vector<cplx> w1(K + 1), w2(K + 1);
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k <= K; ++k) {
        // t- = a + (2M - k) h/2, t+ = a + k h/2 in half-node units.
        const cplx qm = at_half_index(pp.q, K - k);
        const cplx pm = at_half_index(pp.p, K - k);
        const cplx qp = at_half_index(pp.q, k);
        const cplx pp_ = at_half_index(pp.p, k);
        w1[k] = -0.25 * (qm + I * pm) - 0.25 * (qp - I * pp_);
        w2[k] = 0.25 * (I * qm - pm) - 0.25 * (I * qp + pp_);
    }
    return KernelPair(DelayConfig(pp.a), std::move(w1), std::move(w2));
}

CharFunctionKernelRep kernels_to_char(const KernelPair& kp, int j) {
    detail::require(j == 1 || j == 2, "kernels_to_char: j must be 1 or 2");
    CharFunctionKernelRep rep;
    rep.head = (j == 1) ? TrigHead::MinusSinPi : TrigHead::CosPi;
    rep.a = kp.a;
    rep.kernel = (j == 1) ? kp.w1 : kp.w2;
    rep.spectrum_label = j;
    return rep;
}

namespace {

void check_strip(cplx lambda) {
    if (!detail::is_finite(lambda))
        throw std::invalid_argument("eval_char: non-finite lambda");
    if (std::abs(lambda.imag()) > kImagStripBound)
        throw std::domain_error("eval_char: |Im lambda| exceeds the supported strip");
}

// nu-th derivative of v_cos cos(b lambda) + v_sin sin(b lambda).
cplx mean_term_derivative(const CharFunctionKernelRep& rep, cplx lambda, int nu) {
    if (rep.v_cos == cplx(0.0, 0.0) && rep.v_sin == cplx(0.0, 0.0)) return {0.0, 0.0};
    const double b = rep.b();
    const double scale = std::pow(b, nu);
    const cplx c = std::cos(b * lambda), s = std::sin(b * lambda);
    switch (((nu % 4) + 4) % 4) {
        case 0: return scale * (rep.v_cos * c + rep.v_sin * s);
        case 1: return scale * (-rep.v_cos * s + rep.v_sin * c);
        case 2: return scale * (-rep.v_cos * c - rep.v_sin * s);
        default: return scale * (rep.v_cos * s - rep.v_sin * c);
    }
}

}  // namespace

cplx eval_char(const CharFunctionKernelRep& rep, cplx lambda) {
    check_strip(lambda);
    const double x0 = rep.a - kPi;
    return head_value(rep.head, lambda) + mean_term_derivative(rep, lambda, 0) +
           detail::oscillatory_integral(rep.kernel, x0, rep.h(), lambda, 0);
}

cplx eval_char_derivative(const CharFunctionKernelRep& rep, cplx lambda, int order) {
    if (order < 0 || order > kMaxDerivativeOrder)
        throw std::invalid_argument("eval_char_derivative: unsupported order");
    if (order == 0) return eval_char(rep, lambda);
    check_strip(lambda);
    const double x0 = rep.a - kPi;
    return head_derivative(rep.head, lambda, order) +
           mean_term_derivative(rep, lambda, order) +
           detail::oscillatory_integral(rep.kernel, x0, rep.h(), lambda, order);
}

namespace {

cplx trapezoid_sum(const std::vector<cplx>& v, double h) {
    cplx s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return h * s;
}

}  // namespace

CharFunctionKernelRep general_char_functions(const GeneralPotentialMatrix& gm,
                                             int nu, int j) {
    detail::require(nu == 1 || nu == 2, "general_char_functions: nu must be 1 or 2");
    detail::require(j == 1 || j == 2, "general_char_functions: j must be 1 or 2");

    const std::size_t M = gm.M();
    const std::size_t K = 2 * M;
    const double h = gm.h();
    const cplx I(0.0, 1.0);

    // Means of the trace and the antisymmetric off-diagonal part over [a, pi].
    std::vector<cplx> tr(M + 1), as(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        tr[i] = gm.q11[i] + gm.q22[i];
        as[i] = gm.q12[i] - gm.q21[i];
    }
    const cplx om1 = 0.5 * trapezoid_sum(tr, h);
    const cplx om2 = 0.5 * trapezoid_sum(as, h);

    // Reflected combinations on the kernel grid: pc ~ (q11 - q22)/4 and
    // ps ~ (q12 + q21)/4 composed with t- = (pi + a - x)/2.
    std::vector<cplx> pc(K + 1), ps(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        pc[k] = 0.25 * (at_half_index(gm.q11, K - k) - at_half_index(gm.q22, K - k));
        ps[k] = 0.25 * (at_half_index(gm.q12, K - k) + at_half_index(gm.q21, K - k));
    }
    auto even_part = [K](const std::vector<cplx>& f, std::size_t k) {
        return 0.5 * (f[k] + f[K - k]);
    };
    auto odd_part = [K](const std::vector<cplx>& f, std::size_t k) {
        return 0.5 * (f[k] - f[K - k]);
    };

    CharFunctionKernelRep rep;
    rep.a = gm.a;
    rep.kernel.resize(K + 1);

    // Each characteristic function is head + V + I f cos + I g sin with
    // (f, g) drawn from +-pc, +-ps; folded into a single complex kernel via
    // w = f_even - i g_odd (the odd cos / even sin parts integrate to zero on
    // the symmetric interval).
    if (nu == 1 && j == 1) {
        rep.head = TrigHead::MinusSinPi;
        rep.spectrum_label = 1;
        rep.v_cos = om1;
        rep.v_sin = om2;
        for (std::size_t k = 0; k <= K; ++k)
            rep.kernel[k] = -even_part(pc, k) - I * odd_part(ps, k);
    } else if (nu == 1 && j == 2) {
        rep.head = TrigHead::CosPi;
        rep.spectrum_label = 2;
        rep.v_cos = -om2;
        rep.v_sin = om1;
        for (std::size_t k = 0; k <= K; ++k)
            rep.kernel[k] = -even_part(ps, k) + I * odd_part(pc, k);
    } else if (nu == 2 && j == 1) {
        rep.head = TrigHead::CosPi;
        rep.spectrum_label = 2;
        rep.v_cos = -om2;
        rep.v_sin = om1;
        for (std::size_t k = 0; k <= K; ++k)
            rep.kernel[k] = even_part(ps, k) - I * odd_part(pc, k);
    } else {
        rep.head = TrigHead::SinPi;
        rep.spectrum_label = 1;
        rep.v_cos = -om1;
        rep.v_sin = -om2;
        for (std::size_t k = 0; k <= K; ++k)
            rep.kernel[k] = -even_part(pc, k) - I * odd_part(ps, k);
    }
    return rep;
}

}  // namespace diracdelay
