#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "diracdelay/charfn.hpp"
#include "diracdelay/rootfind.hpp"
#include "test_util.hpp"

using namespace diracdelay;

namespace {

// closed form of the first characteristic function for q = c, p = 0,
// a = pi/2: the kernel is the constant -c/2 on [-pi/2, pi/2]
cplx delta1_const_q(double c, cplx lambda) {
    const cplx half = 0.5 * kPi * lambda;
    cplx sinc;
    if (std::abs(lambda) < 1e-8) {
        sinc = 0.5 * kPi * (1.0 - half * half / 6.0);
    } else {
        sinc = std::sin(half) / lambda;
    }
    return -sin_pi(lambda) - c * sinc;
}

}  // namespace

TEST_CASE("constant potential produces constant kernels") {
    const DelayConfig cfg(kPi / 2.0);
    const cplx c(0.3, -0.1);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 16, c, cplx(0, 0)));
    for (const cplx& w : kp.w1) CHECK(std::abs(w + 0.5 * c) < 1e-15);
    for (const cplx& w : kp.w2) CHECK(std::abs(w) < 1e-15);
}

TEST_CASE("free characteristic functions are pure trig") {
    const DelayConfig cfg(2.0);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 8, {0, 0}, {0, 0}));
    const auto rep1 = kernels_to_char(kp, 1);
    const auto rep2 = kernels_to_char(kp, 2);
    for (double re = -7.3; re < 7.0; re += 1.1) {
        const cplx z(re, 0.4 * re);
        CHECK(std::abs(eval_char(rep1, z) + sin_pi(z)) < 1e-14 * (1.0 + std::abs(sin_pi(z))));
        CHECK(std::abs(eval_char(rep2, z) - cos_pi(z)) < 1e-14 * (1.0 + std::abs(cos_pi(z))));
    }
}

TEST_CASE("product quadrature is exact for globally linear kernels") {
    const DelayConfig cfg(kPi / 2.0);
    const double b = cfg.b();
    const std::size_t M = 32;
    const double h = b / M;
    const cplx alpha(0.4, -0.2), beta(-0.1, 0.7);
    std::vector<cplx> samples(2 * M + 1);
    for (std::size_t k = 0; k <= 2 * M; ++k) {
        const double x = (static_cast<double>(k) - static_cast<double>(M)) * h;
        samples[k] = alpha + beta * x;
    }
    for (const cplx lambda : {cplx(3.7, 0.0), cplx(0.01, 0.0), cplx(-5.2, 2.0)}) {
        const cplx got = detail::oscillatory_integral(samples, -b, h, lambda, 0);
        const cplx lb = lambda * b;
        const cplx exact = alpha * 2.0 * std::sin(lb) / lambda +
                           beta * 2.0 * cplx(0, 1) *
                               (std::sin(lb) - lb * std::cos(lb)) / (lambda * lambda);
        CHECK(std::abs(got - exact) < 1e-12 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("product quadrature matches a panelwise Simpson reference") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = kPi / 24.0, x0 = -kPi / 2.0;
    std::vector<cplx> samples(25);
    for (auto& s : samples) s = cplx(u(rng), u(rng));
    for (int order = 0; order <= 4; ++order) {
        for (const cplx lambda : {cplx(0.0, 0.0), cplx(2.3, -0.7), cplx(-8.1, 1.4)}) {
            const cplx got = detail::oscillatory_integral(samples, x0, h, lambda, order);
            const cplx ref = testutil::oscillatory_reference(samples, x0, h, lambda, order);
            CHECK(std::abs(got - ref) < 1e-10 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("closed-form oracle for a constant potential") {
    const DelayConfig cfg(kPi / 2.0);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 512, {0.1, 0}, {0, 0}));
    const auto rep1 = kernels_to_char(kp, 1);
    const auto rep2 = kernels_to_char(kp, 2);
    for (int i = 0; i < 100; ++i) {
        const double x = -10.0 + 20.0 * i / 99.0;
        CHECK(std::abs(eval_char(rep1, cplx(x, 0)) - delta1_const_q(0.1, cplx(x, 0))) < 1e-10);
        CHECK(std::abs(eval_char(rep2, cplx(x, 0)) - cos_pi(cplx(x, 0))) < 1e-13);
    }
}

TEST_CASE("derivative evaluators are consistent with finite differences") {
    const DelayConfig cfg(1.8);
    std::mt19937 rng(5);
    const auto pp = testutil::random_pair(rng, cfg, 64, 0.5);
    const auto rep = kernels_to_char(potentials_to_kernels(pp), 1);
    const double h = 1e-5;
    for (const cplx z : {cplx(0.4, 0.2), cplx(-3.3, -1.0), cplx(7.9, 0.0)}) {
        for (int order = 1; order <= 4; ++order) {
            const cplx fd = (eval_char_derivative(rep, z + h, order - 1) -
                             eval_char_derivative(rep, z - h, order - 1)) /
                            (2.0 * h);
            const cplx an = eval_char_derivative(rep, z, order);
            CHECK(std::abs(fd - an) < 1e-6 * (1.0 + std::abs(an)));
        }
    }
    CHECK_THROWS_AS(eval_char_derivative(rep, cplx(0, 0), 5), std::invalid_argument);
    CHECK_THROWS_AS(eval_char(rep, cplx(0.0, 60.0)), std::domain_error);
}

TEST_CASE("free eigenvalues sit exactly on the lattice") {
    const DelayConfig cfg(kPi / 2.0);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 8, {0, 0}, {0, 0}));
    const auto s1 = find_eigenvalues(kernels_to_char(kp, 1), 16);
    const auto s2 = find_eigenvalues(kernels_to_char(kp, 2), 16);
    for (int n = -16; n <= 16; ++n) {
        CHECK(std::abs(s1.value(n) - cplx(n, 0)) < 1e-12);
        CHECK(std::abs(s2.value(n) - cplx(n - 0.5, 0)) < 1e-12);
    }
}

TEST_CASE("constant-potential eigenvalues match the bisection oracle") {
    const DelayConfig cfg(kPi / 2.0);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 512, {0.1, 0}, {0, 0}));
    const auto s1 = find_eigenvalues(kernels_to_char(kp, 1), 8);
    for (int n = -8; n <= 8; ++n) {
        const double root = testutil::bisect(
            [](double x) { return delta1_const_q(0.1, cplx(x, 0)).real(); },
            n - 0.49, n + 0.49);
        CHECK(std::abs(s1.value(n) - cplx(root, 0)) < 1e-9);
    }
}

TEST_CASE("eigenvalues of a random potential stay near the lattice") {
    const DelayConfig cfg(kPi / 2.0);
    std::mt19937 rng(23);
    const auto pp = testutil::random_pair(rng, cfg, 64, 0.25);
    const auto kp = potentials_to_kernels(pp);
    for (int j = 1; j <= 2; ++j) {
        const auto rep = kernels_to_char(kp, j);
        const auto s = find_eigenvalues(rep, 12);
        CHECK(s.values.size() == 25);
        for (int n = -12; n <= 12; ++n) {
            CHECK(std::abs(s.value(n) - s.lattice(n)) < 0.49);
            CHECK(std::abs(eval_char(rep, s.value(n))) < 1e-9);
        }
        // bitwise repeatability
        const auto again = find_eigenvalues(rep, 12);
        for (std::size_t i = 0; i < s.values.size(); ++i)
            CHECK(s.values[i] == again.values[i]);
    }
}

TEST_CASE("contour sums count lattice zeros") {
    const DelayConfig cfg(kPi / 2.0);
    const auto kp = potentials_to_kernels(testutil::constant_pair(cfg, 8, {0, 0}, {0, 0}));
    const auto rep = kernels_to_char(kp, 1);
    const auto one = detail::contour_sums(rep, cplx(2.0, 0.0), 0.4, RootOptions{});
    CHECK(one.count == 1);
    CHECK(std::abs(one.s1 - cplx(2.0, 0.0)) < 1e-8);
    const auto three = detail::contour_sums(rep, cplx(0.0, 0.0), 1.2, RootOptions{});
    CHECK(three.count == 3);
    CHECK(std::abs(three.s1) < 1e-8);
    CHECK(std::abs(three.s2 - cplx(2.0, 0.0)) < 1e-7);
}

TEST_CASE("general characteristic functions reduce to the symmetric pair") {
    const DelayConfig cfg(1.7);
    std::mt19937 rng(29);
    const auto pp = testutil::random_pair(rng, cfg, 32, 0.6);
    const std::size_t M = pp.M();
    std::vector<cplx> q22(M + 1), q21 = pp.p;
    for (std::size_t i = 0; i <= M; ++i) q22[i] = -pp.q[i];
    const GeneralPotentialMatrix gm(cfg, pp.q, pp.p, q21, q22);
    const auto kp = potentials_to_kernels(pp);
    for (int j = 1; j <= 2; ++j) {
        const auto direct = kernels_to_char(kp, j);
        const auto general = general_char_functions(gm, 1, j);
        CHECK(general.v_cos == cplx(0.0, 0.0));
        CHECK(general.v_sin == cplx(0.0, 0.0));
        CHECK(general.spectrum_label == direct.spectrum_label);
        for (const cplx z : {cplx(0.3, 0.1), cplx(-4.2, -0.8), cplx(6.6, 0.0)})
            CHECK(std::abs(eval_char(general, z) - eval_char(direct, z)) <
                  1e-12 * (1.0 + std::abs(eval_char(direct, z))));
    }
}

TEST_CASE("general characteristic function with a pure trace potential") {
    // q11 = c, all other entries zero: the kernel is the constant -c/4 and
    // the mean term is (c b / 2) cos(b lambda), with b = pi - a
    const DelayConfig cfg(kPi / 2.0);
    const double c = 0.4;
    const std::size_t M = 256;
    std::vector<cplx> q11(M + 1, cplx(c, 0.0)), zero(M + 1, cplx(0.0, 0.0));
    const GeneralPotentialMatrix gm(cfg, q11, zero, zero, zero);
    const auto rep = general_char_functions(gm, 1, 1);
    const double b = cfg.b();
    for (double x = -6.0; x <= 6.0; x += 0.7) {
        const cplx lambda(x, 0.0);
        cplx sinc = std::abs(x) < 1e-12 ? cplx(b, 0.0) : std::sin(lambda * b) / lambda;
        const cplx expect = -sin_pi(lambda) + 0.5 * c * b * std::cos(lambda * b) -
                            0.5 * c * sinc;
        CHECK(std::abs(eval_char(rep, lambda) - expect) < 1e-10);
    }
}
