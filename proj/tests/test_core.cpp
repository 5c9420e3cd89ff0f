#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracdelay/core.hpp"
#include "test_util.hpp"

using namespace diracdelay;

TEST_CASE("reduced trig matches the naive form at small arguments") {
    for (double re = -2.0; re <= 2.0; re += 0.37) {
        for (double im = -1.0; im <= 1.0; im += 0.5) {
            const cplx z(re, im);
            CHECK(std::abs(sin_pi(z) - std::sin(kPi * z)) <= 1e-12 * (1.0 + std::abs(std::sin(kPi * z))));
            CHECK(std::abs(cos_pi(z) - std::cos(kPi * z)) <= 1e-12 * (1.0 + std::abs(std::cos(kPi * z))));
        }
    }
}

TEST_CASE("reduced trig stays exact at large lattice points") {
    CHECK(sin_pi(cplx(123456789.0, 0.0)) == cplx(0.0, 0.0));
    CHECK(std::abs(cos_pi(cplx(123456788.5, 0.0))) < 1e-15);
    // plain evaluation would be off by ~1e-8 here
    CHECK(std::abs(sin_pi(cplx(123456789.25, 0.0)).real() + std::sqrt(0.5)) < 1e-14);
}

TEST_CASE("trig derivative cycle") {
    const cplx z(0.37, 0.21);
    CHECK(std::abs(sin_pi_derivative(z, 0) - sin_pi(z)) == 0.0);
    CHECK(std::abs(sin_pi_derivative(z, 4) - kPi * kPi * kPi * kPi * sin_pi(z)) < 1e-12);
    CHECK(std::abs(cos_pi_derivative(z, 1) + kPi * sin_pi(z)) < 1e-12);

    const double h = 1e-6;
    const cplx fd = (sin_pi(z + h) - sin_pi(z - h)) / (2.0 * h);
    CHECK(std::abs(fd - sin_pi_derivative(z, 1)) < 1e-7);
}

TEST_CASE("delay configuration bounds") {
    CHECK_NOTHROW(DelayConfig(kPi / 2.0));
    CHECK_NOTHROW(DelayConfig(3.0));
    CHECK_THROWS_AS(DelayConfig(1.0), std::invalid_argument);
    CHECK_THROWS_AS(DelayConfig{kPi}, std::invalid_argument);
    CHECK(DelayConfig(kPi / 2.0).b() == doctest::Approx(kPi / 2.0));
}

TEST_CASE("potential pair validation") {
    const DelayConfig cfg(kPi / 2.0);
    std::vector<cplx> ok(5, cplx(1.0, 0.0));
    CHECK_NOTHROW(PotentialPair(cfg, ok, ok));
    CHECK_THROWS_AS(PotentialPair(cfg, std::vector<cplx>(4), std::vector<cplx>(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialPair(cfg, std::vector<cplx>(5), std::vector<cplx>(4)),
                    std::invalid_argument);
    std::vector<cplx> bad = ok;
    bad[2] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(PotentialPair(cfg, bad, ok), std::invalid_argument);
}

TEST_CASE("kernel grid meets the potential grid under the reflections") {
    const DelayConfig cfg(1.9);
    const std::size_t M = 8;
    const PotentialPair pp = testutil::constant_pair(cfg, M, cplx(0, 0), cplx(0, 0));
    const KernelPair kp(cfg, std::vector<cplx>(2 * M + 1), std::vector<cplx>(2 * M + 1));
    for (std::size_t k = 0; k <= 2 * M; k += 2) {
        const double tminus = 0.5 * (kPi + cfg.a - kp.node(k));
        const double tplus = 0.5 * (kPi + cfg.a + kp.node(k));
        CHECK(std::abs(tminus - pp.node(M - k / 2)) < 1e-13);
        CHECK(std::abs(tplus - pp.node(k / 2)) < 1e-13);
    }
    // odd nodes land halfway between potential nodes
    const double tm1 = 0.5 * (kPi + cfg.a - kp.node(1));
    CHECK(std::abs(tm1 - 0.5 * (pp.node(M) + pp.node(M - 1))) < 1e-13);
}

TEST_CASE("spectrum lattice and indexing") {
    std::vector<cplx> v(7);
    for (int n = -3; n <= 3; ++n) v[n + 3] = cplx(n, 0.1);
    const Spectrum s(2, 3, v);
    CHECK(s.value(-3) == cplx(-3, 0.1));
    CHECK(s.lattice(0) == -0.5);
    CHECK(s.lattice(2) == 1.5);
    CHECK(Spectrum::lattice_point(1, -4) == -4.0);
    CHECK_THROWS_AS(Spectrum(3, 3, v), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum(1, 2, v), std::invalid_argument);
}

TEST_CASE("trapezoid norm oracles") {
    const std::size_t n = 4001;
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<cplx> constant(n, cplx(0.0, 2.0));
    CHECK(l2_norm_trapezoid(constant, h) == doctest::Approx(2.0).epsilon(1e-12));

    std::vector<cplx> linear(n);
    for (std::size_t i = 0; i < n; ++i) linear[i] = cplx(i * h, 0.0);
    CHECK(l2_norm_trapezoid(linear, h) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("sequence distance and deviation norm") {
    std::vector<cplx> a = {{-1, 0}, {0, 0}, {1, 0}};
    std::vector<cplx> b = {{-1, 0}, {0.3, 0}, {1, 0.4}};
    const Spectrum sa(1, 1, a), sb(1, 1, b);
    CHECK(l2_sequence_distance(sa, sb) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spectrum_deviation_norm(sa) == 0.0);
    CHECK(spectrum_deviation_norm(sb) == doctest::Approx(0.5).epsilon(1e-14));

    const Spectrum sc(2, 1, a);
    CHECK_THROWS_AS(l2_sequence_distance(sa, sc), std::invalid_argument);
}

TEST_CASE("multiplicity grouping") {
    std::vector<cplx> v = {{1.0, 0.0}, {1.0 + 4e-9, 0.0}, {2.0, 0.0}};
    const auto g = group_multiplicities(v, 1e-8);
    REQUIRE(g.size() == 2);
    CHECK(g[0].multiplicity == 2);
    CHECK(std::abs(g[0].value - cplx(1.0 + 2e-9, 0.0)) < 1e-12);
    CHECK(g[1].multiplicity == 1);

    // regrouping the representatives is the identity
    std::vector<cplx> reps;
    for (const auto& x : g) reps.push_back(x.value);
    for (const auto& x : group_multiplicities(reps, 1e-8)) CHECK(x.multiplicity == 1);

    CHECK(group_multiplicities({}, 1e-8).empty());

    // a chain that drifts by more than tol overall still splits pairwise
    std::vector<cplx> chain = {{0.0, 0.0}, {6e-9, 0.0}, {1.2e-8, 0.0}};
    CHECK(group_multiplicities(chain, 1e-8).size() == 2);
}
