#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "photonstat/coherence.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/states.hpp"

using namespace photonstat;
using doctest::Approx;

TEST_CASE("coherence_gm examples") {
    CHECK(coherence_gm(dephase(fock_state(5, 5)), 2).value == 20.0);
    CHECK(coherence_gm(coin_mixture(10.0, 500), 2).value == Approx(4990.0).epsilon(1e-15));

    const auto coh = coherence_gm(dephase(coherent_state(10.0, 200)), 2);
    CHECK(coh.value == Approx(100.0).epsilon(1e-10));
    REQUIRE(coh.ratio);
    CHECK(*coh.ratio == Approx(1.0).epsilon(1e-10));

    const auto vac = coherence_gm(PhotonNumberDistribution::vacuum(3), 2);
    CHECK(vac.value == 0.0);
    CHECK_FALSE(vac.ratio);

    CHECK_THROWS_AS(coherence_gm(coin_mixture(1.0, 4), 0), domain_error);
    CHECK_THROWS_AS(coherence_gm_pure(fock_state(1, 1), -1), domain_error);
}

TEST_CASE("coherence_gm_pure examples") {
    CHECK(coherence_gm_pure(coin_state(10.0, 500, std::numbers::pi / 3), 2).value == Approx(4990.0).epsilon(1e-15));
    for (int m = 1; m <= 5; ++m) CHECK(coherence_gm_pure(fock_state(0, 10), m).value == 0.0);

    // Fock-summation oracle at twice the cutoff; the squeezed-vacuum ratio is 3 + 1/n_av.
    const double r = 2.65;
    const auto lib = coherence_gm_pure(squeezed_vacuum(r, 0.0, 3500), 2);
    const auto ref = oracle::moments(oracle::squeezed_populations(r, 7000), 2);
    const double expected = static_cast<double>(ref.gm / (ref.mean * ref.mean));
    CHECK(expected == Approx(3.020167206147992).epsilon(1e-9));
    CHECK(*lib.ratio == Approx(expected).epsilon(1e-9));
    CHECK(*lib.ratio == Approx(3.020).epsilon(1e-3));
}

TEST_CASE("amplitude and population paths agree bit for bit") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> size(1, 101);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::complex<double>> c(size(rng));
        long double norm = 0.0L;
        for (auto& z : c) norm += std::norm(z = {u(rng), u(rng)});
        for (auto& z : c) z /= static_cast<double>(std::sqrt(norm));
        const PureFockState s(c);
        for (int m = 1; m <= 5; ++m) {
            const auto a = coherence_gm_pure(s, m);
            const auto b = coherence_gm(dephase(s), m);
            REQUIRE(a.value == b.value);
            REQUIRE(a.ratio == b.ratio);
        }
    }
}

TEST_CASE("coin phase invariance") {
    for (int m = 1; m <= 6; ++m) {
        const double ref = coherence_gm_pure(coin_state(10.0, 500, 0.0), m).value;
        for (double phi : {std::numbers::pi / 7, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2})
            CHECK(coherence_gm_pure(coin_state(10.0, 500, phi), m).value == ref);
    }
}

TEST_CASE("bounds") {
    CHECK(bound_g2(10.0, 500) == 4990.0);
    CHECK(bound_g2(0.0, 37) == 0.0);
    CHECK(bound_g2(1.0, 2) == 1.0);
    CHECK(bound_gm(2, 10.0, 500) == 4990.0);
    CHECK(bound_gm(3, 10.0, 500) == 2485020.0);
    CHECK(bound_gm(3, 2.0, 4) == 12.0);
    CHECK_THROWS_AS(bound_g2(11.0, 10), domain_error);
    CHECK_THROWS_AS(bound_g2(1.0, 1), domain_error);
    CHECK_THROWS_AS(bound_gm(5, 1.0, 4), domain_error);
    CHECK_THROWS_AS(bound_gm(1, 1.0, 4), domain_error);

    SUBCASE("coin mixtures saturate them") {
        for (long long n_max : {6LL, 17LL, 120LL, 500LL}) {
            for (int m = 2; m <= 6; ++m) {
                for (double frac : {0.01, 0.2, 0.5, 0.93}) {
                    const double n_av = frac * static_cast<double>(n_max);
                    const double g = coherence_gm(coin_mixture(n_av, n_max), m).value;
                    REQUIRE(g == Approx(bound_gm(m, n_av, n_max)).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("random distributions respect them") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 300; ++trial) {
            const PhotonNumberDistribution d(oracle::random_distribution(rng, 30));
            for (int m = 2; m <= 5; ++m) {
                const auto g = coherence_gm(d, m);
                REQUIRE(g.value <= bound_gm(m, g.n_av, 30) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("known ratios") {
    for (double n_av : {0.1, 1.0, 10.0, 50.0}) {
        const auto th = build_state({StateKind::thermal, {{"n_av", n_av}}, ""}, 500);
        CHECK(std::abs(*coherence_gm(th.dist, 2).ratio - 2.0) < 1e-9);
        const auto coh = build_state({StateKind::coherent, {{"n_av", n_av}}, ""}, 500);
        CHECK(std::abs(*coherence_gm(coh.dist, 2).ratio - 1.0) < 1e-9);
        CHECK(std::abs(*coherence_gm(coh.dist, 3).ratio - 1.0) < 1e-9);
    }
    for (std::size_t n = 0; n < 40; ++n)
        CHECK(coherence_gm(dephase(fock_state(n, n)), 2).value == static_cast<double>(n * (n == 0 ? 0 : n - 1)));

    SUBCASE("squeezed vacuum: 3 + 1/n_av") {
        for (double r : {0.1, 0.4, 0.8, 1.3, 2.0, 2.65}) {
            const auto b = build_state({StateKind::squeezed_vacuum, {{"xi", r}}, ""}, 500);
            const auto ref = oracle::moments(oracle::squeezed_populations(r, 2 * b.dist.cutoff()), 2);
            const double oracle_ratio = static_cast<double>(ref.gm / (ref.mean * ref.mean));
            const double s2 = std::sinh(r) * std::sinh(r);
            CHECK(oracle_ratio == Approx(3.0 + 1.0 / s2).epsilon(1e-9));
            CHECK(*coherence_gm(b.dist, 2).ratio == Approx(3.0 + 1.0 / s2).epsilon(1e-6));
        }
    }
    SUBCASE("vacuum / coherent mixture scales as n_av N_max^(m-1)") {
        const auto d = coin_coherent_mixture(10.0, 500, 1200);
        CHECK(coherence_gm(d, 2).value == Approx(10.0 * 500.0).epsilon(1e-6));
        CHECK(coherence_gm(d, 3).value == Approx(10.0 * 500.0 * 500.0).epsilon(1e-6));
        CHECK(coherence_gm(d, 4).value == Approx(10.0 * std::pow(500.0, 3)).epsilon(1e-6));
    }
}

TEST_CASE("enhancement ratios") {
    CHECK(enhancement_coin(2, 10.0, 500) == Approx(49.9).epsilon(1e-15));
    CHECK(enhancement_coin(3, 10.0, 500) == Approx(2485.02).epsilon(1e-14));
    CHECK(enhancement_coin(2, 500.0, 500) == Approx(499.0 / 500.0).epsilon(1e-15));
    CHECK(enhancement_coin(2, 500.0, 500) < 1.0);
    CHECK(enhancement_mixture(2, 10.0, 500) == 50.0);
    CHECK(enhancement_mixture(2, 500.0, 500) == 1.0);
    CHECK(enhancement_mixture(4, 10.0, 500) == std::pow(50.0, 3));
    for (long long n_max : {2LL, 10LL, 500LL, 10000LL}) {
        const double n_av = 0.37 * static_cast<double>(n_max);
        CHECK(enhancement_mixture(2, n_av, n_max) / enhancement_coin(2, n_av, n_max) ==
              Approx(static_cast<double>(n_max) / static_cast<double>(n_max - 1)).epsilon(1e-13));
    }
    // numerator and denominator both overflow long double; the ratio itself is moderate
    const double big = enhancement_coin(1500, 99000.0, 100000);
    long double log_ratio = 0.0L;
    for (int k = 0; k < 1499; ++k) log_ratio += std::log((99999.0L - k) / 99000.0L);
    CHECK(std::isfinite(big));
    CHECK(big == Approx(static_cast<double>(std::exp(log_ratio))).epsilon(1e-9));
    CHECK_THROWS_AS(enhancement_coin(2, 0.0, 500), domain_error);
    CHECK_THROWS_AS(enhancement_mixture(2, 0.0, 500), domain_error);
    CHECK_THROWS_AS(enhancement_coin(1, 1.0, 500), domain_error);
}

TEST_CASE("line shape and excitation probability") {
    const double g = 0.7;
    CHECK(lorentzian_factor(0.0, g) == Approx(2.0 / g).epsilon(1e-15));
    CHECK(lorentzian_factor(g, g) == Approx(1.0 / g).epsilon(1e-15));
    for (double d : {0.1, 1.0, 3.3, 100.0}) CHECK(lorentzian_factor(d, g) == lorentzian_factor(-d, g));
    CHECK_THROWS_AS(lorentzian_factor(0.0, 0.0), domain_error);
    CHECK_THROWS_AS(lorentzian_factor(0.0, -1.0), domain_error);

    const TransitionParams params{2.5e-7, 0.7, 0.2};
    const auto coin = coin_mixture(10.0, 500);
    const auto coh = build_state({StateKind::coherent, {{"n_av", 10.0}}, ""}, 500).dist;
    CHECK(excitation_probability(coin, 2, 0.0, params) == 0.0);
    CHECK(excitation_probability(coin, 2, 2.0, params) == 2.0 * excitation_probability(coin, 2, 1.0, params));
    CHECK(excitation_probability(coin, 2, 3.0, params) / excitation_probability(coh, 2, 3.0, params) ==
          Approx(49.9).epsilon(1e-9));
    CHECK_THROWS_AS(excitation_probability(coin, 2, -1.0, params), domain_error);
}
