#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "photonstat/coherence.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/states.hpp"

using namespace photonstat;
using doctest::Approx;

namespace {

double total(const PhotonNumberDistribution& d) {
    long double s = 0.0L;
    for (double p : d.probabilities()) s += p;
    return static_cast<double>(s);
}

void check_valid(const PhotonNumberDistribution& d) {
    for (double p : d.probabilities()) REQUIRE(p >= 0.0);
    REQUIRE(std::abs(total(d) - 1.0) < 1e-12);
}

// exp((conj(xi) a^2 - xi a^dag^2) / 2) |0> on a dim-dimensional truncation.
Eigen::VectorXcd squeezed_by_expm(double r, double phase, int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const std::complex<double> xi = std::polar(r, phase);
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd gen = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
    return gen.exp().col(0);
}

}  // namespace

TEST_CASE("coherent state") {
    CHECK(dephase(coherent_state(0.0, 0))[0] == 1.0);

    const auto one = dephase(coherent_state(1.0, 60));
    CHECK(one[0] == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(one[3] == Approx(std::exp(-1.0) / 6.0).epsilon(1e-14));

    const auto ten = coherent_state(10.0, 200);
    CHECK(std::abs(mean_photon_number(dephase(ten)) - 10.0) < 1e-9);
    for (std::size_t n = 0; n < ten.size(); ++n) {
        CHECK(std::imag(ten.amplitude(n)) == 0.0);
        CHECK(std::real(ten.amplitude(n)) >= 0.0);
    }
    CHECK(ten.discarded_tail() < 1e-12);

    CHECK_THROWS_AS(coherent_state(10.0, 20), cutoff_error);
    CHECK_THROWS_AS(coherent_state(-1.0, 20), domain_error);
}

TEST_CASE("thermal state") {
    check_valid(thermal_state(0.0, 0));
    CHECK(thermal_state(0.0, 5)[0] == 1.0);

    const auto t1 = thermal_state(1.0, 80);
    for (std::size_t n = 0; n < 30; ++n) CHECK(t1[n] == Approx(std::ldexp(1.0, -static_cast<int>(n) - 1)).epsilon(1e-14));

    CHECK_THROWS_AS(thermal_state(10.0, 100), cutoff_error);
    const double q = 10.0 / 11.0;
    CHECK(geometric_tail(10.0, 500) == Approx(std::pow(q, 501)).epsilon(1e-12));
}

TEST_CASE("squeezed vacuum") {
    CHECK(dephase(squeezed_vacuum(0.0, 0.0, 4))[0] == 1.0);

    SUBCASE("odd levels are empty") {
        for (double r : {0.1, 0.7, 1.5, 2.65}) {
            const auto d = dephase(squeezed_vacuum(r, 0.4, 4001));
            for (std::size_t n = 1; n < d.size(); n += 2) REQUIRE(d[n] == 0.0);
        }
    }
    SUBCASE("mean is sinh^2 r") {
        const double r = 2.65;
        const auto d = dephase(squeezed_vacuum(r, 0.0, 4000));
        CHECK(mean_photon_number(d) == Approx(49.6).epsilon(0.001));
        CHECK(std::abs(mean_photon_number(d) - std::sinh(r) * std::sinh(r)) < 1e-9 * 50);
    }
    SUBCASE("populations match the closed form") {
        const auto p = oracle::squeezed_populations(1.2, 600);
        const auto d = dephase(squeezed_vacuum(1.2, 0.0, 600));
        for (std::size_t n = 0; n <= 600; ++n) REQUIRE(d[n] == Approx(p[n]).epsilon(1e-12));
    }
    SUBCASE("amplitudes match the exponentiated generator") {
        // A 161-level truncation is exact to ~1e-13 on the first 41 levels for r <= 1.5.
        for (double r : {0.3, 0.9, 1.5}) {
            for (double phase : {0.0, 1.1}) {
                const auto v = squeezed_by_expm(r, phase, 161);
                const auto s = squeezed_vacuum(r, phase, 400);
                for (int n = 0; n <= 40; ++n) REQUIRE(std::abs(s.amplitude(n) - v(n)) < 1e-8);
            }
        }
    }
    CHECK_THROWS_AS(squeezed_vacuum(2.65, 0.0, 200), cutoff_error);
    CHECK_THROWS_AS(squeezed_vacuum(-0.1, 0.0, 200), domain_error);
}

TEST_CASE("coin state and coin mixture") {
    const auto s = coin_state(10.0, 500, 0.0);
    CHECK(std::norm(s.amplitude(0)) == Approx(0.98).epsilon(1e-15));
    CHECK(std::norm(s.amplitude(500)) == Approx(0.02).epsilon(1e-15));
    CHECK(mean_photon_number(dephase(s)) == Approx(10.0).epsilon(1e-15));

    const auto fock = dephase(coin_state(500.0, 500, 0.3));
    CHECK(fock[500] == 1.0);
    CHECK(fock[0] == 0.0);

    const auto mix = coin_mixture(10.0, 500);
    CHECK(mix[0] == 0.98);
    CHECK(mix[500] == 0.02);
    CHECK(coin_mixture(0.0, 500)[0] == 1.0);

    SUBCASE("phase never reaches the populations") {
        const auto ref = dephase(coin_state(7.3, 120, 0.0));
        for (double phi : {std::numbers::pi / 7, std::numbers::pi / 2, std::numbers::pi, 4.0, -2.5}) {
            const auto d = dephase(coin_state(7.3, 120, phi));
            CHECK(d == ref);
            for (std::size_t n = 0; n < d.size(); ++n) CHECK(d[n] == Approx(coin_mixture(7.3, 120)[n]).epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(coin_state(501.0, 500, 0.0), domain_error);
    CHECK_THROWS_AS(coin_mixture(11.0, 10), domain_error);
    CHECK_THROWS_AS(coin_mixture(0.5, 0), domain_error);
}

TEST_CASE("coin / coherent mixture") {
    const auto d = coin_coherent_mixture(10.0, 500, 1000);
    check_valid(d);
    // 0.98 on vacuum plus 0.02 Poisson(500), whose own vacuum weight is e^-500.
    CHECK(d[0] == Approx(0.98).epsilon(1e-15));
    CHECK(d[500] == Approx(0.02 * std::exp(-500.0 + 500.0 * std::log(500.0) - std::lgamma(501.0))).epsilon(1e-10));
    CHECK(std::abs(mean_photon_number(d) - 10.0) < 1e-9);
    CHECK(dephase(fock_state(0, 0)).size() == 1);
    CHECK(coin_coherent_mixture(0.0, 500, 1000)[0] == 1.0);
    CHECK_THROWS_AS(coin_coherent_mixture(10.0, 500, 900), cutoff_error);
}

TEST_CASE("fock state") {
    const auto d = dephase(fock_state(5, 10));
    CHECK(mean_photon_number(d) == 5.0);
    CHECK(coherence_gm(d, 2).value == 20.0);
    CHECK(dephase(fock_state(0, 0))[0] == 1.0);
    CHECK_THROWS_AS(fock_state(11, 10), domain_error);
}

TEST_CASE("state specs") {
    CHECK(parse_state_kind("coin_coherent_mixture") == StateKind::coin_coherent_mixture);
    CHECK(!parse_state_kind("cat"));
    for (auto k : {StateKind::coherent, StateKind::thermal, StateKind::squeezed_vacuum, StateKind::fock,
                   StateKind::coin, StateKind::coin_mixture, StateKind::coin_coherent_mixture})
        CHECK(parse_state_kind(to_string(k)) == k);

    CHECK_THROWS_AS(validate(StateSpec{StateKind::thermal, {}, ""}), domain_error);
    CHECK_THROWS_AS(validate(StateSpec{StateKind::thermal, {{"n_av", 1.0}, {"xi", 1.0}}, ""}), domain_error);
    CHECK_THROWS_AS(validate(StateSpec{StateKind::thermal, {{"n_av", -1.0}}, ""}), domain_error);
    CHECK_THROWS_AS(validate(StateSpec{StateKind::fock, {{"n", 1.5}}, ""}), domain_error);
    CHECK_THROWS_AS(validate(StateSpec{StateKind::coin, {{"n_av", 1.0}, {"N_max", 0.0}}, ""}), domain_error);
    CHECK_NOTHROW(validate(StateSpec{StateKind::coin, {{"n_av", 1.0}, {"N_max", 4.0}, {"phase", -1.0}}, ""}));
    CHECK(StateSpec{StateKind::coin, {}, ""}.display_label() == "coin");
    CHECK(StateSpec{StateKind::coin, {}, "best"}.display_label() == "best");
}

TEST_CASE("build_state") {
    const auto th = build_state({StateKind::thermal, {{"n_av", 10.0}}, ""}, 500);
    check_valid(th.dist);
    CHECK(th.dist[3] == Approx(std::pow(10.0, 3) / std::pow(11.0, 4)).epsilon(1e-12));
    CHECK(th.dist.discarded_tail() < 1e-12);
    CHECK(th.in_space);

    const auto coin = build_state({StateKind::coin, {{"n_av", 10.0}, {"N_max", 500.0}}, ""}, 500);
    CHECK(coin.dist.cutoff() == 500);
    CHECK(coin.dist[500] == Approx(0.02).epsilon(1e-15));
    CHECK(coin.in_space);

    const auto ccm = build_state({StateKind::coin_coherent_mixture, {{"n_av", 10.0}}, ""}, 500);
    CHECK_FALSE(ccm.in_space);
    CHECK(ccm.tail_beyond_n_max > 1e-3);

    const auto fock = build_state({StateKind::fock, {{"n", 7.0}}, ""}, 5);
    CHECK_FALSE(fock.in_space);
    CHECK(fock.tail_beyond_n_max == 1.0);

    CHECK_THROWS_AS(build_state({StateKind::coin, {{"n_av", 10.0}}, ""}, 5), domain_error);

    SUBCASE("every zoo state hits its requested mean") {
        for (double n_av : {0.0, 0.1, 1.0, 7.5, 30.0}) {
            for (auto kind : {StateKind::coherent, StateKind::thermal, StateKind::coin, StateKind::coin_mixture,
                              StateKind::coin_coherent_mixture}) {
                const auto b = build_state({kind, {{"n_av", n_av}}, ""}, 200);
                check_valid(b.dist);
                CHECK(std::abs(mean_photon_number(b.dist) - n_av) < 1e-9);
            }
            const double r = std::asinh(std::sqrt(n_av));
            const auto sq = build_state({StateKind::squeezed_vacuum, {{"xi", r}}, ""}, 200);
            check_valid(sq.dist);
            CHECK(std::abs(mean_photon_number(sq.dist) - std::sinh(r) * std::sinh(r)) < 1e-9);
        }
    }
}

TEST_CASE("automatic cutoff") {
    const auto tail = [](std::size_t c) { return geometric_tail(2.0, c); };
    const auto cut = auto_cutoff(2.0, tail);
    CHECK(cut % 2 == 0);
    CHECK(tail(cut / 2) < 1e-12);
    CHECK(tail(cut / 4) >= 1e-12);
    CHECK(auto_cutoff(0.0, [](std::size_t) { return 0.0; }) == 40);
    CHECK_THROWS_AS(auto_cutoff(1.0, [](std::size_t) { return 1.0; }), cutoff_error);
}
