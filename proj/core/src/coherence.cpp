#include "photonstat/coherence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "photonstat/errors.hpp"

namespace photonstat {

namespace {

void require_order(int order) {
    if (order < 1) throw domain_error("coherence order must be >= 1, got " + std::to_string(order));
}

// Shared by the population and amplitude paths so both give identical bits.
CoherenceResult accumulate(std::span<const double> weight, int order, bool squared) {
    require_order(order);
    CompensatedSum gm;
    CompensatedSum mean;
    for (std::size_t n = 1; n < weight.size(); ++n) {
        const long double p = squared ? static_cast<long double>(weight[n] * weight[n]) : weight[n];
        if (p == 0.0L) continue;
        mean.add(p * static_cast<long double>(n));
        gm.add(p * falling_factorial_ld(static_cast<long long>(n), order));
    }
    CoherenceResult r;
    r.order = order;
    r.value = static_cast<double>(gm.value());
    r.n_av = static_cast<double>(mean.value());
    if (mean.value() > 0.0L)
        r.ratio = static_cast<double>(gm.value() / std::pow(mean.value(), static_cast<long double>(order)));
    return r;
}

void require_mean_in_space(double n_av, long long n_max, const char* what) {
    if (!(n_av >= 0.0) || !(n_av <= static_cast<double>(n_max)))
        throw domain_error(std::string(what) + ": need 0 <= n_av <= N_max, got n_av = " + std::to_string(n_av) +
                           ", N_max = " + std::to_string(n_max));
}

}  // namespace

CoherenceResult coherence_gm(const PhotonNumberDistribution& dist, int order) {
    return accumulate(dist.probabilities(), order, false);
}

CoherenceResult coherence_gm_pure(const PureFockState& state, int order) {
    return accumulate(state.magnitudes(), order, true);
}

double bound_g2(double n_av, long long n_max) {
    if (n_max < 2) throw domain_error("bound_g2: N_max must be >= 2");
    require_mean_in_space(n_av, n_max, "bound_g2");
    return n_av * static_cast<double>(n_max - 1);
}

double bound_gm(int order, double n_av, long long n_max) {
    if (order < 2) throw domain_error("bound_gm: order must be >= 2");
    if (order > n_max) throw domain_error("bound_gm: order exceeds N_max");
    const long double g2 = bound_g2(n_av, n_max);
    return static_cast<double>(falling_factorial_ld(n_max - 2, order - 2) * g2);
}

double enhancement_coin(int order, double n_av, long long n_max) {
    if (order < 2) throw domain_error("enhancement_coin: order must be >= 2");
    if (order > n_max) throw domain_error("enhancement_coin: order exceeds N_max");
    if (!(n_av > 0.0)) throw domain_error("enhancement_coin: n_av must be > 0");
    require_mean_in_space(n_av, n_max, "enhancement_coin");
    const long double num = falling_factorial_ld(n_max - 1, order - 1);
    const long double den = std::pow(static_cast<long double>(n_av), static_cast<long double>(order - 1));
    if (std::isfinite(num) && den > 0.0L && std::isfinite(den)) return static_cast<double>(num / den);
    return static_cast<double>(std::exp(log_falling_factorial(n_max - 1, order - 1) -
                                        (order - 1) * std::log(static_cast<long double>(n_av))));
}

double enhancement_mixture(int order, double n_av, long long n_max) {
    if (order < 2) throw domain_error("enhancement_mixture: order must be >= 2");
    if (!(n_av > 0.0) || !std::isfinite(n_av)) throw domain_error("enhancement_mixture: n_av must be > 0");
    if (n_max < 1) throw domain_error("enhancement_mixture: N_max must be >= 1");
    return std::pow(static_cast<double>(n_max) / n_av, order - 1);
}

double lorentzian_factor(double delta, double gamma_f) {
    if (!(gamma_f > 0.0) || !std::isfinite(gamma_f)) throw domain_error("lorentzian_factor: gamma_F must be > 0");
    return 2.0 * gamma_f / (gamma_f * gamma_f + delta * delta);
}

double excitation_probability(const PhotonNumberDistribution& dist, int order, double t,
                              const TransitionParams& params) {
    if (!(t >= 0.0)) throw domain_error("excitation_probability: t must be >= 0");
    if (!(params.kappa > 0.0)) throw domain_error("excitation_probability: kappa must be > 0");
    return params.kappa * lorentzian_factor(params.delta, params.gamma_f) * coherence_gm(dist, order).value * t;
}

}  // namespace photonstat
