#pragma once

#include <cstddef>
#include <optional>

#include "photonstat/fock.hpp"

namespace photonstat {

/// G^(m) = <(a^dag)^m a^m> together with its normalization against a coherent state
/// of the same intensity, G^(m) / n_av^m. `ratio` is empty for the vacuum.
struct CoherenceResult {
    int order = 1;
    double value = 0.0;
    double n_av = 0.0;
    std::optional<double> ratio;
};

/// Sum over n of p_n n!/(n-m)!, accumulated in compensated extended precision. Throws for m < 1.
CoherenceResult coherence_gm(const PhotonNumberDistribution& dist, int order);

/// Same sum evaluated from the amplitudes, |c_n|^2 n!/(n-m)!.
CoherenceResult coherence_gm_pure(const PureFockState& state, int order);

/// Largest G^(2) in the N_max-photon space at mean n_av: n_av (N_max - 1).
double bound_g2(double n_av, long long n_max);

/// Largest G^(m): (N_max - 2)!/(N_max - m)! * bound_g2(n_av, N_max), for 2 <= m <= N_max.
double bound_gm(int order, double n_av, long long n_max);

/// G^(m) of the coin state over G^(m) of a coherent state with the same mean:
/// (N_max - 1)!/((N_max - m)! n_av^(m-1)). Exact, no large-N_max approximation.
double enhancement_coin(int order, double n_av, long long n_max);

/// (N_max / n_av)^(m-1): the vacuum / coherent-state mixture against a plain coherent state,
/// with the coherent component taken untruncated. The value for a truncated mixture is
/// coherence_gm(coin_coherent_mixture(...)) divided by n_av^m.
double enhancement_mixture(int order, double n_av, long long n_max);

/// Line-shape factor of the final state: integral of e^{i delta t - gamma_F |t|} over t,
/// i.e. 2 gamma_F / (gamma_F^2 + delta^2). Used unchanged for every order m.
double lorentzian_factor(double delta, double gamma_f);

struct TransitionParams {
    /// Coupling strength, dipole matrix elements and mode area folded into one constant.
    double kappa = 1.0;
    /// Linewidth of the excited state.
    double gamma_f = 1.0;
    /// Detuning of m photon energies from the transition.
    double delta = 0.0;
};

/// Lowest-order excitation probability kappa L(delta) G^(m) t. Not clamped to 1: the caller
/// has to stay in the perturbative regime.
double excitation_probability(const PhotonNumberDistribution& dist, int order, double t,
                              const TransitionParams& params);

}  // namespace photonstat
