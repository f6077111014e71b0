#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "photonstat/fock.hpp"

namespace photonstat {

/// Largest probability a constructor may drop when truncating at N_cut.
inline constexpr double kTailTolerance = 1e-12;

// Single-mode field states.
//
// Every constructor that truncates an infinite distribution checks that the
// dropped tail is below `tail_tolerance`, throws cutoff_error otherwise, and
// renormalizes the kept part. The dropped mass is kept in discarded_tail().
// Amplitudes are real and non-negative wherever a global phase allows it.

/// |alpha> with |alpha|^2 = n_av, alpha real.
PureFockState coherent_state(double n_av, std::size_t n_cut, double tail_tolerance = kTailTolerance);

/// Bose-Einstein populations p_n = n_av^n / (1 + n_av)^(n+1).
PhotonNumberDistribution thermal_state(double n_av, std::size_t n_cut, double tail_tolerance = kTailTolerance);

/// Squeezed vacuum with squeezing r = xi_magnitude: only even Fock levels, mean sinh^2(r).
/// Built from the amplitude recurrence c_{2k+2} = -e^{i phase} tanh(r) sqrt((2k+1)/(2k+2)) c_{2k}.
PureFockState squeezed_vacuum(double xi_magnitude, double xi_phase, std::size_t n_cut,
                              double tail_tolerance = kTailTolerance);

/// (sqrt(N_max - n_av)|0> + e^{i phase} sqrt(n_av)|N_max>) / sqrt(N_max), stored with N_cut = N_max.
PureFockState coin_state(double n_av, std::size_t n_max, double phase);

/// Dephased coin state: weight 1 - n_av/N_max on |0>, n_av/N_max on |N_max>.
PhotonNumberDistribution coin_mixture(double n_av, std::size_t n_max);

/// Vacuum mixed with a coherent state of mean N_max, weights as in coin_mixture.
/// Requires n_cut >= N_max + 20 sqrt(N_max); the coherent part leaks past N_max.
PhotonNumberDistribution coin_coherent_mixture(double n_av, std::size_t n_max, std::size_t n_cut,
                                               double tail_tolerance = kTailTolerance);

PureFockState fock_state(std::size_t n, std::size_t n_cut);

// Probability beyond n_cut of the untruncated distributions.
double poisson_tail(double mean, std::size_t n_cut);
double geometric_tail(double n_av, std::size_t n_cut);
double squeezed_tail(double r, std::size_t n_cut);

/// ceil(n_av + 20 sqrt(n_av + 1)), doubled until tail(n_cut) < tail_tolerance, then doubled once more.
template <typename TailFn>
std::size_t auto_cutoff(double n_av, TailFn&& tail, double tail_tolerance = kTailTolerance);

enum class StateKind { coherent, thermal, squeezed_vacuum, fock, coin, coin_mixture, coin_coherent_mixture };

std::string_view to_string(StateKind kind);
std::optional<StateKind> parse_state_kind(std::string_view name);

/// Declarative description of a zoo state.
///
/// Parameters per kind (N_max defaults to the value passed to build_state):
///   coherent, thermal          n_av
///   squeezed_vacuum            xi [, phase]
///   fock                       n
///   coin                       n_av [, N_max] [, phase]
///   coin_mixture               n_av [, N_max]
///   coin_coherent_mixture      n_av [, N_max]
struct StateSpec {
    StateKind kind = StateKind::coherent;
    std::map<std::string, double> params;
    std::string label;

    /// label, or the kind name when label is empty.
    std::string display_label() const;
};

/// Throws domain_error when params are missing, unknown or out of range.
void validate(const StateSpec& spec);

struct BuiltState {
    PhotonNumberDistribution dist;
    /// Probability of more than N_max photons, including any mass cut off during construction.
    double tail_beyond_n_max = 0.0;
    /// tail_beyond_n_max < tail tolerance, i.e. the state lives in the N_max-photon space.
    bool in_space = true;
};

/// Builds the dephased state with an automatically chosen cutoff.
BuiltState build_state(const StateSpec& spec, std::size_t n_max, double tail_tolerance = kTailTolerance);

}  // namespace photonstat

#include "photonstat/detail/auto_cutoff.hpp"
