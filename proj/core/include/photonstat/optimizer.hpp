#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "photonstat/fock.hpp"

namespace photonstat {

enum class OptimizationMethod { two_support_exact, random_search };

std::string_view to_string(OptimizationMethod method);

struct OptimizationResult {
    double optimal_value = 0.0;
    PhotonNumberDistribution distribution = PhotonNumberDistribution::vacuum();
    /// Photon numbers with non-zero weight, ascending.
    std::vector<std::size_t> support;
    OptimizationMethod method = OptimizationMethod::two_support_exact;
};

/// Maximizes sum_n p_n n!/(n-m)! over distributions on 0..N_max with mean n_av.
///
/// The feasible set is the probability simplex cut by one extra equality, so some
/// optimal vertex has at most two support points. All pairs i < n_av < j are
/// enumerated (plus the single point n_av when it is an integer). Ties, up to
/// 1e-12 relative, go to the pair (0, N_max), then to the lexicographically
/// smallest support.
OptimizationResult optimize_gm_exact(int order, double n_av, std::size_t n_max);

/// Best G^(m) among `trials` random feasible distributions: a flat-simplex draw whose
/// mean is then moved onto n_av by mixing with |0> or |N_max>. Deterministic in `seed`.
double random_search_lower_bound(int order, double n_av, std::size_t n_max, std::size_t trials,
                                 std::uint64_t seed);

struct BoundReport {
    double value = 0.0;         ///< G^(m) of the state
    double n_av = 0.0;          ///< measured mean of the state
    std::optional<double> bound;  ///< bound_gm at n_av; empty when n_av > N_max
    std::optional<double> slack;  ///< bound - value
    double tail_mass = 0.0;     ///< probability beyond N_max
    bool in_space = true;       ///< tail_mass < 1e-12
    bool violation = false;     ///< in space and slack < -1e-12 * bound
};

/// Checks a state against the N_max-photon bound at its own mean. A state whose
/// distribution reaches past N_max is reported out of space and never counts as a violation.
BoundReport verify_state_bound(const PhotonNumberDistribution& dist, int order, std::size_t n_max);

}  // namespace photonstat
