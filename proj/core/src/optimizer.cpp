#include "photonstat/optimizer.hpp"

#include <cmath>
#include <random>
#include <string>

#include "photonstat/coherence.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/states.hpp"

namespace photonstat {

namespace {

constexpr long double kTieTolerance = 1e-12L;

void require_feasible(int order, double n_av, std::size_t n_max, const char* what) {
    if (order < 1) throw domain_error(std::string(what) + ": order must be >= 1");
    if (static_cast<std::size_t>(order) > n_max) throw domain_error(std::string(what) + ": order exceeds N_max");
    if (!(n_av >= 0.0) || !(n_av <= static_cast<double>(n_max)))
        throw domain_error(std::string(what) + ": n_av = " + std::to_string(n_av) + " is infeasible for N_max = " +
                           std::to_string(n_max));
}

struct Vertex {
    std::size_t low = 0;
    std::size_t high = 0;     // == low for a single-point support
    long double weight_high = 0.0L;
    long double value = 0.0L;
};

bool ties(long double a, long double b) {
    return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string_view to_string(OptimizationMethod method) {
    switch (method) {
        case OptimizationMethod::two_support_exact: return "two_support_exact";
        case OptimizationMethod::random_search: return "random_search";
    }
    return "unknown";
}

OptimizationResult optimize_gm_exact(int order, double n_av, std::size_t n_max) {
    require_feasible(order, n_av, n_max, "optimize_gm_exact");

    std::vector<long double> f(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) f[n] = falling_factorial_ld(static_cast<long long>(n), order);

    std::optional<Vertex> best;
    // Candidates arrive in lexicographic (low, high) order, so an incumbent tie is only
    // displaced by the coin pair.
    const auto offer = [&](const Vertex& v) {
        if (!best) {
            best = v;
        } else if (ties(v.value, best->value)) {
            if (v.low == 0 && v.high == n_max) best = v;
        } else if (v.value > best->value) {
            best = v;
        }
    };

    const long double mean = n_av;
    const bool integral = n_av == std::floor(n_av);
    const auto k = static_cast<std::size_t>(std::floor(n_av));
    for (std::size_t i = 0; i <= k && static_cast<long double>(i) < mean; ++i) {
        for (std::size_t j = k + 1; j <= n_max; ++j) {
            const long double w = (mean - i) / static_cast<long double>(j - i);
            offer({i, j, w, (1.0L - w) * f[i] + w * f[j]});
        }
    }
    if (integral) offer({k, k, 1.0L, f[k]});

    std::vector<double> p(n_max + 1, 0.0);
    OptimizationResult out;
    if (best->low == best->high) {
        p[best->low] = 1.0;
        out.support = {best->low};
    } else {
        p[best->low] = static_cast<double>(1.0L - best->weight_high);
        p[best->high] = static_cast<double>(best->weight_high);
        out.support = {best->low, best->high};
    }
    out.optimal_value = static_cast<double>(best->value);
    out.distribution = PhotonNumberDistribution(std::move(p));
    out.method = OptimizationMethod::two_support_exact;
    return out;
}

double random_search_lower_bound(int order, double n_av, std::size_t n_max, std::size_t trials,
                                 std::uint64_t seed) {
    require_feasible(order, n_av, n_max, "random_search_lower_bound");
    if (trials < 1) throw domain_error("random_search_lower_bound: trials must be >= 1");

    std::vector<long double> f(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) f[n] = falling_factorial_ld(static_cast<long long>(n), order);

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> spacing(1.0);
    std::vector<long double> p(n_max + 1);
    const long double top = static_cast<long double>(n_max);
    long double best = -1.0L;
    for (std::size_t t = 0; t < trials; ++t) {
        long double total = 0.0L;
        for (auto& x : p) total += (x = spacing(rng));
        long double mean = 0.0L;
        for (std::size_t n = 0; n <= n_max; ++n) mean += n * (p[n] /= total);

        // Mix with |0> (mean too high) or |N_max> (too low) to land exactly on n_av.
        long double keep = 1.0L;
        std::size_t anchor = 0;
        if (mean > n_av) {
            keep = n_av / mean;
        } else if (mean < n_av) {
            keep = (top - n_av) / (top - mean);
            anchor = n_max;
        }
        long double g = (1.0L - keep) * f[anchor];
        for (std::size_t n = order; n <= n_max; ++n) g += keep * p[n] * f[n];
        best = std::max(best, g);
    }
    return static_cast<double>(best);
}

BoundReport verify_state_bound(const PhotonNumberDistribution& dist, int order, std::size_t n_max) {
    BoundReport r;
    const auto g = coherence_gm(dist, order);
    r.value = g.value;
    r.n_av = g.n_av;
    r.tail_mass = tail_mass_with_discarded(dist, n_max);
    r.in_space = r.tail_mass < kTailTolerance;
    if (r.n_av <= static_cast<double>(n_max)) {
        r.bound = bound_gm(order, r.n_av, static_cast<long long>(n_max));
        r.slack = *r.bound - r.value;
        r.violation = r.in_space && *r.slack < -1e-12 * *r.bound;
    } else {
        r.in_space = false;
    }
    return r;
}

}  // namespace photonstat
