#include "photonstat/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "photonstat/errors.hpp"

namespace photonstat {

namespace {

// Factor that brings `total` back to one: 1 within the normalization tolerance,
// throws when the drift is beyond the renormalization limit.
long double renormalization_factor(long double total, const char* what) {
    const long double drift = std::abs(total - 1.0L);
    if (drift <= kNormTolerance) return 1.0L;
    if (!(drift <= kRenormLimit))
        throw domain_error(std::string(what) + ": total probability " + std::to_string(static_cast<double>(total)) +
                           " is not normalizable");
    return 1.0L / total;
}

}  // namespace

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probabilities, double discarded_tail)
    : probs_(std::move(probabilities)), discarded_tail_(discarded_tail) {
    if (probs_.empty()) throw domain_error("PhotonNumberDistribution: empty probability vector");
    if (!(discarded_tail_ >= 0.0)) throw domain_error("PhotonNumberDistribution: negative discarded tail");
    CompensatedSum total;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw domain_error("PhotonNumberDistribution: probabilities must be finite and non-negative");
        total.add(p);
    }
    const long double scale = renormalization_factor(total.value(), "PhotonNumberDistribution");
    if (scale == 1.0L) return;
    for (double& p : probs_) p = static_cast<double>(p * scale);
}

PhotonNumberDistribution PhotonNumberDistribution::vacuum(std::size_t n_cut) {
    std::vector<double> p(n_cut + 1, 0.0);
    p[0] = 1.0;
    return PhotonNumberDistribution(std::move(p));
}

PureFockState::PureFockState(std::span<const std::complex<double>> amplitudes, double discarded_tail)
    : discarded_tail_(discarded_tail) {
    magnitudes_.reserve(amplitudes.size());
    phases_.reserve(amplitudes.size());
    for (const auto& c : amplitudes) {
        const double mag = std::abs(c);
        magnitudes_.push_back(mag);
        phases_.push_back(mag == 0.0 ? 0.0 : std::arg(c));
    }
    normalize();
}

PureFockState PureFockState::from_polar(std::vector<double> magnitudes, std::vector<double> phases,
                                        double discarded_tail) {
    if (magnitudes.size() != phases.size()) throw domain_error("PureFockState: magnitude/phase length mismatch");
    for (double r : magnitudes)
        if (!(r >= 0.0)) throw domain_error("PureFockState: magnitudes must be non-negative");
    PureFockState s;
    s.magnitudes_ = std::move(magnitudes);
    s.phases_ = std::move(phases);
    s.discarded_tail_ = discarded_tail;
    s.normalize();
    return s;
}

void PureFockState::normalize() {
    if (magnitudes_.empty()) throw domain_error("PureFockState: empty amplitude vector");
    if (!(discarded_tail_ >= 0.0)) throw domain_error("PureFockState: negative discarded tail");
    CompensatedSum total;
    for (std::size_t n = 0; n < magnitudes_.size(); ++n) {
        if (!std::isfinite(magnitudes_[n]) || !std::isfinite(phases_[n]))
            throw domain_error("PureFockState: amplitudes must be finite");
        total.add(magnitudes_[n] * magnitudes_[n]);  // same rounding as dephase
    }
    const long double factor = renormalization_factor(total.value(), "PureFockState");
    if (factor == 1.0L) return;
    const long double scale = std::sqrt(factor);
    for (double& r : magnitudes_) r = static_cast<double>(r * scale);
}

std::vector<std::complex<double>> PureFockState::amplitudes() const {
    std::vector<std::complex<double>> out;
    out.reserve(size());
    for (std::size_t n = 0; n < size(); ++n) out.push_back(amplitude(n));
    return out;
}

PhotonNumberDistribution dephase(const PureFockState& state) {
    std::vector<double> p;
    p.reserve(state.size());
    for (double r : state.magnitudes()) p.push_back(r * r);
    return PhotonNumberDistribution(std::move(p), state.discarded_tail());
}

double mean_photon_number(const PhotonNumberDistribution& dist) {
    CompensatedSum acc;
    const auto p = dist.probabilities();
    for (std::size_t n = 1; n < p.size(); ++n) acc.add(static_cast<long double>(n) * p[n]);
    return static_cast<double>(acc.value());
}

double tail_mass(const PhotonNumberDistribution& dist, std::size_t n_max) {
    CompensatedSum acc;
    const auto p = dist.probabilities();
    // Sum from the far end so the smallest terms go in first.
    for (std::size_t n = p.size(); n-- > n_max + 1;) acc.add(p[n]);
    return static_cast<double>(acc.value());
}

double tail_mass_with_discarded(const PhotonNumberDistribution& dist, std::size_t n_max) {
    const double tail = tail_mass(dist, n_max);
    return dist.cutoff() >= n_max ? tail + dist.discarded_tail() : tail;
}

long double log_falling_factorial(long long n, long long m) {
    if (n < 0 || m < 0) throw domain_error("falling_factorial: arguments must be non-negative");
    if (m > n) return -std::numeric_limits<long double>::infinity();
    return std::lgamma(static_cast<long double>(n) + 1.0L) - std::lgamma(static_cast<long double>(n - m) + 1.0L);
}

long double falling_factorial_ld(long long n, long long m, long long product_limit) {
    if (n < 0 || m < 0) throw domain_error("falling_factorial: arguments must be non-negative");
    if (m > n) return 0.0L;
    if (m <= product_limit) {
        long double prod = 1.0L;
        for (long long k = 0; k < m; ++k) prod *= static_cast<long double>(n - k);
        return prod;
    }
    return std::exp(log_falling_factorial(n, m));
}

double falling_factorial(long long n, long long m, long long product_limit) {
    return static_cast<double>(falling_factorial_ld(n, m, product_limit));
}

}  // namespace photonstat
