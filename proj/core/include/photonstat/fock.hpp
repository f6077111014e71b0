#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace photonstat {

/// Absolute tolerance on sum(p_n) - 1 for a valid state.
inline constexpr double kNormTolerance = 1e-12;

/// Constructors keep drifts within kNormTolerance, renormalize drifts up to this size
/// and reject anything larger.
inline constexpr double kRenormLimit = 1e-9;

/// Photon-number populations p_0..p_{N_cut}: the Fock-basis diagonal of a density matrix.
///
/// Immutable. `discarded_tail()` is the probability that was cut off beyond N_cut
/// before renormalization (zero for states that live inside the cutoff).
class PhotonNumberDistribution {
public:
    explicit PhotonNumberDistribution(std::vector<double> probabilities, double discarded_tail = 0.0);

    static PhotonNumberDistribution vacuum(std::size_t n_cut = 0);

    std::size_t cutoff() const { return probs_.size() - 1; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t n) const { return probs_[n]; }
    std::span<const double> probabilities() const { return probs_; }
    double discarded_tail() const { return discarded_tail_; }

    friend bool operator==(const PhotonNumberDistribution&, const PhotonNumberDistribution&) = default;

private:
    std::vector<double> probs_;
    double discarded_tail_ = 0.0;
};

/// Pure single-mode state sum_n c_n |n>, n = 0..N_cut.
///
/// Amplitudes are held in polar form so that |c_n|^2 does not pick up rounding
/// from the phase; `amplitude(n)` rebuilds the complex value.
class PureFockState {
public:
    explicit PureFockState(std::span<const std::complex<double>> amplitudes, double discarded_tail = 0.0);

    /// magnitudes must be non-negative.
    static PureFockState from_polar(std::vector<double> magnitudes, std::vector<double> phases,
                                    double discarded_tail = 0.0);

    std::size_t cutoff() const { return magnitudes_.size() - 1; }
    std::size_t size() const { return magnitudes_.size(); }
    std::complex<double> amplitude(std::size_t n) const { return std::polar(magnitudes_[n], phases_[n]); }
    std::vector<std::complex<double>> amplitudes() const;
    std::span<const double> magnitudes() const { return magnitudes_; }
    std::span<const double> phases() const { return phases_; }
    double discarded_tail() const { return discarded_tail_; }

private:
    PureFockState() = default;
    void normalize();

    std::vector<double> magnitudes_;
    std::vector<double> phases_;
    double discarded_tail_ = 0.0;
};

/// Drops Fock-basis coherences: p_n = |c_n|^2.
PhotonNumberDistribution dephase(const PureFockState& state);

double mean_photon_number(const PhotonNumberDistribution& dist);

/// Probability of finding more than n_max photons.
double tail_mass(const PhotonNumberDistribution& dist, std::size_t n_max);

/// tail_mass plus the mass cut off at construction when that lies beyond n_max too
/// (cutoff() >= n_max).
double tail_mass_with_discarded(const PhotonNumberDistribution& dist, std::size_t n_max);

/// Number of factors above which falling_factorial switches from a running product to log-gamma.
inline constexpr long long kFallingFactorialProductLimit = 4096;

/// n!/(n-m)! = n(n-1)...(n-m+1); zero for m > n, one for m = 0.
/// Negative arguments throw domain_error. Overflows to +inf only when the true value exceeds DBL_MAX.
double falling_factorial(long long n, long long m, long long product_limit = kFallingFactorialProductLimit);

/// Extended-precision variant used by the accumulators.
long double falling_factorial_ld(long long n, long long m,
                                 long long product_limit = kFallingFactorialProductLimit);

/// log(n!/(n-m)!); -inf when m > n.
long double log_falling_factorial(long long n, long long m);

/// Neumaier-compensated running sum in long double.
class CompensatedSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

}  // namespace photonstat
