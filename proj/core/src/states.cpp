#include "photonstat/states.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "photonstat/errors.hpp"

namespace photonstat {

namespace {

void require_photon_number(double n_av, const char* what) {
    if (!(n_av >= 0.0) || !std::isfinite(n_av))
        throw domain_error(std::string(what) + ": n_av must be finite and >= 0");
}

void require_tail(double tail, std::size_t n_cut, double tolerance, const char* what) {
    if (!(tail < tolerance))
        throw cutoff_error(std::string(what) + ": cutoff " + std::to_string(n_cut) + " drops probability " +
                           std::to_string(tail) + " (tolerance " + std::to_string(tolerance) + ")");
}

long double poisson_log_pmf(long double log_mean, long double mean, std::size_t n) {
    const auto ln = static_cast<long double>(n);
    return -mean + ln * log_mean - std::lgamma(ln + 1.0L);
}

// Poisson(mean) truncated to 0..n_cut and renormalized over the kept levels.
std::vector<long double> truncated_poisson(double mean, std::size_t n_cut) {
    std::vector<long double> p(n_cut + 1, 0.0L);
    if (mean == 0.0) {
        p[0] = 1.0L;
        return p;
    }
    const long double lm = std::log(static_cast<long double>(mean));
    CompensatedSum kept;
    for (std::size_t n = 0; n <= n_cut; ++n) {
        p[n] = std::exp(poisson_log_pmf(lm, mean, n));
        kept.add(p[n]);
    }
    const long double total = kept.value();
    for (auto& x : p) x /= total;
    return p;
}

std::vector<double> to_double(const std::vector<long double>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

double poisson_tail(double mean, std::size_t n_cut) {
    require_photon_number(mean, "poisson_tail");
    if (mean == 0.0) return 0.0;
    const long double lm = std::log(static_cast<long double>(mean));
    CompensatedSum tail;
    for (std::size_t n = n_cut + 1;; ++n) {
        const long double term = std::exp(poisson_log_pmf(lm, mean, n));
        tail.add(term);
        // Past the mode the terms shrink faster than geometrically.
        if (static_cast<double>(n) > mean && (term == 0.0L || term < 1e-22L * tail.value())) break;
    }
    return static_cast<double>(tail.value());
}

double geometric_tail(double n_av, std::size_t n_cut) {
    require_photon_number(n_av, "geometric_tail");
    if (n_av == 0.0) return 0.0;
    const long double q = static_cast<long double>(n_av) / (1.0L + n_av);
    return static_cast<double>(std::pow(q, static_cast<long double>(n_cut) + 1.0L));
}

double squeezed_tail(double r, std::size_t n_cut) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw domain_error("squeezed_tail: r must be finite and >= 0");
    if (r == 0.0) return 0.0;
    const long double t2 = std::pow(std::tanh(static_cast<long double>(r)), 2);
    // populations p_{2k} = p_{2k-2} t^2 (2k-1)/(2k), p_0 = 1/cosh r
    long double p = 1.0L / std::cosh(static_cast<long double>(r));
    std::size_t k = 0;
    while (2 * k <= n_cut) {
        ++k;
        p *= t2 * static_cast<long double>(2 * k - 1) / static_cast<long double>(2 * k);
    }
    CompensatedSum tail;
    for (;; ++k) {
        tail.add(p);
        // Remaining mass is bounded by p t^2 / (1 - t^2).
        if (p == 0.0L || p * t2 / (1.0L - t2) < 1e-20L * tail.value()) break;
        p *= t2 * static_cast<long double>(2 * k + 1) / static_cast<long double>(2 * k + 2);
    }
    return static_cast<double>(tail.value());
}

PureFockState coherent_state(double n_av, std::size_t n_cut, double tail_tolerance) {
    require_photon_number(n_av, "coherent_state");
    const double tail = poisson_tail(n_av, n_cut);
    require_tail(tail, n_cut, tail_tolerance, "coherent_state");
    const auto p = truncated_poisson(n_av, n_cut);
    std::vector<double> mags(p.size());
    for (std::size_t n = 0; n < p.size(); ++n) mags[n] = static_cast<double>(std::sqrt(p[n]));
    return PureFockState::from_polar(std::move(mags), std::vector<double>(p.size(), 0.0), tail);
}

PhotonNumberDistribution thermal_state(double n_av, std::size_t n_cut, double tail_tolerance) {
    require_photon_number(n_av, "thermal_state");
    const double tail = geometric_tail(n_av, n_cut);
    require_tail(tail, n_cut, tail_tolerance, "thermal_state");
    std::vector<long double> p(n_cut + 1, 0.0L);
    const long double q = static_cast<long double>(n_av) / (1.0L + n_av);
    p[0] = 1.0L / (1.0L + n_av);
    for (std::size_t n = 1; n <= n_cut; ++n) p[n] = p[n - 1] * q;
    const long double kept = 1.0L - std::pow(q, static_cast<long double>(n_cut) + 1.0L);
    for (auto& x : p) x /= kept;
    return PhotonNumberDistribution(to_double(p), tail);
}

PureFockState squeezed_vacuum(double xi_magnitude, double xi_phase, std::size_t n_cut, double tail_tolerance) {
    if (!(xi_magnitude >= 0.0) || !std::isfinite(xi_magnitude))
        throw domain_error("squeezed_vacuum: |xi| must be finite and >= 0");
    if (!std::isfinite(xi_phase)) throw domain_error("squeezed_vacuum: phase must be finite");
    const double tail = squeezed_tail(xi_magnitude, n_cut);
    require_tail(tail, n_cut, tail_tolerance, "squeezed_vacuum");

    const long double t = std::tanh(static_cast<long double>(xi_magnitude));
    std::vector<long double> mag(n_cut + 1, 0.0L);
    std::vector<double> phase(n_cut + 1, 0.0);
    mag[0] = 1.0L / std::sqrt(std::cosh(static_cast<long double>(xi_magnitude)));
    // Each step multiplies by -e^{i xi_phase}, i.e. adds xi_phase + pi to the phase.
    const long double step_phase = static_cast<long double>(xi_phase) + std::numbers::pi_v<long double>;
    CompensatedSum kept;
    kept.add(mag[0] * mag[0]);
    for (std::size_t k = 0; 2 * k + 2 <= n_cut; ++k) {
        mag[2 * k + 2] = mag[2 * k] * t *
                         std::sqrt(static_cast<long double>(2 * k + 1) / static_cast<long double>(2 * k + 2));
        phase[2 * k + 2] = static_cast<double>(
            std::remainder(static_cast<long double>(k + 1) * step_phase, 2.0L * std::numbers::pi_v<long double>));
        kept.add(mag[2 * k + 2] * mag[2 * k + 2]);
    }
    const long double scale = 1.0L / std::sqrt(kept.value());
    std::vector<double> out(n_cut + 1);
    for (std::size_t n = 0; n <= n_cut; ++n) out[n] = static_cast<double>(mag[n] * scale);
    return PureFockState::from_polar(std::move(out), std::move(phase), tail);
}

namespace {

void require_coin_args(double n_av, std::size_t n_max, const char* what) {
    require_photon_number(n_av, what);
    if (n_max < 1) throw domain_error(std::string(what) + ": N_max must be >= 1");
    if (n_av > static_cast<double>(n_max))
        throw domain_error(std::string(what) + ": n_av " + std::to_string(n_av) + " exceeds N_max " +
                           std::to_string(n_max));
}

}  // namespace

PureFockState coin_state(double n_av, std::size_t n_max, double phase) {
    require_coin_args(n_av, n_max, "coin_state");
    if (!std::isfinite(phase)) throw domain_error("coin_state: phase must be finite");
    const double nm = static_cast<double>(n_max);
    std::vector<double> mags(n_max + 1, 0.0);
    std::vector<double> phases(n_max + 1, 0.0);
    mags[0] = std::sqrt((nm - n_av) / nm);
    mags[n_max] = std::sqrt(n_av / nm);
    phases[n_max] = phase;
    return PureFockState::from_polar(std::move(mags), std::move(phases));
}

PhotonNumberDistribution coin_mixture(double n_av, std::size_t n_max) {
    require_coin_args(n_av, n_max, "coin_mixture");
    const double nm = static_cast<double>(n_max);
    std::vector<double> p(n_max + 1, 0.0);
    p[0] = (nm - n_av) / nm;
    p[n_max] = n_av / nm;
    return PhotonNumberDistribution(std::move(p));
}

PhotonNumberDistribution coin_coherent_mixture(double n_av, std::size_t n_max, std::size_t n_cut,
                                               double tail_tolerance) {
    require_coin_args(n_av, n_max, "coin_coherent_mixture");
    const double nm = static_cast<double>(n_max);
    if (static_cast<double>(n_cut) < nm + 20.0 * std::sqrt(nm))
        throw cutoff_error("coin_coherent_mixture: cutoff " + std::to_string(n_cut) +
                           " is below N_max + 20 sqrt(N_max)");
    const double weight = n_av / nm;
    const double tail = weight * poisson_tail(nm, n_cut);
    require_tail(tail, n_cut, tail_tolerance, "coin_coherent_mixture");
    auto p = truncated_poisson(nm, n_cut);
    for (auto& x : p) x *= weight;
    p[0] += (nm - n_av) / nm;
    return PhotonNumberDistribution(to_double(p), tail);
}

PureFockState fock_state(std::size_t n, std::size_t n_cut) {
    if (n > n_cut)
        throw domain_error("fock_state: n = " + std::to_string(n) + " is above the cutoff " + std::to_string(n_cut));
    std::vector<double> mags(n_cut + 1, 0.0);
    mags[n] = 1.0;
    return PureFockState::from_polar(std::move(mags), std::vector<double>(n_cut + 1, 0.0));
}

// ---------------------------------------------------------------------------
// StateSpec

namespace {

constexpr std::array<std::pair<StateKind, std::string_view>, 7> kKindNames{{
    {StateKind::coherent, "coherent"},
    {StateKind::thermal, "thermal"},
    {StateKind::squeezed_vacuum, "squeezed_vacuum"},
    {StateKind::fock, "fock"},
    {StateKind::coin, "coin"},
    {StateKind::coin_mixture, "coin_mixture"},
    {StateKind::coin_coherent_mixture, "coin_coherent_mixture"},
}};

struct ParamSchema {
    std::set<std::string> required;
    std::set<std::string> optional;
};

ParamSchema schema_for(StateKind kind) {
    switch (kind) {
        case StateKind::coherent:
        case StateKind::thermal: return {{"n_av"}, {}};
        case StateKind::squeezed_vacuum: return {{"xi"}, {"phase"}};
        case StateKind::fock: return {{"n"}, {}};
        case StateKind::coin: return {{"n_av"}, {"N_max", "phase"}};
        case StateKind::coin_mixture:
        case StateKind::coin_coherent_mixture: return {{"n_av"}, {"N_max"}};
    }
    throw domain_error("unknown state kind");
}

bool is_count(double x) { return std::isfinite(x) && x >= 0.0 && x == std::floor(x) && x < 9.0e15; }

double param_or(const StateSpec& spec, const std::string& name, double fallback) {
    const auto it = spec.params.find(name);
    return it == spec.params.end() ? fallback : it->second;
}

}  // namespace

std::string_view to_string(StateKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<StateKind> parse_state_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

std::string StateSpec::display_label() const { return label.empty() ? std::string(to_string(kind)) : label; }

void validate(const StateSpec& spec) {
    const auto schema = schema_for(spec.kind);
    const std::string kind(to_string(spec.kind));
    for (const auto& name : schema.required)
        if (!spec.params.contains(name)) throw domain_error(kind + " state needs parameter '" + name + "'");
    for (const auto& [name, value] : spec.params) {
        if (!schema.required.contains(name) && !schema.optional.contains(name))
            throw domain_error(kind + " state does not take parameter '" + name + "'");
        if (!std::isfinite(value)) throw domain_error(kind + ": parameter '" + name + "' must be finite");
        if (name == "phase") continue;
        if (value < 0.0) throw domain_error(kind + ": parameter '" + name + "' must be >= 0");
        if ((name == "n" || name == "N_max") && !is_count(value))
            throw domain_error(kind + ": parameter '" + name + "' must be a non-negative integer");
        if (name == "N_max" && value < 1.0) throw domain_error(kind + ": N_max must be >= 1");
    }
}

BuiltState build_state(const StateSpec& spec, std::size_t n_max, double tail_tolerance) {
    validate(spec);
    if (!(tail_tolerance > 0.0)) throw domain_error("build_state: tail tolerance must be > 0");
    const auto coin_n_max = [&] {
        const double v = param_or(spec, "N_max", static_cast<double>(n_max));
        if (!is_count(v) || v < 1.0) throw domain_error("build_state: N_max must be an integer >= 1");
        return static_cast<std::size_t>(v);
    };

    std::optional<PhotonNumberDistribution> dist;
    switch (spec.kind) {
        case StateKind::coherent: {
            const double n_av = spec.params.at("n_av");
            const auto cut = auto_cutoff(n_av, [&](std::size_t c) { return poisson_tail(n_av, c); }, tail_tolerance);
            dist = dephase(coherent_state(n_av, cut, tail_tolerance));
            break;
        }
        case StateKind::thermal: {
            const double n_av = spec.params.at("n_av");
            const auto cut =
                auto_cutoff(n_av, [&](std::size_t c) { return geometric_tail(n_av, c); }, tail_tolerance);
            dist = thermal_state(n_av, cut, tail_tolerance);
            break;
        }
        case StateKind::squeezed_vacuum: {
            const double r = spec.params.at("xi");
            const double sinh_r = std::sinh(r);
            const auto cut = auto_cutoff(
                sinh_r * sinh_r, [&](std::size_t c) { return squeezed_tail(r, c); }, tail_tolerance);
            dist = dephase(squeezed_vacuum(r, param_or(spec, "phase", 0.0), cut, tail_tolerance));
            break;
        }
        case StateKind::fock: {
            const auto n = static_cast<std::size_t>(spec.params.at("n"));
            dist = dephase(fock_state(n, n));
            break;
        }
        case StateKind::coin:
            dist = dephase(coin_state(spec.params.at("n_av"), coin_n_max(), param_or(spec, "phase", 0.0)));
            break;
        case StateKind::coin_mixture: dist = coin_mixture(spec.params.at("n_av"), coin_n_max()); break;
        case StateKind::coin_coherent_mixture: {
            const auto nm = coin_n_max();
            const double n_av = spec.params.at("n_av");
            const auto cut = auto_cutoff(
                static_cast<double>(nm), [&](std::size_t c) { return (n_av / nm) * poisson_tail(nm, c); },
                tail_tolerance);
            dist = coin_coherent_mixture(n_av, nm, cut, tail_tolerance);
            break;
        }
    }

    BuiltState out{*dist, 0.0, true};
    out.tail_beyond_n_max = tail_mass_with_discarded(out.dist, n_max);
    out.in_space = out.tail_beyond_n_max < tail_tolerance;
    return out;
}

}  // namespace photonstat
