#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "photonstat/errors.hpp"

namespace photonstat {

inline constexpr std::size_t kMaxAutoCutoff = std::size_t{1} << 24;

template <typename TailFn>
std::size_t auto_cutoff(double n_av, TailFn&& tail, double tail_tolerance) {
    if (!(n_av >= 0.0) || !std::isfinite(n_av)) throw domain_error("auto_cutoff: n_av must be finite and >= 0");
    auto n_cut = static_cast<std::size_t>(std::ceil(n_av + 20.0 * std::sqrt(n_av + 1.0)));
    while (!(tail(n_cut) < tail_tolerance)) {
        if (n_cut > kMaxAutoCutoff)
            throw cutoff_error("auto_cutoff: no cutoff below " + std::to_string(kMaxAutoCutoff) +
                               " meets the tail tolerance");
        n_cut *= 2;
    }
    // One more doubling: moments weight the dropped levels by n^m, so a tail just under
    // the tolerance can still shift G^(m) ratios by ~n_cut^2 * tolerance.
    return 2 * n_cut;
}

}  // namespace photonstat
