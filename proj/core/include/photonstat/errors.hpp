#pragma once

#include <stdexcept>
#include <string>

namespace photonstat {

// Argument outside an operation's domain (negative photon numbers, n_av > N_max, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A truncated state would drop more probability than the tail tolerance allows.
class cutoff_error : public domain_error {
public:
    explicit cutoff_error(const std::string& what) : domain_error(what) {}
};

}  // namespace photonstat
