#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "photonstat/states.hpp"

namespace photonstat {

enum class GridScale { linear, log };

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 2;
    GridScale scale = GridScale::linear;
};

/// Grid and state list for a ratio-vs-intensity sweep.
struct SweepConfig {
    std::vector<StateSpec> states;
    int order = 2;
    std::size_t n_max = 500;
    GridSpec grid;
    std::string csv_path;
    std::optional<std::string> svg_path;
    double tail_tolerance = kTailTolerance;
};

/// One CSV record. An empty `error` means the state was built and evaluated.
struct SweepRow {
    double n_av = 0.0;
    std::string state_label;
    int order = 2;
    double g_m = 0.0;
    std::optional<double> ratio;
    double tail_mass = 0.0;
    bool in_space = true;
    std::string error;
};

inline constexpr const char* kCsvHeader = "n_av,state,m,G_m,ratio,tail_mass,in_space";

StateSpec parse_state_spec(const nlohmann::json& j);
nlohmann::json to_json(const StateSpec& spec);

/// Parses and validates a sweep config document. Throws domain_error.
SweepConfig parse_sweep_config(const nlohmann::json& j);
void validate(const SweepConfig& config);

std::vector<double> grid_points(const GridSpec& grid);

/// The state evaluated at grid intensity n_av (n_av, or xi = asinh(sqrt(n_av)) for squeezed vacuum).
StateSpec at_intensity(const StateSpec& spec, double n_av);

SweepRow evaluate_row(const StateSpec& spec, double n_av, int order, std::size_t n_max, double tail_tolerance);

/// Rows ordered by grid point, then by the config's state order. Grid points are
/// spread over `threads` workers (0 = hardware concurrency); the result does not depend on it.
std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads = 0);

/// Formats a real with 17 significant digits.
std::string format_real(double x);

std::string format_csv(const std::vector<SweepRow>& rows);

/// Log-log plot of ratio vs n_av, one polyline per state label.
std::string render_svg(const std::vector<SweepRow>& rows, const SweepConfig& config);

}  // namespace photonstat
