#include "photonstat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "photonstat/coherence.hpp"
#include "photonstat/errors.hpp"

namespace photonstat {

using nlohmann::json;

namespace {

template <typename T>
T get_field(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) throw domain_error(std::string(where) + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw domain_error(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const char* where) {
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
            throw domain_error(std::string(where) + ": unknown field '" + key + "'");
    }
}

const char* grid_parameter(StateKind kind) {
    switch (kind) {
        case StateKind::squeezed_vacuum: return "xi";
        case StateKind::fock: return nullptr;
        default: return "n_av";
    }
}

}  // namespace

StateSpec parse_state_spec(const json& j) {
    if (!j.is_object()) throw domain_error("state: expected a JSON object");
    reject_unknown_keys(j, {"kind", "params", "label"}, "state");
    const auto kind_name = get_field<std::string>(j, "kind", "state");
    const auto kind = parse_state_kind(kind_name);
    if (!kind) throw domain_error("state: unknown kind '" + kind_name + "'");
    StateSpec spec;
    spec.kind = *kind;
    if (j.contains("params")) {
        const auto& params = j.at("params");
        if (!params.is_object()) throw domain_error("state: params must be an object");
        for (const auto& [key, value] : params.items()) {
            if (!value.is_number()) throw domain_error("state: parameter '" + key + "' must be a number");
            spec.params[key] = value.get<double>();
        }
    }
    if (j.contains("label")) spec.label = get_field<std::string>(j, "label", "state");
    return spec;
}

json to_json(const StateSpec& spec) {
    json j;
    j["kind"] = std::string(to_string(spec.kind));
    j["params"] = json::object();
    for (const auto& [k, v] : spec.params) j["params"][k] = v;
    if (!spec.label.empty()) j["label"] = spec.label;
    return j;
}

SweepConfig parse_sweep_config(const json& j) {
    if (!j.is_object()) throw domain_error("config: expected a JSON object");
    reject_unknown_keys(j, {"states", "m", "N_max", "n_av_grid", "outputs", "tolerances"}, "config");
    SweepConfig c;
    const auto& states = j.contains("states") ? j.at("states") : throw domain_error("config: missing field 'states'");
    if (!states.is_array()) throw domain_error("config: states must be an array");
    for (const auto& s : states) c.states.push_back(parse_state_spec(s));
    c.order = get_field<int>(j, "m", "config");
    const auto n_max = get_field<long long>(j, "N_max", "config");
    if (n_max < 0) throw domain_error("config: N_max must be >= 0");
    c.n_max = static_cast<std::size_t>(n_max);

    const auto& grid = j.contains("n_av_grid") ? j.at("n_av_grid") : throw domain_error("config: missing 'n_av_grid'");
    reject_unknown_keys(grid, {"min", "max", "points", "scale"}, "n_av_grid");
    c.grid.min = get_field<double>(grid, "min", "n_av_grid");
    c.grid.max = get_field<double>(grid, "max", "n_av_grid");
    const auto points = get_field<long long>(grid, "points", "n_av_grid");
    if (points < 0) throw domain_error("n_av_grid: points must be >= 2");
    c.grid.points = static_cast<std::size_t>(points);
    const auto scale = grid.contains("scale") ? get_field<std::string>(grid, "scale", "n_av_grid") : "linear";
    if (scale == "linear") c.grid.scale = GridScale::linear;
    else if (scale == "log") c.grid.scale = GridScale::log;
    else throw domain_error("n_av_grid: scale must be 'linear' or 'log'");

    if (j.contains("outputs")) {
        const auto& out = j.at("outputs");
        reject_unknown_keys(out, {"csv_path", "svg_path"}, "outputs");
        if (out.contains("csv_path")) c.csv_path = get_field<std::string>(out, "csv_path", "outputs");
        if (out.contains("svg_path") && !out.at("svg_path").is_null())
            c.svg_path = get_field<std::string>(out, "svg_path", "outputs");
    }
    if (j.contains("tolerances")) {
        const auto& tol = j.at("tolerances");
        reject_unknown_keys(tol, {"tail"}, "tolerances");
        if (tol.contains("tail")) c.tail_tolerance = get_field<double>(tol, "tail", "tolerances");
    }
    validate(c);
    return c;
}

void validate(const SweepConfig& c) {
    if (c.states.empty()) throw domain_error("config: no states");
    if (c.order < 2) throw domain_error("config: m must be >= 2");
    if (c.n_max < static_cast<std::size_t>(c.order)) throw domain_error("config: N_max must be >= m");
    const auto& g = c.grid;
    if (g.points < 2) throw domain_error("n_av_grid: points must be >= 2");
    if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.min < g.max))
        throw domain_error("n_av_grid: need finite min < max");
    if (g.min < 0.0) throw domain_error("n_av_grid: min must be >= 0");
    if (g.scale == GridScale::log && !(g.min > 0.0)) throw domain_error("n_av_grid: log scale needs min > 0");
    if (!(c.tail_tolerance > 0.0) || !(c.tail_tolerance < 1.0))
        throw domain_error("tolerances: tail must lie in (0, 1)");
    for (const auto& s : c.states) {
        const char* p = grid_parameter(s.kind);
        if (!p) throw domain_error("config: fock states have no intensity parameter to sweep");
        if (s.params.contains(p))
            throw domain_error("config: parameter '" + std::string(p) + "' of state '" + s.display_label() +
                               "' is set by the grid");
        // The state must be valid once the grid parameter is filled in.
        validate(at_intensity(s, g.max));
    }
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> x(g.points);
    const double last = static_cast<double>(g.points - 1);
    for (std::size_t k = 0; k < g.points; ++k) {
        const double t = static_cast<double>(k) / last;
        if (g.scale == GridScale::linear)
            x[k] = g.min + t * (g.max - g.min);
        else
            x[k] = std::exp(std::log(g.min) + t * (std::log(g.max) - std::log(g.min)));
    }
    x.front() = g.min;
    x.back() = g.max;
    return x;
}

StateSpec at_intensity(const StateSpec& spec, double n_av) {
    StateSpec s = spec;
    if (spec.kind == StateKind::squeezed_vacuum)
        s.params["xi"] = std::asinh(std::sqrt(n_av));
    else if (const char* p = grid_parameter(spec.kind))
        s.params[p] = n_av;
    return s;
}

SweepRow evaluate_row(const StateSpec& spec, double n_av, int order, std::size_t n_max, double tail_tolerance) {
    SweepRow row;
    row.n_av = n_av;
    row.state_label = spec.display_label();
    row.order = order;
    try {
        const auto built = build_state(at_intensity(spec, n_av), n_max, tail_tolerance);
        const auto g = coherence_gm(built.dist, order);
        row.g_m = g.value;
        row.ratio = g.ratio;
        row.tail_mass = built.tail_beyond_n_max;
        row.in_space = built.in_space;
    } catch (const domain_error& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads) {
    validate(config);
    const auto xs = grid_points(config.grid);
    const std::size_t width = config.states.size();
    std::vector<SweepRow> rows(xs.size() * width);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < xs.size();) {
            for (std::size_t s = 0; s < width; ++s)
                rows[k * width + s] =
                    evaluate_row(config.states[s], xs[k], config.order, config.n_max, config.tail_tolerance);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, xs.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    return rows;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_real(r.n_av) + ',' + csv_field(r.state_label) + ',' + std::to_string(r.order) + ',';
        if (!r.error.empty()) {
            out += ",,,error\n";
            continue;
        }
        out += format_real(r.g_m) + ',';
        if (r.ratio) out += format_real(*r.ratio);
        out += ',' + format_real(r.tail_mass) + ',' + (r.in_space ? "true" : "false") + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 800, kHeight = 560;
constexpr double kLeft = 80, kRight = 220, kTop = 30, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(int decade) {
    if (decade >= -2 && decade <= 4) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", std::pow(10.0, decade));
        return buf;
    }
    return "1e" + std::to_string(decade);
}

}  // namespace

std::string render_svg(const std::vector<SweepRow>& rows, const SweepConfig& config) {
    // Preserve the config's state order for colours and legend.
    std::vector<std::string> labels;
    for (const auto& s : config.states) {
        const auto l = s.display_label();
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double ymin = INFINITY, ymax = -INFINITY, xmin = INFINITY, xmax = -INFINITY;
    for (const auto& r : rows) {
        if (!r.error.empty() || !r.ratio || !(*r.ratio > 0.0) || !(r.n_av > 0.0)) continue;
        series[r.state_label].emplace_back(r.n_av, *r.ratio);
        ymin = std::min(ymin, *r.ratio);
        ymax = std::max(ymax, *r.ratio);
        xmin = std::min(xmin, r.n_av);
        xmax = std::max(xmax, r.n_av);
    }
    if (series.empty()) {
        xmin = ymin = 1.0;
        xmax = ymax = 10.0;
    }
    const int xd0 = static_cast<int>(std::floor(std::log10(xmin))), xd1 = static_cast<int>(std::ceil(std::log10(xmax)));
    const int yd0 = static_cast<int>(std::floor(std::log10(ymin))), yd1 = static_cast<int>(std::ceil(std::log10(ymax)));
    const int xdecades = std::max(1, xd1 - xd0), ydecades = std::max(1, yd1 - yd0);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (std::log10(x) - xd0) / xdecades * plot_w; };
    const auto py = [&](double y) { return kTop + plot_h - (std::log10(y) - yd0) / ydecades * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(plot_w)
        << "\" height=\"" << coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int d = xd0; d <= xd0 + xdecades; ++d) {
        const double x = kLeft + static_cast<double>(d - xd0) / xdecades * plot_w;
        svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(x) << "\" y2=\""
            << coord(kTop + plot_h) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << tick_label(d) << "</text>\n";
    }
    for (int d = yd0; d <= yd0 + ydecades; ++d) {
        const double y = kTop + plot_h - static_cast<double>(d - yd0) / ydecades * plot_h;
        svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(kLeft + plot_w)
            << "\" y2=\"" << coord(y) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4) << "\" text-anchor=\"end\">"
            << tick_label(d) << "</text>\n";
    }
    svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 15)
        << "\" text-anchor=\"middle\">mean photon number n_av</text>\n";
    svg << "<text transform=\"translate(20 " << coord(kTop + plot_h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">G^(" << config.order << ") / n_av^" << config.order
        << "</text>\n";

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const char* colour = kPalette[i % std::size(kPalette)];
        const auto it = series.find(labels[i]);
        if (it != series.end() && !it->second.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
            for (std::size_t k = 0; k < it->second.size(); ++k)
                svg << (k ? " " : "") << coord(px(it->second[k].first)) << ',' << coord(py(it->second[k].second));
            svg << "\"/>\n";
        }
        const double ly = kTop + 20 + 20.0 * static_cast<double>(i);
        svg << "<line x1=\"" << coord(kWidth - kRight + 15) << "\" y1=\"" << coord(ly) << "\" x2=\""
            << coord(kWidth - kRight + 45) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << coord(kWidth - kRight + 52) << "\" y=\"" << coord(ly + 4) << "\">"
            << xml_escape(labels[i]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace photonstat
