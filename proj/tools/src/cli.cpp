#include "photonstat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "photonstat/coherence.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/optimizer.hpp"
#include "photonstat/states.hpp"
#include "photonstat/sweep.hpp"

namespace photonstat::cli {

using nlohmann::json;

namespace {

StateSpec state_from_argument(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw domain_error(std::string("--state: invalid JSON: ") + e.what());
    }
    return parse_state_spec(j);
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << contents;
    f.close();
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_gm(const std::string& state, int order, std::size_t n_max, std::ostream& out) {
    const auto spec = state_from_argument(state);
    const auto built = build_state(spec, n_max);
    const auto g = coherence_gm(built.dist, order);
    out << json{{"state", spec.display_label()},
                {"m", g.order},
                {"G_m", g.value},
                {"ratio", optional_number(g.ratio)},
                {"n_av", g.n_av},
                {"tail_mass", built.tail_beyond_n_max},
                {"in_space", built.in_space}}
               .dump()
        << '\n';
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_csv, const std::string& out_svg,
              unsigned threads, std::ostream& out, std::ostream& err) {
    std::ifstream in(config_path);
    if (!in) throw domain_error("cannot read config '" + config_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw domain_error("config '" + config_path + "': " + e.what());
    }
    auto config = parse_sweep_config(j);
    if (!out_csv.empty()) config.csv_path = out_csv;
    if (!out_svg.empty()) config.svg_path = out_svg;

    const auto rows = run_sweep(config, threads);
    const auto csv = format_csv(rows);
    if (config.csv_path.empty() || config.csv_path == "-")
        out << csv;
    else
        write_file(config.csv_path, csv);
    if (config.svg_path) write_file(*config.svg_path, render_svg(rows, config));

    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (r.error.empty()) continue;
        ++failed;
        err << "n_av=" << format_real(r.n_av) << " state=" << r.state_label << ": " << r.error << '\n';
    }
    if (failed) {
        err << failed << " of " << rows.size() << " rows failed\n";
        return kPartialFailure;
    }
    return kOk;
}

int cmd_optimize(int order, double n_av, std::size_t n_max, std::optional<std::uint64_t> seed,
                 std::size_t trials, std::ostream& out) {
    const auto r = optimize_gm_exact(order, n_av, n_max);
    json weights = json::array();
    for (auto n : r.support) weights.push_back(r.distribution[n]);
    json report{{"m", order},
                {"n_av", n_av},
                {"N_max", n_max},
                {"method", std::string(to_string(r.method))},
                {"optimal_value", r.optimal_value},
                {"support", r.support},
                {"weights", weights}};
    if (order >= 2) {
        const double bound = bound_gm(order, n_av, static_cast<long long>(n_max));
        report["bound"] = bound;
        report["relative_gap"] = bound == 0.0 ? 0.0 : (bound - r.optimal_value) / bound;
    }
    if (seed) {
        report["random_search"] = {{"seed", *seed},
                                   {"trials", trials},
                                   {"best", random_search_lower_bound(order, n_av, n_max, trials, *seed)}};
    }
    out << report.dump() << '\n';
    return kOk;
}

int cmd_bounds(const std::string& state, int order, std::size_t n_max, std::ostream& out) {
    const auto spec = state_from_argument(state);
    const auto built = build_state(spec, n_max);
    const auto r = verify_state_bound(built.dist, order, n_max);
    std::string verdict;
    if (!r.in_space)
        verdict = "out_of_space";
    else if (r.violation)
        verdict = "violation";
    else if (r.bound && std::abs(*r.slack) <= 1e-12 * *r.bound)
        verdict = "saturated";
    else
        verdict = "satisfied";
    out << json{{"state", spec.display_label()},
                {"m", order},
                {"N_max", n_max},
                {"G_m", r.value},
                {"n_av", r.n_av},
                {"bound", optional_number(r.bound)},
                {"slack", optional_number(r.slack)},
                {"tail_mass", r.tail_mass},
                {"in_space", r.in_space},
                {"violation", r.violation},
                {"verdict", verdict}}
               .dump()
        << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-photon coherence functions of single-mode light and their optimal bounds"};
    app.name(args.empty() ? "photonstat" : args.front());
    app.require_subcommand(1);

    int order = 2;
    std::size_t n_max = 500;
    double n_av = 0.0;
    std::string state;
    std::string config;
    std::string out_csv;
    std::string out_svg;
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 100000;

    auto* gm = app.add_subcommand("gm", "G^(m) of one state");
    gm->add_option("--state", state, "state as JSON, e.g. {\"kind\":\"thermal\",\"params\":{\"n_av\":10}}")
        ->required();
    gm->add_option("--m", order, "coherence order")->check(CLI::PositiveNumber);
    gm->add_option("--n-max", n_max, "photon-number bound N_max");

    auto* sweep = app.add_subcommand("sweep", "ratio-vs-intensity sweep from a JSON config");
    sweep->add_option("--config", config, "sweep config (JSON)")->required();
    sweep->add_option("--out-csv", out_csv, "override outputs.csv_path ('-' for stdout)");
    sweep->add_option("--out-svg", out_svg, "override outputs.svg_path");
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* optimize = app.add_subcommand("optimize", "maximize G^(m) at fixed n_av in the N_max-photon space");
    optimize->add_option("--m", order, "coherence order")->check(CLI::PositiveNumber);
    optimize->add_option("--n-av", n_av, "mean photon number")->required();
    optimize->add_option("--n-max", n_max, "photon-number bound N_max");
    optimize->add_option("--seed", seed, "also run the random-search lower bound with this seed");
    optimize->add_option("--trials", trials, "random-search trials")->check(CLI::PositiveNumber);

    auto* bounds = app.add_subcommand("bounds", "check a state against the N_max-photon bound");
    bounds->add_option("--state", state, "state as JSON")->required();
    bounds->add_option("--m", order, "coherence order")->check(CLI::PositiveNumber);
    bounds->add_option("--n-max", n_max, "photon-number bound N_max");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << app.get_name() << ": " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (*gm) return cmd_gm(state, order, n_max, out);
        if (*sweep) return cmd_sweep(config, out_csv, out_svg, threads, out, err);
        if (*optimize) return cmd_optimize(order, n_av, n_max, seed, trials, out);
        if (*bounds) return cmd_bounds(state, order, n_max, out);
    } catch (const std::exception& e) {
        err << app.get_name() << ": " << e.what() << '\n';
        return kValidationError;
    }
    return kValidationError;
}

}  // namespace photonstat::cli
