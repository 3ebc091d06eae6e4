#include "varmult/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "varmult/io.hpp"
#include "varmult/rng.hpp"

namespace varmult {

namespace {

using Json = nlohmann::json;

bool admissible(double r, double p) {
    try {
        check_theorem_hypotheses(r, p);
        return true;
    } catch (const HypothesisViolation&) {
        return false;
    }
}

bool flagged(const SweepConfig& config, double r, double p) {
    return std::any_of(config.expect_reject.begin(), config.expect_reject.end(),
                       [&](const auto& pr) { return pr.first == r && pr.second == p; });
}

std::vector<std::pair<double, double>> pairs_from_json(const Json& j, const char* key) {
    std::vector<std::pair<double, double>> out;
    if (!j.contains(key)) return out;
    for (const auto& item : j.at(key)) {
        if (!item.is_array() || item.size() != 2) throw ParseError(std::string(key) + " entries must be [r, p]");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

std::string render_svg(const SweepConfig& config, const std::vector<OperatorNormSummary>& summaries) {
    // One polyline of max upper ratio against log2 N per (r, p).
    std::map<std::pair<double, double>, std::vector<std::pair<double, double>>> series;
    double y_max = 0.0;
    for (const auto& s : summaries) {
        series[{s.r, s.p}].emplace_back(std::log2(static_cast<double>(s.size)), s.upper.max);
        y_max = std::max(y_max, s.upper.max);
    }
    double x_min = INFINITY, x_max = -INFINITY;
    for (auto n : config.n_list) {
        x_min = std::min(x_min, std::log2(static_cast<double>(n)));
        x_max = std::max(x_max, std::log2(static_cast<double>(n)));
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!(y_max > 0.0)) y_max = 1.0;
    const double w = 640, h = 400, pad = 50;
    auto px = [&](double x) { return pad + (x - x_min) / (x_max - x_min) * (w - 2 * pad); };
    auto py = [&](double y) { return h - pad - y / (1.1 * y_max) * (h - 2 * pad); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
        << "\" stroke=\"black\"/>\n";
    for (auto n : config.n_list) {
        const double x = px(std::log2(static_cast<double>(n)));
        out << "<text x=\"" << x << "\" y=\"" << h - pad + 18 << "\" font-size=\"11\" text-anchor=\"middle\">" << n
            << "</text>\n";
    }
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" font-size=\"12\" text-anchor=\"middle\">N</text>\n";
    out << "<text x=\"14\" y=\"" << h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << h / 2
        << ")\" text-anchor=\"middle\">max ||upper||_p / ||f||_p</text>\n";
    std::size_t color = 0;
    for (const auto& [key, pts] : series) {
        const char* stroke = kColors[color++ % std::size(kColors)];
        out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" points=\"";
        for (const auto& [x, y] : pts) out << px(x) << ',' << py(y) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << w - pad << "\" y=\"" << pad + 14.0 * static_cast<double>(color) << "\" font-size=\"11\" fill=\""
            << stroke << "\" text-anchor=\"end\">r=" << io::format_double(key.first)
            << " p=" << io::format_double(key.second) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::vector<std::pair<double, double>> SweepConfig::resolved_pairs() const {
    if (!pairs.empty()) return pairs;
    std::vector<std::pair<double, double>> out;
    for (double r : r_list) {
        for (double p : p_list) out.emplace_back(r, p);
    }
    return out;
}

SweepConfig sweep_config_from_json(const Json& j) {
    SweepConfig config;
    try {
        if (!j.is_object()) throw ParseError("sweep config must be a JSON object");
        if (j.contains("r_list")) config.r_list = j.at("r_list").get<std::vector<double>>();
        if (j.contains("p_list")) config.p_list = j.at("p_list").get<std::vector<double>>();
        config.pairs = pairs_from_json(j, "pairs");
        if (j.contains("n_list")) config.n_list = j.at("n_list").get<std::vector<std::size_t>>();
        if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("s_grid") && j.at("s_grid").is_array()) config.s_grid = j.at("s_grid").get<std::vector<double>>();
        if (j.contains("tol")) config.tol = j.at("tol").get<double>();
        if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
        config.expect_reject = pairs_from_json(j, "expect_reject");
        if (j.contains("budget")) {
            const auto& b = j.at("budget");
            if (b.contains("ascent_steps")) config.budget.ascent_steps = b.at("ascent_steps").get<std::size_t>();
            if (b.contains("ascent_points")) config.budget.ascent_points = b.at("ascent_points").get<std::size_t>();
            if (b.contains("initial_step")) config.budget.initial_step = b.at("initial_step").get<double>();
        }
        if (j.contains("plot")) config.plot = j.at("plot").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sweep config: ") + e.what());
    }
    for (auto n : config.n_list) {
        if (!is_power_of_two(n)) throw ParseError("sweep config: n_list entries must be powers of two");
    }
    for (const auto& [r, p] : config.resolved_pairs()) {
        if (!admissible(r, p) && !flagged(config, r, p)) {
            check_theorem_hypotheses(r, p);
        }
    }
    return config;
}

Json to_json(const SweepConfig& config) {
    Json pairs = Json::array(), rejects = Json::array();
    for (const auto& [r, p] : config.pairs) pairs.push_back({r, p});
    for (const auto& [r, p] : config.expect_reject) rejects.push_back({r, p});
    return Json{{"r_list", config.r_list},
                {"p_list", config.p_list},
                {"pairs", pairs},
                {"n_list", config.n_list},
                {"trials", config.trials},
                {"seed", config.seed},
                {"s_grid", config.s_grid.empty() ? Json("default") : Json(config.s_grid)},
                {"tol", config.tol},
                {"output_dir", config.output_dir},
                {"expect_reject", rejects},
                {"budget",
                 {{"ascent_steps", config.budget.ascent_steps},
                  {"ascent_points", config.budget.ascent_points},
                  {"initial_step", config.budget.initial_step}}},
                {"plot", config.plot}};
}

std::string config_hash(const SweepConfig& config) {
    auto j = to_json(config);
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepOutput run_sweep(const SweepConfig& config) {
    SweepOutput output;
    const std::string hash = config_hash(config);
    const std::string seed = std::to_string(config.seed);
    std::ostringstream csv;
    io::write_csv_row(csv, {"config_hash", "seed", "r", "p", "n", "statistic", "value"});

    for (const auto& [r, p] : config.resolved_pairs()) {
        const std::string rs = io::format_double(r), ps = io::format_double(p);
        const bool ok = admissible(r, p);
        if (!ok) {
            // Unflagged pairs were refused when the config was built.
            for (auto n : config.n_list) {
                io::write_csv_row(csv, {hash, seed, rs, ps, std::to_string(n), "rejected", "hypothesis-violation"});
            }
            continue;
        }
        if (flagged(config, r, p)) ++output.unexpected_accepts;

        EmpiricalOptions options;
        options.s_grid = config.s_grid;
        options.budget = config.budget;
        for (auto n : config.n_list) {
            const auto summary = empirical_operator_norm(r, p, n, config.trials, config.seed, options);
            output.summaries.push_back(summary);

            // Injected single mode: the lower-bound ratio must come out as exactly 1.
            const auto mode = single_mode(n, 1, {1.0, 0.0});
            const auto mode_lower = maximal_lower(mode, r, {0, 0, config.budget.initial_step});
            const double mode_ratio = lp_norm(mode_lower.lower, p) / lp_norm(mode, p);

            const std::string ns = std::to_string(n);
            auto row = [&](const char* stat, const std::string& value) {
                io::write_csv_row(csv, {hash, seed, rs, ps, ns, stat, value});
            };
            row("upper_ratio_max", io::format_double(summary.upper.max));
            row("upper_ratio_q50", io::format_double(summary.upper.q50));
            row("upper_ratio_q90", io::format_double(summary.upper.q90));
            row("lower_ratio_max", io::format_double(summary.lower.max));
            row("lower_ratio_q50", io::format_double(summary.lower.q50));
            row("lower_ratio_q90", io::format_double(summary.lower.q90));
            row("sandwich_violations", std::to_string(summary.sandwich_violations));
            row("certified", summary.certified ? "true" : "false");
            row("single_mode_lower_ratio", io::format_double(mode_ratio));
        }
    }
    output.csv = csv.str();
    if (config.plot) output.svg = render_svg(config, output.summaries);
    return output;
}

}  // namespace varmult
