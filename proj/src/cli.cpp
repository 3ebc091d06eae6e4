#include "varmult/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "varmult/decompose.hpp"
#include "varmult/io.hpp"
#include "varmult/maximal.hpp"
#include "varmult/squarefun.hpp"
#include "varmult/sweep.hpp"
#include "varmult/variation.hpp"
#include "varmult/verify.hpp"

namespace varmult {

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            if constexpr (std::is_floating_point_v<T>) {
                out.push_back(static_cast<T>(std::stod(item, &used)));
            } else {
                out.push_back(static_cast<T>(std::stoull(item, &used)));
            }
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

void apply_thread_limit() {
    if (const char* env = std::getenv("VARMULT_THREADS")) {
        const int threads = std::atoi(env);
        if (threads > 0) omp_set_num_threads(threads);
    }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        io::write_text_file(path, text);
    }
}

struct VrNormArgs {
    std::string input;
    double r = 1.0;
    std::size_t n = 0;
};

int cmd_vr_norm(const VrNormArgs& a, std::ostream& out) {
    const auto m = io::multiplier_from_json(io::read_json_file(a.input),
                                            a.n ? std::optional<std::size_t>(a.n) : std::nullopt);
    const auto var = variation_power_with_witness(m.values(), a.r);
    const double norm = vr_norm(m, a.r);
    out << "vr_norm " << io::format_double(norm) << "\n";
    out << "variation_power " << io::format_double(var.power) << "\n";
    io::Json j{{"n", m.size()}, {"r", a.r}, {"vr_norm", norm}, {"variation_power", var.power},
               {"witness", var.subsequence}};
    out << j.dump() << "\n";
    return kExitOk;
}

struct DecomposeArgs {
    std::string input;
    double r = 1.0;
    double tol = 0.0;
    std::size_t n = 0;
    std::string output;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
    const auto m = io::multiplier_from_json(io::read_json_file(a.input),
                                            a.n ? std::optional<std::size_t>(a.n) : std::nullopt);
    const auto d = a.tol > 0.0 ? decompose(m, a.r, a.tol) : decompose(m, a.r);
    const auto report = verify_lemma_bounds(d);
    io::Json j{{"decomposition", io::to_json(d)}, {"report", io::to_json(report)}};
    emit(a.output, j.dump(2) + "\n", out);
    if (!report.pass) {
        err << "decompose: level bounds violated\n";
        return kExitInvariant;
    }
    return kExitOk;
}

struct VarCarlesonArgs {
    std::string input;
    double s = 2.5;
    std::size_t stride = 0;
    std::string endpoints;
    std::string output;
};

int cmd_varcarleson(const VarCarlesonArgs& a, std::ostream& out) {
    const auto f = io::grid_function_from_json(io::read_json_file(a.input));
    std::optional<EndpointGrid> grid;
    if (!a.endpoints.empty()) {
        grid.emplace(f.size(), parse_list<std::size_t>(a.endpoints, "endpoint"));
    } else if (a.stride > 0) {
        grid = EndpointGrid::every(f.size(), a.stride);
    }
    const auto field = var_carleson(f, a.s, grid);
    std::ostringstream csv;
    io::write_csv_row(csv, {"x", "value", "witness"});
    for (std::size_t x = 0; x < f.size(); ++x) {
        io::write_csv_row(csv, {std::to_string(x), io::format_double(field.values[x]),
                                io::format_collection(field.witness[x])});
    }
    emit(a.output, csv.str(), out);
    return kExitOk;
}

struct MaximalArgs {
    std::string input;
    double r = 1.5;
    std::vector<double> p;
    std::string s_grid;
    std::size_t budget = 16;
    std::size_t ascent_points = 0;
    std::string witness_points;
    std::string output_json;
    std::string output_csv;
};

int cmd_maximal(const MaximalArgs& a, std::ostream& out, std::ostream& err) {
    for (double p : a.p) check_theorem_hypotheses(a.r, p);
    const auto f = io::grid_function_from_json(io::read_json_file(a.input));
    const auto s_grid = a.s_grid.empty() ? default_s_grid(a.r) : parse_list<double>(a.s_grid, "s-grid");
    const auto points = parse_list<std::size_t>(a.witness_points, "witness point");
    LowerBudget budget;
    budget.ascent_steps = a.budget;
    budget.ascent_points = a.ascent_points;

    const auto report = bound_report(f, a.r, a.p, s_grid, budget, points);
    emit(a.output_json, io::to_json(report).dump(2) + "\n", out);
    if (!a.output_csv.empty()) {
        std::ostringstream csv;
        io::write_csv_row(csv, {"x", "lower", "upper"});
        for (std::size_t x = 0; x < report.size; ++x) {
            io::write_csv_row(csv, {std::to_string(x), io::format_double(report.lower[x]),
                                    io::format_double(report.upper[x])});
        }
        io::write_text_file(a.output_csv, csv.str());
    }
    if (report.sandwich_violations > 0) {
        err << "maximal: lower bound exceeds upper bound at " << report.sandwich_violations << " points\n";
        return kExitInvariant;
    }
    return kExitOk;
}

struct SweepArgs {
    std::string config;
    std::string output_dir;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    auto config = a.config.empty() ? SweepConfig{} : sweep_config_from_json(io::read_json_file(a.config));
    if (!a.output_dir.empty()) config.output_dir = a.output_dir;
    const auto result = run_sweep(config);
    const std::filesystem::path dir(config.output_dir);
    io::write_text_file(dir / "sweep.csv", result.csv);
    out << (dir / "sweep.csv").string() << "\n";
    if (config.plot) {
        io::write_text_file(dir / "sweep.svg", result.svg);
        out << (dir / "sweep.svg").string() << "\n";
    }
    int status = kExitOk;
    if (result.unexpected_accepts > 0) {
        err << "sweep: " << result.unexpected_accepts << " pair(s) flagged expect-reject were admissible\n";
        status = kExitInvariant;
    }
    for (const auto& s : result.summaries) {
        if (s.sandwich_violations > 0) {
            err << "sweep: sandwich violated at r=" << s.r << " p=" << s.p << " n=" << s.size << "\n";
            status = kExitInvariant;
        }
    }
    return status;
}

int cmd_verify(std::uint64_t seed, std::ostream& out) {
    VerifyOptions options;
    options.seed = seed;
    const auto report = run_verify(options);
    for (const auto& r : report.results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass) out << ": " << r.detail;
        out << "\n";
    }
    if (report.pass) {
        out << "verify: all " << report.results.size() << " properties passed\n";
        return kExitOk;
    }
    out << "verify: FAILED, first failing property " << *report.first_failure << "\n";
    return kExitInvariant;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variation-norm multiplier toolkit"};
    app.require_subcommand(1);

    VrNormArgs vr;
    auto* vr_cmd = app.add_subcommand("vr-norm", "r-variation norm of a multiplier");
    vr_cmd->add_option("--input", vr.input, "multiplier JSON")->required();
    vr_cmd->add_option("--r", vr.r, "variation exponent")->required();
    vr_cmd->add_option("--n", vr.n, "grid size for a bare piecewise array");

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "level-wise interval decomposition");
    dec_cmd->add_option("--input", dec.input, "multiplier JSON")->required();
    dec_cmd->add_option("--r", dec.r, "variation exponent")->required();
    dec_cmd->add_option("--tol", dec.tol, "residual tolerance (default 1e-6 * rho)");
    dec_cmd->add_option("--n", dec.n, "grid size for a bare piecewise array");
    dec_cmd->add_option("--output", dec.output, "output JSON file (default stdout)");

    VarCarlesonArgs vc;
    auto* vc_cmd = app.add_subcommand("varcarleson", "pointwise supremum over interval collections");
    vc_cmd->add_option("--input", vc.input, "grid function JSON")->required();
    vc_cmd->add_option("--s", vc.s, "exponent s > 1")->required();
    vc_cmd->add_option("--stride", vc.stride, "keep every k-th cut");
    vc_cmd->add_option("--endpoints", vc.endpoints, "comma-separated cut positions");
    vc_cmd->add_option("--output", vc.output, "output CSV file (default stdout)");

    MaximalArgs mx;
    auto* mx_cmd = app.add_subcommand("maximal", "two-sided bounds on the maximal multiplier operator");
    mx_cmd->add_option("--input", mx.input, "grid function JSON")->required();
    mx_cmd->add_option("--r", mx.r, "variation exponent in [1, 2)")->required();
    mx_cmd->add_option("--p", mx.p, "L^p exponents (p > r)")->required();
    mx_cmd->add_option("--s-grid", mx.s_grid, "comma-separated s values in (2, r')");
    mx_cmd->add_option("--budget", mx.budget, "ascent steps per point");
    mx_cmd->add_option("--ascent-points", mx.ascent_points, "limit ascent to the top k points (0 = all)");
    mx_cmd->add_option("--witness-points", mx.witness_points, "comma-separated points (at most 16)");
    mx_cmd->add_option("--output-json", mx.output_json, "bound report JSON (default stdout)");
    mx_cmd->add_option("--output-csv", mx.output_csv, "CSV of x, lower, upper");

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "operator-norm ratios over (r, p, N)");
    sw_cmd->add_option("--config", sw.config, "sweep config JSON (defaults built in)");
    sw_cmd->add_option("--output-dir", sw.output_dir, "override output directory");

    std::uint64_t verify_seed = VerifyOptions{}.seed;
    auto* ver_cmd = app.add_subcommand("verify", "run the invariant suite");
    ver_cmd->add_option("--seed", verify_seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitIo;
    }

    apply_thread_limit();
    try {
        if (*vr_cmd) return cmd_vr_norm(vr, out);
        if (*dec_cmd) return cmd_decompose(dec, out, err);
        if (*vc_cmd) return cmd_varcarleson(vc, out);
        if (*mx_cmd) return cmd_maximal(mx, out, err);
        if (*sw_cmd) return cmd_sweep(sw, out, err);
        if (*ver_cmd) return cmd_verify(verify_seed, out);
    } catch (const HypothesisViolation& e) {
        err << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const InvariantFailure& e) {
        err << "invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace varmult
