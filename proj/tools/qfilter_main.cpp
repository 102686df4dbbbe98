// qfilter - unambiguous discrimination of biased vs balanced Boolean
// functions: strategy analysis, dilation synthesis, exact ensemble
// combinatorics and Monte Carlo measurement simulation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qfilter/balanced_ensemble.hpp"
#include "qfilter/boolean_function.hpp"
#include "qfilter/errors.hpp"
#include "qfilter/filtering.hpp"
#include "qfilter/povm_synthesis.hpp"
#include "qfilter/serialize.hpp"
#include "qfilter/simulate.hpp"
#include "qfilter/walsh_basis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCapExceeded = 4;
constexpr int kExitValidation = 5;

struct Options {
    int n = 3;
    int k = 2;
    int polarity = 0;
    double eta1 = 0.125;
    std::optional<double> q1;
    std::string table;
    std::string sweep;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int cap = qfilter::kDefaultEnumerationCap;
    std::size_t points = 10'000;
    std::string out_path;
    std::string format = "json";
};

void write_output(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + opt.out_path);
    f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

qfilter::BooleanFunction resolve_table(const Options& opt) {
    if (!opt.table.empty()) return qfilter::BooleanFunction::parse(opt.table);
    return qfilter::make_wk(opt.n, opt.k, opt.polarity);
}

// "a:b:steps", optionally prefixed with "eta1=".
std::vector<double> parse_sweep(const std::string& spec) {
    std::string body = spec;
    if (body.starts_with("eta1=")) body = body.substr(5);
    const auto c1 = body.find(':');
    const auto c2 = body.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("sweep spec must be a:b:steps");
    const double a = std::stod(body.substr(0, c1));
    const double b = std::stod(body.substr(c1 + 1, c2 - c1 - 1));
    const long steps = std::stol(body.substr(c2 + 1));
    if (steps < 2 || !(a >= 0.0) || !(b <= 1.0) || !(a < b))
        throw std::invalid_argument("sweep spec must satisfy 0 <= a < b <= 1, steps >= 2");
    std::vector<double> etas(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i)
        etas[static_cast<std::size_t>(i)] =
            a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return etas;
}

int run_classify(const Options& opt) {
    write_output(opt, dump(qfilter::function_record(resolve_table(opt))));
    return kExitOk;
}

int run_encode(const Options& opt) {
    write_output(opt, dump(qfilter::encode_record(resolve_table(opt))));
    return kExitOk;
}

int run_basis(const Options& opt) {
    if (opt.n > 12) throw std::invalid_argument("basis export supports n <= 12");
    if (opt.format == "csv")
        write_output(opt, qfilter::basis_csv(opt.n));
    else
        write_output(opt, dump(qfilter::basis_record(opt.n)));
    return kExitOk;
}

int run_analyze(const Options& opt) {
    if (!opt.sweep.empty()) {
        std::vector<qfilter::WkClosedForms> rows;
        for (const double eta1 : parse_sweep(opt.sweep))
            rows.push_back(qfilter::wk_closed_forms(opt.n, opt.k, eta1));
        if (opt.format == "csv") {
            write_output(opt, qfilter::sweep_csv(rows));
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : rows) arr.push_back(qfilter::analyze_record(r));
            write_output(opt, dump(nlohmann::json{{"schema", qfilter::kSchemaVersion},
                                                  {"sweep", arr}}));
        }
        return kExitOk;
    }
    write_output(opt, dump(qfilter::analyze_record(
                          qfilter::wk_closed_forms(opt.n, opt.k, opt.eta1))));
    return kExitOk;
}

int run_thresholds(const Options& opt) {
    write_output(opt, dump(qfilter::thresholds_record(
                          qfilter::regime_scan(opt.n, opt.k, opt.points))));
    return kExitOk;
}

int run_synth(const Options& opt) {
    if (opt.n > 10) throw std::invalid_argument("synth supports n <= 10");
    const auto problem = qfilter::wk_basis_problem(opt.n, opt.k, opt.eta1);
    const double q1 = opt.q1.value_or(qfilter::choose_strategy(problem).q1_opt);
    const auto dilation = qfilter::synthesize_dilation(problem, q1);
    const auto validation = qfilter::validate_dilation(dilation, problem);
    if (!validation.pass())
        throw qfilter::ValidationError("synthesized dilation failed validation");
    nlohmann::json out = qfilter::dilation_record(dilation);
    out["validation"] = qfilter::validation_record(validation);
    write_output(opt, dump(out));
    return kExitOk;
}

int run_simulate(const Options& opt) {
    if (opt.n > 10) throw std::invalid_argument("simulate supports n <= 10");
    const auto problem = qfilter::wk_basis_problem(opt.n, opt.k, opt.eta1);
    const auto report = qfilter::choose_strategy(problem);
    const double q1 = opt.q1.value_or(report.q1_opt);
    const auto dilation = qfilter::synthesize_dilation(problem, q1);
    const auto summary = qfilter::run_trials(problem, dilation, opt.trials, opt.seed);
    const auto comparison = qfilter::summarize_vs_analytic(summary, report);

    nlohmann::json out = qfilter::simulation_record(summary);
    out["q1"] = q1;
    out["report"] = qfilter::report_record(report);
    out["comparison"] = nlohmann::json{
        {"empirical", comparison.empirical}, {"analytic", comparison.analytic},
        {"sigma", comparison.sigma},         {"z", comparison.z},
        {"pass", comparison.pass},           {"degenerate", comparison.degenerate},
    };
    write_output(opt, dump(out));
    return kExitOk;
}

int run_ensemble(const Options& opt) {
    const auto summary = qfilter::ensemble_summary(opt.n, opt.k, opt.eta1, opt.cap);
    if (opt.format == "csv")
        write_output(opt, qfilter::ensemble_csv(summary));
    else
        write_output(opt, dump(qfilter::ensemble_record(summary)));
    return kExitOk;
}

void emit_error(int code, std::string_view kind, std::string_view message) {
    std::cout << qfilter::error_record(code, kind, message).dump(2) << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unambiguous filtering of biased vs balanced Boolean functions"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    const auto add_common = [&](CLI::App* sub, bool wants_eta = true) {
        sub->add_option("--n", opt.n, "number of input bits");
        sub->add_option("--k", opt.k, "bias level of the W_k family");
        if (wants_eta) sub->add_option("--eta1", opt.eta1, "prior of the distinguished state");
        sub->add_option("-o,--out", opt.out_path, "write the report to this file");
        sub->add_option("--format", opt.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->callback([&, sub] { command = sub->get_name(); });
        return sub;
    };

    auto* classify = add_common(app.add_subcommand("classify", "classify a truth table"), false);
    classify->add_option("--table", opt.table, "binary (or 0x-hex) truth table");
    classify->add_option("--polarity", opt.polarity, "W_k polarity when no table is given");

    auto* enc = add_common(app.add_subcommand("encode", "map a truth table to a state vector"), false);
    enc->add_option("--table", opt.table, "binary (or 0x-hex) truth table");
    enc->add_option("--polarity", opt.polarity, "W_k polarity when no table is given");

    add_common(app.add_subcommand("basis", "export the canonical basis"), false);

    auto* analyze = add_common(app.add_subcommand("analyze", "failure probabilities and strategy"));
    analyze->add_option("--sweep", opt.sweep, "eta1 sweep: a:b:steps");

    auto* thresholds =
        add_common(app.add_subcommand("thresholds", "regime thresholds and grid scan"), false);
    thresholds->add_option("--points", opt.points, "grid points");

    auto* synth = add_common(app.add_subcommand("synth", "synthesize the dilation unitary"));
    synth->add_option("--q1", opt.q1, "failure parameter for psi1 (default: optimal)");

    auto* simulate = add_common(app.add_subcommand("simulate", "Monte Carlo measurement run"));
    simulate->add_option("--q1", opt.q1, "failure parameter for psi1 (default: optimal)");
    simulate->add_option("--trials", opt.trials, "number of trials");
    simulate->add_option("--seed", opt.seed, "RNG seed");

    auto* ensemble = add_common(app.add_subcommand("ensemble", "all-balanced ensemble overlap"));
    ensemble->add_option("--cap", opt.cap, "enumeration cap on n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error(kExitBadArgs, "bad_args", e.what());
        return kExitBadArgs;
    }

    try {
        if (command == "classify") return run_classify(opt);
        if (command == "encode") return run_encode(opt);
        if (command == "basis") return run_basis(opt);
        if (command == "analyze") return run_analyze(opt);
        if (command == "thresholds") return run_thresholds(opt);
        if (command == "synth") return run_synth(opt);
        if (command == "simulate") return run_simulate(opt);
        if (command == "ensemble") return run_ensemble(opt);
        emit_error(kExitBadArgs, "bad_args", "unknown command");
        return kExitBadArgs;
    } catch (const qfilter::NotPsdError& e) {
        nlohmann::json err = qfilter::error_record(kExitInfeasible, "not_psd", e.what());
        err["error"]["min_eigenvalue"] = e.min_eigenvalue();
        std::cout << err.dump(2) << std::endl;
        return kExitInfeasible;
    } catch (const qfilter::CapExceededError& e) {
        emit_error(kExitCapExceeded, "cap_exceeded", e.what());
        return kExitCapExceeded;
    } catch (const qfilter::ValidationError& e) {
        emit_error(kExitValidation, "validation_failure", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        emit_error(kExitBadArgs, "bad_args", e.what());
        return kExitBadArgs;
    }
}
