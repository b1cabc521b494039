#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "rounds/cli.hpp"
#include "rounds/error.hpp"

namespace rounds {

namespace {

constexpr int exit_usage = 2;
constexpr int exit_domain = 3;

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr FlagSpec flag_specs[] = {
    {"--k", "k", "alphabet size K (comma-separated list for sweep)"},
    {"--l", "l", "word length L (comma-separated list for sweep)"},
    {"--l-range", "l_range", "geometric L grid lo:hi:points (sweep)"},
    {"--method", "method",
     "alpha methods: survival, exact-rational, alternating-float, knuth-identity, asymptotic, simple"},
    {"--tol", "tol", "truncation tolerance of the survival series"},
    {"--trials", "trials", "simulation trials"},
    {"--seed", "seed", "master seed"},
    {"--format", "format", "table, csv or json"},
    {"--out", "out", "write the report to this file instead of stdout"},
    {"--cap", "cap", "largest L (or n) accepted by the exact rational routes"},
    {"--m", "m", "usum base m > 1, exact (\"40/39\", \"1.5\")"},
    {"--n", "n", "usum length n >= 2"},
    {"--model", "model", "simulate: parallel or serial"},
    {"--sampling", "sampling", "simulate: max-inverse, per-letter or literal"},
    {"--threads", "threads", "worker threads for simulate and sweep"},
    {"--serial-cap", "serial_cap", "largest expected K^L the serial simulation accepts"},
    {"--max-cells", "max_cells", "largest sweep grid accepted"},
    {"--perturb-gamma", "perturb_gamma", "validate: relative fault injected into Gamma"},
    {"--check", "check", "validate: comma-separated subset of checks"},
};

void write_error(std::ostream& err, const std::string& code, const std::string& message, Json extra = {}) {
    Json e{{"code", code}, {"message", message}};
    if (extra.is_object()) e.update(extra);
    err << Json{{"error", e}}.dump() << '\n';
}

Json read_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::usage, "cannot open params file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::usage, "params file '" + path + "' is not valid JSON: " + e.what());
    }
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
    if (!config.out) {
        render(report, config.format, out);
        return;
    }
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::usage, "cannot write '" + *config.out + "'");
    render(report, config.format, file);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expected rounds to guess a word when correct letters are kept", "rounds"};
    app.require_subcommand(0, 1);
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& f : flag_specs) options[f.key] = app.add_option(f.flag, values[f.key], f.help);
    std::string params_file;
    app.add_option("--params-file", params_file, "JSON run configuration; flags override its values");
    bool quick = false;
    auto* quick_flag = app.add_flag("--quick", quick, "validate: reduced grids and trial counts");

    const std::pair<const char*, const char*> subcommands[] = {
        {"alpha", "expected rounds by one or more methods"},
        {"beta", "the bounded term of the large-L expansion"},
        {"usum", "the alternating U-sum, exact and asymptotic"},
        {"simulate", "Monte Carlo simulation of the guessing game"},
        {"sweep", "asymptotic against exact over a (K, L) grid"},
        {"validate", "cross-route consistency checks"},
    };
    for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what(), Json{{"exit_status", exit_usage}});
        return exit_usage;
    }

    try {
        Json patch = Json::object();
        for (const auto& f : flag_specs) {
            if (options[f.key]->count() > 0) patch[f.key] = values[f.key];
        }
        if (quick_flag->count() > 0) patch["quick"] = quick;
        if (!app.get_subcommands().empty()) patch["command"] = app.get_subcommands().front()->get_name();

        RunConfig config;
        if (!params_file.empty()) config = apply_config(config, read_params_file(params_file));
        config = apply_config(config, patch);
        if (config.command.empty()) throw Error(ErrorCode::usage, "no command given; see --help");

        const Report report = run_command(config);
        emit(report, config, out);
        if (report.exit_code != 0 && report.checks) {
            Json failed = Json::array();
            for (const auto& c : *report.checks) {
                if (!c["passed"].get<bool>()) failed.push_back(c["name"]);
            }
            write_error(err, "validation-failed", std::to_string(failed.size()) + " check(s) failed",
                        Json{{"exit_status", report.exit_code}, {"failed", failed}});
        }
        return report.exit_code;
    } catch (const InfeasibleSerial& e) {
        write_error(err, std::string(error_code_name(e.code())), e.what(),
                    Json{{"exit_status", exit_domain}, {"log10_mean", e.log10_mean()}});
        return exit_domain;
    } catch (const Error& e) {
        const int status = e.code() == ErrorCode::usage ? exit_usage : exit_domain;
        write_error(err, std::string(error_code_name(e.code())), e.what(), Json{{"exit_status", status}});
        return status;
    }
}

}  // namespace rounds
