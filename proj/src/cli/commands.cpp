#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "rounds/asymptotic.hpp"
#include "rounds/cli.hpp"
#include "rounds/error.hpp"
#include "rounds/validation.hpp"

namespace rounds {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::usage, message); }

ModelParams single_cell(const RunConfig& c) {
    if (c.alphabet_sizes.size() != 1 || c.word_lengths.size() != 1 || c.length_range) {
        usage(c.command + " takes a single --k and --l; use sweep for grids");
    }
    return validate(c.alphabet_sizes.front(), c.word_lengths.front());
}

Report make_report(std::string command, std::vector<Json> rows = {}) {
    Report r;
    r.command = std::move(command);
    r.rows = std::move(rows);
    return r;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json empty_breakdown() {
    return Json{{"leading", nullptr}, {"beta_constant", nullptr}, {"beta_fluctuation", nullptr},
                {"beta_value", nullptr}};
}

Json alpha_row(const ModelParams& p, Method method, const RunConfig& c) {
    const auto start = Clock::now();
    Json row;
    row["method"] = std::string(method_name(method));
    row["k"] = p.alphabet_size;
    row["l"] = p.word_length;
    MeanEstimate est;
    est.method = method;
    std::optional<ExactRational> exact;
    Json breakdown = empty_breakdown();
    switch (method) {
        case Method::survival_series: est = mean_rounds_survival(p, c.tol); break;
        case Method::alternating_exact: exact = mean_rounds_alternating_exact(p, c.cap); break;
        case Method::alternating_float: est = mean_rounds_alternating_float(p); break;
        case Method::knuth_identity: exact = mean_rounds_knuth(p, c.cap); break;
        case Method::asymptotic: {
            const auto b = mean_rounds_asymptotic(p);
            est = to_estimate(b, p);
            breakdown = Json{{"leading", b.leading}, {"beta_constant", b.beta_constant},
                             {"beta_fluctuation", b.beta_fluctuation}, {"beta_value", b.beta_value}};
            break;
        }
        case Method::simple: est = simple_estimate(p); break;
    }
    if (exact) {
        est.value = exact->to_double();
        est.error_bound = 0.0;
    }
    row["value"] = est.value;
    row["error_bound"] = est.error_bound;
    row["rational"] = exact ? Json(exact->to_string()) : Json(nullptr);
    row["decimal"] = exact ? Json(exact->to_decimal(30)) : Json(nullptr);
    row["cancellation_ratio"] = optional_number(est.cancellation_ratio);
    row["log10_cancellation_ratio"] = optional_number(est.log10_cancellation_ratio);
    row["terms"] = method == Method::survival_series ? Json(est.terms) : Json(nullptr);
    row["breakdown"] = breakdown;
    row["wall_ms"] = elapsed_ms(start);
    return row;
}

// Each row is compared with the row carrying the smallest error bound; two
// values are consistent when they differ by no more than the sum of their
// bounds plus a few ulps.
void flag_consistency(std::vector<Json>& rows) {
    std::size_t ref = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double v = rows[i]["value"].is_number() ? rows[i]["value"].get<double>() : NAN;
        if (!std::isfinite(v)) continue;
        if (ref == rows.size() ||
            rows[i]["error_bound"].get<double>() < rows[ref]["error_bound"].get<double>()) {
            ref = i;
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == ref) {
            rows[i]["consistency"] = "reference";
            continue;
        }
        const double v = rows[i]["value"].is_number() ? rows[i]["value"].get<double>() : NAN;
        if (ref == rows.size() || !std::isfinite(v)) {
            rows[i]["consistency"] = "inconsistent";
            continue;
        }
        const double r = rows[ref]["value"].get<double>();
        const double eb = rows[i]["error_bound"].is_number() ? rows[i]["error_bound"].get<double>() : INFINITY;
        const double allowed = eb + rows[ref]["error_bound"].get<double>() +
                               8.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(v), std::fabs(r));
        rows[i]["consistency"] = std::fabs(v - r) <= allowed ? "ok" : "inconsistent";
    }
}

Report cmd_alpha(const RunConfig& c) {
    if (c.methods.empty()) usage("alpha needs at least one --method");
    const auto p = single_cell(c);
    Report report = make_report("alpha");
    for (Method m : c.methods) report.rows.push_back(alpha_row(p, m, c));
    flag_consistency(report.rows);
    return report;
}

Report cmd_beta(const RunConfig& c) {
    const auto p = single_cell(c);
    const double k = static_cast<double>(p.alphabet_size);
    const double l = static_cast<double>(p.word_length);
    const auto b = mean_rounds_asymptotic(p);
    Json row;
    row["k"] = p.alphabet_size;
    row["l"] = p.word_length;
    row["beta_closed"] = b.beta_value;
    row["beta_constant"] = b.beta_constant;
    row["beta_fluctuation"] = b.beta_fluctuation;
    const std::optional<double> diff =
        p.word_length >= 2 ? std::optional(beta_difference(k, p.word_length)) : std::nullopt;
    row["beta_difference"] = optional_number(diff);
    row["difference_gap"] = diff ? Json(*diff - b.beta_value) : Json(nullptr);
    row["amplitude_bound"] = oscillation_amplitude(k);
    row["simple_estimate"] = mean_rounds_simple(k, l);
    row["residual_order"] = b.residual_order;
    return make_report("beta", {row});
}

Report cmd_usum(const RunConfig& c) {
    const auto m = ExactRational::parse(c.m);
    const auto exact = u_sum_exact(m, c.n, c.cap);
    const double approx = u_sum_asymptotic(m.to_double(), c.n);
    Json row;
    row["m"] = m.to_string();
    row["n"] = c.n;
    row["exact"] = exact.to_double();
    row["asymptotic"] = approx;
    row["residual"] = approx - exact.to_double();
    row["residual_times_n"] = (approx - exact.to_double()) * static_cast<double>(c.n);
    return make_report("usum", {row});
}

Report cmd_simulate(const RunConfig& c) {
    const auto p = single_cell(c);
    const SimulationOptions opts{c.sampling, c.threads};
    const bool parallel = c.model == GuessModel::parallel;
    const auto sim = parallel ? simulate_parallel(p, c.trials, c.seed, opts)
                              : simulate_serial(p, c.trials, c.seed, c.serial_cap, opts);
    const double analytic = parallel ? mean_rounds_survival(p, c.tol).value
                                     : std::pow(10.0, serial_mean_exact(p));
    Json row;
    row["model"] = std::string(model_name(c.model));
    row["sampling"] = parallel ? Json(std::string(sampling_mode_name(c.sampling))) : Json(nullptr);
    row["k"] = p.alphabet_size;
    row["l"] = p.word_length;
    row["trials"] = sim.trials;
    row["seed"] = sim.seed;
    row["mean"] = sim.mean;
    row["std_error"] = sim.std_error;
    row["min_rounds"] = sim.min_rounds;
    row["max_rounds"] = sim.max_rounds;
    row["analytic_mean"] = analytic;
    row["z_score"] = sim.std_error > 0 ? Json((sim.mean - analytic) / sim.std_error) : Json(nullptr);
    Json gof{{"chi_square", nullptr}, {"degrees_of_freedom", nullptr}, {"p_value", nullptr}};
    if (parallel && sim.trials >= min_gof_trials) {
        try {
            const auto g = empirical_cdf_check(sim, p);
            gof = Json{{"chi_square", g.chi_square}, {"degrees_of_freedom", g.degrees_of_freedom},
                       {"p_value", g.p_value}};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_bins) throw;
        }
    }
    row["gof"] = gof;
    row["histogram"] = Json::array();
    for (const auto& [rounds, count] : sim.histogram) {
        row["histogram"].push_back(Json{{"rounds", rounds}, {"count", count}});
    }
    return make_report("simulate", {row});
}

Json sweep_row(const ModelParams& p, double tol) {
    const auto b = mean_rounds_asymptotic(p);
    const auto exact = mean_rounds_survival(p, tol);
    const double residual = exact.value - b.total;
    Json row;
    row["k"] = p.alphabet_size;
    row["l"] = p.word_length;
    row["leading"] = b.leading;
    row["beta_constant"] = b.beta_constant;
    row["beta_fluctuation"] = b.beta_fluctuation;
    row["asymptotic"] = b.total;
    row["exact"] = exact.value;
    row["exact_error_bound"] = exact.error_bound;
    row["residual"] = residual;
    row["residual_times_l"] = residual * static_cast<double>(p.word_length);
    return row;
}

Report cmd_sweep(const RunConfig& c) {
    const auto lengths = c.length_range ? expand_range(*c.length_range) : c.word_lengths;
    if (c.alphabet_sizes.empty() || lengths.empty()) usage("sweep grid is empty");
    const auto cells = static_cast<std::int64_t>(c.alphabet_sizes.size() * lengths.size());
    if (cells > c.max_cells) {
        const auto per_k = static_cast<std::int64_t>(lengths.size());
        const std::string hint =
            per_k <= c.max_cells
                ? "split --k into chunks of at most " + std::to_string(c.max_cells / per_k) + " alphabet sizes"
                : "run one K at a time and split the L grid into chunks of at most " +
                      std::to_string(c.max_cells) + " lengths";
        throw Error(ErrorCode::size_limit, "sweep grid has " + std::to_string(cells) +
                                               " cells, above --max-cells " + std::to_string(c.max_cells) +
                                               "; " + hint + ", or raise --max-cells");
    }
    if (!(c.tol > 0)) throw Error(ErrorCode::invalid_tolerance, "tolerance must be positive");
    std::vector<ModelParams> grid;
    for (auto k : c.alphabet_sizes) {
        for (auto l : lengths) grid.push_back(validate(k, l));
    }

    std::vector<Json> rows(grid.size());
    std::vector<std::exception_ptr> failures(c.threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < c.threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < grid.size(); i += c.threads) rows[i] = sweep_row(grid[i], c.tol);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return make_report("sweep", std::move(rows));
}

Report cmd_validate(const RunConfig& c) {
    ValidationOptions opts;
    opts.quick = c.quick;
    opts.perturb_gamma = c.perturb_gamma;
    opts.seed = c.seed;
    opts.only = c.checks;
    Report report = make_report("validate");
    report.checks.emplace();
    for (const auto& r : run_validation(opts)) {
        report.checks->push_back(Json{{"name", r.name},
                                      {"passed", r.passed},
                                      {"measured", r.measured},
                                      {"tolerance", r.tolerance},
                                      {"detail", r.detail},
                                      {"wall_ms", r.wall_ms}});
        if (!r.passed) report.exit_code = 4;
    }
    return report;
}

}  // namespace

Report run_command(const RunConfig& config) {
    const auto start = Clock::now();
    Report report;
    if (config.command == "alpha") report = cmd_alpha(config);
    else if (config.command == "beta") report = cmd_beta(config);
    else if (config.command == "usum") report = cmd_usum(config);
    else if (config.command == "simulate") report = cmd_simulate(config);
    else if (config.command == "sweep") report = cmd_sweep(config);
    else if (config.command == "validate") report = cmd_validate(config);
    else usage(config.command.empty() ? "no command given" : "unknown command '" + config.command + "'");
    report.config_echo = config_to_json(config);
    report.timing_ms = elapsed_ms(start);
    return report;
}

}  // namespace rounds
