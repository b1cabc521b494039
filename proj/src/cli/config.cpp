#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "rounds/cli.hpp"
#include "rounds/error.hpp"

namespace rounds {

namespace {

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::usage, message); }

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        std::string part = text.substr(start, comma - start);
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        if (!part.empty()) parts.push_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) usage("--" + key + ": cannot parse '" + text + "'");
    return value;
}

template <typename T>
T number(const Json& v, const std::string& key) {
    if (v.is_string()) return parse_number<T>(v.get<std::string>(), key);
    if constexpr (std::is_floating_point_v<T>) {
        if (v.is_number()) return v.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
    } else {
        if (v.is_number_integer()) return v.get<T>();
    }
    usage("--" + key + ": expected a number, got " + v.dump());
}

std::vector<std::string> strings(const Json& v, const std::string& key) {
    if (v.is_string()) return split(v.get<std::string>());
    if (!v.is_array()) usage("--" + key + ": expected a list, got " + v.dump());
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) usage("--" + key + ": expected strings, got " + e.dump());
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::int64_t> integers(const Json& v, const std::string& key) {
    std::vector<std::int64_t> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(number<std::int64_t>(e, key));
    } else if (v.is_string()) {
        for (const auto& s : split(v.get<std::string>())) out.push_back(parse_number<std::int64_t>(s, key));
    } else {
        out.push_back(number<std::int64_t>(v, key));
    }
    return out;
}

bool boolean(const Json& v, const std::string& key) {
    if (v.is_boolean()) return v.get<bool>();
    if (v == "true") return true;
    if (v == "false") return false;
    usage("--" + key + ": expected true or false, got " + v.dump());
}

std::string text(const Json& v, const std::string& key) {
    if (!v.is_string()) usage("--" + key + ": expected a string, got " + v.dump());
    return v.get<std::string>();
}

// "lo:hi:points"
LengthRange parse_range(const std::string& spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) usage("--l-range: expected lo:hi:points, got '" + spec + "'");
    LengthRange r;
    r.lo = parse_number<std::int64_t>(spec.substr(0, a), "l-range");
    r.hi = parse_number<std::int64_t>(spec.substr(a + 1, b - a - 1), "l-range");
    r.points = parse_number<int>(spec.substr(b + 1), "l-range");
    if (r.points < 1 || r.lo < 1 || r.hi < r.lo) {
        usage("--l-range: need 1 <= lo <= hi and points >= 1, got '" + spec + "'");
    }
    return r;
}

std::string range_text(const LengthRange& r) {
    return std::to_string(r.lo) + ":" + std::to_string(r.hi) + ":" + std::to_string(r.points);
}

const std::set<std::string> commands{"alpha", "beta", "usum", "simulate", "sweep", "validate"};

}  // namespace

std::vector<std::int64_t> expand_range(const LengthRange& range) {
    std::vector<std::int64_t> out;
    const double lo = std::log(static_cast<double>(range.lo));
    const double hi = std::log(static_cast<double>(range.hi));
    for (int i = 0; i < range.points; ++i) {
        const double t = range.points == 1 ? 0.0 : static_cast<double>(i) / (range.points - 1);
        const auto l = static_cast<std::int64_t>(std::llround(std::exp(lo + t * (hi - lo))));
        if (out.empty() || out.back() != l) out.push_back(l);
    }
    return out;
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["k"] = c.alphabet_sizes;
    j["l"] = c.word_lengths;
    j["l_range"] = c.length_range ? Json(range_text(*c.length_range)) : Json(nullptr);
    j["method"] = Json::array();
    for (Method m : c.methods) j["method"].push_back(std::string(method_name(m)));
    j["tol"] = c.tol;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["format"] = c.format == OutputFormat::table ? "table" : c.format == OutputFormat::csv ? "csv" : "json";
    j["out"] = c.out ? Json(*c.out) : Json(nullptr);
    j["cap"] = c.cap;
    j["m"] = c.m;
    j["n"] = c.n;
    j["model"] = std::string(model_name(c.model));
    j["sampling"] = std::string(sampling_mode_name(c.sampling));
    j["threads"] = c.threads;
    j["serial_cap"] = c.serial_cap;
    j["max_cells"] = c.max_cells;
    j["quick"] = c.quick;
    j["perturb_gamma"] = c.perturb_gamma;
    j["check"] = c.checks;
    return j;
}

RunConfig apply_config(RunConfig c, const Json& patch) {
    if (!patch.is_object()) usage("params file must hold a JSON object");
    for (const auto& [key, v] : patch.items()) {
        if (key == "command") {
            c.command = text(v, key);
            if (!commands.contains(c.command)) usage("unknown command '" + c.command + "'");
        } else if (key == "k") {
            c.alphabet_sizes = integers(v, key);
        } else if (key == "l") {
            c.word_lengths = integers(v, key);
        } else if (key == "l_range") {
            c.length_range = v.is_null() ? std::nullopt : std::optional(parse_range(text(v, key)));
        } else if (key == "method") {
            c.methods.clear();
            for (const auto& name : strings(v, key)) {
                const auto m = parse_method(name);
                if (!m) usage("--method: unknown method '" + name + "'");
                c.methods.push_back(*m);
            }
        } else if (key == "tol") {
            c.tol = number<double>(v, key);
        } else if (key == "trials") {
            c.trials = number<std::uint64_t>(v, key);
        } else if (key == "seed") {
            c.seed = number<std::uint64_t>(v, key);
        } else if (key == "format") {
            const auto f = parse_output_format(text(v, key));
            if (!f) usage("--format: expected table, csv or json");
            c.format = *f;
        } else if (key == "out") {
            c.out = v.is_null() ? std::nullopt : std::optional(text(v, key));
        } else if (key == "cap") {
            c.cap = number<std::int64_t>(v, key);
        } else if (key == "m") {
            c.m = v.is_string() ? v.get<std::string>() : v.dump();
        } else if (key == "n") {
            c.n = number<std::int64_t>(v, key);
        } else if (key == "model") {
            const auto name = text(v, key);
            if (name == "parallel") c.model = GuessModel::parallel;
            else if (name == "serial") c.model = GuessModel::serial;
            else usage("--model: expected parallel or serial");
        } else if (key == "sampling") {
            const auto name = text(v, key);
            if (name == "max-inverse") c.sampling = SamplingMode::max_inverse;
            else if (name == "per-letter") c.sampling = SamplingMode::per_letter;
            else if (name == "literal") c.sampling = SamplingMode::literal;
            else usage("--sampling: expected max-inverse, per-letter or literal");
        } else if (key == "threads") {
            c.threads = number<unsigned>(v, key);
            if (c.threads == 0) usage("--threads must be at least 1");
        } else if (key == "serial_cap") {
            c.serial_cap = number<double>(v, key);
        } else if (key == "max_cells") {
            c.max_cells = number<std::int64_t>(v, key);
        } else if (key == "quick") {
            c.quick = boolean(v, key);
        } else if (key == "perturb_gamma") {
            c.perturb_gamma = number<double>(v, key);
        } else if (key == "check") {
            c.checks = strings(v, key);
        } else {
            usage("unknown setting '" + key + "'");
        }
    }
    return c;
}

}  // namespace rounds
