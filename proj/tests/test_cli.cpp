#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>

#include "rounds/cli.hpp"
#include "rounds/error.hpp"

using namespace rounds;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

Run run(const std::string& line) { return run(words(line)); }

Json run_json(const std::string& line) {
    const auto r = run(line + " --format json");
    REQUIRE(r.status == 0);
    return Json::parse(r.out);
}

Json error_object(const Run& r) {
    REQUIRE(!r.err.empty());
    return Json::parse(r.err).at("error");
}

std::vector<std::string> key_paths(const Json& obj, const std::string& prefix = "") {
    std::vector<std::string> out;
    for (const auto& [k, v] : obj.items()) {
        const std::string path = prefix.empty() ? k : prefix + "." + k;
        out.push_back(path);
        if (v.is_object()) {
            const auto inner = key_paths(v, path);
            out.insert(out.end(), inner.begin(), inner.end());
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return s;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("rounds_test_" + name);
}

}  // namespace

TEST_CASE("output schemas match the golden files") {
    for (const char* name : {"alpha", "beta", "usum", "simulate", "sweep", "validate"}) {
        INFO("command " << name);
        std::ifstream in(std::string(GOLDEN_DIR) + "/" + name + ".txt");
        REQUIRE(in);
        std::map<std::string, std::string> golden;
        for (std::string line; std::getline(in, line);) {
            const auto colon = line.find(": ");
            golden[line.substr(0, colon)] = line.substr(colon + 2);
        }
        const auto csv = run(golden["args"] + " --format csv");
        REQUIRE(csv.status == 0);
        CHECK(csv.out.substr(0, csv.out.find("\r\n")) == golden["csv"]);

        const auto j = run_json(golden["args"]);
        std::vector<std::string> top;
        for (const auto& [k, v] : j.items()) top.push_back(k);
        CHECK(join(top) == golden["json"]);
        const Json& first = j["rows"].empty() ? j["checks"][0] : j["rows"][0];
        CHECK(join(key_paths(first)) == golden["row"]);
        std::vector<std::string> echo;
        for (const auto& [k, v] : j["config_echo"].items()) echo.push_back(k);
        CHECK(join(echo) == golden["config_echo"]);
    }
}

TEST_CASE("alpha at the headline parameters") {
    const auto j = run_json("alpha --k 40 --l 20000 --method survival,asymptotic,simple");
    REQUIRE(j["rows"].size() == 3);
    const double survival = j["rows"][0]["value"];
    const double asymptotic = j["rows"][1]["value"];
    CHECK(std::fabs(survival - asymptotic) <= 0.01);
    CHECK(j["rows"][0]["consistency"] == "reference");
    CHECK(j["rows"][1]["consistency"] == "ok");
    CHECK(j["rows"][1]["breakdown"]["leading"].get<double>() == doctest::Approx(391.17).epsilon(1e-4));
}

TEST_CASE("alpha renders exact rationals both ways") {
    const auto j = run_json("alpha --k 2 --l 2 --method exact-rational");
    CHECK(j["rows"][0]["rational"] == "8/3");
    const std::string decimal = j["rows"][0]["decimal"];
    CHECK(decimal.rfind("2.666666666666666", 0) == 0);
}

TEST_CASE("alpha flags a diverging floating alternating sum") {
    const auto j = run_json("alpha --k 40 --l 20000 --method survival,alternating-float");
    CHECK(j["rows"][1]["value"].is_null());
    CHECK(j["rows"][1]["log10_cancellation_ratio"].get<double>() > 100.0);
    CHECK(j["rows"][1]["consistency"] == "inconsistent");
}

TEST_CASE("exit status contract") {
    CHECK(run("alpha --k 2 --l 3").status == 0);
    CHECK(run("--help").status == 0);

    for (const char* line : {"", "alpha --bogus 1", "alpha --k x", "alpha --method nope",
                             "alpha --format xml", "alpha --k 2,3 --l 4", "sweep --k , --l 10",
                             "sweep --l-range 10:5:3", "validate --check nope",
                             "--params-file /nonexistent/params.json alpha"}) {
        INFO("args: " << line);
        const auto r = run(line);
        CHECK(r.status == 2);
        CHECK(error_object(r)["code"] == "usage");
    }

    const auto bad_k = run("alpha --k 1 --l 5");
    CHECK(bad_k.status == 3);
    CHECK(error_object(bad_k)["code"] == "invalid-alphabet");
    CHECK(run("alpha --k 2 --l 0").status == 3);
    CHECK(run("alpha --k 2 --l 5 --tol 0").status == 3);
    CHECK(run("usum --m 1 --n 5").status == 3);
    CHECK(run("alpha --k 2 --l 400 --method exact-rational").status == 3);

    const auto serial = run("simulate --k 40 --l 20000 --model serial");
    CHECK(serial.status == 3);
    const auto e = error_object(serial);
    CHECK(e["code"] == "infeasible-serial");
    CHECK(e["log10_mean"].get<double>() == doctest::Approx(20000.0 * std::log10(40.0)));

    const auto failed = run("validate --quick --perturb-gamma 1e-6 --check gamma-half,gamma-modulus,periodicity");
    CHECK(failed.status == 4);
    const auto f = error_object(failed);
    CHECK(f["failed"] == Json({"gamma-half", "gamma-modulus"}));
}

TEST_CASE("sweep over a geometric grid") {
    const auto j = run_json("sweep --k 2,40 --l-range 100:100000:4");
    REQUIRE(j["rows"].size() == 8);
    const std::int64_t ks[] = {2, 2, 2, 2, 40, 40, 40, 40};
    const std::int64_t ls[] = {100, 1000, 10000, 100000};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(j["rows"][i]["k"] == ks[i]);
        CHECK(j["rows"][i]["l"] == ls[i % 4]);
    }
    // residual * L settles to a constant per K
    for (std::size_t block : {0u, 4u}) {
        double lo = INFINITY;
        double hi = 0.0;
        for (std::size_t i = block; i < block + 4; ++i) {
            const double v = std::fabs(j["rows"][i]["residual_times_l"].get<double>());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi / lo < 1.05);
    }
}

TEST_CASE("single-cell sweep reproduces alpha") {
    for (const char* cell : {"--k 2 --l 7", "--k 40 --l 20000", "--k 5 --l 1"}) {
        INFO(cell);
        const auto sweep = run_json(std::string("sweep ") + cell)["rows"][0];
        const auto alpha = run_json(std::string("alpha --method survival,asymptotic ") + cell)["rows"];
        CHECK(sweep["exact"] == alpha[0]["value"]);
        CHECK(sweep["exact_error_bound"] == alpha[0]["error_bound"]);
        CHECK(sweep["asymptotic"] == alpha[1]["value"]);
        CHECK(sweep["leading"] == alpha[1]["breakdown"]["leading"]);
    }
}

TEST_CASE("sweep output does not depend on thread count") {
    auto rows = [](const std::string& threads) {
        return run_json("sweep --k 2,3,5 --l-range 1:5000:9 --threads " + threads)["rows"];
    };
    CHECK(rows("1") == rows("4"));
}

TEST_CASE("oversized sweep is refused with a chunking hint") {
    const auto lengths = expand_range({10, 1000, 50}).size();
    const auto r = run("sweep --k 2,3,4 --l-range 10:1000:50 --max-cells 100");
    CHECK(r.status == 3);
    const std::string msg = error_object(r)["message"];
    CHECK(msg.find(std::to_string(3 * lengths) + " cells") != std::string::npos);
    CHECK(msg.find("chunks of at most " + std::to_string(100 / lengths) + " alphabet sizes") !=
          std::string::npos);

    const auto long_grid = run("sweep --k 2 --l-range 1:100000:400 --max-cells 100");
    CHECK(long_grid.status == 3);
    const std::string long_msg = error_object(long_grid)["message"];
    CHECK(long_msg.find("split the L grid") != std::string::npos);
}

TEST_CASE("params file supplies the config and flags override it") {
    const auto path = temp_path("params.json");
    {
        std::ofstream f(path);
        f << R"({"command": "alpha", "k": 3, "l": [4], "method": ["survival", "exact-rational"]})";
    }
    const auto from_file = run_json("--params-file " + path.string());
    CHECK(from_file["config_echo"]["k"] == Json({3}));
    CHECK(from_file["rows"].size() == 2);

    const auto overridden = run_json("alpha --params-file " + path.string() + " --l 6 --method survival");
    CHECK(overridden["config_echo"]["l"] == Json({6}));
    CHECK(overridden["rows"].size() == 1);
    CHECK(overridden["rows"][0]["k"] == 3);

    {
        std::ofstream f(path);
        f << R"({"command": "alpha", "kk": 3})";
    }
    CHECK(run("--params-file " + path.string()).status == 2);
    std::filesystem::remove(path);
}

TEST_CASE("config_echo replays to the same simulation") {
    const auto first = run_json("simulate --k 3 --l 5 --trials 5000 --seed 99");
    const auto path = temp_path("echo.json");
    {
        std::ofstream f(path);
        f << first["config_echo"].dump();
    }
    const auto second = run_json("--params-file " + path.string());
    CHECK(first["rows"] == second["rows"]);
    std::filesystem::remove(path);
}

TEST_CASE("--out writes the report to a file") {
    const auto path = temp_path("out.csv");
    const auto r = run("beta --k 2 --l 100 --format csv --out " + path.string());
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("k,l,beta_closed", 0) == 0);
    CHECK(header.back() == '\r');
    std::filesystem::remove(path);
}

TEST_CASE("csv quoting and locale-independent numbers") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");

    struct CommaDecimal : std::numpunct<char> {
        char do_decimal_point() const override { return ','; }
    };
    const auto saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
    CHECK(format_number(0.1, 17) == "0.10000000000000001");
    CHECK(format_number(1.5, 6) == "1.5");
    std::locale::global(saved);
}

TEST_CASE("human table uses six significant digits") {
    const auto r = run("beta --k 2 --l 1000");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("1.33275 ") != std::string::npos);
    CHECK(r.out.find("1.332746") == std::string::npos);
}

TEST_CASE("length ranges are geometric and deduplicated") {
    CHECK(expand_range({100, 100000, 4}) == std::vector<std::int64_t>{100, 1000, 10000, 100000});
    CHECK(expand_range({1, 3, 10}) == std::vector<std::int64_t>{1, 2, 3});
    CHECK(expand_range({7, 7, 1}) == std::vector<std::int64_t>{7});
}
