#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rounds/error.hpp"
#include "rounds/exact.hpp"
#include "rounds/random.hpp"
#include "rounds/simulate.hpp"

using namespace rounds;

namespace {

void check_invariants(const SimulationSummary& s) {
    std::uint64_t total = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& [r, c] : s.histogram) {
        total += c;
        sum += static_cast<double>(r) * static_cast<double>(c);
        sum_sq += static_cast<double>(r) * static_cast<double>(r) * static_cast<double>(c);
    }
    CHECK(total == s.trials);
    CHECK(static_cast<double>(s.min_rounds) <= s.mean);
    CHECK(s.mean <= static_cast<double>(s.max_rounds));
    CHECK(s.histogram.begin()->first == s.min_rounds);
    CHECK(s.histogram.rbegin()->first == s.max_rounds);
    const double n = static_cast<double>(s.trials);
    CHECK(s.mean == doctest::Approx(sum / n).epsilon(1e-12));
    if (s.trials > 1) {
        const double var = (sum_sq - sum * sum / n) / (n - 1.0);
        CHECK(s.std_error == doctest::Approx(std::sqrt(var / n)).epsilon(1e-9));
    }
}

bool within(const SimulationSummary& s, double expect, double sigmas) {
    return std::fabs(s.mean - expect) <= sigmas * s.std_error;
}

bool same(const SimulationSummary& a, const SimulationSummary& b) {
    return a.trials == b.trials && a.mean == b.mean && a.std_error == b.std_error &&
           a.min_rounds == b.min_rounds && a.max_rounds == b.max_rounds &&
           a.histogram == b.histogram && a.seed == b.seed && a.model == b.model;
}

}  // namespace

TEST_CASE("random streams") {
    Xoshiro256 a = Xoshiro256::substream(42, 7);
    Xoshiro256 b = Xoshiro256::substream(42, 7);
    Xoshiro256 c = Xoshiro256::substream(42, 8);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs = differs || x != c();
    }
    CHECK(differs);

    Xoshiro256 g(1);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = uniform_open(g);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        CHECK(uniform_below(g, 40) < 40);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
}

TEST_CASE("parallel simulation matches small-word means") {
    const auto one = simulate_parallel(validate(2, 1), 1000000, 1);
    check_invariants(one);
    CHECK(within(one, 2.0, 3.0));

    const auto two = simulate_parallel(validate(2, 2), 1000000, 2);
    check_invariants(two);
    CHECK(within(two, 8.0 / 3.0, 3.0));
    CHECK(two.model == GuessModel::parallel);
    CHECK(two.seed == 2);
}

TEST_CASE("parallel simulation at the headline parameters") {
    const auto p = validate(40, 20000);
    const auto s = simulate_parallel(p, 10000, 2024);
    check_invariants(s);
    const double exact = mean_rounds_survival(p, 1e-9).value;
    MESSAGE("mean " << s.mean << " +- " << s.std_error << " vs " << exact);
    CHECK(within(s, exact, 3.0));
}

TEST_CASE("simulation is deterministic and independent of thread count") {
    const auto p = validate(3, 5);
    const auto a = simulate_parallel(p, 20001, 99, {SamplingMode::max_inverse, 1});
    const auto b = simulate_parallel(p, 20001, 99, {SamplingMode::max_inverse, 4});
    const auto c = simulate_parallel(p, 20001, 99, {SamplingMode::max_inverse, 7});
    CHECK(same(a, b));
    CHECK(same(a, c));
    const auto d = simulate_parallel(p, 20001, 100);
    CHECK_FALSE(same(a, d));

    const auto lit1 = simulate_parallel(p, 5000, 5, {SamplingMode::literal, 1});
    const auto lit3 = simulate_parallel(p, 5000, 5, {SamplingMode::literal, 3});
    CHECK(same(lit1, lit3));
    CHECK_THROWS_AS(simulate_parallel(p, 0, 1), Error);
}

TEST_CASE("sampling modes agree in distribution") {
    const auto p = validate(2, 3);
    const auto fast = simulate_parallel(p, 200000, 11, {SamplingMode::max_inverse, 1});
    const auto letters = simulate_parallel(p, 200000, 12, {SamplingMode::per_letter, 1});
    const auto literal = simulate_parallel(p, 200000, 13, {SamplingMode::literal, 1});
    const auto fl = chi_square_homogeneity(fast, literal);
    const auto pl = chi_square_homogeneity(letters, literal);
    MESSAGE("p-values " << fl.p_value << " " << pl.p_value);
    CHECK(fl.p_value > 0.001);
    CHECK(pl.p_value > 0.001);
    for (const auto* s : {&fast, &letters, &literal}) CHECK(empirical_cdf_check(*s, p).p_value > 0.001);

    // the homogeneity test has power against a different alphabet
    const auto other = simulate_parallel(validate(3, 3), 200000, 14, {SamplingMode::literal, 1});
    CHECK(chi_square_homogeneity(fast, other).p_value < 1e-6);
}

TEST_CASE("serial simulation") {
    const auto four = simulate_serial(validate(2, 2), 1000000, 3);
    check_invariants(four);
    CHECK(four.model == GuessModel::serial);
    CHECK(within(four, 4.0, 3.0));

    const auto eight = simulate_serial(validate(2, 3), 1000000, 4);
    CHECK(within(eight, 8.0, 3.0));

    try {
        simulate_serial(validate(40, 20000), 10, 1);
        FAIL("expected infeasible-serial");
    } catch (const InfeasibleSerial& e) {
        CHECK(e.code() == ErrorCode::infeasible_serial);
        CHECK(e.log10_mean() == doctest::Approx(20000 * std::log10(40.0)));
        CHECK(std::round(e.log10_mean()) == 32041.0);
    }
    CHECK_THROWS_AS(simulate_serial(validate(10, 7), 10, 1), InfeasibleSerial);
    CHECK_NOTHROW(simulate_serial(validate(10, 7), 10, 1, 1e7));
}

TEST_CASE("serial mean in log10") {
    CHECK(serial_mean_exact(validate(2, 10)) == doctest::Approx(3.0103).epsilon(1e-5));
    CHECK(serial_mean_exact(validate(40, 20000)) == doctest::Approx(32041.2).epsilon(1e-6));
    CHECK(serial_mean_exact(validate(10, 3)) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("goodness of fit against the round pmf") {
    const auto p = validate(2, 2);
    const auto sim = simulate_parallel(p, 1000000, 8);
    const auto fit = empirical_cdf_check(sim, p);
    MESSAGE("chi2 " << fit.chi_square << " df " << fit.degrees_of_freedom << " p " << fit.p_value);
    CHECK(fit.p_value > 0.001);
    CHECK(fit.degrees_of_freedom == fit.bins - 1);
    CHECK(fit.bins >= 10);

    const auto wrong = simulate_parallel(validate(3, 2), 1000000, 9);
    CHECK(empirical_cdf_check(wrong, p).p_value < 1e-6);

    SimulationSummary single;
    single.trials = 20000;
    single.histogram[3] = 20000;
    single.min_rounds = single.max_rounds = 3;
    single.mean = 3.0;
    try {
        empirical_cdf_check(single, p);
        FAIL("expected degenerate-bins");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_bins);
    }

    const auto few = simulate_parallel(p, 999, 1);
    try {
        empirical_cdf_check(few, p);
        FAIL("expected too-few-trials");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::too_few_trials);
    }
    CHECK_THROWS_AS(empirical_cdf_check(simulate_serial(p, 20000, 1), p), Error);
}

TEST_CASE("accumulator merge is order independent") {
    RoundAccumulator a;
    RoundAccumulator b;
    RoundAccumulator c;
    for (std::uint64_t i = 1; i < 500; ++i) (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add(i * i % 37 + 1);
    RoundAccumulator ab_c = a;
    ab_c.merge(b);
    ab_c.merge(c);
    RoundAccumulator c_ba = c;
    c_ba.merge(b);
    c_ba.merge(a);
    CHECK(ab_c.count() == c_ba.count());
    CHECK(ab_c.mean() == c_ba.mean());
    CHECK(ab_c.stddev() == c_ba.stddev());
    CHECK(ab_c.histogram() == c_ba.histogram());
    CHECK(ab_c.min() == c_ba.min());
    CHECK(ab_c.max() == c_ba.max());
}
