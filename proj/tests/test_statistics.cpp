#include <doctest.h>

#include <cmath>

#include "rounds/exact.hpp"
#include "rounds/simulate.hpp"

using namespace rounds;

TEST_CASE("parallel means sit within 4 standard errors of the exact mean for most seeds") {
    for (int k : {2, 3, 5}) {
        for (int l : {1, 2, 3, 5}) {
            const auto p = validate(k, l);
            const double exact = mean_rounds_alternating_exact(p).to_double();
            int within = 0;
            double worst = 0.0;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                const auto sim = simulate_parallel(p, 1000000, seed * 7919 + static_cast<std::uint64_t>(k * 100 + l));
                const double z = std::fabs(sim.mean - exact) / sim.std_error;
                worst = std::max(worst, z);
                if (z <= 4.0) ++within;
            }
            INFO("K=" << k << " L=" << l << " worst z " << worst);
            CHECK(within >= 19);
        }
    }
}
