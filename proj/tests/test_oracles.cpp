#include <doctest.h>

#include <cmath>

#include "gempic/particles.hpp"
#include "oracles.hpp"

TEST_SUITE("oracles")
{
    TEST_CASE("frozen linear growth rates")
    {
        const auto w = gempic::weibel_case();
        const double gw = oracle::weibel_growth_rate(w.k, w.vth1, w.vth2);
        CHECK(gw == doctest::Approx(0.027837119).epsilon(1e-7));
        CHECK(std::abs(oracle::weibel_dispersion(gw, w.k, w.vth1, w.vth2)) <= 1e-12);

        const auto t = gempic::two_stream_case();
        const double gt = oracle::two_stream_growth_rate(t.k, t.drift);
        CHECK(gt == doctest::Approx(0.225844255).epsilon(1e-7));
        CHECK(std::abs(oracle::two_stream_dispersion(gt, t.k, t.drift)) <= 1e-10);
    }

    TEST_CASE("dispersion residual changes sign across the root")
    {
        const auto t = gempic::two_stream_case();
        const double g = oracle::two_stream_growth_rate(t.k, t.drift);
        CHECK(oracle::two_stream_dispersion(0.5 * g, t.k, t.drift) * oracle::two_stream_dispersion(2.0 * g, t.k, t.drift) < 0.0);
        // without drift the beams are stable: no growing root
        CHECK(oracle::two_stream_dispersion(0.05, t.k, 0.0) > 0.0);
    }
}
