#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <random>

#include "gempic/shapes.hpp"

using namespace gempic;

TEST_SUITE("shapes")
{
    TEST_CASE("top hat and hat values")
    {
        const ShapeFn s0(0, 0.5);
        CHECK(s0.value(0.2) == doctest::Approx(2.0));
        CHECK(s0.value(0.3) == 0.0);
        CHECK(s0.value(-0.2) == doctest::Approx(2.0));
        const ShapeFn s1(1, 0.5);
        CHECK(s1.value(0.0) == doctest::Approx(2.0));
        CHECK(s1.value(0.25) == doctest::Approx(1.0));
        CHECK(s1.value(0.5) == 0.0);
    }

    TEST_CASE("unit mass, symmetry, nonnegativity")
    {
        using Q = boost::math::quadrature::gauss<double, 30>;
        for (int deg = 0; deg <= 7; ++deg) {
            const ShapeFn s(deg, 0.3);
            double mass = 0.0;
            // exact per polynomial piece
            const double a = -s.half_width();
            for (int i = 0; i <= deg; ++i)
                mass += Q::integrate([&](double x) { return s.value(x); }, a + i * 0.3, a + (i + 1) * 0.3);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
            for (double x : {0.01, 0.1, 0.37, 0.9}) {
                CHECK(s.value(x) == doctest::Approx(s.value(-x)).epsilon(1e-15));
                CHECK(s.value(x) >= 0.0);
            }
        }
        // 64-point quadrature of the cubic shape
        using Q64 = boost::math::quadrature::gauss<double, 64>;
        const ShapeFn s3(3, 1.0);
        double m = 0.0;
        for (int i = 0; i < 4; ++i) m += Q64::integrate([&](double x) { return s3.value(x); }, -2.0 + i, -1.0 + i);
        CHECK(std::abs(m - 1.0) <= 1e-13);
    }

    TEST_CASE("antiderivative")
    {
        for (int deg = 0; deg <= 6; ++deg) {
            const ShapeFn s(deg, 0.7);
            CHECK(s.antiderivative(0.0) == doctest::Approx(0.5).epsilon(1e-15));
            CHECK(s.antiderivative(s.half_width()) == 1.0);
            CHECK(s.antiderivative(-s.half_width()) <= 1e-15);
            CHECK(s.antiderivative(-s.half_width() - 1e-12) == 0.0);
            using Q = boost::math::quadrature::gauss<double, 20>;
            const double a = -0.33, b = 0.41;
            double integral = 0.0;
            std::vector<double> cuts{a};
            for (int i = 0; i <= deg + 1; ++i) {
                const double k = -s.half_width() + i * 0.7;
                if (k > a && k < b) cuts.push_back(k);
            }
            cuts.push_back(b);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                integral += Q::integrate([&](double x) { return s.value(x); }, cuts[i], cuts[i + 1]);
            CHECK(s.antiderivative(b) - s.antiderivative(a) == doctest::Approx(integral).epsilon(1e-13));
        }
    }

    TEST_CASE("derivative matches finite differences")
    {
        const ShapeFn s(3, 0.5);
        for (double x : {-0.6, -0.1, 0.2, 0.55}) {
            const double fd = (s.value(x + 1e-6) - s.value(x - 1e-6)) / 2e-6;
            CHECK(s.derivative(x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }

    TEST_CASE("stencil cell integrals and grid partition of unity")
    {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(-2.0, 12.0);
        const Grid1D g(10, 10.0);
        for (int deg = 0; deg <= 7; ++deg) {
            const ShapeFn s(deg, g.h);
            for (int t = 0; t < 40; ++t) {
                const double x = u(rng);
                Stencil st;
                s.stencil(g, x, st);
                CHECK(st.count == deg + 1);
                double cells = 0.0, points = 0.0;
                for (long j = st.first; j <= st.first + st.count; ++j) cells += st.cell(j);
                for (int r = 0; r < st.count; ++r) {
                    points += st.point[static_cast<std::size_t>(r)];
                    const double d = g.node(st.first + r) - x;
                    if (deg > 0) CHECK(st.point[static_cast<std::size_t>(r)] == doctest::Approx(s.value(d)).epsilon(1e-13));
                    CHECK(st.anti[static_cast<std::size_t>(r)] == doctest::Approx(s.antiderivative(d)).epsilon(1e-13));
                }
                CHECK(cells == doctest::Approx(1.0).epsilon(1e-15));
                if (deg > 0) CHECK(g.h * points == doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("stencil special positions")
    {
        const Grid1D g(8, 8.0);
        Stencil st;
        ShapeFn(0, g.h).stencil(g, 2.5, st);  // cell centre of cell 3 = [2, 3]
        CHECK(st.cell(3) == doctest::Approx(1.0));
        CHECK(st.cell(2) == 0.0);
        ShapeFn(1, g.h).stencil(g, 3.0, st);  // at node 3
        CHECK(st.cell(3) == doctest::Approx(0.5));
        CHECK(st.cell(4) == doctest::Approx(0.5));
        CHECK(st.cell(5) == 0.0);
    }

    TEST_CASE("generic scale path agrees with shape functions")
    {
        const Grid1D g(12, 6.0, 0.25);
        const ShapeFn s(2, 0.8);
        Stencil st;
        s.stencil(g, 3.1, st);
        double cells = 0.0;
        for (long j = st.first; j <= st.first + st.count; ++j) cells += st.cell(j);
        CHECK(cells == doctest::Approx(1.0).epsilon(1e-15));
        for (int r = 0; r < st.count; ++r)
            CHECK(st.point[static_cast<std::size_t>(r)] == doctest::Approx(s.value(g.node(st.first + r) - 3.1)));
        CHECK(st.count <= s.max_stencil(g));
    }

    TEST_CASE("invalid parameters")
    {
        CHECK_THROWS_AS(ShapeFn(-1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(ShapeFn(2, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(ShapeFn(16, 1.0), std::invalid_argument);
    }
}
