#include <doctest.h>

#include <random>

#include "gempic/circulant.hpp"

using namespace gempic;

TEST_SUITE("circulant")
{
    TEST_CASE("apply matches the dense product")
    {
        const Circulant c({4.0, 1.0, 0.0, 0.5, -2.0});
        const std::vector<double> x{1.0, -1.0, 2.0, 0.25, 3.0};
        const auto y = c.apply(x);
        for (std::size_t i = 0; i < 5; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < 5; ++j) s += c.entry(i, j) * x[j];
            CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
        }
    }

    TEST_CASE("solve inverts apply")
    {
        const Circulant c({3.0, 1.0, 0.0, 0.0, 0.0, 1.0});
        const std::vector<double> b{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
        const auto x = c.solve(b);
        const auto r = c.apply(x);
        for (std::size_t i = 0; i < b.size(); ++i) CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-14));
    }

    TEST_CASE("backward difference symbol and transpose")
    {
        // d: (du)_m = u_m - u_{m-1}, symbol 1 - exp(-i theta)
        const std::size_t M = 8;
        std::vector<double> col(M, 0.0);
        col[0] = 1.0;
        col[1] = -1.0;
        const Circulant d(col);
        for (std::size_t k = 0; k < M; ++k) {
            const double th = 2.0 * M_PI * k / M;
            const cplx expect = 1.0 - std::exp(cplx(0.0, -th));
            CHECK(std::abs(d.symbol()[k] - expect) < 1e-14);
        }
        const Circulant dt = d.transpose();
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) CHECK(dt.entry(i, j) == d.entry(j, i));
        CHECK(d.min_abs_symbol() < 1e-14);
    }

    TEST_CASE("products, inverse and symbol round trip")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> a(7), b(7), x(7);
        for (std::size_t i = 0; i < 7; ++i) {
            a[i] = u(rng) + (i == 0 ? 5.0 : 0.0);
            b[i] = u(rng);
            x[i] = u(rng);
        }
        const Circulant A(a), B(b);
        const auto lhs = (A * B).apply(x);
        const auto rhs = A.apply(B.apply(x));
        for (std::size_t i = 0; i < 7; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-13));
        const auto id = (A * A.inverse()).apply(x);
        for (std::size_t i = 0; i < 7; ++i) CHECK(id[i] == doctest::Approx(x[i]).epsilon(1e-13));
        const Circulant R = Circulant::from_symbol(A.symbol());
        for (std::size_t i = 0; i < 7; ++i) CHECK(R.column()[i] == doctest::Approx(a[i]).epsilon(1e-14));
    }

    TEST_CASE("dft round trip and signed frequencies")
    {
        const std::vector<double> x{0.3, -1.0, 2.5, 4.0, 0.0};
        const auto X = dft_real(x);
        CHECK(X[0].real() == doctest::Approx(5.8));
        const auto y = idft_real(X);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-14));
        CHECK(signed_frequency(0, 5) == 0);
        CHECK(signed_frequency(2, 5) == 2);
        CHECK(signed_frequency(3, 5) == -2);
        CHECK(signed_frequency(4, 8) == 4);
    }
}
