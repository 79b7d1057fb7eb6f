#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "gempic/derham1d.hpp"

using namespace gempic;

namespace {

CoeffVector to_coeffs(const Eigen::VectorXcd& v) { return CoeffVector(v.data(), v.data() + v.size()); }

double max_abs(const DenseMatrix& A) { return A.cwiseAbs().maxCoeff(); }

std::vector<SequencePair> all_sequences(std::size_t M_spline, std::size_t M_fourier, double L)
{
    return {SequencePair::spline(M_spline, L, 1), SequencePair::spline(M_spline, L, 2),
            SequencePair::spline(M_spline, L, 3), SequencePair::fourier(M_fourier, L)};
}

}  // namespace

TEST_SUITE("derham1d")
{
    TEST_CASE("fourier differential is diag(2 pi i k / L)")
    {
        const auto s = SequencePair::fourier(5, 2.0 * M_PI);
        const DenseMatrix D = s.differential();
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const cplx expect = i == j ? cplx(0.0, (i - 2) * 1.0) : cplx(0.0);
                CHECK(std::abs(D(i, j) - expect) < 1e-15);
            }
        CHECK(max_abs(s.mass(0) - DenseMatrix::Identity(5, 5) * (2.0 * M_PI)) == 0.0);
        CHECK(max_abs(s.mass(1) - DenseMatrix::Identity(5, 5) * (2.0 * M_PI)) == 0.0);
    }

    TEST_CASE("differential annihilates constants")
    {
        for (const auto& s : all_sequences(8, 9, 1.7)) {
            const auto c = s.kind() == BasisKind::Spline ? CoeffVector(s.size(), 1.0)
                                                         : s.dofs_to_coeffs(0, std::vector<double>(s.size(), 1.0));
            for (const auto& v : s.apply_differential(c)) CHECK(std::abs(v) < 1e-15);
            const DenseMatrix D = s.differential();
            const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(s.size()));
            if (s.kind() == BasisKind::Spline) CHECK((D * one).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    TEST_CASE("spline p=1 mass matrix")
    {
        const auto s = SequencePair::spline(8, 1.0, 1);
        const double h = 1.0 / 8.0;
        const DenseMatrix M0 = s.mass(0);
        const double row[8] = {2 * h / 3, h / 6, 0, 0, 0, 0, 0, h / 6};
        for (int j = 0; j < 8; ++j) CHECK(M0(0, j).real() == doctest::Approx(row[j]).epsilon(1e-15));
    }

    TEST_CASE("mass matrices are SPD, banded, and K0 rows sum to one")
    {
        for (int p = 1; p <= 4; ++p) {
            const auto s = SequencePair::spline(12, 2.0, p);
            for (int lvl = 0; lvl < 2; ++lvl) {
                const Eigen::MatrixXd A = s.mass(lvl).real();
                CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-15 * A.cwiseAbs().maxCoeff());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
                CHECK(es.eigenvalues().minCoeff() > 0.0);
            }
            const Eigen::MatrixXd M0 = s.mass(0).real();
            for (int i = 0; i < 12; ++i) CHECK((M0.row(i).array().abs() > 1e-15).count() == 2 * p + 1);
            const Eigen::MatrixXd K = s.change_of_basis(0).real();
            for (int i = 0; i < 12; ++i) CHECK(K.row(i).sum() == doctest::Approx(1.0).epsilon(1e-15));
        }
    }

    TEST_CASE("spline partition of unity at random points")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-3.0, 5.0);
        for (int p = 1; p <= 5; ++p) {
            const auto s = SequencePair::spline(9, 2.0, p);
            for (int t = 0; t < 50; ++t) {
                const double x = u(rng);
                double sum = 0.0;
                for (std::size_t k = 0; k < 9; ++k) sum += s.basis(0, k, x).real();
                CHECK(std::abs(sum - 1.0) < 1e-13);
            }
        }
    }

    TEST_CASE("point dofs")
    {
        const auto s = SequencePair::spline(4, 1.0, 1);
        const auto d = s.point_dofs([](double x) { return std::sin(2.0 * M_PI * x); });
        const double expect[4] = {0.0, 1.0, 0.0, -1.0};
        for (int i = 0; i < 4; ++i) CHECK(std::abs(d[i] - expect[i]) < 1e-15);
        for (double v : s.point_dofs([](double) { return 1.0; })) CHECK(v == 1.0);

        const auto s3 = SequencePair::spline(7, 1.0, 3);
        const DenseMatrix K = s3.change_of_basis(0);
        for (std::size_t k = 0; k < 7; ++k) {
            const auto col = s3.point_dofs([&](double x) { return s3.basis(0, k, x).real(); });
            for (std::size_t m = 0; m < 7; ++m) CHECK(col[m] == doctest::Approx(K(m, k).real()).epsilon(1e-15));
        }
    }

    TEST_CASE("even degree splines interpolate at knot midpoints")
    {
        const auto s = SequencePair::spline(10, 1.0, 2);
        CHECK(s.grid().offset == doctest::Approx(0.05));
        CHECK(SequencePair::spline(10, 1.0, 3).grid().offset == 0.0);
    }

    TEST_CASE("cell dofs")
    {
        const auto s = SequencePair::spline(6, 3.0, 2);
        for (double v : s.cell_dofs([](double) { return 2.5; })) CHECK(v == doctest::Approx(2.5 * 0.5).epsilon(1e-15));
        auto f = [](double x) { return std::exp(std::sin(x)); };
        auto fp = [](double x) { return std::cos(x) * std::exp(std::sin(x)); };
        const auto d = s.cell_dofs(fp);
        double total = 0.0;
        for (std::size_t m = 0; m < 6; ++m) {
            const double xm = s.grid().node(static_cast<long>(m));
            CHECK(d[m] == doctest::Approx(f(xm) - f(xm - 0.5)).epsilon(1e-14));
            total += d[m];
        }
        const auto c = s.cell_dofs([](double x) { return x * x; });
        double sum = 0.0;
        for (double v : c) sum += v;
        const double a = s.grid().node(-1), b = s.grid().node(5);
        CHECK(sum == doctest::Approx((b * b * b - a * a * a) / 3.0).epsilon(1e-14));
    }

    TEST_CASE("dofs to coefficients")
    {
        const auto f = SequencePair::fourier(7, 2.0);
        const auto c = f.dofs_to_coeffs(0, std::vector<double>(7, 3.0));
        for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(c[k] - (f.mode(k) == 0 ? cplx(3.0) : cplx(0.0))) < 1e-15);
        CHECK(std::abs(f.edge_factor(3) - cplx(2.0 / 7.0)) < 1e-16);
        CHECK_THROWS_AS(f.dofs_to_coeffs(0, std::vector<double>(6, 0.0)), std::invalid_argument);

        const auto s = SequencePair::spline(8, 1.0, 1);
        for (const auto& v : s.dofs_to_coeffs(0, std::vector<double>(8, 1.5))) CHECK(std::abs(v - 1.5) < 1e-15);

        // level-1 round trip and evaluation of a reconstructed function
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (const auto& q : all_sequences(10, 11, 2.0)) {
            std::vector<double> d(q.size());
            for (double& v : d) v = u(rng);
            for (int lvl = 0; lvl < 2; ++lvl) {
                const auto back = q.coeffs_to_dofs(lvl, q.dofs_to_coeffs(lvl, d));
                for (std::size_t i = 0; i < d.size(); ++i) CHECK(back[i] == doctest::Approx(d[i]).epsilon(1e-13));
            }
            const auto c0 = q.dofs_to_coeffs(0, d);
            for (std::size_t m = 0; m < q.size(); ++m)
                CHECK(q.evaluate(0, c0, q.grid().node(static_cast<long>(m))) == doctest::Approx(d[m]).epsilon(1e-12));
        }
    }

    TEST_CASE("fourier level-1 coefficients reproduce cell integrals")
    {
        const auto f = SequencePair::fourier(9, 3.0);
        auto g = [](double x) { return 0.3 + std::cos(2.0 * M_PI * x / 3.0) - 0.5 * std::sin(4.0 * M_PI * x / 3.0); };
        const auto d = f.cell_dofs(g);
        const auto c = f.dofs_to_coeffs(1, d);
        for (double x : {0.1, 0.77, 2.9}) CHECK(f.evaluate(1, c, x) == doctest::Approx(g(x)).epsilon(1e-13));
    }

    TEST_CASE("commuting diagram on random trigonometric polynomials")
    {
        const double L = 2.0 * M_PI / 1.25;
        for (const auto& s : all_sequences(16, 15, L)) {
            double worst = 0.0;
            for (int i = 0; i < 50; ++i)
                worst = std::max(worst, commuting_residual(s, random_trig_polynomial(L, 5, 100 + i)));
            CHECK(worst <= 1e-11);
            CHECK(commuting_residual(s, {[](double) { return 2.0; }, [](double) { return 0.0; }}) <= 1e-15);
            const TestFunction sine{[L](double x) { return std::sin(2 * M_PI * x / L); },
                                    [L](double x) { return 2 * M_PI / L * std::cos(2 * M_PI * x / L); }};
            CHECK(commuting_residual(s, sine) <= 1e-11);
        }
    }

    TEST_CASE("skipping the collocation solve breaks commuting")
    {
        const double L = 3.0;
        const auto s = SequencePair::spline(16, L, 3);
        CHECK(commuting_residual(s, random_trig_polynomial(L, 3, 9), true) > 1e-3);
    }

    TEST_CASE("averaging operator")
    {
        const auto f = SequencePair::fourier(9, 2.0);
        const DenseMatrix A = f.averaging(AveragingLevel::FromV1);
        CHECK(std::abs(A(4, 4) - cplx(1.0)) < 1e-16);  // mode 0

        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (const auto& s : all_sequences(10, 11, 2.0)) {
            const auto M = static_cast<Eigen::Index>(s.size());
            // constants in V1 map to the same constant in V0
            const auto c1 = s.dofs_to_coeffs(1, std::vector<double>(s.size(), 0.7 * s.grid().h));
            Eigen::VectorXcd v1 = Eigen::Map<const Eigen::VectorXcd>(c1.data(), M);
            const auto avg = to_coeffs(s.averaging(AveragingLevel::FromV1) * v1);
            for (double x : {0.13, 1.1}) CHECK(s.evaluate(0, avg, x) == doctest::Approx(0.7).epsilon(1e-13));
            // <u, A D u> = 0
            std::vector<double> d(s.size());
            for (double& v : d) v = u(rng);
            const auto c = s.dofs_to_coeffs(0, d);
            const Eigen::VectorXcd cu = Eigen::Map<const Eigen::VectorXcd>(c.data(), M);
            const cplx form = cu.dot(s.mass(0) * (s.averaging(AveragingLevel::DerivativeOfV0) * cu));
            CHECK(std::abs(form) < 1e-12);
        }
    }

    TEST_CASE("geometric operators are the transformed practical ones")
    {
        for (const auto& s : all_sequences(9, 9, 1.3)) {
            const auto M = static_cast<Eigen::Index>(s.size());
            for (int lvl = 0; lvl < 2; ++lvl) {
                const DenseMatrix K = s.change_of_basis(lvl);
                const DenseMatrix Kinv = K.inverse();
                const DenseMatrix G = Kinv.adjoint() * s.mass(lvl) * Kinv;
                for (Eigen::Index i = 0; i < M; ++i)
                    for (Eigen::Index j = 0; j < M; ++j)
                        CHECK(std::abs(G(i, j) - s.geometric_mass(lvl).entry(static_cast<std::size_t>(i),
                                                                            static_cast<std::size_t>(j))) <
                              1e-12 * std::abs(G(0, 0)));
            }
            const Circulant& A = s.geometric_averaging();
            CHECK(A.entry(0, 0) == doctest::Approx(0.5 / s.grid().h));
            CHECK(A.entry(0, 1) == doctest::Approx(0.5 / s.grid().h));
        }
    }

    TEST_CASE("construction errors")
    {
        CHECK_THROWS_AS(SequencePair::fourier(8, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(SequencePair::spline(3, 1.0, 3), std::invalid_argument);
        CHECK_THROWS_AS(SequencePair::spline(8, 1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(SequencePair::spline(2, 1.0, 1), std::invalid_argument);
    }

    TEST_CASE("geometric d and its transpose")
    {
        const std::vector<double> u{1.0, 4.0, 9.0, 16.0};
        std::vector<double> du(4), dtu(4);
        apply_d(u, du);
        apply_dT(u, dtu);
        CHECK(du == std::vector<double>{-15.0, 3.0, 5.0, 7.0});
        CHECK(dtu == std::vector<double>{-3.0, -5.0, -7.0, 15.0});
        std::vector<double> w{1.0, 2.0, 6.0};
        remove_mean(w);
        CHECK(w[0] + w[1] + w[2] == doctest::Approx(0.0));
    }
}
