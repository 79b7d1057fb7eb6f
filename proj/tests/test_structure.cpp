#include <doctest.h>

#include "gempic/structure.hpp"

using namespace gempic;

namespace {

struct Fixture {
    SequencePair seq;
    Coupling coupling;
    ParticleEnsemble ens;
    FieldState f;
    Fixture(SequencePair s, int shape_degree, int dv, std::size_t N, unsigned long long seed)
        : seq(std::move(s)), coupling(seq, ShapeFn(shape_degree, seq.grid().h), Backend::Serial)
    {
        RandomStateSpec spec;
        spec.N = N;
        spec.dv = dv;
        random_state(coupling, spec, seed, ens, f);
    }
};

}  // namespace

TEST_SUITE("structure")
{
    TEST_CASE("poisson matrix is antisymmetric and reproduces the production kernels")
    {
        for (int dv : {1, 2}) {
            for (auto seq : {SequencePair::fourier(7, 3.0), SequencePair::spline(8, 3.0, 2)}) {
                for (unsigned long long seed = 1; seed <= 5; ++seed) {
                    Fixture fx(seq, 2, dv, 4, seed);
                    const Eigen::MatrixXd J = assemble_J(fx.coupling, fx.ens, fx.f);
                    CHECK((J + J.transpose()).cwiseAbs().maxCoeff() == 0.0);
                    const Eigen::VectorXd a = J * hamiltonian_gradient(fx.seq, fx.ens, fx.f);
                    const Eigen::VectorXd b = production_rhs(fx.coupling, fx.ens, fx.f);
                    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
                }
            }
        }
    }

    TEST_CASE("pack and unpack round trip")
    {
        Fixture fx(SequencePair::fourier(5, 2.0), 1, 2, 3, 4);
        const Eigen::VectorXd U = pack_state(fx.ens, fx.f);
        CHECK(U.size() == 3 * 3 + 3 * 5);
        ParticleEnsemble e2 = fx.ens;
        FieldState f2 = FieldState::zeros(5, 2);
        const auto v0 = f2.version;
        unpack_state(U, e2, f2);
        CHECK(e2.v2 == fx.ens.v2);
        CHECK(f2.b3 == fx.f.b3);
        CHECK(f2.version != v0);
        CHECK_THROWS_AS(unpack_state(U.head(4), e2, f2), std::invalid_argument);
    }

    TEST_CASE("bracket is antisymmetric and satisfies the jacobi identity")
    {
        Fixture fx(SequencePair::fourier(5, 2.0), 3, 2, 3, 11);
        const Bracket br(fx.coupling, fx.ens, fx.f);
        const Eigen::VectorXd U = pack_state(fx.ens, fx.f);
        const auto n = U.size();
        const Functional F = random_quadratic(n, 1, 0.5);
        const Functional G = random_quadratic(n, 2, 0.5);
        const Functional H = random_quadratic(n, 3, 0.5);
        CHECK(std::abs(br(F, F, U)) <= 1e-15);
        CHECK(br(F, G, U) == doctest::Approx(-br(G, F, U)).epsilon(1e-14));

        const Eigen::Index off = 3 * 3;
        const Functional A = random_linear_fields(n, off, 4);
        const Functional B = random_linear_fields(n, off, 5);
        const Functional C = random_linear_fields(n, off, 6);
        CHECK(std::abs(br.jacobi_residual(A, B, C, U, 1e-5)) <= 1e-10);
        CHECK(std::abs(br.jacobi_residual(F, G, H, U, 1e-5)) <= 1e-6);
    }

    TEST_CASE("dense assembly refuses large systems")
    {
        Fixture fx(SequencePair::fourier(5, 2.0), 1, 1, kStructureMaxParticles + 1, 1);
        CHECK_THROWS_AS(assemble_J(fx.coupling, fx.ens, fx.f), std::length_error);
        Fixture big(SequencePair::fourier(33, 2.0), 1, 1, 2, 1);
        CHECK_THROWS_AS(assemble_J(big.coupling, big.ens, big.f), std::length_error);
    }

    TEST_CASE("shape derivative commutes with the projections")
    {
        std::vector<double> xs;
        for (int i = 0; i < 40; ++i) xs.push_back(0.0137 + 0.0977 * i);
        for (auto seq : {SequencePair::fourier(17, 4.0), SequencePair::spline(16, 4.0, 3)}) {
            for (int s : {1, 2, 3}) {
                const Coupling c(seq, ShapeFn(s, seq.grid().h), Backend::Serial);
                const auto rep = verify_jacobi_identities(c, xs);
                CHECK(rep.samples == xs.size());
                CHECK(rep.max_residual <= 1e-13);
            }
        }
    }
}
