#include "gempic/verify.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "gempic/derham3d.hpp"
#include "gempic/integrators.hpp"
#include "gempic/structure.hpp"

namespace gempic {

bool VerifyReport::ok() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerifyReport::print(std::ostream& os) const
{
    char buf[256];
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof buf, "%-4s %-44s %.3e <= %.1e\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value,
                      c.tolerance);
        os << buf;
    }
    os << (ok() ? "all checks passed\n" : "verification FAILED\n");
}

namespace {

void add(VerifyReport& r, std::string name, double value, double tol)
{
    r.checks.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol});
}

}  // namespace

double energy_exchange_defect(std::size_t M, int trials, Fault fault)
{
    std::mt19937_64 rng(0x5eed + M);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int kind = 0; kind < 2; ++kind) {
        const std::size_t m = kind == 0 ? M : (M | 1);
        const SequencePair seq = kind == 0 ? SequencePair::spline(m, 2.0, 3) : SequencePair::fourier(m, 2.0);
        for (int t = 0; t < trials; ++t) {
            FieldState f = FieldState::zeros(m, 2);
            CurrentDofs j;
            j.j1.assign(m, 0.0);
            j.j2.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                f.e1[i] = u(rng);
                f.e2[i] = u(rng);
                f.b3[i] = u(rng);
                j.j2[i] = u(rng);
            }
            remove_mean(j.j2);
            FieldRates r = maxwell_rhs(seq, f, j);
            if (fault == Fault::FaradaySignFlip)
                for (double& v : r.b3) v = -v;
            const auto m1e2 = seq.geometric_mass(1).apply(f.e2);
            const auto m0b3 = seq.geometric_mass(0).apply(f.b3);
            double lhs = 0.0, rhs = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                lhs += m1e2[i] * r.e2[i] + m0b3[i] * r.b3[i];
                rhs -= m1e2[i] * j.j2[i];
                scale += std::abs(m1e2[i] * r.e2[i]) + std::abs(m0b3[i] * r.b3[i]) + std::abs(m1e2[i] * j.j2[i]);
            }
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    return worst;
}

VerifyReport run_verification(const VerifyOptions& opt)
{
    VerifyReport rep;
    const double L = 2.0 * M_PI / 1.25;
    const bool skip = opt.fault == Fault::SkipK0Inverse;

    for (std::size_t M : opt.sizes) {
        for (int p = 1; p <= 3; ++p) {
            if (M <= static_cast<std::size_t>(p)) continue;
            const auto seq = SequencePair::spline(M, L, p);
            double worst = 0.0;
            for (int i = 0; i < opt.random_functions; ++i)
                worst = std::max(worst, commuting_residual(seq, random_trig_polynomial(L, 4, 1000u * p + i), skip));
            add(rep, "commuting spline p=" + std::to_string(p) + " M=" + std::to_string(M), worst, 1e-11);
        }
        if (M % 2 == 1) {
            const auto seq = SequencePair::fourier(M, L);
            double worst = 0.0;
            for (int i = 0; i < opt.random_functions; ++i)
                worst = std::max(worst, commuting_residual(seq, random_trig_polynomial(L, 4, 7000u + i), skip));
            add(rep, "commuting fourier M=" + std::to_string(M), worst, 1e-11);
        }
    }

    add(rep, "energy exchange identity", energy_exchange_defect(opt.sizes.empty() ? 16 : opt.sizes.front(), 10, opt.fault),
        1e-12);

    const Complex3D cx = assemble_complex3d(3, 4, 5);
    const ComplexReport cr = verify_complex(cx);
    add(rep, "3d complex D1*D0 (3,4,5)", cr.curl_grad, 0.0);
    add(rep, "3d complex D2*D1 (3,4,5)", cr.div_curl, 0.0);
    add(rep, "3d complex D2 = D0^T (block) (3,4,5)", cr.symmetry_defect, 0.0);

    {
        const auto seq = SequencePair::fourier(5, L);
        const Coupling c(seq, ShapeFn(3, seq.grid().h), Backend::Serial);
        double anti = 0.0, equiv = 0.0, jac = 0.0;
        for (int t = 0; t < 20; ++t) {
            ParticleEnsemble ens;
            FieldState f;
            random_state(c, {}, 100 + t, ens, f);
            const Eigen::MatrixXd J = assemble_J(c, ens, f);
            anti = std::max(anti, (J + J.transpose()).cwiseAbs().maxCoeff());
            const Eigen::VectorXd d = J * hamiltonian_gradient(seq, ens, f) - production_rhs(c, ens, f);
            equiv = std::max(equiv, d.cwiseAbs().maxCoeff());
            if (t < 3) {
                const Bracket br(c, ens, f);
                const Eigen::VectorXd U = pack_state(ens, f);
                jac = std::max(jac, br.jacobi_residual(random_quadratic(U.size(), 1 + t), random_quadratic(U.size(), 2 + t),
                                                       random_quadratic(U.size(), 3 + t), U, 1e-5));
            }
        }
        add(rep, "structure J + J^T", anti, 1e-14);
        add(rep, "structure J gradH - rhs", equiv, 1e-12);
        add(rep, "structure Jacobi residual (fd 1e-5)", jac, 1e-6);
        std::vector<double> xs;
        for (int i = 0; i < 16; ++i) xs.push_back(seq.grid().L * i / 16.0 + (i % 3 == 0 ? 0.0 : 0.123));
        add(rep, "shape commuting identity fourier", verify_jacobi_identities(c, xs).max_residual, 1e-11);
        const auto sp = SequencePair::spline(16, L, 3);
        const Coupling cs(sp, ShapeFn(3, sp.grid().h), Backend::Serial);
        add(rep, "shape commuting identity spline", verify_jacobi_identities(cs, xs).max_residual, 1e-11);
    }
    return rep;
}

}  // namespace gempic
