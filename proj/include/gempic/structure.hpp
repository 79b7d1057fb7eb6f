#pragma once

/// Dense Poisson matrix of the reduced particle-field system (desk scale).
///
/// State ordering U = (x, v1, [v2], e1, [e2, b3]) with fields as geometric
/// dofs. H = sum m v^2/2 + e1.Mhat0.e1/2 + e2.Mhat1.e2/2 + b3.Mhat0.b3/2.

#include <Eigen/Dense>

#include <functional>

#include "gempic/coupling.hpp"

namespace gempic {

inline constexpr std::size_t kStructureMaxParticles = 50;
inline constexpr std::size_t kStructureMaxCells = 31;

Eigen::VectorXd pack_state(const ParticleEnsemble& ens, const FieldState& f);
/// Overwrites positions, velocities and fields of (ens, f) from U; weights and species are kept.
void unpack_state(const Eigen::VectorXd& U, ParticleEnsemble& ens, FieldState& f);

double hamiltonian(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f);
Eigen::VectorXd hamiltonian_gradient(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f);

/// Throws std::length_error beyond N = 50 or M = 31.
Eigen::MatrixXd assemble_J(const Coupling& coupling, const ParticleEnsemble& ens, const FieldState& f);

/// Time derivative of U from the matrix-free production kernels.
Eigen::VectorXd production_rhs(const Coupling& coupling, const ParticleEnsemble& ens, const FieldState& f);

/// Random desk-scale state: particles uniform in [0, L), velocities in [-vmax, vmax], e1 from
/// the Poisson solve (Gauss exact), mean-free random e2 and b3 of size field_scale.
struct RandomStateSpec {
    std::size_t N = 3;
    int dv = 2;
    double vmax = 1.0;
    double field_scale = 0.1;
};
void random_state(const Coupling& coupling, const RandomStateSpec& spec, unsigned long long seed,
                  ParticleEnsemble& ens, FieldState& f);

/// Functional with analytic gradient.
struct Functional {
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

/// F(U) = U.A.U/2 + b.U with A symmetric; seeded.
Functional random_quadratic(Eigen::Index n, unsigned long long seed, double scale = 1.0);
/// F(U) = b.U restricted to the field block starting at offset.
Functional random_linear_fields(Eigen::Index n, Eigen::Index offset, unsigned long long seed);

/// Evaluates the bracket {F,G}(U) = (gradF.J.gradG - gradG.J.gradF)/2 on a template ensemble.
class Bracket {
public:
    Bracket(const Coupling& coupling, ParticleEnsemble ens, FieldState f);
    Eigen::MatrixXd J(const Eigen::VectorXd& U) const;
    double operator()(const Functional& F, const Functional& G, const Eigen::VectorXd& U) const;
    /// Cyclic sum of nested brackets, outer gradients by central differences.
    double jacobi_residual(const Functional& F, const Functional& G, const Functional& H, const Eigen::VectorXd& U,
                           double fd_step) const;

private:
    const Coupling* coupling_;
    mutable ParticleEnsemble ens_;
    mutable FieldState f_;
};

struct ShapeCommutingReport {
    double max_residual = 0.0;  // relative to max |point dofs|
    std::size_t samples = 0;
};

/// Per-particle check of sigma1(dS/dx) = D sigma0(S) in the practical basis, with exact
/// piecewise quadrature of S' over cells.
ShapeCommutingReport verify_jacobi_identities(const Coupling& coupling, const std::vector<double>& positions);

}  // namespace gempic
