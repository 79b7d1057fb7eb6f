#pragma once

/// Particle-field coupling on geometric dofs.
///
/// Evaluation uses dual vectors g = Mhat e, so a coupling value is the sparse
/// product of g with the point values (level 0) or cell integrals (level 1)
/// of the shape around the particle. Deposits accumulate the same shape
/// values. Every particle loop has a serial reference path and an OpenMP path
/// with per-thread buffers merged in thread order.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gempic/derham1d.hpp"
#include "gempic/maxwell.hpp"
#include "gempic/particles.hpp"
#include "gempic/shapes.hpp"

namespace gempic {

enum class Backend { Serial, OpenMP };
enum class Scheme { Variational, Momentum };

struct CouplingWorkspace {
    std::uint64_t version = ~std::uint64_t{0};
    std::vector<double> e1;      // Mhat0 e1, against point values
    std::vector<double> e2;      // Mhat1 e2, against cell integrals
    std::vector<double> b3;      // Mhat0 b3, against point values
    std::vector<double> e1_avg;  // A^T Mhat0 e1, against cell integrals
    std::vector<double> b3_avg;  // A^T Mhat0 b3, against cell integrals
};

struct CouplingValues {
    double e1 = 0.0, e2 = 0.0, b3 = 0.0;
};

struct MomentumForces {
    double e1 = 0.0, e2 = 0.0;  // averaged electric coupling
    double r1 = 0.0, r2 = 0.0;  // magnetic force per unit charge
};

// sparse stencil products with periodic wrap
inline double dot_point(const std::vector<double>& g, const Grid1D& grid, const Stencil& st)
{
    std::size_t i = grid.wrap(st.first);
    double s = 0.0;
    for (int r = 0; r < st.count; ++r) {
        s += g[i] * st.point[static_cast<std::size_t>(r)];
        if (++i == grid.M) i = 0;
    }
    return s;
}

inline double dot_cell(const std::vector<double>& g, const Grid1D& grid, const Stencil& st)
{
    std::size_t i = grid.wrap(st.first);
    double s = 0.0, prev = 0.0;
    for (int r = 0; r < st.count; ++r) {
        const double F = st.anti[static_cast<std::size_t>(r)];
        s += g[i] * (F - prev);
        prev = F;
        if (++i == grid.M) i = 0;
    }
    return s + g[i] * (1.0 - prev);
}

inline void add_point(double* acc, const Grid1D& grid, const Stencil& st, double a)
{
    std::size_t i = grid.wrap(st.first);
    for (int r = 0; r < st.count; ++r) {
        acc[i] += a * st.point[static_cast<std::size_t>(r)];
        if (++i == grid.M) i = 0;
    }
}

inline void add_cell(double* acc, const Grid1D& grid, const Stencil& st, double a)
{
    std::size_t i = grid.wrap(st.first);
    double prev = 0.0;
    for (int r = 0; r < st.count; ++r) {
        const double F = st.anti[static_cast<std::size_t>(r)];
        acc[i] += a * (F - prev);
        prev = F;
        if (++i == grid.M) i = 0;
    }
    acc[i] += a * (1.0 - prev);
}

/// Removes whole turns around the periodic domain from the path x0 -> x1. Each full
/// turn sweeps the unit shape mass over every node, so it contributes sum_j g_j to
/// path_dot and a uniform a to path_add; the caller handles that term.
inline double unwind_path(double x0, double& x1, double L)
{
    const double turns = std::trunc((x1 - x0) / L);
    x1 -= turns * L;
    return turns;
}

/// sum_j g_j (F(x_j - x0) - F(x_j - x1)): the integral of the point-dual field along [x0, x1].
double path_dot(const std::vector<double>& g, const Grid1D& grid, const Stencil& s0, const Stencil& s1);
/// acc_j += a (F(x_j - x0) - F(x_j - x1)).
void path_add(double* acc, const Grid1D& grid, const Stencil& s0, const Stencil& s1, double a);

class Coupling {
public:
    Coupling(const SequencePair& seq, const ShapeFn& shape, Backend backend = Backend::OpenMP);

    const SequencePair& seq() const { return *seq_; }
    const Grid1D& grid() const { return seq_->grid(); }
    const ShapeFn& shape() const { return shape_; }
    Backend backend() const { return backend_; }
    void set_backend(Backend b) { backend_ = b; }

    /// Cell dofs of sum_p q_p S(. - x_p).
    std::vector<double> deposit_rho(const ParticleEnsemble& ens) const;
    /// j1 node dofs and j2 cell dofs before mean subtraction.
    CurrentDofs deposit_current_raw(const ParticleEnsemble& ens) const;
    /// Mean-subtracted currents.
    CurrentDofs deposit_current(const ParticleEnsemble& ens) const;

    void refresh(CouplingWorkspace& ws, const FieldState& f) const;
    CouplingValues eval(const CouplingWorkspace& ws, const FieldState& f, double x) const;
    MomentumForces eval_momentum(const CouplingWorkspace& ws, const FieldState& f, double x, double v1, double v2) const;

    // particle loops used by the propagators
    void kick_electric(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f, double dt, Scheme scheme) const;
    /// x frozen: v1 += dt (q/m) v2 B, returns the raw v2 current cell deposit sum_p q v2 S.
    std::vector<double> push_transverse(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f, double dt, Scheme scheme) const;
    /// x += dt v1 with exact line integrals; returns sum_p q (F(x_j - x0) - F(x_j - x1)).
    std::vector<double> push_streaming(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f, double dt) const;

    /// Generic particle loop: body(p, acc) with acc = nacc*M zeroed buffer; result summed deterministically.
    template <class Body>
    std::vector<double> particle_loop(std::size_t N, int nacc, Body&& body) const;

private:
    void check_current(const CouplingWorkspace& ws, const FieldState& f) const;
    const SequencePair* seq_;
    ShapeFn shape_;
    Backend backend_;
};

/// Mean subtraction applied to dof vectors.
void subtract_mean(std::vector<double>& u);

}  // namespace gempic

#include "gempic/detail/particle_loop.hpp"
