#include "gempic/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace gempic {

double path_dot(const std::vector<double>& g, const Grid1D& grid, const Stencil& s0, const Stencil& s1)
{
    const long lo = std::min(s0.first, s1.first);
    const long hi = std::max(s0.first + s0.count, s1.first + s1.count);
    std::size_t i = grid.wrap(lo);
    double s = 0.0;
    for (long j = lo; j < hi; ++j) {
        s += g[i] * (s0.F(j) - s1.F(j));
        if (++i == grid.M) i = 0;
    }
    return s;
}

void path_add(double* acc, const Grid1D& grid, const Stencil& s0, const Stencil& s1, double a)
{
    const long lo = std::min(s0.first, s1.first);
    const long hi = std::max(s0.first + s0.count, s1.first + s1.count);
    std::size_t i = grid.wrap(lo);
    for (long j = lo; j < hi; ++j) {
        acc[i] += a * (s0.F(j) - s1.F(j));
        if (++i == grid.M) i = 0;
    }
}

void subtract_mean(std::vector<double>& u) { remove_mean(u); }

Coupling::Coupling(const SequencePair& seq, const ShapeFn& shape, Backend backend)
    : seq_(&seq), shape_(shape), backend_(backend)
{
    if (shape.max_stencil(seq.grid()) + 1 > kMaxStencil)
        throw std::invalid_argument("Coupling: shape support too wide for the grid");
}

std::vector<double> Coupling::deposit_rho(const ParticleEnsemble& ens) const
{
    const Grid1D& g = grid();
    return particle_loop(ens.size(), 1, [&](std::size_t p, double* acc) {
        Stencil st;
        shape_.stencil(g, ens.x[p], st);
        add_cell(acc, g, st, ens.q(p));
    });
}

CurrentDofs Coupling::deposit_current_raw(const ParticleEnsemble& ens) const
{
    if (shape_.degree() == 0) throw std::invalid_argument("deposit_current: degree-0 shape has no point values");
    const Grid1D& g = grid();
    const std::size_t M = g.M;
    const bool transverse = ens.dv == 2;
    auto acc = particle_loop(ens.size(), transverse ? 2 : 1, [&](std::size_t p, double* a) {
        Stencil st;
        shape_.stencil(g, ens.x[p], st);
        add_point(a, g, st, ens.q(p) * ens.v1[p]);
        if (transverse) add_cell(a + M, g, st, ens.q(p) * ens.v2[p]);
    });
    CurrentDofs c;
    c.j1.assign(acc.begin(), acc.begin() + static_cast<long>(M));
    if (transverse) c.j2.assign(acc.begin() + static_cast<long>(M), acc.end());
    return c;
}

CurrentDofs Coupling::deposit_current(const ParticleEnsemble& ens) const
{
    auto c = deposit_current_raw(ens);
    subtract_mean(c.j1);
    if (!c.j2.empty()) subtract_mean(c.j2);
    return c;
}

void Coupling::refresh(CouplingWorkspace& ws, const FieldState& f) const
{
    const auto& A = seq_->geometric_averaging();
    const auto At = A.transpose();
    ws.e1 = seq_->geometric_mass(0).apply(f.e1);
    ws.e1_avg = At.apply(ws.e1);
    if (f.transverse()) {
        ws.e2 = seq_->geometric_mass(1).apply(f.e2);
        ws.b3 = seq_->geometric_mass(0).apply(f.b3);
        ws.b3_avg = At.apply(ws.b3);
    } else {
        ws.e2.clear();
        ws.b3.clear();
        ws.b3_avg.clear();
    }
    ws.version = f.version;
}

void Coupling::check_current(const CouplingWorkspace& ws, const FieldState& f) const
{
    if (ws.version != f.version) throw std::logic_error("coupling workspace is stale");
    if (shape_.degree() == 0) throw std::invalid_argument("coupling: degree-0 shape has no point values");
}

CouplingValues Coupling::eval(const CouplingWorkspace& ws, const FieldState& f, double x) const
{
    check_current(ws, f);
    Stencil st;
    shape_.stencil(grid(), x, st);
    CouplingValues v;
    v.e1 = dot_point(ws.e1, grid(), st);
    if (f.transverse()) {
        v.e2 = dot_cell(ws.e2, grid(), st);
        v.b3 = dot_point(ws.b3, grid(), st);
    }
    return v;
}

MomentumForces Coupling::eval_momentum(const CouplingWorkspace& ws, const FieldState& f, double x, double v1,
                                       double v2) const
{
    check_current(ws, f);
    Stencil st;
    shape_.stencil(grid(), x, st);
    MomentumForces r;
    r.e1 = dot_cell(ws.e1_avg, grid(), st);
    if (f.transverse()) {
        r.e2 = dot_cell(ws.e2, grid(), st);
        r.r1 = v2 * dot_cell(ws.b3_avg, grid(), st);
        r.r2 = -v1 * dot_point(ws.b3, grid(), st);
    }
    return r;
}

void Coupling::kick_electric(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f, double dt,
                             Scheme scheme) const
{
    check_current(ws, f);
    const Grid1D& g = grid();
    const double c = dt * ens.q_over_m();
    const bool transverse = ens.dv == 2;
    particle_loop(ens.size(), 0, [&](std::size_t p, double*) {
        Stencil st;
        shape_.stencil(g, ens.x[p], st);
        ens.v1[p] += c * (scheme == Scheme::Momentum ? dot_cell(ws.e1_avg, g, st) : dot_point(ws.e1, g, st));
        if (transverse) ens.v2[p] += c * dot_cell(ws.e2, g, st);
    });
}

std::vector<double> Coupling::push_transverse(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f,
                                              double dt, Scheme scheme) const
{
    check_current(ws, f);
    const Grid1D& g = grid();
    const double c = dt * ens.q_over_m();
    return particle_loop(ens.size(), 1, [&](std::size_t p, double* acc) {
        Stencil st;
        shape_.stencil(g, ens.x[p], st);
        const double b = scheme == Scheme::Momentum ? dot_cell(ws.b3_avg, g, st) : dot_point(ws.b3, g, st);
        ens.v1[p] += c * ens.v2[p] * b;
        add_cell(acc, g, st, ens.q(p) * ens.v2[p]);
    });
}

std::vector<double> Coupling::push_streaming(ParticleEnsemble& ens, const CouplingWorkspace& ws, const FieldState& f,
                                             double dt) const
{
    check_current(ws, f);
    const Grid1D& g = grid();
    const double c = ens.q_over_m();
    const bool transverse = ens.dv == 2;
    const double L = ens.L;
    double b3_sum = 0.0;
    for (double v : ws.b3) b3_sum += v;
    double turn_charge = 0.0;
    auto flux = particle_loop(ens.size(), 1, [&](std::size_t p, double* acc) {
        const double x0 = ens.x[p];
        const double x1 = x0 + dt * ens.v1[p];
        double x1u = x1;
        const double turns = unwind_path(x0, x1u, L);
        Stencil s0, s1;
        shape_.stencil(g, x0, s0);
        shape_.stencil(g, x1u, s1);
        if (transverse) ens.v2[p] -= c * (path_dot(ws.b3, g, s0, s1) + turns * b3_sum);
        path_add(acc, g, s0, s1, ens.q(p));
        if (turns != 0.0) {
#pragma omp atomic
            turn_charge += turns * ens.q(p);
        }
        ens.x[p] = wrap_position(x1, L);
    });
    if (turn_charge != 0.0)
        for (double& v : flux) v += turn_charge;
    return flux;
}

}  // namespace gempic
