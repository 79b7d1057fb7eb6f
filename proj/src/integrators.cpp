#include "gempic/integrators.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gempic {

PropagatorKind parse_propagator(const std::string& name)
{
    if (name == "lie") return PropagatorKind::Lie;
    if (name == "strang") return PropagatorKind::Strang;
    if (name == "discrete_gradient" || name == "dg") return PropagatorKind::DiscreteGradient;
    throw std::invalid_argument("unknown integrator kind '" + name + "'");
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "variational") return Scheme::Variational;
    if (name == "momentum_preserving" || name == "momentum") return Scheme::Momentum;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(PropagatorKind k)
{
    switch (k) {
    case PropagatorKind::Lie: return "lie";
    case PropagatorKind::Strang: return "strang";
    default: return "discrete_gradient";
    }
}

std::string to_string(Scheme s) { return s == Scheme::Variational ? "variational" : "momentum_preserving"; }

void PropagatorConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator.dt: must be positive");
    if (!(dg_tol > 0.0)) throw std::invalid_argument("integrator.dg_tol: must be positive");
    if (!(linear_tol > 0.0)) throw std::invalid_argument("integrator.linear_tol: must be positive");
    if (max_iter < 1) throw std::invalid_argument("integrator.max_iter: must be >= 1");
    if (kind == PropagatorKind::DiscreteGradient && scheme == Scheme::Momentum)
        throw std::invalid_argument("scheme.kind: discrete_gradient requires the variational scheme");
}

Propagator::Propagator(const Coupling& coupling, PropagatorConfig cfg) : coupling_(&coupling), cfg_(cfg)
{
    cfg_.validate();
}

void Propagator::step(SimState& s)
{
    switch (cfg_.kind) {
    case PropagatorKind::Lie: splitting(s, cfg_.dt, false); break;
    case PropagatorKind::Strang: splitting(s, cfg_.dt, true); break;
    case PropagatorKind::DiscreteGradient: discrete_gradient(s, cfg_.dt); break;
    }
    s.t += cfg_.dt;
    ++s.step;
}

void Propagator::splitting(SimState& s, double dt, bool symmetric)
{
    const bool tr = s.ens.dv == 2;
    if (!symmetric) {
        if (tr) flow_B(s, dt);
        flow_E(s, dt);
        if (tr) flow_p2(s, dt);
        flow_p1(s, dt);
        return;
    }
    const double h = 0.5 * dt;
    if (tr) flow_B(s, h);
    flow_E(s, h);
    if (tr) flow_p2(s, h);
    flow_p1(s, dt);
    if (tr) flow_p2(s, h);
    flow_E(s, h);
    if (tr) flow_B(s, h);
}

void Propagator::flow_E(SimState& s, double dt)
{
    coupling_->refresh(ws_, s.fields);
    coupling_->kick_electric(s.ens, ws_, s.fields, dt, cfg_.scheme);
    if (s.fields.transverse()) {
        const auto rate = faraday_rate(coupling_->seq(), s.fields.e2);
        for (std::size_t i = 0; i < rate.size(); ++i) s.fields.b3[i] += dt * rate[i];
        s.fields.touch();
    }
}

void Propagator::flow_B(SimState& s, double dt)
{
    const std::size_t M = s.fields.b3.size();
    std::vector<double> db(M);
    apply_d(s.fields.b3, db);
    for (std::size_t i = 0; i < M; ++i) s.fields.e2[i] -= dt * db[i];
    s.fields.touch();
}

void Propagator::flow_p2(SimState& s, double dt)
{
    coupling_->refresh(ws_, s.fields);
    auto j2 = coupling_->push_transverse(s.ens, ws_, s.fields, dt, cfg_.scheme);
    subtract_mean(j2);
    for (std::size_t i = 0; i < j2.size(); ++i) s.fields.e2[i] -= dt * j2[i];
    s.fields.touch();
}

void Propagator::flow_p1(SimState& s, double dt)
{
    coupling_->refresh(ws_, s.fields);
    auto flux = coupling_->push_streaming(s.ens, ws_, s.fields, dt);
    subtract_mean(flux);
    for (std::size_t i = 0; i < flux.size(); ++i) s.fields.e1[i] -= flux[i];
    s.fields.touch();
}

void Propagator::discrete_gradient(SimState& s, double dt)
{
    if (s.ens.dv == 1) {
        dg_streaming(s, dt);
        return;
    }
    const double h = 0.5 * dt;
    dg_curl(s, h);
    dg_transverse(s, h);
    dg_rotation(s, h);
    dg_streaming(s, dt);
    dg_rotation(s, h);
    dg_transverse(s, h);
    dg_curl(s, h);
}

namespace {

double max_abs(const std::vector<double>& a)
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Converged within tol, or stalled at the roundoff floor (no progress, within 1e3 tol).
struct FixedPointMonitor {
    double tol;
    double prev_dv = INFINITY, prev_de = INFINITY;

    bool done(double dv, double vscale, double de, double escale)
    {
        const bool ok = dv <= tol * vscale && de <= tol * escale;
        const bool stalled = dv >= prev_dv && de >= prev_de && dv <= 1e3 * tol * vscale && de <= 1e3 * tol * escale;
        prev_dv = dv;
        prev_de = de;
        return ok || stalled;
    }
};

using GaussRule = boost::math::quadrature::gauss<double, 8>;

// Mean of the point-dual field over the segment [x0, x1], by Gauss-Legendre on the
// polynomial pieces of the shape; avoids the cancellation in path_dot / dx for short paths.
double path_average(const Coupling& c, const std::vector<double>& dual, double x0, double x1, const Stencil& s0,
                    const Stencil& s1)
{
    const Grid1D& g = c.grid();
    const double lo = std::min(x0, x1), hi = std::max(x0, x1);
    Stencil st;
    if (hi == lo) {
        c.shape().stencil(g, lo, st);
        return dot_point(dual, g, st);
    }
    const int deg = c.shape().degree();
    const double D = c.shape().scale();
    std::vector<double> cuts{lo, hi};
    const long j0 = std::min(s0.first, s1.first) - 1, j1 = std::max(s0.first + s0.count, s1.first + s1.count) + 1;
    for (long j = j0; j <= j1; ++j)
        for (int i = 0; i <= deg + 1; ++i) {
            const double b = g.node(j) - 0.5 * (deg + 1) * D + i * D;
            if (b > lo && b < hi) cuts.push_back(b);
        }
    std::sort(cuts.begin(), cuts.end());
    const auto& xs = GaussRule::abscissa();
    const auto& ws = GaussRule::weights();
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]), half = 0.5 * (cuts[k + 1] - cuts[k]);
        if (half <= 0.0) continue;
        double acc = 0.0;
        for (std::size_t q = 0; q < xs.size(); ++q) {
            c.shape().stencil(g, mid + half * xs[q], st);
            double f = dot_point(dual, g, st);
            if (xs[q] != 0.0) {
                c.shape().stencil(g, mid - half * xs[q], st);
                f += dot_point(dual, g, st);
            }
            acc += ws[q] * f;
        }
        integral += half * acc;
    }
    return integral / (hi - lo);
}

}  // namespace

void Propagator::dg_streaming(SimState& s, double dt)
{
    const Coupling& c = *coupling_;
    const SequencePair& seq = c.seq();
    const Grid1D& g = c.grid();
    ParticleEnsemble& ens = s.ens;
    const std::size_t N = ens.size();
    const double qm = ens.q_over_m();
    const std::vector<double> v0 = ens.v1, e0 = s.fields.e1;
    std::vector<double> vnew = v0, enew = e0, vnext(N), xnext(N), ebar(e0.size());

    FixedPointMonitor mon{cfg_.dg_tol};
    int it = 0;
    for (;;) {
        if (++it > cfg_.max_iter) throw std::runtime_error("discrete gradient: streaming substep did not converge");
        for (std::size_t i = 0; i < ebar.size(); ++i) ebar[i] = 0.5 * (e0[i] + enew[i]);
        const std::vector<double> dual = seq.geometric_mass(0).apply(ebar);
        double dual_sum = 0.0;
        for (double v : dual) dual_sum += v;
        double turn_charge = 0.0;
        auto flux = c.particle_loop(N, 1, [&](std::size_t p, double* acc) {
            const double x0 = ens.x[p];
            const double vbar = 0.5 * (v0[p] + vnew[p]);
            const double x1 = x0 + dt * vbar;
            double x1u = x1;
            const double turns = unwind_path(x0, x1u, ens.L);
            Stencil s0, s1;
            c.shape().stencil(g, x0, s0);
            c.shape().stencil(g, x1u, s1);
            const double dx = x1 - x0;
            const double force = std::abs(dx) >= 1e-4 * g.h ? (path_dot(dual, g, s0, s1) + turns * dual_sum) / dx
                                                             : path_average(c, dual, x0, x1, s0, s1);
            vnext[p] = v0[p] + dt * qm * force;
            xnext[p] = x1;
            path_add(acc, g, s0, s1, ens.q(p));
            if (turns != 0.0) {
#pragma omp atomic
                turn_charge += turns * ens.q(p);
            }
        });
        for (double& v : flux) v += turn_charge;
        subtract_mean(flux);
        std::vector<double> enext(e0.size());
        for (std::size_t i = 0; i < e0.size(); ++i) enext[i] = e0[i] - flux[i];
        const double dv = max_diff(vnext, vnew), de = max_diff(enext, enew);
        const double vs = std::max(max_abs(v0), max_abs(vnext)), es = std::max(max_abs(e0), max_abs(enext));
        vnew.swap(vnext);
        enew.swap(enext);
        if (mon.done(dv, vs, de, es)) break;
    }
    iter_seen_ = std::max(iter_seen_, it);
    for (std::size_t p = 0; p < N; ++p) ens.x[p] = wrap_position(xnext[p], ens.L);
    ens.v1 = std::move(vnew);
    s.fields.e1 = std::move(enew);
    s.fields.touch();
}

void Propagator::dg_rotation(SimState& s, double dt)
{
    const Coupling& c = *coupling_;
    c.refresh(ws_, s.fields);
    ParticleEnsemble& ens = s.ens;
    const double qm = ens.q_over_m();
    const Grid1D& g = c.grid();
    c.particle_loop(ens.size(), 0, [&](std::size_t p, double*) {
        Stencil st;
        c.shape().stencil(g, ens.x[p], st);
        const double a = 0.5 * dt * qm * dot_point(ws_.b3, g, st);
        const double den = 1.0 + a * a;
        const double v1 = ens.v1[p], v2 = ens.v2[p];
        ens.v1[p] = ((1.0 - a * a) * v1 + 2.0 * a * v2) / den;
        ens.v2[p] = ((1.0 - a * a) * v2 - 2.0 * a * v1) / den;
    });
}

void Propagator::dg_transverse(SimState& s, double dt)
{
    const Coupling& c = *coupling_;
    const SequencePair& seq = c.seq();
    const Grid1D& g = c.grid();
    ParticleEnsemble& ens = s.ens;
    const std::size_t N = ens.size();
    const double qm = ens.q_over_m();
    const std::vector<double> v0 = ens.v2, e0 = s.fields.e2;
    std::vector<double> vnew = v0, enew = e0, vnext(N), ebar(e0.size());

    FixedPointMonitor mon{cfg_.dg_tol};
    int it = 0;
    for (;;) {
        if (++it > cfg_.max_iter) throw std::runtime_error("discrete gradient: transverse substep did not converge");
        for (std::size_t i = 0; i < ebar.size(); ++i) ebar[i] = 0.5 * (e0[i] + enew[i]);
        const std::vector<double> dual = seq.geometric_mass(1).apply(ebar);
        auto j2 = c.particle_loop(N, 1, [&](std::size_t p, double* acc) {
            Stencil st;
            c.shape().stencil(g, ens.x[p], st);
            vnext[p] = v0[p] + dt * qm * dot_cell(dual, g, st);
            add_cell(acc, g, st, ens.q(p) * 0.5 * (v0[p] + vnew[p]));
        });
        subtract_mean(j2);
        std::vector<double> enext(e0.size());
        for (std::size_t i = 0; i < e0.size(); ++i) enext[i] = e0[i] - dt * j2[i];
        const double dv = max_diff(vnext, vnew), de = max_diff(enext, enew);
        const double vs = std::max(max_abs(v0), max_abs(vnext)), es = std::max(max_abs(e0), max_abs(enext));
        vnew.swap(vnext);
        enew.swap(enext);
        if (mon.done(dv, vs, de, es)) break;
    }
    iter_seen_ = std::max(iter_seen_, it);
    ens.v2 = std::move(vnew);
    s.fields.e2 = std::move(enew);
    s.fields.touch();
}

void Propagator::dg_curl(SimState& s, double dt)
{
    curl_midpoint_step(coupling_->seq(), dt, s.fields.e2, s.fields.b3);
    s.fields.touch();
}

}  // namespace gempic
