#include "gempic/simulation.hpp"

#include <cmath>

namespace gempic {

NumericalBlowup::NumericalBlowup(std::size_t s, const std::string& what)
    : std::runtime_error("non-finite state at step " + std::to_string(s) + ": " + what), step(s)
{
}

std::unique_ptr<SequencePair> build_sequence(const RunConfig& cfg)
{
    const double L = cfg.length();
    if (cfg.basis == BasisKind::Fourier) return std::make_unique<SequencePair>(SequencePair::fourier(cfg.M, L));
    return std::make_unique<SequencePair>(SequencePair::spline(cfg.M, L, cfg.basis_degree));
}

SimState initial_state(const RunConfig& cfg, const Coupling& coupling)
{
    const SequencePair& seq = coupling.seq();
    SimState s;
    const int dv = cfg.transverse() ? 2 : 1;
    s.ens = dv == 2 ? sample_weibel(cfg.case_cfg, cfg.N, cfg.sampler, cfg.seed)
                    : sample_twostream(cfg.case_cfg, cfg.N, cfg.sampler, cfg.seed);
    s.fields = FieldState::zeros(seq.size(), dv);
    if (dv == 2) {
        const double beta = cfg.case_cfg.amplitude, k = cfg.case_cfg.k;
        s.fields.b3 = seq.point_dofs([beta, k](double x) { return beta * std::cos(k * x); });
    }
    const auto rho = coupling.deposit_rho(s.ens);
    s.fields.e1 = poisson_init(seq, rho, s.ens.total_charge(), s.ens.size());
    s.fields.touch();
    return s;
}

Simulation::Simulation(const RunConfig& cfg, Backend backend) : cfg_(cfg)
{
    seq_ = build_sequence(cfg_);
    const double scale = cfg_.shape_scale > 0.0 ? cfg_.shape_scale : seq_->grid().h;
    coupling_ = std::make_unique<Coupling>(*seq_, ShapeFn(cfg_.shape_degree, scale), backend);
    state_ = initial_state(cfg_, *coupling_);
    prop_ = std::make_unique<Propagator>(*coupling_, cfg_.integrator);
}

void Simulation::step()
{
    prop_->step(state_);
    auto finite = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    const auto& f = state_.fields;
    if (!finite(f.e1) || !finite(f.e2) || !finite(f.b3)) throw NumericalBlowup(state_.step, "field dofs");
    if (!finite(state_.ens.v1) || !finite(state_.ens.v2) || !finite(state_.ens.x))
        throw NumericalBlowup(state_.step, "particles");
}

std::vector<DiagnosticsRecord> Simulation::run()
{
    std::vector<DiagnosticsRecord> out;
    out.push_back(record());
    for (std::size_t n = 1; n <= cfg_.steps; ++n) {
        step();
        if (n % cfg_.sample_every == 0 || n == cfg_.steps) out.push_back(record());
    }
    return out;
}

RunSummary summarize(const std::vector<DiagnosticsRecord>& records)
{
    RunSummary s;
    if (records.empty()) return s;
    const auto& r0 = records.front();
    for (const auto& r : records) {
        const double scale = r0.total_energy != 0.0 ? std::abs(r0.total_energy) : 1.0;
        s.max_rel_energy_error = std::max(s.max_rel_energy_error, std::abs(r.total_energy - r0.total_energy) / scale);
        s.max_momentum_error = std::max(s.max_momentum_error, std::abs(r.momentum1 - r0.momentum1));
        s.max_gauss_residual = std::max(s.max_gauss_residual, r.gauss_residual);
    }
    return s;
}

}  // namespace gempic
