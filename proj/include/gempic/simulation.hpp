#pragma once

#include <iosfwd>
#include <memory>

#include "gempic/config.hpp"
#include "gempic/diagnostics.hpp"

namespace gempic {

class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(std::size_t step, const std::string& what);
    std::size_t step;
};

struct RunSummary {
    double max_rel_energy_error = 0.0;
    double max_momentum_error = 0.0;
    double max_gauss_residual = 0.0;
    int max_iterations = 0;
};

/// Owns the sequence, coupling, state and propagator of one run.
class Simulation {
public:
    explicit Simulation(const RunConfig& cfg, Backend backend = Backend::OpenMP);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    const RunConfig& config() const { return cfg_; }
    const SequencePair& seq() const { return *seq_; }
    const Coupling& coupling() const { return *coupling_; }
    SimState& state() { return state_; }
    Propagator& propagator() { return *prop_; }

    DiagnosticsRecord record() const { return compute_record(*coupling_, state_); }
    /// Advance one step; throws NumericalBlowup on non-finite state.
    void step();
    /// Run cfg.steps steps, sampling every sample_every steps (plus the last).
    std::vector<DiagnosticsRecord> run();

private:
    RunConfig cfg_;
    std::unique_ptr<SequencePair> seq_;
    std::unique_ptr<Coupling> coupling_;
    SimState state_;
    std::unique_ptr<Propagator> prop_;
};

std::unique_ptr<SequencePair> build_sequence(const RunConfig& cfg);
/// Sampled ensemble plus fields: Poisson e1, and for Weibel b3 = amplitude cos(k x) at the nodes.
SimState initial_state(const RunConfig& cfg, const Coupling& coupling);
RunSummary summarize(const std::vector<DiagnosticsRecord>& records);

}  // namespace gempic
