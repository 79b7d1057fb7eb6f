#pragma once

/// Reduced field system on geometric dofs: e1, b3 in V0 (node values),
/// e2 and charge in V1 (cell integrals).
///   strong Gauss    d e1 = rho - background
///   strong Ampere   de1/dt = -j1,   de2/dt = -d b3 - j2      (mean-free currents)
///   weak Faraday    M0 db3/dt = d^T M1 e2

#include <cstdint>
#include <span>
#include <vector>

#include "gempic/derham1d.hpp"

namespace gempic {

struct FieldState {
    std::vector<double> e1, e2, b3;
    std::uint64_t version = 0;

    /// Call after every mutation so coupling workspaces can detect staleness.
    void touch() { ++version; }
    bool transverse() const { return !b3.empty(); }

    static FieldState zeros(std::size_t M, int dv);
};

struct CurrentDofs {
    std::vector<double> j1;  // node dofs
    std::vector<double> j2;  // cell dofs (1d2v only)
};

struct FieldRates {
    std::vector<double> e1, e2, b3;
};

FieldRates maxwell_rhs(const SequencePair& seq, const FieldState& f, const CurrentDofs& currents);

/// M0^{-1} d^T M1 e2.
std::vector<double> faraday_rate(const SequencePair& seq, std::span<const double> e2);

/// Cell dofs of the neutralizing background for a given total particle charge.
double background_cell_dof(const SequencePair& seq, double total_charge);

/// Solve d e1 = rho + background with mean(e1) = 0. The background is the uniform
/// neutralizer of rho; rho must carry total_charge up to summation roundoff over
/// `terms` deposited contributions (else std::runtime_error).
std::vector<double> poisson_init(const SequencePair& seq, std::span<const double> rho, double total_charge,
                                 std::size_t terms = 1);

/// max |d e1 - rho - background| with the background neutralizing rho.
double gauss_residual(const SequencePair& seq, const FieldState& f, std::span<const double> rho);

/// 1/2 u^T Mhat_level u.
double field_energy(const SequencePair& seq, int level, std::span<const double> u);

/// Implicit-midpoint update of the (e2, b3) curl pair, solved mode by mode.
void curl_midpoint_step(const SequencePair& seq, double dt, std::vector<double>& e2, std::vector<double>& b3);

}  // namespace gempic
