#pragma once

#include <string>
#include <vector>

#include "gempic/coupling.hpp"
#include "gempic/integrators.hpp"

namespace gempic {

struct DiagnosticsRecord {
    double t = 0.0;
    double kinetic = 0.0;
    double e1_energy = 0.0, e2_energy = 0.0, b3_energy = 0.0;
    double total_energy = 0.0;
    double momentum1 = 0.0;
    double gauss_residual = 0.0;
    double total_charge = 0.0;
};

inline constexpr const char* kCsvHeader =
    "t,kinetic,e1_energy,e2_energy,b3_energy,total_energy,momentum1,gauss_residual,total_charge";

/// P1 = sum m v1 + (A e2).Mhat0.b3 in 1d2v; sum m v1 in 1d1v.
double momentum1(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f);

DiagnosticsRecord compute_record(const Coupling& coupling, const SimState& s);

std::string format_double(double v);
void write_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path);
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

struct RateFit {
    double rate = 0.0;       // d/dt log(quantity)
    double intercept = 0.0;
    std::size_t samples = 0;
};

/// Least-squares slope of log(values) over t in [t0, t1].
RateFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& values, double t0, double t1);

}  // namespace gempic
