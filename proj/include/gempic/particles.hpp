#pragma once

/// Particle ensembles (structure of arrays) and reproducible initial sampling.

#include <cstdint>
#include <string>
#include <vector>

namespace gempic {

enum class SamplerKind { Hammersley, Prng };
SamplerKind parse_sampler(const std::string& name);

struct Species {
    double charge = -1.0;
    double mass = 1.0;
};

struct ParticleEnsemble {
    double L = 0.0;
    int dv = 1;
    Species species;
    std::vector<double> x, v1, v2, w;

    std::size_t size() const { return x.size(); }
    double q(std::size_t p) const { return w[p] * species.charge; }
    double m(std::size_t p) const { return w[p] * species.mass; }
    double q_over_m() const { return species.charge / species.mass; }
    double total_charge() const;

    /// Allocate N particles with unit-density weights w_p = L/N.
    static ParticleEnsemble uniform_weights(std::size_t N, double L, int dv, Species sp = {});
};

struct CaseConfig {
    std::string name;
    double k = 1.0;
    double amplitude = 0.0;   // beta (Weibel) or epsilon (two-stream)
    double vth1 = 1.0;
    double vth2 = 1.0;
    double drift = 0.0;
    double length() const;
};

CaseConfig weibel_case();
CaseConfig two_stream_case();

ParticleEnsemble sample_weibel(const CaseConfig& cfg, std::size_t N, SamplerKind sampler, std::uint64_t seed);
ParticleEnsemble sample_twostream(const CaseConfig& cfg, std::size_t N, SamplerKind sampler, std::uint64_t seed);

void wrap_positions(ParticleEnsemble& ens);

// sampling building blocks
double radical_inverse(std::uint64_t n, unsigned base);
/// Radical inverse shifted to the centre of its elementary interval for an N-point set.
double centered_radical_inverse(std::uint64_t n, unsigned base, std::uint64_t N);
/// Uniform double in (0,1) from a counter-based hash of (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);
double normal_quantile(double u);
/// Inverse CDF of the equal-weight mixture of unit Gaussians centred at +-drift.
double two_beam_quantile(double u, double drift);
/// Inverse CDF of the density (1 + eps cos(k x)) / L on [0, L).
double perturbed_position_quantile(double u, double eps, double k, double L);

}  // namespace gempic
