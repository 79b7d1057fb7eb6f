#include "gempic/particles.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gempic/grid.hpp"

namespace gempic {

SamplerKind parse_sampler(const std::string& name)
{
    if (name == "hammersley") return SamplerKind::Hammersley;
    if (name == "prng") return SamplerKind::Prng;
    throw std::invalid_argument("unknown sampler '" + name + "' (expected hammersley or prng)");
}

double ParticleEnsemble::total_charge() const
{
    double s = 0.0;
    for (std::size_t p = 0; p < size(); ++p) s += q(p);
    return s;
}

ParticleEnsemble ParticleEnsemble::uniform_weights(std::size_t N, double L, int dv, Species sp)
{
    if (N < 1) throw std::invalid_argument("ensemble: need N >= 1");
    ParticleEnsemble e;
    e.L = L;
    e.dv = dv;
    e.species = sp;
    e.x.assign(N, 0.0);
    e.v1.assign(N, 0.0);
    if (dv == 2) e.v2.assign(N, 0.0);
    e.w.assign(N, L / static_cast<double>(N));
    return e;
}

double CaseConfig::length() const { return 2.0 * std::numbers::pi / k; }

CaseConfig weibel_case()
{
    CaseConfig c;
    c.name = "weibel";
    c.k = 1.25;
    c.amplitude = 1e-4;
    c.vth1 = 0.02 / std::sqrt(2.0);
    c.vth2 = std::sqrt(12.0) * c.vth1;
    c.drift = 0.0;
    return c;
}

CaseConfig two_stream_case()
{
    CaseConfig c;
    c.name = "two_stream";
    c.k = 0.2;
    c.amplitude = 1e-3;
    c.vth1 = 1.0;
    c.vth2 = 1.0;
    c.drift = 2.4;
    return c;
}

double radical_inverse(std::uint64_t n, unsigned base)
{
    double r = 0.0;
    double f = 1.0 / base;
    while (n > 0) {
        r += f * static_cast<double>(n % base);
        n /= base;
        f /= base;
    }
    return r;
}

double centered_radical_inverse(std::uint64_t n, unsigned base, std::uint64_t N)
{
    double cell = 1.0;
    for (std::uint64_t span = 1; span < N; span *= base) cell /= base;
    return radical_inverse(n, base) + 0.5 * cell;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter)
{
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ counter) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double normal_quantile(double u)
{
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile: u outside (0,1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double two_beam_quantile(double u, double drift)
{
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("two_beam_quantile: u outside (0,1)");
    auto cdf = [drift](double v) { return 0.5 * (normal_cdf(v - drift) + normal_cdf(v + drift)); };
    auto pdf = [drift](double v) { return 0.5 * (normal_pdf(v - drift) + normal_pdf(v + drift)); };
    double lo = -drift - 40.0, hi = drift + 40.0;
    double v = 0.0;
    if (u < 0.5) v = -drift + normal_quantile(2.0 * u);
    else if (u > 0.5) v = drift + normal_quantile(2.0 * u - 1.0);
    if (!(v > lo && v < hi)) v = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double r = cdf(v) - u;
        if (r > 0.0) hi = v; else lo = v;
        const double d = pdf(v);
        double next = d > 0.0 ? v - r / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - v);
        v = next;
        if (step <= 1e-14 * (1.0 + std::abs(v))) return v;
    }
    return v;
}

double perturbed_position_quantile(double u, double eps, double k, double L)
{
    const double target = u * L;
    double x = target;
    for (int it = 0; it < 50; ++it) {
        const double f = x + (eps / k) * std::sin(k * x) - target;
        const double step = f / (1.0 + eps * std::cos(k * x));
        x -= step;
        if (std::abs(step) <= 1e-14 * std::max(1.0, L)) return x;
    }
    throw std::runtime_error("perturbed_position_quantile: Newton did not converge");
}

ParticleEnsemble sample_weibel(const CaseConfig& cfg, std::size_t N, SamplerKind sampler, std::uint64_t seed)
{
    const double L = cfg.length();
    auto e = ParticleEnsemble::uniform_weights(N, L, 2);
    for (std::size_t p = 0; p < N; ++p) {
        double ux, u1, u2;
        if (sampler == SamplerKind::Hammersley) {
            u1 = (static_cast<double>(p) + 0.5) / static_cast<double>(N);
            ux = centered_radical_inverse(p, 2, N);
            u2 = centered_radical_inverse(p, 3, N);
        } else {
            ux = counter_uniform(seed, 3 * p);
            u1 = counter_uniform(seed, 3 * p + 1);
            u2 = counter_uniform(seed, 3 * p + 2);
        }
        e.x[p] = wrap_position(ux * L, L);
        e.v1[p] = cfg.vth1 * normal_quantile(u1);
        e.v2[p] = cfg.vth2 * normal_quantile(u2);
    }
    return e;
}

ParticleEnsemble sample_twostream(const CaseConfig& cfg, std::size_t N, SamplerKind sampler, std::uint64_t seed)
{
    const double L = cfg.length();
    auto e = ParticleEnsemble::uniform_weights(N, L, 1);
    for (std::size_t p = 0; p < N; ++p) {
        double ux, uv;
        if (sampler == SamplerKind::Hammersley) {
            uv = (static_cast<double>(p) + 0.5) / static_cast<double>(N);
            ux = centered_radical_inverse(p, 2, N);
        } else {
            ux = counter_uniform(seed, 2 * p);
            uv = counter_uniform(seed, 2 * p + 1);
        }
        e.x[p] = wrap_position(perturbed_position_quantile(ux, cfg.amplitude, cfg.k, L), L);
        e.v1[p] = cfg.vth1 * two_beam_quantile(uv, cfg.drift / cfg.vth1);
    }
    return e;
}

void wrap_positions(ParticleEnsemble& ens)
{
    for (double& x : ens.x) x = wrap_position(x, ens.L);
}

}  // namespace gempic
