#include "gempic/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gempic {

FieldState FieldState::zeros(std::size_t M, int dv)
{
    FieldState f;
    f.e1.assign(M, 0.0);
    if (dv == 2) {
        f.e2.assign(M, 0.0);
        f.b3.assign(M, 0.0);
    }
    return f;
}

std::vector<double> faraday_rate(const SequencePair& seq, std::span<const double> e2)
{
    const std::size_t M = seq.size();
    std::vector<double> me(M), dte(M);
    seq.geometric_mass(1).apply(e2, me);
    apply_dT(me, dte);
    return seq.geometric_mass_inverse(0).apply(dte);
}

FieldRates maxwell_rhs(const SequencePair& seq, const FieldState& f, const CurrentDofs& currents)
{
    const std::size_t M = seq.size();
    FieldRates r;
    r.e1.resize(M);
    for (std::size_t m = 0; m < M; ++m) r.e1[m] = -currents.j1[m];
    if (f.transverse()) {
        r.e2.resize(M);
        apply_d(f.b3, r.e2);
        for (std::size_t m = 0; m < M; ++m) r.e2[m] = -r.e2[m] - currents.j2[m];
        r.b3 = faraday_rate(seq, f.e2);
    }
    return r;
}

double background_cell_dof(const SequencePair& seq, double total_charge)
{
    return -total_charge * seq.grid().h / seq.grid().L;
}

std::vector<double> poisson_init(const SequencePair& seq, std::span<const double> rho, double total_charge,
                                 std::size_t terms)
{
    const std::size_t M = seq.size();
    if (rho.size() != M) throw std::invalid_argument("poisson_init: wrong length");
    double sum = 0.0, scale = 0.0;
    for (double r : rho) {
        sum += r;
        scale += std::abs(r);
    }
    const double tol = std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(terms));
    if (std::abs(sum - total_charge) > tol * std::max(1.0, scale))
        throw std::runtime_error("poisson_init: charge density is not neutral");
    // neutralize the deposited charge itself so summation roundoff cannot enter the Gauss law
    const double bg = -sum / static_cast<double>(M);
    std::vector<double> e(M);
    double acc = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        acc += rho[m] + bg;
        e[m] = acc;
    }
    remove_mean(e);
    return e;
}

double gauss_residual(const SequencePair& seq, const FieldState& f, std::span<const double> rho)
{
    const std::size_t M = seq.size();
    double sum = 0.0;
    for (double r : rho) sum += r;
    const double bg = -sum / static_cast<double>(M);
    std::vector<double> de(M);
    apply_d(f.e1, de);
    double r = 0.0;
    for (std::size_t m = 0; m < M; ++m) r = std::max(r, std::abs(de[m] - (rho[m] + bg)));
    return r;
}

double field_energy(const SequencePair& seq, int level, std::span<const double> u)
{
    if (u.empty()) return 0.0;
    const auto mu = seq.geometric_mass(level).apply(u);
    double s = 0.0;
    for (std::size_t m = 0; m < u.size(); ++m) s += u[m] * mu[m];
    return 0.5 * s;
}

void curl_midpoint_step(const SequencePair& seq, double dt, std::vector<double>& e2, std::vector<double>& b3)
{
    // per DFT slot: E+ = E - a (B + B+),  B+ = B + c (E + E+)
    // a = dt/2 * delta, c = dt/2 * conj(delta) * lambda1 / lambda0, delta = 1 - exp(-i theta)
    const std::size_t M = seq.size();
    const auto E = dft_real(e2);
    const auto B = dft_real(b3);
    const auto& l0 = seq.geometric_mass(0).symbol();
    const auto& l1 = seq.geometric_mass(1).symbol();
    std::vector<cplx> En(M), Bn(M);
    for (std::size_t k = 0; k < M; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(M);
        const cplx delta = 1.0 - std::exp(cplx(0.0, -theta));
        const cplx a = 0.5 * dt * delta;
        const cplx c = 0.5 * dt * std::conj(delta) * (l1[k].real() / l0[k].real());
        const cplx det = 1.0 + a * c;
        const cplx r1 = E[k] - a * B[k];
        const cplx r2 = B[k] + c * E[k];
        En[k] = (r1 - a * r2) / det;
        Bn[k] = (r2 + c * r1) / det;
    }
    e2 = idft_real(En);
    b3 = idft_real(Bn);
}

}  // namespace gempic
