#include "gempic/circulant.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gempic {

namespace {

// FFTW's planner is not thread-safe, so plans are cached per size under a
// lock; execution through the new-array interface is.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

const PlanPair& plans_for(std::size_t n)
{
    static std::mutex mtx;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> r(n);
    std::vector<fftw_complex> c(n / 2 + 1);
    const int ni = static_cast<int>(n);
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(ni, r.data(), c.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_c2r_1d(ni, c.data(), r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.forward || !p.backward) throw std::runtime_error("FFTW planning failed");
    return cache.emplace(n, p).first->second;
}

void forward_half(std::span<const double> x, std::vector<cplx>& half)
{
    const std::size_t n = x.size();
    std::vector<double> in(x.begin(), x.end());
    half.assign(n / 2 + 1, cplx{});
    fftw_execute_dft_r2c(plans_for(n).forward, in.data(),
                         reinterpret_cast<fftw_complex*>(half.data()));
}

void backward_half(std::vector<cplx>& half, std::span<double> y)
{
    const std::size_t n = y.size();
    fftw_execute_dft_c2r(plans_for(n).backward, reinterpret_cast<fftw_complex*>(half.data()),
                         y.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : y) v *= inv;
}

}  // namespace

std::vector<cplx> dft_real(std::span<const double> x)
{
    const std::size_t n = x.size();
    std::vector<cplx> half;
    forward_half(x, half);
    std::vector<cplx> full(n);
    for (std::size_t k = 0; k < n; ++k) full[k] = (k <= n / 2) ? half[k] : std::conj(half[n - k]);
    return full;
}

std::vector<double> idft_real(const std::vector<cplx>& spectrum)
{
    const std::size_t n = spectrum.size();
    std::vector<cplx> half(spectrum.begin(), spectrum.begin() + static_cast<long>(n / 2 + 1));
    std::vector<double> y(n);
    backward_half(half, y);
    return y;
}

Circulant::Circulant(std::vector<double> first_column) : column_(std::move(first_column))
{
    if (column_.empty()) throw std::invalid_argument("Circulant: empty column");
    symbol_ = dft_real(column_);
}

Circulant Circulant::from_symbol(const std::vector<cplx>& symbol)
{
    return Circulant(idft_real(symbol));
}

double Circulant::entry(std::size_t i, std::size_t j) const
{
    const std::size_t n = column_.size();
    return column_[(i + n - j % n) % n];
}

void Circulant::multiply_symbol(std::span<const double> x, std::span<double> y, bool divide) const
{
    const std::size_t n = column_.size();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("Circulant: size mismatch");
    std::vector<cplx> half;
    forward_half(x, half);
    for (std::size_t k = 0; k < half.size(); ++k) half[k] = divide ? half[k] / symbol_[k] : half[k] * symbol_[k];
    backward_half(half, y);
}

void Circulant::apply(std::span<const double> x, std::span<double> y) const { multiply_symbol(x, y, false); }
void Circulant::solve(std::span<const double> x, std::span<double> y) const { multiply_symbol(x, y, true); }

std::vector<double> Circulant::apply(std::span<const double> x) const
{
    std::vector<double> y(x.size());
    apply(x, y);
    return y;
}

std::vector<double> Circulant::solve(std::span<const double> x) const
{
    std::vector<double> y(x.size());
    solve(x, y);
    return y;
}

Circulant Circulant::inverse() const
{
    std::vector<cplx> s(symbol_.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = 1.0 / symbol_[k];
    return from_symbol(s);
}

Circulant Circulant::transpose() const
{
    const std::size_t n = column_.size();
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = column_[(n - i) % n];
    return Circulant(std::move(c));
}

Circulant Circulant::operator*(const Circulant& other) const
{
    if (other.size() != size()) throw std::invalid_argument("Circulant: size mismatch");
    std::vector<cplx> s(symbol_.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = symbol_[k] * other.symbol_[k];
    return from_symbol(s);
}

double Circulant::min_abs_symbol() const
{
    double m = std::abs(symbol_.front());
    for (const auto& s : symbol_) m = std::min(m, std::abs(s));
    return m;
}

}  // namespace gempic
