#pragma once

/// Real circulant matrices on periodic 1D grids, diagonalized with FFTW.
///
/// A circulant C of size M is stored by its first column c, so that
/// C(i,j) = c[(i-j) mod M] and (C x)_i = sum_j c[i-j] x_j. Its symbol is
/// the unnormalized DFT of c; products and inverses act on symbols.

#include <complex>
#include <span>
#include <vector>

namespace gempic {

using cplx = std::complex<double>;

class Circulant {
public:
    Circulant() = default;
    explicit Circulant(std::vector<double> first_column);

    /// Build from a full-length symbol (length M, conjugate symmetric).
    static Circulant from_symbol(const std::vector<cplx>& symbol);

    std::size_t size() const { return column_.size(); }
    double entry(std::size_t i, std::size_t j) const;
    const std::vector<double>& column() const { return column_; }
    const std::vector<cplx>& symbol() const { return symbol_; }

    void apply(std::span<const double> x, std::span<double> y) const;
    void solve(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> solve(std::span<const double> x) const;

    Circulant inverse() const;
    Circulant transpose() const;
    Circulant operator*(const Circulant& other) const;

    /// Smallest |symbol| over all frequencies.
    double min_abs_symbol() const;

private:
    void multiply_symbol(std::span<const double> x, std::span<double> y, bool divide) const;

    std::vector<double> column_;
    std::vector<cplx> symbol_;
};

/// Unnormalized forward DFT of a real vector, full length: X_k = sum_m x_m e^{-2 pi i k m / M}.
std::vector<cplx> dft_real(std::span<const double> x);
/// Inverse of dft_real for conjugate-symmetric spectra: x_m = (1/M) sum_k X_k e^{2 pi i k m / M}.
std::vector<double> idft_real(const std::vector<cplx>& spectrum);

/// Signed frequency of DFT slot k: k for k <= M/2, k - M otherwise.
inline long signed_frequency(std::size_t k, std::size_t M)
{
    return 2 * k <= M ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(M);
}

}  // namespace gempic
