#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gempic {

/// Uniform periodic grid with nodes x_m = offset + m h, m = 0..M-1.
/// Cell m is [x_{m-1}, x_m]; node indices outside [0, M) denote periodic images.
struct Grid1D {
    std::size_t M = 0;
    double L = 0.0;
    double h = 0.0;
    double offset = 0.0;

    Grid1D() = default;
    Grid1D(std::size_t cells, double length, double node_offset = 0.0)
        : M(cells), L(length), h(length / static_cast<double>(cells)), offset(node_offset)
    {
        if (cells < 2) throw std::invalid_argument("Grid1D: need at least 2 cells");
        if (!(length > 0.0)) throw std::invalid_argument("Grid1D: length must be positive");
    }

    double node(long j) const { return offset + static_cast<double>(j) * h; }

    std::size_t wrap(long j) const
    {
        const long m = static_cast<long>(M);
        long r = j % m;
        return static_cast<std::size_t>(r < 0 ? r + m : r);
    }
};

/// Exact modular reduction into [0, L).
inline double wrap_position(double x, double L)
{
    double r = std::fmod(x, L);
    if (r < 0.0) r += L;
    if (r >= L) r -= L;
    return r;
}

}  // namespace gempic
