#pragma once

/// Centered cardinal B-spline particle shapes.
///
/// S(x) = B_s(x/scale + (s+1)/2) / scale with B_s the cardinal B-spline on
/// [0, s+1]. The antiderivative F(x) = int_{-inf}^x S is evaluated from
/// prefix sums of degree s+1 B-splines, so it is exactly 0 left of the
/// support and exactly 1 right of it.

#include <array>

#include "gempic/grid.hpp"

namespace gempic {

inline constexpr int kMaxShapeDegree = 15;
inline constexpr int kMaxStencil = 48;

/// out[r] = B_deg(frac + r) for r = 0..deg, frac in [0, 1).
void uniform_bspline_values(int deg, double frac, double* out);

/// Cardinal B-spline of degree deg on [0, deg+1].
double cardinal_bspline(int deg, double t);

/// Shape values around one particle: nodes first..first+count-1 carry point
/// values S(x_j - x_p) and antiderivative values F(x_j - x_p); F is 0 at node
/// first-1 and 1 at node first+count. Cell j integral is F_j - F_{j-1}.
struct Stencil {
    long first = 0;
    int count = 0;
    std::array<double, kMaxStencil> point{};
    std::array<double, kMaxStencil> anti{};

    double F(long j) const
    {
        const long r = j - first;
        if (r < 0) return 0.0;
        if (r >= count) return 1.0;
        return anti[static_cast<std::size_t>(r)];
    }
    double cell(long j) const { return F(j) - F(j - 1); }
};

class ShapeFn {
public:
    ShapeFn() = default;
    ShapeFn(int degree, double scale);

    int degree() const { return degree_; }
    double scale() const { return scale_; }
    double half_width() const { return 0.5 * (degree_ + 1) * scale_; }

    double value(double x) const;
    double antiderivative(double x) const;
    double derivative(double x) const;

    /// Fill the stencil of a particle at (unwrapped) position x on grid g.
    void stencil(const Grid1D& g, double x, Stencil& st) const;

    /// Largest stencil node count this shape can produce on grid g.
    int max_stencil(const Grid1D& g) const;

private:
    int degree_ = 1;
    double scale_ = 1.0;
};

}  // namespace gempic
