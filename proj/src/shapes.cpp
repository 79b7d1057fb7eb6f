#include "gempic/shapes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gempic {

void uniform_bspline_values(int deg, double frac, double* out)
{
    out[0] = 1.0;
    for (int k = 1; k <= deg; ++k) {
        const double inv = 1.0 / k;
        for (int r = k; r >= 0; --r) {
            const double up = r < k ? (frac + r) * out[r] : 0.0;
            const double lo = r > 0 ? (k + 1 - frac - r) * out[r - 1] : 0.0;
            out[r] = (up + lo) * inv;
        }
    }
}

double cardinal_bspline(int deg, double t)
{
    if (deg < 0) return 0.0;
    if (!(t > 0.0) || t >= deg + 1) return deg == 0 && t == 0.0 ? 1.0 : 0.0;
    const double r = std::floor(t);
    std::array<double, kMaxShapeDegree + 2> v{};
    uniform_bspline_values(deg, t - r, v.data());
    return v[static_cast<std::size_t>(r)];
}

ShapeFn::ShapeFn(int degree, double scale) : degree_(degree), scale_(scale)
{
    if (degree < 0 || degree > kMaxShapeDegree) throw std::invalid_argument("ShapeFn: degree out of range");
    if (!(scale > 0.0)) throw std::invalid_argument("ShapeFn: scale must be positive");
}

double ShapeFn::value(double x) const
{
    return cardinal_bspline(degree_, x / scale_ + 0.5 * (degree_ + 1)) / scale_;
}

double ShapeFn::antiderivative(double x) const
{
    const double t = x / scale_ + 0.5 * (degree_ + 1);
    if (!(t > 0.0)) return 0.0;
    if (t >= degree_ + 1) return 1.0;
    const double r = std::floor(t);
    std::array<double, kMaxShapeDegree + 3> w{};
    uniform_bspline_values(degree_ + 1, t - r, w.data());
    double acc = 0.0;
    for (int i = 0; i <= static_cast<int>(r); ++i) acc += w[static_cast<std::size_t>(i)];
    return acc;
}

double ShapeFn::derivative(double x) const
{
    if (degree_ == 0) return 0.0;
    const double t = x / scale_ + 0.5 * (degree_ + 1);
    return (cardinal_bspline(degree_ - 1, t) - cardinal_bspline(degree_ - 1, t - 1.0)) / (scale_ * scale_);
}

int ShapeFn::max_stencil(const Grid1D& g) const
{
    if (std::abs(scale_ - g.h) <= 1e-14 * g.h) return degree_ + 1;
    return static_cast<int>(std::ceil((degree_ + 1) * scale_ / g.h)) + 1;
}

void ShapeFn::stencil(const Grid1D& g, double x, Stencil& st) const
{
    if (!std::isfinite(x)) {
        // poison everything downstream so the blow-up check sees it
        st.first = 0;
        st.count = 1;
        st.point[0] = st.anti[0] = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const int s = degree_;
    if (std::abs(scale_ - g.h) <= 1e-14 * g.h) {
        // Nodes share one fractional offset: t_j = j + c.
        const double c = (g.offset - x) / g.h + 0.5 * (s + 1);
        const double fl = std::floor(c);
        const double f = c - fl;
        std::array<double, kMaxShapeDegree + 3> w{};
        uniform_bspline_values(s + 1, f, w.data());
        uniform_bspline_values(s, f, st.point.data());
        st.first = -static_cast<long>(fl);
        st.count = s + 1;
        const double inv = 1.0 / g.h;
        double acc = 0.0;
        for (int r = 0; r <= s; ++r) {
            acc += w[static_cast<std::size_t>(r)];
            st.anti[static_cast<std::size_t>(r)] = acc;
            st.point[static_cast<std::size_t>(r)] *= inv;
        }
        return;
    }
    const double hw = half_width();
    const long first = static_cast<long>(std::floor((x - hw - g.offset) / g.h)) + 1;
    const long last = static_cast<long>(std::ceil((x + hw - g.offset) / g.h)) - 1;
    const long count = last - first + 1;
    if (count > kMaxStencil) throw std::runtime_error("ShapeFn: stencil capacity exceeded");
    st.first = first;
    st.count = static_cast<int>(count < 0 ? 0 : count);
    for (int r = 0; r < st.count; ++r) {
        const double d = g.node(first + r) - x;
        st.point[static_cast<std::size_t>(r)] = value(d);
        st.anti[static_cast<std::size_t>(r)] = antiderivative(d);
    }
}

}  // namespace gempic
