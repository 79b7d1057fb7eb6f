#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

template <class F>
double bracket_root(F f, double lo, double hi)
{
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

double weibel_dispersion(double gamma, double k, double vth1, double vth2)
{
    const double A = (vth2 * vth2) / (vth1 * vth1);
    const double y = gamma / (std::numbers::sqrt2 * k * vth1);
    // y sqrt(pi) exp(y^2) erfc(y), the -xi Z(xi) term at xi = i y
    const double w = y * std::sqrt(std::numbers::pi) * std::exp(y * y) * boost::math::erfc(y);
    return -gamma * gamma - k * k - 1.0 + A * (1.0 - w);
}

double weibel_growth_rate(double k, double vth1, double vth2)
{
    auto f = [&](double g) { return weibel_dispersion(g, k, vth1, vth2); };
    double hi = 1e-3;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 10.0) throw std::runtime_error("weibel oracle: no root");
    }
    if (f(1e-12) <= 0.0) throw std::runtime_error("weibel oracle: stable configuration");
    return bracket_root(f, 1e-12, hi);
}

double two_stream_dispersion(double gamma, double k, double drift)
{
    const double a = gamma / k;
    auto fprime = [drift](double v) {
        const double c = 0.5 / std::sqrt(2.0 * std::numbers::pi);
        return -c * ((v - drift) * std::exp(-0.5 * (v - drift) * (v - drift)) +
                     (v + drift) * std::exp(-0.5 * (v + drift) * (v + drift)));
    };
    auto integrand = [&](double v) { return fprime(v) * v / (v * v + a * a); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double lim = drift + 14.0;
    double s = 0.0;
    // split at the kink scale a and the beam centres
    const double pts[] = {-lim, -drift, -std::max(a, 1e-3), 0.0, std::max(a, 1e-3), drift, lim};
    for (int i = 0; i + 1 < 7; ++i) s += GK::integrate(integrand, pts[i], pts[i + 1], 15, 1e-15);
    return 1.0 - s / (k * k);
}

double two_stream_growth_rate(double k, double drift)
{
    auto f = [&](double g) { return two_stream_dispersion(g, k, drift); };
    double lo = 1e-6, hi = 1.0;
    if (f(lo) * f(hi) > 0.0) throw std::runtime_error("two-stream oracle: root not bracketed");
    return bracket_root(f, lo, hi);
}

}  // namespace oracle
