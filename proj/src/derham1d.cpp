#include "gempic/derham1d.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gempic/shapes.hpp"

namespace gempic {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> symmetrized(const std::vector<double>& c)
{
    const std::size_t n = c.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = 0.5 * (c[i] + c[(n - i) % n]);
    return s;
}

Circulant symmetric_from_symbol(const std::vector<cplx>& sym)
{
    return Circulant(symmetrized(idft_real(sym)));
}

/// int B_deg(t) B_deg(t - shift) dt over the support, exact by Gauss-Legendre per unit span.
double bspline_overlap(int deg, int shift)
{
    double acc = 0.0;
    for (int j = 0; j <= deg; ++j) {
        acc += Gauss::integrate(
            [&](double t) { return cardinal_bspline(deg, t) * cardinal_bspline(deg, t - shift); },
            static_cast<double>(j), static_cast<double>(j + 1));
    }
    return acc;
}

Circulant periodic_band(std::size_t M, int deg, double scale)
{
    std::vector<double> col(M, 0.0);
    const long m = static_cast<long>(M);
    for (int d = -deg; d <= deg; ++d) {
        const long idx = ((d % m) + m) % m;
        col[static_cast<std::size_t>(idx)] += scale * bspline_overlap(deg, d);
    }
    return Circulant(std::move(col));
}

cplx fourier_edge_factor(long k, std::size_t M, double L)
{
    const double h = L / static_cast<double>(M);
    if (k == 0) return {h, 0.0};
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(M);
    return (L / (kTwoPi * static_cast<double>(k))) * (1.0 - std::exp(cplx(0.0, -theta))) / cplx(0.0, 1.0);
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

SequencePair SequencePair::spline(std::size_t M, double L, int degree)
{
    if (M < 3) throw std::invalid_argument("spline sequence: need M >= 3");
    if (degree < 1) throw std::invalid_argument("spline sequence: degree must be >= 1");
    if (static_cast<long>(M) <= degree) throw std::invalid_argument("spline sequence: need M > degree");
    if (degree > kMaxShapeDegree) throw std::invalid_argument("spline sequence: degree too large");
    SequencePair s;
    s.kind_ = BasisKind::Spline;
    s.degree_ = degree;
    // Greville points of even-degree splines are the knot midpoints.
    const double h = L / static_cast<double>(M);
    s.grid_ = Grid1D(M, L, degree % 2 == 0 ? 0.5 * h : 0.0);

    // K0(m, k) = N_k(x_m) = B_p(m - k + offset/h), periodized.
    std::vector<double> kcol(M, 0.0);
    const double shift = s.grid_.offset / h;
    const long m = static_cast<long>(M);
    for (long j = -degree - 1; j <= degree + 1; ++j) {
        const double v = cardinal_bspline(degree, static_cast<double>(j) + shift);
        if (v != 0.0) kcol[static_cast<std::size_t>(((j % m) + m) % m)] += v;
    }
    s.k0_ = Circulant(std::move(kcol));
    if (s.k0_.min_abs_symbol() < 1e-12) throw std::invalid_argument("spline sequence: singular collocation matrix");

    s.m0_ = periodic_band(M, degree, h);
    s.m1_ = periodic_band(M, degree - 1, 1.0 / h);

    std::vector<cplx> sym0(M), sym1(M);
    for (std::size_t k = 0; k < M; ++k) {
        const double kk = std::norm(s.k0_.symbol()[k]);
        sym0[k] = s.m0_.symbol()[k].real() / kk;
        sym1[k] = s.m1_.symbol()[k].real() / kk;
    }
    s.finish_geometric(sym0, sym1);
    return s;
}

SequencePair SequencePair::fourier(std::size_t M, double L)
{
    if (M < 3) throw std::invalid_argument("fourier sequence: need M >= 3");
    if (M % 2 == 0) throw std::invalid_argument("fourier sequence: M must be odd (M = 2K+1)");
    SequencePair s;
    s.kind_ = BasisKind::Fourier;
    s.degree_ = 0;
    s.grid_ = Grid1D(M, L, 0.0);
    const double h = s.grid_.h;
    std::vector<cplx> sym0(M, cplx(h, 0.0)), sym1(M);
    for (std::size_t k = 0; k < M; ++k) {
        sym1[k] = h / std::norm(fourier_edge_factor(signed_frequency(k, M), M, L));
    }
    s.finish_geometric(sym0, sym1);
    return s;
}

void SequencePair::finish_geometric(const std::vector<cplx>& sym0, const std::vector<cplx>& sym1)
{
    const std::size_t M = grid_.M;
    std::vector<cplx> inv0(M), inv1(M);
    for (std::size_t k = 0; k < M; ++k) {
        inv0[k] = 1.0 / sym0[k];
        inv1[k] = 1.0 / sym1[k];
    }
    gmass0_ = symmetric_from_symbol(sym0);
    gmass1_ = symmetric_from_symbol(sym1);
    gmass0_inv_ = symmetric_from_symbol(inv0);
    gmass1_inv_ = symmetric_from_symbol(inv1);
    std::vector<double> acol(M, 0.0);
    acol[0] = 0.5 / grid_.h;
    acol[M - 1] = 0.5 / grid_.h;
    gavg_ = Circulant(std::move(acol));
}

std::vector<double> SequencePair::point_dofs(const RealFn& g) const
{
    std::vector<double> out(grid_.M);
    for (std::size_t m = 0; m < grid_.M; ++m) out[m] = g(grid_.node(static_cast<long>(m)));
    return out;
}

std::vector<double> SequencePair::cell_dofs(const RealFn& g) const
{
    std::vector<double> out(grid_.M);
    for (std::size_t m = 0; m < grid_.M; ++m) {
        const long j = static_cast<long>(m);
        out[m] = Gauss::integrate(g, grid_.node(j - 1), grid_.node(j));
    }
    return out;
}

cplx SequencePair::edge_factor(std::size_t k) const
{
    return fourier_edge_factor(mode(k), grid_.M, grid_.L);
}

CoeffVector SequencePair::dofs_to_coeffs(int level, std::span<const double> dofs) const
{
    const std::size_t M = grid_.M;
    if (dofs.size() != M) throw std::invalid_argument("dofs_to_coeffs: wrong length");
    CoeffVector c(M);
    if (kind_ == BasisKind::Spline) {
        const auto x = k0_.solve(dofs);
        for (std::size_t k = 0; k < M; ++k) c[k] = x[k];
        return c;
    }
    const auto X = dft_real(dofs);
    const long Mi = static_cast<long>(M);
    for (std::size_t k = 0; k < M; ++k) {
        const long nu = mode(k);
        c[k] = X[static_cast<std::size_t>(((nu % Mi) + Mi) % Mi)] / static_cast<double>(M);
        if (level == 1) c[k] /= edge_factor(k);
    }
    return c;
}

std::vector<double> SequencePair::coeffs_to_dofs(int level, const CoeffVector& coeffs) const
{
    const std::size_t M = grid_.M;
    if (coeffs.size() != M) throw std::invalid_argument("coeffs_to_dofs: wrong length");
    if (kind_ == BasisKind::Spline) {
        std::vector<double> re(M);
        for (std::size_t k = 0; k < M; ++k) re[k] = coeffs[k].real();
        return k0_.apply(re);
    }
    std::vector<cplx> X(M);
    const long Mi = static_cast<long>(M);
    for (std::size_t k = 0; k < M; ++k) {
        const cplx c = level == 1 ? coeffs[k] * edge_factor(k) : coeffs[k];
        X[static_cast<std::size_t>(((mode(k) % Mi) + Mi) % Mi)] = c * static_cast<double>(M);
    }
    return idft_real(X);
}

CoeffVector SequencePair::apply_differential(const CoeffVector& c) const
{
    const std::size_t M = grid_.M;
    CoeffVector out(M);
    if (kind_ == BasisKind::Spline) {
        for (std::size_t k = 0; k < M; ++k) out[k] = c[k] - c[(k + M - 1) % M];
        return out;
    }
    for (std::size_t k = 0; k < M; ++k) out[k] = cplx(0.0, kTwoPi * static_cast<double>(mode(k)) / grid_.L) * c[k];
    return out;
}

double SequencePair::spline_basis(int deg, std::size_t k, double x) const
{
    const double h = grid_.h;
    const double Md = static_cast<double>(grid_.M);
    double t = (x - static_cast<double>(k) * h) / h;
    t -= Md * std::floor(t / Md);
    // t in [0, M); only images t + nM with n >= 0 can meet the support (0, deg+1)
    double acc = 0.0;
    for (double tt = t; tt < deg + 1; tt += Md) acc += cardinal_bspline(deg, tt);
    return acc;
}

cplx SequencePair::basis(int level, std::size_t k, double x) const
{
    if (kind_ == BasisKind::Spline) {
        if (level == 0) return spline_basis(degree_, k, x);
        return spline_basis(degree_ - 1, k, x) / grid_.h;
    }
    return std::exp(cplx(0.0, kTwoPi * static_cast<double>(mode(k)) * x / grid_.L));
}

double SequencePair::evaluate(int level, const CoeffVector& coeffs, double x) const
{
    cplx acc = 0.0;
    for (std::size_t k = 0; k < grid_.M; ++k) acc += coeffs[k] * basis(level, k, x);
    return acc.real();
}

DenseMatrix SequencePair::change_of_basis(int level) const
{
    const std::size_t M = grid_.M;
    DenseMatrix K(M, M);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t k = 0; k < M; ++k) {
            if (kind_ == BasisKind::Spline) {
                K(i, k) = k0_.entry(i, k);
            } else {
                const double ang = kTwoPi * static_cast<double>(mode(k)) * static_cast<double>(i) / static_cast<double>(M);
                K(i, k) = std::exp(cplx(0.0, ang)) * (level == 1 ? edge_factor(k) : cplx(1.0));
            }
        }
    return K;
}

DenseMatrix SequencePair::differential() const
{
    const std::size_t M = grid_.M;
    DenseMatrix D = DenseMatrix::Zero(M, M);
    for (std::size_t k = 0; k < M; ++k) {
        if (kind_ == BasisKind::Spline) {
            D(k, k) = 1.0;
            D(k, (k + M - 1) % M) = -1.0;
        } else {
            D(k, k) = cplx(0.0, kTwoPi * static_cast<double>(mode(k)) / grid_.L);
        }
    }
    return D;
}

DenseMatrix SequencePair::mass(int level) const
{
    const std::size_t M = grid_.M;
    if (kind_ == BasisKind::Fourier) return DenseMatrix::Identity(M, M) * grid_.L;
    const Circulant& c = level == 0 ? m0_ : m1_;
    DenseMatrix out(M, M);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j) out(i, j) = c.entry(i, j);
    return out;
}

DenseMatrix SequencePair::averaging(AveragingLevel which) const
{
    const std::size_t M = grid_.M;
    DenseMatrix A = DenseMatrix::Zero(M, M);
    if (kind_ == BasisKind::Spline) {
        for (std::size_t j = 0; j < M; ++j) {
            A(j, j) += 0.5 / grid_.h;
            A(j, (j + 1) % M) += 0.5 / grid_.h;
        }
    } else {
        for (std::size_t k = 0; k < M; ++k) A(k, k) = sinc(kTwoPi * static_cast<double>(mode(k)) / static_cast<double>(M));
    }
    if (which == AveragingLevel::DerivativeOfV0) return A * differential();
    return A;
}

void apply_d(std::span<const double> u, std::span<double> out)
{
    const std::size_t n = u.size();
    for (std::size_t m = 0; m < n; ++m) out[m] = u[m] - u[(m + n - 1) % n];
}

void apply_dT(std::span<const double> u, std::span<double> out)
{
    const std::size_t n = u.size();
    for (std::size_t m = 0; m < n; ++m) out[m] = u[m] - u[(m + 1) % n];
}

void remove_mean(std::span<double> u)
{
    double s = 0.0;
    for (double v : u) s += v;
    s /= static_cast<double>(u.size());
    for (double& v : u) v -= s;
}

double commuting_residual(const SequencePair& seq, const TestFunction& g, bool skip_level0_transform)
{
    const auto s0 = seq.point_dofs(g.value);
    const auto s1 = seq.cell_dofs(g.derivative);
    CoeffVector c0;
    if (skip_level0_transform) {
        c0.assign(s0.begin(), s0.end());
    } else {
        c0 = seq.dofs_to_coeffs(0, s0);
    }
    const auto c1 = seq.dofs_to_coeffs(1, s1);
    const auto dc0 = seq.apply_differential(c0);
    double r = 0.0;
    for (std::size_t k = 0; k < c1.size(); ++k) r = std::max(r, std::abs(c1[k] - dc0[k]));
    return r;
}

TestFunction random_trig_polynomial(double L, int max_mode, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(max_mode + 1)), b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = u(rng);
        b[n] = n == 0 ? 0.0 : u(rng);
    }
    const double w = kTwoPi / L;
    TestFunction f;
    f.value = [a, b, w](double x) {
        double s = 0.0;
        for (std::size_t n = 0; n < a.size(); ++n) {
            const double kx = w * static_cast<double>(n) * x;
            s += a[n] * std::cos(kx) + b[n] * std::sin(kx);
        }
        return s;
    };
    f.derivative = [a, b, w](double x) {
        double s = 0.0;
        for (std::size_t n = 1; n < a.size(); ++n) {
            const double kn = w * static_cast<double>(n);
            s += kn * (b[n] * std::cos(kn * x) - a[n] * std::sin(kn * x));
        }
        return s;
    };
    return f;
}

}  // namespace gempic
