#include "gempic/structure.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gempic {

namespace {

struct Layout {
    Eigen::Index N, M, v1, v2, e1, e2, b3, size;
};

Layout layout(const ParticleEnsemble& ens, std::size_t M)
{
    const auto N = static_cast<Eigen::Index>(ens.size());
    const auto m = static_cast<Eigen::Index>(M);
    Layout l{};
    l.N = N;
    l.M = m;
    l.v1 = N;
    l.v2 = ens.dv == 2 ? 2 * N : -1;
    l.e1 = (ens.dv + 1) * N;
    l.e2 = ens.dv == 2 ? l.e1 + m : -1;
    l.b3 = ens.dv == 2 ? l.e1 + 2 * m : -1;
    l.size = l.e1 + (ens.dv == 2 ? 3 : 1) * m;
    return l;
}

Eigen::MatrixXd dense(const Circulant& c)
{
    const auto M = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd A(M, M);
    for (Eigen::Index i = 0; i < M; ++i)
        for (Eigen::Index j = 0; j < M; ++j)
            A(i, j) = c.entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return A;
}

Eigen::Map<const Eigen::VectorXd> view(const std::vector<double>& v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

Eigen::VectorXd pack_state(const ParticleEnsemble& ens, const FieldState& f)
{
    const Layout l = layout(ens, f.e1.size());
    Eigen::VectorXd U(l.size);
    U.segment(0, l.N) = view(ens.x);
    U.segment(l.v1, l.N) = view(ens.v1);
    U.segment(l.e1, l.M) = view(f.e1);
    if (ens.dv == 2) {
        U.segment(l.v2, l.N) = view(ens.v2);
        U.segment(l.e2, l.M) = view(f.e2);
        U.segment(l.b3, l.M) = view(f.b3);
    }
    return U;
}

void unpack_state(const Eigen::VectorXd& U, ParticleEnsemble& ens, FieldState& f)
{
    const Layout l = layout(ens, f.e1.size());
    if (U.size() != l.size) throw std::invalid_argument("unpack_state: size mismatch");
    auto put = [&](std::vector<double>& dst, Eigen::Index off, Eigen::Index n) {
        for (Eigen::Index i = 0; i < n; ++i) dst[static_cast<std::size_t>(i)] = U[off + i];
    };
    put(ens.x, 0, l.N);
    put(ens.v1, l.v1, l.N);
    put(f.e1, l.e1, l.M);
    if (ens.dv == 2) {
        put(ens.v2, l.v2, l.N);
        put(f.e2, l.e2, l.M);
        put(f.b3, l.b3, l.M);
    }
    f.touch();
}

double hamiltonian(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f)
{
    double kin = 0.0;
    for (std::size_t p = 0; p < ens.size(); ++p) {
        double v2 = ens.v1[p] * ens.v1[p];
        if (ens.dv == 2) v2 += ens.v2[p] * ens.v2[p];
        kin += 0.5 * ens.m(p) * v2;
    }
    double h = kin + field_energy(seq, 0, f.e1);
    if (f.transverse()) h += field_energy(seq, 1, f.e2) + field_energy(seq, 0, f.b3);
    return h;
}

Eigen::VectorXd hamiltonian_gradient(const SequencePair& seq, const ParticleEnsemble& ens, const FieldState& f)
{
    const Layout l = layout(ens, f.e1.size());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(l.size);
    for (Eigen::Index p = 0; p < l.N; ++p) {
        const auto q = static_cast<std::size_t>(p);
        g[l.v1 + p] = ens.m(q) * ens.v1[q];
        if (ens.dv == 2) g[l.v2 + p] = ens.m(q) * ens.v2[q];
    }
    g.segment(l.e1, l.M) = view(seq.geometric_mass(0).apply(f.e1));
    if (ens.dv == 2) {
        g.segment(l.e2, l.M) = view(seq.geometric_mass(1).apply(f.e2));
        g.segment(l.b3, l.M) = view(seq.geometric_mass(0).apply(f.b3));
    }
    return g;
}

Eigen::MatrixXd assemble_J(const Coupling& coupling, const ParticleEnsemble& ens, const FieldState& f)
{
    const SequencePair& seq = coupling.seq();
    const Grid1D& grid = coupling.grid();
    if (ens.size() > kStructureMaxParticles || grid.M > kStructureMaxCells)
        throw std::length_error("assemble_J: desk-scale only (N <= 50, M <= 31)");
    const Layout l = layout(ens, grid.M);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(l.size, l.size);

    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(l.M, l.M);
    Q.array() -= 1.0 / static_cast<double>(l.M);

    Eigen::MatrixXd S0 = Eigen::MatrixXd::Zero(l.N, l.M), S1 = S0;
    Eigen::VectorXd bs = Eigen::VectorXd::Zero(l.N);
    CouplingWorkspace ws;
    coupling.refresh(ws, f);
    for (Eigen::Index p = 0; p < l.N; ++p) {
        const auto q = static_cast<std::size_t>(p);
        Stencil st;
        coupling.shape().stencil(grid, ens.x[q], st);
        for (long j = st.first - 1; j < st.first + st.count + 1; ++j) {
            const auto i = static_cast<Eigen::Index>(grid.wrap(j));
            const long r = j - st.first;
            if (r >= 0 && r < st.count) S0(p, i) += st.point[static_cast<std::size_t>(r)];
            if (r >= 0) S1(p, i) += st.cell(j);
        }
        if (ens.dv == 2) bs[p] = coupling.eval(ws, f, ens.x[q]).b3;
    }

    for (Eigen::Index p = 0; p < l.N; ++p) {
        const auto q = static_cast<std::size_t>(p);
        const double m = ens.m(q), qm = ens.q_over_m();
        J(p, l.v1 + p) = 1.0 / m;
        J(l.v1 + p, p) = -1.0 / m;
        if (ens.dv == 2) {
            const double r = ens.q(q) * bs[p] / (m * m);
            J(l.v1 + p, l.v2 + p) = r;
            J(l.v2 + p, l.v1 + p) = -r;
        }
        const Eigen::RowVectorXd c1 = qm * S0.row(p) * Q;
        J.block(l.v1 + p, l.e1, 1, l.M) = c1;
        J.block(l.e1, l.v1 + p, l.M, 1) = -c1.transpose();
        if (ens.dv == 2) {
            const Eigen::RowVectorXd c2 = qm * S1.row(p) * Q;
            J.block(l.v2 + p, l.e2, 1, l.M) = c2;
            J.block(l.e2, l.v2 + p, l.M, 1) = -c2.transpose();
        }
    }
    if (ens.dv == 2) {
        Eigen::MatrixXd D = Eigen::MatrixXd::Identity(l.M, l.M);
        for (Eigen::Index m = 0; m < l.M; ++m) D(m, (m + l.M - 1) % l.M) -= 1.0;
        const Eigen::MatrixXd M0inv = dense(seq.geometric_mass_inverse(0));
        const Eigen::MatrixXd C = -D * M0inv;
        J.block(l.e2, l.b3, l.M, l.M) = C;
        J.block(l.b3, l.e2, l.M, l.M) = -C.transpose();
    }
    return J;
}

Eigen::VectorXd production_rhs(const Coupling& coupling, const ParticleEnsemble& ens, const FieldState& f)
{
    const SequencePair& seq = coupling.seq();
    const Layout l = layout(ens, coupling.grid().M);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(l.size);
    CouplingWorkspace ws;
    coupling.refresh(ws, f);
    const double qm = ens.q_over_m();
    for (Eigen::Index p = 0; p < l.N; ++p) {
        const auto q = static_cast<std::size_t>(p);
        const CouplingValues c = coupling.eval(ws, f, ens.x[q]);
        r[p] = ens.v1[q];
        if (ens.dv == 2) {
            r[l.v1 + p] = qm * (c.e1 + ens.v2[q] * c.b3);
            r[l.v2 + p] = qm * (c.e2 - ens.v1[q] * c.b3);
        } else {
            r[l.v1 + p] = qm * c.e1;
        }
    }
    const CurrentDofs j = coupling.deposit_current(ens);
    const FieldRates fr = maxwell_rhs(seq, f, j);
    r.segment(l.e1, l.M) = view(fr.e1);
    if (ens.dv == 2) {
        r.segment(l.e2, l.M) = view(fr.e2);
        r.segment(l.b3, l.M) = view(fr.b3);
    }
    return r;
}

void random_state(const Coupling& coupling, const RandomStateSpec& spec, unsigned long long seed,
                  ParticleEnsemble& ens, FieldState& f)
{
    const SequencePair& seq = coupling.seq();
    const double L = coupling.grid().L;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ens = ParticleEnsemble::uniform_weights(spec.N, L, spec.dv);
    for (std::size_t p = 0; p < spec.N; ++p) {
        ens.x[p] = 0.5 * L * (1.0 + u(rng));
        ens.v1[p] = spec.vmax * u(rng);
        if (spec.dv == 2) ens.v2[p] = spec.vmax * u(rng);
    }
    f = FieldState::zeros(seq.size(), spec.dv);
    if (spec.dv == 2) {
        for (auto* v : {&f.e2, &f.b3}) {
            for (double& x : *v) x = spec.field_scale * u(rng);
            remove_mean(*v);
        }
    }
    f.e1 = poisson_init(seq, coupling.deposit_rho(ens), ens.total_charge(), ens.size());
    f.touch();
}

Functional random_quadratic(Eigen::Index n, unsigned long long seed, double scale)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b[i] = u(rng);
        for (Eigen::Index j = 0; j <= i; ++j) A(i, j) = A(j, i) = scale * u(rng);
    }
    Functional F;
    F.value = [A, b](const Eigen::VectorXd& U) { return 0.5 * U.dot(A * U) + b.dot(U); };
    F.gradient = [A, b](const Eigen::VectorXd& U) -> Eigen::VectorXd { return A * U + b; };
    return F;
}

Functional random_linear_fields(Eigen::Index n, Eigen::Index offset, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = offset; i < n; ++i) b[i] = u(rng);
    Functional F;
    F.value = [b](const Eigen::VectorXd& U) { return b.dot(U); };
    F.gradient = [b](const Eigen::VectorXd&) -> Eigen::VectorXd { return b; };
    return F;
}

Bracket::Bracket(const Coupling& coupling, ParticleEnsemble ens, FieldState f)
    : coupling_(&coupling), ens_(std::move(ens)), f_(std::move(f))
{
}

Eigen::MatrixXd Bracket::J(const Eigen::VectorXd& U) const
{
    unpack_state(U, ens_, f_);
    return assemble_J(*coupling_, ens_, f_);
}

double Bracket::operator()(const Functional& F, const Functional& G, const Eigen::VectorXd& U) const
{
    const Eigen::MatrixXd Jm = J(U);
    const Eigen::VectorXd gf = F.gradient(U), gg = G.gradient(U);
    return 0.5 * (gf.dot(Jm * gg) - gg.dot(Jm * gf));
}

double Bracket::jacobi_residual(const Functional& F, const Functional& G, const Functional& H,
                                const Eigen::VectorXd& U, double fd_step) const
{
    auto nested = [&](const Functional& A, const Functional& B) {
        Functional AB;
        AB.value = [this, A, B](const Eigen::VectorXd& X) { return (*this)(A, B, X); };
        AB.gradient = [this, A, B, fd_step](const Eigen::VectorXd& X) -> Eigen::VectorXd {
            Eigen::VectorXd g(X.size());
            Eigen::VectorXd Y = X;
            for (Eigen::Index i = 0; i < X.size(); ++i) {
                Y[i] = X[i] + fd_step;
                const double fp = (*this)(A, B, Y);
                Y[i] = X[i] - fd_step;
                const double fm = (*this)(A, B, Y);
                Y[i] = X[i];
                g[i] = (fp - fm) / (2.0 * fd_step);
            }
            return g;
        };
        return AB;
    };
    const double a = (*this)(nested(F, G), H, U);
    const double b = (*this)(nested(G, H), F, U);
    const double c = (*this)(nested(H, F), G, U);
    return std::abs(a + b + c);
}

ShapeCommutingReport verify_jacobi_identities(const Coupling& coupling, const std::vector<double>& positions)
{
    const SequencePair& seq = coupling.seq();
    const Grid1D& g = coupling.grid();
    const ShapeFn& S = coupling.shape();
    if (S.degree() < 1) throw std::invalid_argument("verify_jacobi_identities: shape degree must be >= 1");
    using Quad = boost::math::quadrature::gauss<double, 20>;
    const long images = static_cast<long>(std::ceil(S.half_width() / g.L)) + 1;
    ShapeCommutingReport rep;
    for (double xp : positions) {
        std::vector<double> s0(g.M, 0.0), s1(g.M, 0.0);
        std::vector<double> knots;
        for (long n = -images; n <= images; ++n)
            for (int i = 0; i <= S.degree() + 1; ++i)
                knots.push_back(xp + n * g.L + (i - 0.5 * (S.degree() + 1)) * S.scale());
        std::sort(knots.begin(), knots.end());
        auto dS = [&](double x) {
            double s = 0.0;
            for (long n = -images; n <= images; ++n) s += S.derivative(x - xp - n * g.L);
            return s;
        };
        for (std::size_t m = 0; m < g.M; ++m) {
            const double xm = g.node(static_cast<long>(m));
            for (long n = -images; n <= images; ++n) s0[m] += S.value(xm - xp - n * g.L);
            const double a = xm - g.h;
            double lo = a, acc = 0.0;
            for (double k : knots) {
                if (k <= lo || k >= xm) continue;
                acc += Quad::integrate(dS, lo, k);
                lo = k;
            }
            acc += Quad::integrate(dS, lo, xm);
            s1[m] = acc;
        }
        const auto c0 = seq.dofs_to_coeffs(0, s0);
        const auto c1 = seq.dofs_to_coeffs(1, s1);
        const auto dc0 = seq.apply_differential(c0);
        double scale = 0.0, r = 0.0;
        for (double v : s0) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < c1.size(); ++k) r = std::max(r, std::abs(c1[k] - dc0[k]));
        rep.max_residual = std::max(rep.max_residual, r / std::max(scale, 1e-300));
        ++rep.samples;
    }
    return rep;
}

}  // namespace gempic
