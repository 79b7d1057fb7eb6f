#pragma once

/// Univariate compatible sequence V0 --d/dx--> V1 on a periodic grid.
///
/// Geometric dofs: point values at the nodes (level 0) and cell integrals
/// (level 1). In the geometric representation every operator is a real
/// circulant: the differential is d with (d u)_m = u_m - u_{m-1}, and the
/// mass matrices are the geometric Gram matrices K^{-T} M K^{-1}.
/// Practical coefficients (B-spline / modal) are available as views.

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "gempic/circulant.hpp"
#include "gempic/grid.hpp"

namespace gempic {

enum class BasisKind { Spline, Fourier };
enum class AveragingLevel { FromV1, DerivativeOfV0 };

using CoeffVector = std::vector<cplx>;
using DenseMatrix = Eigen::MatrixXcd;
using RealFn = std::function<double(double)>;

class SequencePair {
public:
    static SequencePair spline(std::size_t M, double L, int degree);
    static SequencePair fourier(std::size_t M, double L);

    BasisKind kind() const { return kind_; }
    int degree() const { return degree_; }
    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return grid_.M; }

    // geometric degrees of freedom
    std::vector<double> point_dofs(const RealFn& g) const;
    std::vector<double> cell_dofs(const RealFn& g) const;

    // practical coefficients
    CoeffVector dofs_to_coeffs(int level, std::span<const double> dofs) const;
    std::vector<double> coeffs_to_dofs(int level, const CoeffVector& coeffs) const;
    CoeffVector apply_differential(const CoeffVector& coeffs) const;
    cplx basis(int level, std::size_t k, double x) const;
    double evaluate(int level, const CoeffVector& coeffs, double x) const;
    /// Signed Fourier mode of coefficient slot k (k - K).
    long mode(std::size_t k) const { return static_cast<long>(k) - static_cast<long>(grid_.M / 2); }
    /// Fourier edge-integral factor T_k for coefficient slot k.
    cplx edge_factor(std::size_t k) const;

    // practical matrices (complex storage; spline entries are real)
    DenseMatrix change_of_basis(int level) const;
    DenseMatrix differential() const;
    DenseMatrix mass(int level) const;
    DenseMatrix averaging(AveragingLevel which) const;

    // geometric operators
    const Circulant& geometric_mass(int level) const { return level == 0 ? gmass0_ : gmass1_; }
    const Circulant& geometric_mass_inverse(int level) const { return level == 0 ? gmass0_inv_ : gmass1_inv_; }
    /// Averaging V1 -> V0 on dofs: (A u)_m = (u_m + u_{m+1}) / (2h).
    const Circulant& geometric_averaging() const { return gavg_; }

private:
    SequencePair() = default;
    void finish_geometric(const std::vector<cplx>& sym0, const std::vector<cplx>& sym1);
    double spline_basis(int deg, std::size_t k, double x) const;

    BasisKind kind_ = BasisKind::Spline;
    int degree_ = 0;
    Grid1D grid_;
    Circulant k0_;    // spline collocation
    Circulant m0_;    // spline practical mass, level 0
    Circulant m1_;    // spline practical mass, level 1
    Circulant gmass0_, gmass1_, gmass0_inv_, gmass1_inv_, gavg_;
};

/// Geometric differential and its transpose on dof vectors.
void apply_d(std::span<const double> u, std::span<double> out);
void apply_dT(std::span<const double> u, std::span<double> out);
/// Subtract the arithmetic mean (projector onto mean-free dof vectors).
void remove_mean(std::span<double> u);

struct TestFunction {
    RealFn value;
    RealFn derivative;
};

/// max |sigma1(g') - D sigma0(g)| in the practical basis. When
/// skip_level0_transform is set the level-0 dofs bypass K0^{-1}.
double commuting_residual(const SequencePair& seq, const TestFunction& g, bool skip_level0_transform = false);

/// Random real trigonometric polynomial with at most max_mode harmonics of
/// the domain; reproducible from the seed.
TestFunction random_trig_polynomial(double L, int max_mode, unsigned long long seed);

}  // namespace gempic
