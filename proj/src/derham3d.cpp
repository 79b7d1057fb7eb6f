#include "gempic/derham3d.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>
#include <vector>

namespace gempic {

namespace {

SparseMatrix identity(int n)
{
    SparseMatrix I(n, n);
    I.setIdentity();
    return I;
}

SparseMatrix kron3(const SparseMatrix& c, const SparseMatrix& b, const SparseMatrix& a)
{
    SparseMatrix ba = Eigen::kroneckerProduct(b, a);
    return Eigen::kroneckerProduct(c, ba);
}

SparseMatrix stack(const std::vector<std::vector<SparseMatrix>>& blocks, int rows, int cols)
{
    std::vector<Eigen::Triplet<double>> trip;
    int r0 = 0;
    for (const auto& brow : blocks) {
        int c0 = 0;
        int h = 0;
        for (const auto& B : brow) {
            for (int k = 0; k < B.outerSize(); ++k)
                for (SparseMatrix::InnerIterator it(B, k); it; ++it)
                    trip.emplace_back(r0 + static_cast<int>(it.row()), c0 + static_cast<int>(it.col()), it.value());
            c0 += static_cast<int>(B.cols());
            h = static_cast<int>(B.rows());
        }
        r0 += h;
    }
    SparseMatrix out(rows, cols);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

double max_abs(const SparseMatrix& A)
{
    double m = 0.0;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

}  // namespace

SparseMatrix univariate_differential(int M)
{
    std::vector<Eigen::Triplet<double>> trip;
    for (int m = 0; m < M; ++m) {
        trip.emplace_back(m, m, 1.0);
        trip.emplace_back(m, (m + M - 1) % M, -1.0);
    }
    SparseMatrix d(M, M);
    d.setFromTriplets(trip.begin(), trip.end());
    return d;
}

Complex3D assemble_complex3d(int M1, int M2, int M3)
{
    if (M1 < 2 || M2 < 2 || M3 < 2) throw std::invalid_argument("assemble_complex3d: each M must be >= 2");
    Complex3D c;
    c.M1 = M1;
    c.M2 = M2;
    c.M3 = M3;
    const SparseMatrix d1 = univariate_differential(M1), d2 = univariate_differential(M2),
                       d3 = univariate_differential(M3);
    const SparseMatrix I1 = identity(M1), I2 = identity(M2), I3 = identity(M3);
    const SparseMatrix g1 = kron3(I3, I2, d1);
    const SparseMatrix g2 = kron3(I3, d2, I1);
    const SparseMatrix g3 = kron3(d3, I2, I1);
    const int M = c.size();
    SparseMatrix Z(M, M);
    c.D0 = stack({{g1}, {g2}, {g3}}, 3 * M, M);
    c.D1 = stack({{Z, -g3, g2}, {g3, Z, -g1}, {-g2, g1, Z}}, 3 * M, 3 * M);
    c.D2 = stack({{g1, g2, g3}}, M, 3 * M);
    return c;
}

ComplexReport verify_complex(const Complex3D& c)
{
    ComplexReport r;
    const int M = c.size();
    r.curl_grad = max_abs(SparseMatrix(c.D1 * c.D0));
    r.div_curl = max_abs(SparseMatrix(c.D2 * c.D1));
    // block transpose: the three M x M blocks of D0 laid out as a block row
    std::vector<SparseMatrix> g;
    for (int b = 0; b < 3; ++b) g.push_back(c.D0.middleRows(b * M, M));
    const SparseMatrix bt = stack({{g[0], g[1], g[2]}}, M, 3 * M);
    r.symmetry_defect = max_abs(SparseMatrix(c.D2 - bt));
    r.elementwise_transpose_defect = max_abs(SparseMatrix(c.D2 - SparseMatrix(c.D0.transpose())));
    return r;
}

long matrix_rank(const SparseMatrix& A)
{
    Eigen::MatrixXd dense(A);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
    return lu.rank();
}

}  // namespace gempic
