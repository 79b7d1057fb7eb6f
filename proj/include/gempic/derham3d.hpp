#pragma once

/// Geometric differential matrices of the periodic 3D tensor-product complex.
/// Flattening is lexicographic with m1 fastest: (c (x) b (x) a)_{m,n} = c_{m3,n3} b_{m2,n2} a_{m1,n1}.

#include <Eigen/Sparse>

namespace gempic {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Univariate differential: (d u)_m = u_m - u_{m-1}, periodic.
SparseMatrix univariate_differential(int M);

struct Complex3D {
    int M1 = 0, M2 = 0, M3 = 0;
    SparseMatrix D0;  // grad, 3M x M
    SparseMatrix D1;  // curl, 3M x 3M
    SparseMatrix D2;  // div,  M x 3M
    int size() const { return M1 * M2 * M3; }
};

Complex3D assemble_complex3d(int M1, int M2, int M3);

struct ComplexReport {
    double curl_grad = 0.0;          // max |D1 D0|
    double div_curl = 0.0;           // max |D2 D1|
    double symmetry_defect = 0.0;    // max |D2 - block transpose of D0|
    double elementwise_transpose_defect = 0.0;  // max |D2 - D0^T|, informational
};

ComplexReport verify_complex(const Complex3D& c);

/// Numerical rank of a sparse matrix (dense full-pivot LU).
long matrix_rank(const SparseMatrix& A);

}  // namespace gempic
