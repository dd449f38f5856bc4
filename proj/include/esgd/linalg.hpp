#pragma once

#include <utility>
#include <vector>

#include "esgd/dense_matrix.hpp"

namespace esgd {

// Eigendecomposition of a symmetric matrix. eigenvalues are sorted in
// descending order; column j of eigenvectors pairs with eigenvalues[j].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
};

// Symmetric eigendecomposition by cyclic Jacobi rotation sweeps.
// Converges when the off-diagonal Frobenius mass drops below
// 1e-12 * ||H||_F; at most 100 sweeps. Throws std::invalid_argument for
// non-square or asymmetric input (asymmetry above 1e-10 * ||H||_F).
EigenDecomposition sym_eig(const DenseMatrix& h);

// Singular values, descending. Symmetric input uses |eigenvalues|;
// general square input falls back to sqrt of the eigenvalues of A^T A.
std::vector<double> singular_values(const DenseMatrix& a);

// sigma_max / sigma_min. Returns +infinity when sigma_min < 1e-12 * sigma_max.
// Throws std::invalid_argument for non-square or all-zero input.
double condition_number(const DenseMatrix& a);

// |H| = sum_j |lambda_j| q_j q_j^T. Symmetric positive semi-definite.
DenseMatrix abs_matrix(const DenseMatrix& h);

struct RowEquilibration {
    std::vector<double> scales;  // scales[i] = ||A_{i,.}||_2
    DenseMatrix equilibrated;    // diag(scales)^{-1} A, unit-norm rows
};

// Throws std::invalid_argument naming the row index if a row norm is
// below 1e-300.
RowEquilibration row_equilibrate(const DenseMatrix& a);

// Determinant via LU with partial pivoting.
double determinant(const DenseMatrix& a);

// Upper bound on the condition number: 2/|det H| * (||H||_F / sqrt(N))^N.
// Throws std::invalid_argument when |det H| < 1e-300.
double guggenheimer_bound(const DenseMatrix& h);

}  // namespace esgd
