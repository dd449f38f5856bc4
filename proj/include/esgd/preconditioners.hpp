#pragma once

#include <string>
#include <vector>

#include "esgd/dense_matrix.hpp"

namespace esgd {

enum class PreconditionerKind { Jacobi, Equilibration, GaussNewton, AbsHessianDiag };

std::string to_string(PreconditionerKind kind);

// Diagonal preconditioner scales. d stores curvature magnitudes; the applied
// multiplier is 1/d elementwise. Zero entries are kept as-is so curvature
// cancellation stays observable; consumers add damping before dividing.
struct DiagPreconditioner {
    std::vector<double> d;
    PreconditionerKind kind;
};

// d_i = |H_ii|.
DiagPreconditioner jacobi_diag(const DenseMatrix& h);

// d_i = ||H_{i,.}||_2 = sqrt(diag(H^2))_i.
DiagPreconditioner equilibration_diag(const DenseMatrix& h);

// d_i = (|H|)_ii, the Jacobi diagonal of the absolute Hessian.
DiagPreconditioner abs_hessian_diag(const DenseMatrix& h);

// Wraps externally computed scales (e.g. model::gauss_newton_diag).
DiagPreconditioner wrap_scales(std::vector<double> d, PreconditionerKind kind);

// D^{-1/2} H D^{-1/2} with D = diag(d): result_ij = H_ij / sqrt(d_i d_j).
// Throws std::invalid_argument on a nonpositive scale.
DenseMatrix transform_hessian(const DenseMatrix& h, const std::vector<double>& d);

// |H|^{-1/2} H |H|^{-1/2}; eigenvalues are +-1 and the condition number 1.
// Throws when |lambda|_min <= 1e-12 |lambda|_max.
DenseMatrix perfect_precondition(const DenseMatrix& h);

// kappa(transform_hessian(H, d)) / kappa(H); < 1 means improvement. Returns
// +infinity when either condition number is infinite.
double reduction_ratio(const DenseMatrix& h, const std::vector<double>& d);

}  // namespace esgd
