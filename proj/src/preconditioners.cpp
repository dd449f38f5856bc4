#include "esgd/preconditioners.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "esgd/linalg.hpp"

namespace esgd {

std::string to_string(PreconditionerKind kind) {
    switch (kind) {
        case PreconditionerKind::Jacobi: return "jacobi";
        case PreconditionerKind::Equilibration: return "equilibration";
        case PreconditionerKind::GaussNewton: return "gauss-newton";
        case PreconditionerKind::AbsHessianDiag: return "abs-hessian-diag";
    }
    return "unknown";
}

DiagPreconditioner jacobi_diag(const DenseMatrix& h) {
    if (!h.is_symmetric()) throw std::invalid_argument("jacobi_diag: matrix is not symmetric");
    DiagPreconditioner p{{}, PreconditionerKind::Jacobi};
    p.d.resize(h.rows);
    for (std::size_t i = 0; i < h.rows; ++i) p.d[i] = std::fabs(h(i, i));
    return p;
}

DiagPreconditioner equilibration_diag(const DenseMatrix& h) {
    if (!h.is_symmetric())
        throw std::invalid_argument("equilibration_diag: matrix is not symmetric");
    DiagPreconditioner p{{}, PreconditionerKind::Equilibration};
    p.d.resize(h.rows);
    for (std::size_t i = 0; i < h.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < h.cols; ++j) s += h(i, j) * h(i, j);
        p.d[i] = std::sqrt(s);
    }
    return p;
}

DiagPreconditioner abs_hessian_diag(const DenseMatrix& h) {
    DiagPreconditioner p{abs_matrix(h).diag(), PreconditionerKind::AbsHessianDiag};
    for (double& v : p.d) v = std::max(v, 0.0);
    return p;
}

DiagPreconditioner wrap_scales(std::vector<double> d, PreconditionerKind kind) {
    for (double v : d)
        if (v < 0.0) throw std::invalid_argument("wrap_scales: negative scale");
    return DiagPreconditioner{std::move(d), kind};
}

DenseMatrix transform_hessian(const DenseMatrix& h, const std::vector<double>& d) {
    if (!h.is_symmetric()) throw std::invalid_argument("transform_hessian: matrix is not symmetric");
    if (d.size() != h.rows)
        throw std::invalid_argument("transform_hessian: scale vector length mismatch");
    std::vector<double> inv_sqrt(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0))
            throw std::invalid_argument("transform_hessian: scale " + std::to_string(i) +
                                        " is not positive");
        inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
    }
    DenseMatrix out(h.rows, h.cols);
    for (std::size_t i = 0; i < h.rows; ++i)
        for (std::size_t j = 0; j < h.cols; ++j) out(i, j) = h(i, j) * inv_sqrt[i] * inv_sqrt[j];
    return out;
}

DenseMatrix perfect_precondition(const DenseMatrix& h) {
    const EigenDecomposition eig = sym_eig(h);
    double amax = 0.0, amin = std::numeric_limits<double>::infinity();
    for (double v : eig.eigenvalues) {
        amax = std::max(amax, std::fabs(v));
        amin = std::min(amin, std::fabs(v));
    }
    if (!(amin > 1e-12 * amax))
        throw std::invalid_argument("perfect_precondition: matrix is numerically singular");
    // W = Q diag(|lambda|^{-1/2}) Q^T, then W H W formed explicitly.
    const std::size_t n = h.rows;
    DenseMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double f = 1.0 / std::sqrt(std::fabs(eig.eigenvalues[j]));
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
    }
    const DenseMatrix w = multiply(scaled, eig.eigenvectors.transposed());
    return symmetrized(multiply(multiply(w, h), w));
}

double reduction_ratio(const DenseMatrix& h, const std::vector<double>& d) {
    const double before = condition_number(h);
    const double after = condition_number(transform_hessian(h, d));
    if (!std::isfinite(before) || !std::isfinite(after))
        return std::numeric_limits<double>::infinity();
    return after / before;
}

}  // namespace esgd
