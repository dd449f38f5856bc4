#include "esgd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace esgd {

namespace {

double off_diagonal_mass(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows; ++p)
        for (std::size_t q = p + 1; q < a.cols; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

void require_symmetric(const DenseMatrix& h, const char* who) {
    if (!h.square())
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(h.rows) + "x" + std::to_string(h.cols));
    const double fro = h.frobenius_norm();
    if (h.max_asymmetry() > 1e-10 * std::max(fro, 1e-300))
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

}  // namespace

EigenDecomposition sym_eig(const DenseMatrix& h) {
    require_symmetric(h, "sym_eig");
    const std::size_t n = h.rows;
    DenseMatrix a = h;
    DenseMatrix q = DenseMatrix::identity(n);
    const double fro = h.frobenius_norm();

    // q holds Q^T so rotations touch contiguous rows.
    if (fro > 0.0) {
        for (int sweep = 0; sweep < 100; ++sweep) {
            if (off_diagonal_mass(a) < 1e-12 * fro) break;
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t r = p + 1; r < n; ++r) {
                    const double apr = a(p, r);
                    if (apr == 0.0) continue;
                    const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                     (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    // A <- G^T A G. Symmetry lets the two-sided rotation be
                    // written as two contiguous row combinations mirrored
                    // back into the columns.
                    const double app = a(p, p), arr = a(r, r);
                    double* rowp = a.data.data() + p * n;
                    double* rowr = a.data.data() + r * n;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double vp = rowp[i], vr = rowr[i];
                        rowp[i] = c * vp - s * vr;
                        rowr[i] = s * vp + c * vr;
                    }
                    a(p, p) = c * c * app - 2.0 * c * s * apr + s * s * arr;
                    a(r, r) = s * s * app + 2.0 * c * s * apr + c * c * arr;
                    a(p, r) = 0.0;
                    a(r, p) = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (i == p || i == r) continue;
                        a(i, p) = rowp[i];
                        a(i, r) = rowr[i];
                    }

                    double* qp = q.data.data() + p * n;
                    double* qr = q.data.data() + r * n;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double vp = qp[i], vr = qr[i];
                        qp[i] = c * vp - s * vr;
                        qr[i] = s * vp + c * vr;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]);
        // row order[j] of Q^T is eigenvector j
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = q(order[j], i);
    }
    return out;
}

std::vector<double> singular_values(const DenseMatrix& a) {
    if (!a.square()) throw std::invalid_argument("singular_values: matrix must be square");
    std::vector<double> sv;
    if (a.is_symmetric()) {
        const EigenDecomposition eig = sym_eig(a);
        sv.reserve(eig.eigenvalues.size());
        for (double v : eig.eigenvalues) sv.push_back(std::fabs(v));
    } else {
        const DenseMatrix ata = multiply(a.transposed(), a);
        const EigenDecomposition eig = sym_eig(symmetrized(ata));
        sv.reserve(eig.eigenvalues.size());
        for (double v : eig.eigenvalues) sv.push_back(std::sqrt(std::max(v, 0.0)));
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double condition_number(const DenseMatrix& a) {
    if (!a.square()) throw std::invalid_argument("condition_number: matrix must be square");
    if (a.max_abs() == 0.0)
        throw std::invalid_argument("condition_number: zero matrix is degenerate");
    const std::vector<double> sv = singular_values(a);
    const double smax = sv.front();
    const double smin = sv.back();
    if (smin < 1e-12 * smax) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

DenseMatrix abs_matrix(const DenseMatrix& h) {
    require_symmetric(h, "abs_matrix");
    const EigenDecomposition eig = sym_eig(h);
    const std::size_t n = h.rows;
    // Q diag(|lambda|) Q^T
    DenseMatrix scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double av = std::fabs(eig.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= av;
    }
    return symmetrized(multiply(scaled, eig.eigenvectors.transposed()));
}

RowEquilibration row_equilibrate(const DenseMatrix& a) {
    RowEquilibration out;
    out.scales.resize(a.rows);
    out.equilibrated = DenseMatrix(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * a(i, j);
        const double norm = std::sqrt(s);
        if (norm <= 1e-300)
            throw std::invalid_argument("row_equilibrate: row " + std::to_string(i) +
                                        " has near-zero norm");
        out.scales[i] = norm;
        for (std::size_t j = 0; j < a.cols; ++j) out.equilibrated(i, j) = a(i, j) / norm;
    }
    return out;
}

double determinant(const DenseMatrix& a) {
    if (!a.square()) throw std::invalid_argument("determinant: matrix must be square");
    const std::size_t n = a.rows;
    DenseMatrix lu = a;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::fabs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(lu(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

double guggenheimer_bound(const DenseMatrix& h) {
    if (!h.square()) throw std::invalid_argument("guggenheimer_bound: matrix must be square");
    const double det = determinant(h);
    if (std::fabs(det) < 1e-300)
        throw std::invalid_argument("guggenheimer_bound: matrix is numerically singular");
    const double n = static_cast<double>(h.rows);
    return 2.0 / std::fabs(det) * std::pow(h.frobenius_norm() / std::sqrt(n), n);
}

}  // namespace esgd
