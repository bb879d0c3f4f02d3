#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ergo/linalg/dense.hpp"

namespace ergo {

/// Eigenvector matrices with condition number at or above this are treated
/// as numerically defective.
inline constexpr double kDiagonalizableCondition = 1e8;

/// Imaginary parts below this (relative to the spectral radius) count as real.
inline constexpr double kRealSpectrumTolerance = 1e-10;

struct EigenDecomposition {
    std::vector<std::complex<double>> eigenvalues;  // descending modulus
    std::vector<double> moduli;                     // same order
    bool real_spectrum = false;
    bool diagonalizable = false;
    double eigenvector_condition = std::numeric_limits<double>::infinity();
    /// Real eigenvector basis (columns, same order) when the spectrum is real
    /// and the matrix diagonalizable; empty otherwise.
    Matrix eigenvectors;
    /// Real Schur factorization A = U T U^T (always populated).
    Matrix schur_vectors;
    Matrix schur_form;
};

/// Eigenvalues sorted by descending modulus (ties: larger real part first),
/// diagonalizability by eigenvector condition number, and a real Schur form.
inline EigenDecomposition eigendecompose(const Matrix& a) {
    require_finite(a);
    require_square(a);
    const auto n = a.rows();
    Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecompose: eigensolver did not converge");

    const Eigen::VectorXcd vals = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        const double mi = std::abs(vals(i)), mj = std::abs(vals(j));
        if (std::abs(mi - mj) > 1e-14 * std::max(1.0, std::max(mi, mj))) return mi > mj;
        return vals(i).real() > vals(j).real();
    });

    EigenDecomposition out;
    Eigen::MatrixXcd sorted(n, n);
    double radius = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto idx = order[static_cast<size_t>(k)];
        out.eigenvalues.push_back(vals(idx));
        out.moduli.push_back(std::abs(vals(idx)));
        sorted.col(k) = vecs.col(idx).normalized();
        radius = std::max(radius, std::abs(vals(idx)));
    }
    out.real_spectrum = std::all_of(out.eigenvalues.begin(), out.eigenvalues.end(), [&](auto z) {
        return std::abs(z.imag()) <= kRealSpectrumTolerance * std::max(1.0, radius);
    });

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sorted);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    out.eigenvector_condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    out.diagonalizable = out.eigenvector_condition < kDiagonalizableCondition;
    if (out.real_spectrum && out.diagonalizable) {
        out.eigenvectors = sorted.real();
        for (Eigen::Index k = 0; k < n; ++k) {
            const double nrm = out.eigenvectors.col(k).norm();
            if (nrm > 0.0) out.eigenvectors.col(k) /= nrm;
        }
    }

    Eigen::RealSchur<Matrix> schur(a);
    if (schur.info() != Eigen::Success) throw NumericalError("eigendecompose: real Schur did not converge");
    out.schur_vectors = schur.matrixU();
    out.schur_form = schur.matrixT();
    return out;
}

/// Moore-Penrose inverse via SVD, singular values below
/// max(m, n) * eps * sigma_max treated as zero.
inline Matrix pseudo_inverse(const Matrix& r) {
    require_finite(r);
    if (r.size() == 0) return Matrix::Zero(r.cols(), r.rows());
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = static_cast<double>(std::max(r.rows(), r.cols())) *
                          std::numeric_limits<double>::epsilon() * (s.size() ? s(0) : 0.0);
    Matrix sinv = Matrix::Zero(r.cols(), r.rows());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) sinv(i, i) = 1.0 / s(i);
    return svd.matrixV() * sinv * svd.matrixU().transpose();
}

/// Condition number sigma_max / sigma_min (infinite when singular).
inline double condition_number(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 1.0;
    const double smin = s(s.size() - 1);
    return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

/// Orthonormal basis (columns) of <v>^perp.
inline Matrix orthogonal_complement(const Vector& v) {
    const auto n = v.size();
    if (n == 0 || v.squaredNorm() == 0.0) throw InputError("orthogonal_complement: zero vector");
    const Matrix vm = v;
    Eigen::HouseholderQR<Matrix> qr(vm);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    return q.rightCols(n - 1);
}

}  // namespace ergo
