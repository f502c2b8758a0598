// Numeric generalized eigensolver used for root extraction. Eigenvalues of
// zero-dimensional systems live outside the rational field, so this is the
// one place the exact pipeline hands off to floating point (Eigen).
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "radtrace/matrix.hpp"

namespace radtrace {

struct EigPair {
    std::complex<double> value;
    std::vector<std::complex<double>> vec;
};

template <class K>
Eigen::MatrixXd to_eigen(const DenseMatrix<K>& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
    return e;
}

// Solves (A - z B) w = 0 for square A, B with B invertible. Returns one pair
// per dimension, sorted by eigenvalue (real part, then imaginary part), each
// satisfying |(A - zB) w|_inf <= tol * (|A|_inf + |z| |B|_inf).
template <class K>
std::vector<EigPair> eig_generalized(const DenseMatrix<K>& a, const DenseMatrix<K>& b,
                                     double tol = 1e-8) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("eig_generalized: square matrices of equal size required");
    int n = a.rows();
    if (n == 0) return {};
    Eigen::MatrixXd ea = to_eigen(a), eb = to_eigen(b);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(eb);
    if (!lu.isInvertible()) throw SingularMatrixError("eig_generalized: singular B");

    // Reduce to an ordinary eigenproblem on B^{-1} A; the complex solver
    // yields eigenvectors for repeated eigenvalues as well.
    Eigen::MatrixXcd c = lu.solve(ea).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_generalized: eigensolver failed to converge");

    double na = ea.cwiseAbs().rowwise().sum().maxCoeff();
    double nb = eb.cwiseAbs().rowwise().sum().maxCoeff();

    std::vector<EigPair> out(n);
    for (int k = 0; k < n; ++k) {
        EigPair p;
        p.value = es.eigenvalues()(k);
        p.vec.resize(n);
        for (int i = 0; i < n; ++i) p.vec[i] = es.eigenvectors()(i, k);
        Eigen::VectorXcd w = es.eigenvectors().col(k);
        double resid =
            ((ea.cast<std::complex<double>>() - p.value * eb.cast<std::complex<double>>()) * w)
                .cwiseAbs()
                .maxCoeff();
        double scale = na + std::abs(p.value) * nb;
        if (scale > 0 && resid > tol * scale)
            throw std::runtime_error("eig_generalized: residual above tolerance");
        out[k] = std::move(p);
    }
    std::sort(out.begin(), out.end(), [](const EigPair& x, const EigPair& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

}  // namespace radtrace
