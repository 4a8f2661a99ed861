#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>

namespace phid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative singular-value cutoff used for every rank decision unless the
// caller overrides it.
inline constexpr double kDefaultRankTol = 1e-8;

// Number of singular values above rel_tol times the largest one.
inline int numerical_rank(const Matrix& a, double rel_tol = kDefaultRankTol)
{
    if (a.rows() == 0 || a.cols() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 0.0) {
        return 0;
    }
    const double cutoff = rel_tol * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) {
            ++r;
        }
    }
    return r;
}

// Each nonzero row scaled to unit length. Rank-preserving; keeps one badly
// scaled constraint from hiding the others under a relative cutoff.
inline Matrix row_normalized(Matrix a)
{
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double norm = a.row(i).norm();
        if (norm > 0.0) {
            a.row(i) /= norm;
        }
    }
    return a;
}

// Orthonormal basis (as columns) of the left null space {w : w^T a = 0}.
inline Matrix left_null_space(const Matrix& a, double rel_tol = kDefaultRankTol)
{
    if (a.rows() == 0) {
        return Matrix(0, 0);
    }
    if (a.cols() == 0) {
        return Matrix::Identity(a.rows(), a.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
    const Vector& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? rel_tol * s(0) : 0.0;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cutoff && s(0) > 0.0) {
        ++r;
    }
    return svd.matrixU().rightCols(a.rows() - r);
}

inline constexpr long long binomial(long long n, long long k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace phid
