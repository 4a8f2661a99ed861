#pragma once

#include "phid/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace phid {

using Rng = std::mt19937_64;

/// n points with coordinates i.i.d. uniform on [0, 1).
inline PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            m(i, k) = unif(rng);
        }
    }
    return PointCloud(std::move(m));
}

/// Uniformly distributed rotation in SO(d).
inline Matrix random_rotation(std::size_t d, Rng& rng)
{
    std::normal_distribution<double> normal;
    Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = normal(rng);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) *= -1.0;
        }
    }
    if (q.determinant() < 0.0) {
        q.col(0) *= -1.0;
    }
    return q;
}

/// x -> R x + t applied to every point.
inline PointCloud apply_rigid_motion(const PointCloud& p, const Matrix& rotation, const Vector& translation)
{
    Matrix m = p.coords() * rotation.transpose();
    m.rowwise() += translation.transpose();
    return PointCloud(std::move(m));
}

inline PointCloud random_rigid_motion(const PointCloud& p, Rng& rng)
{
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    Vector t(static_cast<Eigen::Index>(p.dim()));
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t(k) = unif(rng);
    }
    return apply_rigid_motion(p, random_rotation(p.dim(), rng), t);
}

inline std::vector<Index> random_permutation(std::size_t n, Rng& rng)
{
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

/// Point i of p becomes point perm[i] of the result.
inline PointCloud permute_points(const PointCloud& p, const std::vector<Index>& perm)
{
    Matrix m(p.coords().rows(), p.coords().cols());
    for (Index i = 0; i < p.size(); ++i) {
        m.row(static_cast<Eigen::Index>(perm[i])) = p.coords().row(static_cast<Eigen::Index>(i));
    }
    return PointCloud(std::move(m));
}

} // namespace phid
