#pragma once

// Minimal enclosing spheres of point subsets: move-to-front variant of
// Welzl's randomized incremental algorithm, plus extraction of an
// inclusion-minimal support set whose minimal circumsphere is the enclosing
// sphere.

#include "phid/geometry.hpp"

#include <cmath>
#include <list>
#include <vector>

namespace phid {

struct Ball {
    Vector center;
    double radius_sq = -1.0; // negative: empty ball
};

namespace detail {

// Minimal circumsphere of the given points: center restricted to their
// affine span. Falls back to the least-squares center when the points are
// affinely dependent (degenerate input), enlarging the radius to cover all.
inline Ball circumball(const PointCloud& p, const std::vector<Index>& pts)
{
    Ball b;
    if (pts.empty()) {
        return b;
    }
    const Vector base = p.point(pts[0]);
    if (pts.size() == 1) {
        b.center = base;
        b.radius_sq = 0.0;
        return b;
    }
    const auto d = static_cast<Eigen::Index>(p.dim());
    const auto m = static_cast<Eigen::Index>(pts.size()) - 1;
    Matrix v(d, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        v.col(a) = p.point(pts[static_cast<std::size_t>(a) + 1]) - base;
    }
    // c = base + V lambda with 2 V^T V lambda = diag(V^T V)
    const Matrix gram = v.transpose() * v;
    const Vector rhs = 0.5 * gram.diagonal();
    const Vector lambda = gram.completeOrthogonalDecomposition().solve(rhs);
    const Vector offset = v * lambda;
    b.center = base + offset;
    b.radius_sq = offset.squaredNorm();
    for (Index i : pts) {
        b.radius_sq = std::max(b.radius_sq, (p.point(i) - b.center).squaredNorm());
    }
    return b;
}

inline bool ball_contains(const Ball& b, const Vector& x, double eps_sq)
{
    return b.radius_sq >= 0.0 && (x - b.center).squaredNorm() <= b.radius_sq + eps_sq;
}

inline void move_to_front_ball(const PointCloud& p, std::list<Index>& pts, std::list<Index>::iterator end,
                               std::vector<Index>& support, Ball& ball, double eps_sq)
{
    ball = circumball(p, support);
    if (support.size() == p.dim() + 1) {
        return;
    }
    for (auto it = pts.begin(); it != end;) {
        auto next = std::next(it);
        if (!ball_contains(ball, p.point(*it), eps_sq)) {
            support.push_back(*it);
            move_to_front_ball(p, pts, it, support, ball, eps_sq);
            support.pop_back();
            pts.splice(pts.begin(), pts, it);
        }
        it = next;
    }
}

inline double squared_extent(const PointCloud& p, const SimplexKey& sigma)
{
    double s = 0.0;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        for (std::size_t b = a + 1; b < sigma.size(); ++b) {
            s = std::max(s, squared_distance(p, sigma[a], sigma[b]));
        }
    }
    return s;
}

inline constexpr double kContainEps = 1e-12;
inline constexpr double kSupportTol = 1e-9;

} // namespace detail

/// Minimal enclosing ball of sigma(P) (center and squared radius).
inline Ball min_enclosing_ball(const PointCloud& p, const SimplexKey& sigma)
{
    sigma.check_bounds(p.size());
    const double eps_sq = detail::kContainEps * detail::squared_extent(p, sigma);
    std::list<Index> pts(sigma.begin(), sigma.end());
    std::vector<Index> support;
    Ball ball;
    detail::move_to_front_ball(p, pts, pts.end(), support, ball, eps_sq);
    return ball;
}

/// Inclusion-minimal tau in sigma (|tau| <= d+1) whose minimal circumsphere
/// is the minimal enclosing sphere of sigma(P).
inline SimplexKey min_enclosing_support(const PointCloud& p, const SimplexKey& sigma)
{
    if (sigma.size() <= 1) {
        sigma.check_bounds(p.size());
        return sigma;
    }
    const Ball ball = min_enclosing_ball(p, sigma);
    const double extent = std::sqrt(detail::squared_extent(p, sigma));
    const double tol = detail::kSupportTol * extent;
    const double radius = std::sqrt(ball.radius_sq);

    std::vector<Index> boundary;
    for (Index v : sigma) {
        if (std::abs((p.point(v) - ball.center).norm() - radius) <= tol) {
            boundary.push_back(v);
        }
    }
    const std::size_t max_size = std::min(boundary.size(), p.dim() + 1);
    // Subsets by increasing size, lexicographic within a size: the first
    // match is inclusion-minimal.
    for (std::size_t k = 1; k <= max_size; ++k) {
        std::vector<bool> pick(boundary.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<Index> tau;
            for (std::size_t a = 0; a < boundary.size(); ++a) {
                if (pick[a]) {
                    tau.push_back(boundary[a]);
                }
            }
            const Ball c = detail::circumball(p, tau);
            if ((c.center - ball.center).norm() > tol || std::abs(std::sqrt(c.radius_sq) - radius) > tol) {
                continue;
            }
            // The circumsphere must also be the enclosing sphere of tau itself.
            const Ball own = min_enclosing_ball(p, SimplexKey(tau));
            if (std::abs(std::sqrt(own.radius_sq) - radius) <= tol) {
                return SimplexKey(std::move(tau));
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    // Numerically ambiguous boundary: fall back to the whole boundary set.
    return boundary.empty() ? sigma : SimplexKey(boundary);
}

namespace detail {

// Radius of the minimal circumsphere of an affinely independent support.
// Pairs use the same expression as the Vietoris-Rips value so that the two
// filtrations agree bit-for-bit on edges.
inline double support_radius(const PointCloud& p, const SimplexKey& tau)
{
    if (tau.size() == 1) {
        return 0.0;
    }
    if (tau.size() == 2) {
        return 0.5 * std::sqrt(squared_distance(p, tau[0], tau[1]));
    }
    return std::sqrt(circumball(p, tau.vertices()).radius_sq);
}

} // namespace detail

/// Radius of the minimal enclosing sphere of sigma(P); 0 for singletons.
inline double min_enclosing_radius(const PointCloud& p, const SimplexKey& sigma)
{
    if (sigma.size() == 2) {
        sigma.check_bounds(p.size());
        return detail::support_radius(p, sigma);
    }
    return detail::support_radius(p, min_enclosing_support(p, sigma));
}

} // namespace phid
