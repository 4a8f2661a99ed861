#pragma once

#include "phid/errors.hpp"
#include "phid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace phid {

using Index = std::size_t;

/// n labeled, pairwise distinct points in R^d. Immutable after construction.
class PointCloud {
public:
    PointCloud() = default;

    explicit PointCloud(Matrix coords) : coords_(std::move(coords))
    {
        validate();
    }

    explicit PointCloud(const std::vector<std::vector<double>>& rows)
    {
        if (rows.empty()) {
            throw InputError("point cloud must contain at least one point");
        }
        const std::size_t d = rows.front().size();
        coords_.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != d) {
                throw InputError("point " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " coordinates, expected " + std::to_string(d));
            }
            for (std::size_t k = 0; k < d; ++k) {
                coords_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
            }
        }
        validate();
    }

    PointCloud(std::initializer_list<std::vector<double>> rows) : PointCloud(std::vector<std::vector<double>>(rows)) {}

    std::size_t size() const { return static_cast<std::size_t>(coords_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(coords_.cols()); }

    Vector point(Index i) const { return coords_.row(static_cast<Eigen::Index>(i)).transpose(); }
    double coord(Index i, Index k) const
    {
        return coords_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
    const Matrix& coords() const { return coords_; }

    /// Coordinates flattened point-major: (p_0[0], ..., p_0[d-1], p_1[0], ...).
    Vector flat() const
    {
        Vector v(static_cast<Eigen::Index>(size() * dim()));
        for (Index i = 0; i < size(); ++i) {
            for (Index k = 0; k < dim(); ++k) {
                v(static_cast<Eigen::Index>(i * dim() + k)) = coord(i, k);
            }
        }
        return v;
    }

    static PointCloud from_flat(const Vector& v, std::size_t d)
    {
        const auto n = static_cast<Eigen::Index>(static_cast<std::size_t>(v.size()) / d);
        Matrix m(n, static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d); ++k) {
                m(i, k) = v(i * static_cast<Eigen::Index>(d) + k);
            }
        }
        return PointCloud(std::move(m));
    }

    /// Largest pairwise distance; 0 for a single point.
    double diameter() const
    {
        double best = 0.0;
        for (Eigen::Index i = 0; i < coords_.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < coords_.rows(); ++j) {
                best = std::max(best, (coords_.row(i) - coords_.row(j)).squaredNorm());
            }
        }
        return std::sqrt(best);
    }

private:
    void validate() const
    {
        if (coords_.rows() < 1 || coords_.cols() < 1) {
            throw InputError("point cloud needs n >= 1 points of dimension d >= 1");
        }
        if (!coords_.allFinite()) {
            throw InputError("point cloud contains non-finite coordinates");
        }
        for (Eigen::Index i = 0; i < coords_.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < coords_.rows(); ++j) {
                if (coords_.row(i) == coords_.row(j)) {
                    throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) +
                                     " coincide");
                }
            }
        }
    }

    Matrix coords_;
};

/// Nonempty set of vertex indices, stored strictly increasing.
class SimplexKey {
public:
    SimplexKey() = default;

    SimplexKey(std::initializer_list<Index> v) : SimplexKey(std::vector<Index>(v)) {}

    explicit SimplexKey(std::vector<Index> v) : vertices_(std::move(v))
    {
        std::sort(vertices_.begin(), vertices_.end());
        if (vertices_.empty()) {
            throw InputError("simplex must have at least one vertex");
        }
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
            throw InputError("simplex has repeated vertices");
        }
    }

    static SimplexKey from_mask(std::uint64_t mask)
    {
        std::vector<Index> v;
        for (Index i = 0; mask != 0; ++i, mask >>= 1U) {
            if ((mask & 1U) != 0U) {
                v.push_back(i);
            }
        }
        return SimplexKey(std::move(v));
    }

    std::size_t size() const { return vertices_.size(); }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    Index operator[](std::size_t k) const { return vertices_[k]; }
    const std::vector<Index>& vertices() const { return vertices_; }
    auto begin() const { return vertices_.begin(); }
    auto end() const { return vertices_.end(); }

    std::uint64_t mask() const
    {
        std::uint64_t m = 0;
        for (Index v : vertices_) {
            m |= std::uint64_t{1} << v;
        }
        return m;
    }

    bool contains(Index v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    /// Codimension-one faces, in order of the removed vertex.
    std::vector<SimplexKey> facets() const
    {
        std::vector<SimplexKey> out;
        if (vertices_.size() < 2) {
            return out;
        }
        for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
            std::vector<Index> f;
            f.reserve(vertices_.size() - 1);
            for (std::size_t k = 0; k < vertices_.size(); ++k) {
                if (k != skip) {
                    f.push_back(vertices_[k]);
                }
            }
            out.emplace_back(std::move(f));
        }
        return out;
    }

    void check_bounds(std::size_t n) const
    {
        if (vertices_.back() >= n) {
            throw InputError("simplex vertex " + std::to_string(vertices_.back()) + " out of range for n = " +
                             std::to_string(n));
        }
    }

    auto operator<=>(const SimplexKey&) const = default;
    bool operator==(const SimplexKey&) const = default;

private:
    std::vector<Index> vertices_;
};

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
    Index u = 0;
    Index v = 0;

    Edge() = default;
    Edge(Index a, Index b) : u(std::min(a, b)), v(std::max(a, b))
    {
        if (a == b) {
            throw InputError("edge endpoints must differ");
        }
    }

    auto operator<=>(const Edge&) const = default;
    bool operator==(const Edge&) const = default;
};

struct DistanceMatrix {
    Matrix entries;
};

struct CayleyMengerMatrix {
    Matrix entries;
};

inline double squared_distance(const PointCloud& p, Index i, Index j)
{
    if (i >= p.size() || j >= p.size()) {
        throw InputError("point index out of range");
    }
    double s = 0.0;
    for (Index k = 0; k < p.dim(); ++k) {
        const double t = p.coord(i, k) - p.coord(j, k);
        s += t * t;
    }
    return s;
}

inline double distance(const PointCloud& p, Index i, Index j) { return std::sqrt(squared_distance(p, i, j)); }

/// Distance and Cayley-Menger matrices of the sub-configuration sigma(P),
/// rows ordered as sigma's vertices.
inline std::pair<CayleyMengerMatrix, DistanceMatrix> cayley_menger(const PointCloud& p, const SimplexKey& sigma)
{
    sigma.check_bounds(p.size());
    const auto k = static_cast<Eigen::Index>(sigma.size());
    DistanceMatrix lambda{Matrix::Zero(k, k)};
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a + 1; b < k; ++b) {
            const double s = squared_distance(p, sigma[static_cast<std::size_t>(a)], sigma[static_cast<std::size_t>(b)]);
            lambda.entries(a, b) = s;
            lambda.entries(b, a) = s;
        }
    }
    CayleyMengerMatrix delta{Matrix::Zero(k + 1, k + 1)};
    delta.entries.block(1, 1, k, k) = lambda.entries;
    delta.entries.row(0).tail(k).setOnes();
    delta.entries.col(0).tail(k).setOnes();
    return {std::move(delta), std::move(lambda)};
}

/// Columns p_{sigma[a]} - p_{sigma[0]} for a >= 1.
inline Matrix difference_vectors(const PointCloud& p, const SimplexKey& sigma)
{
    const auto d = static_cast<Eigen::Index>(p.dim());
    Matrix v(d, static_cast<Eigen::Index>(sigma.size()) - 1);
    const Vector base = p.point(sigma[0]);
    for (std::size_t a = 1; a < sigma.size(); ++a) {
        v.col(static_cast<Eigen::Index>(a) - 1) = p.point(sigma[a]) - base;
    }
    return v;
}

/// Dimension of the affine span of sigma(P).
inline int affine_dimension(const PointCloud& p, const SimplexKey& sigma, double rank_tol = kDefaultRankTol)
{
    sigma.check_bounds(p.size());
    if (sigma.size() == 1) {
        return 0;
    }
    return numerical_rank(difference_vectors(p, sigma), rank_tol);
}

inline bool affinely_independent(const PointCloud& p, const SimplexKey& sigma, double rank_tol = kDefaultRankTol)
{
    return sigma.size() <= p.dim() + 1 && affine_dimension(p, sigma, rank_tol) == static_cast<int>(sigma.size()) - 1;
}

inline SimplexKey all_points(std::size_t n)
{
    std::vector<Index> v(n);
    for (Index i = 0; i < n; ++i) {
        v[i] = i;
    }
    return SimplexKey(std::move(v));
}

namespace detail {

inline void require_independent(const PointCloud& p, const SimplexKey& sigma, double rank_tol)
{
    if (!affinely_independent(p, sigma, rank_tol)) {
        std::string s;
        for (Index v : sigma) {
            s += (s.empty() ? "" : ",") + std::to_string(v);
        }
        throw DegenerateSimplex("simplex {" + s + "} is affinely dependent");
    }
}

} // namespace detail

/// Squared circumradius of an affinely independent sigma(P) from the
/// Cayley-Menger ratio  -det(Lambda) / (2 det(Delta)).
inline double circumradius_squared(const PointCloud& p, const SimplexKey& sigma, double rank_tol = kDefaultRankTol)
{
    detail::require_independent(p, sigma, rank_tol);
    if (sigma.size() == 1) {
        return 0.0;
    }
    const auto [delta, lambda] = cayley_menger(p, sigma);
    return -lambda.entries.determinant() / (2.0 * delta.entries.determinant());
}

/// Gradient of circumradius_squared with respect to all n*d coordinates
/// (point-major). Uses d log|det A| = trace(A^{-1} dA) for both matrices, so
///   grad_{p_a} R^2 = 4 R^2 sum_b [(Lambda^{-1})_{ab} - (Delta^{-1})_{a+1,b+1}] (p_a - p_b).
inline Vector circumradius_gradient(const PointCloud& p, const SimplexKey& sigma, double rank_tol = kDefaultRankTol)
{
    detail::require_independent(p, sigma, rank_tol);
    const auto d = static_cast<Eigen::Index>(p.dim());
    Vector grad = Vector::Zero(static_cast<Eigen::Index>(p.size()) * d);
    if (sigma.size() == 1) {
        return grad;
    }
    const auto [delta, lambda] = cayley_menger(p, sigma);
    const Eigen::FullPivLU<Matrix> lu_lambda(lambda.entries);
    const Eigen::FullPivLU<Matrix> lu_delta(delta.entries);
    const Matrix lambda_inv = lu_lambda.inverse();
    const Matrix delta_inv = lu_delta.inverse();
    const double r2 = -lu_lambda.determinant() / (2.0 * lu_delta.determinant());

    const auto k = static_cast<Eigen::Index>(sigma.size());
    for (Eigen::Index a = 0; a < k; ++a) {
        const Vector pa = p.point(sigma[static_cast<std::size_t>(a)]);
        Vector g = Vector::Zero(d);
        for (Eigen::Index b = 0; b < k; ++b) {
            if (a == b) {
                continue;
            }
            const double w = lambda_inv(a, b) - delta_inv(a + 1, b + 1);
            g += w * (pa - p.point(sigma[static_cast<std::size_t>(b)]));
        }
        grad.segment(static_cast<Eigen::Index>(sigma[static_cast<std::size_t>(a)]) * d, d) = 4.0 * r2 * g;
    }
    return grad;
}

/// Squared edge lengths in edge order.
inline Vector edge_length_measurement(const PointCloud& p, std::span<const Edge> edges)
{
    Vector out(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        out(static_cast<Eigen::Index>(e)) = squared_distance(p, edges[e].u, edges[e].v);
    }
    return out;
}

/// Jacobian of edge_length_measurement: m x (n d).
inline Matrix rigidity_matrix(const PointCloud& p, std::span<const Edge> edges)
{
    const auto d = static_cast<Eigen::Index>(p.dim());
    Matrix r = Matrix::Zero(static_cast<Eigen::Index>(edges.size()), static_cast<Eigen::Index>(p.size()) * d);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [i, j] = std::pair{edges[e].u, edges[e].v};
        if (j >= p.size()) {
            throw InputError("edge endpoint out of range");
        }
        const Vector diff = p.point(i) - p.point(j);
        const auto row = static_cast<Eigen::Index>(e);
        r.block(row, static_cast<Eigen::Index>(i) * d, 1, d) = 2.0 * diff.transpose();
        r.block(row, static_cast<Eigen::Index>(j) * d, 1, d) = -2.0 * diff.transpose();
    }
    return r;
}

/// Basis of the infinitesimal rigid motions (translations and rotations) of
/// P as columns of an (n d) x (d + C(d,2)) matrix.
inline Matrix trivial_motions(const PointCloud& p)
{
    const auto n = static_cast<Eigen::Index>(p.size());
    const auto d = static_cast<Eigen::Index>(p.dim());
    const Eigen::Index count = d + d * (d - 1) / 2;
    Matrix m = Matrix::Zero(n * d, count);
    Eigen::Index c = 0;
    for (Eigen::Index k = 0; k < d; ++k, ++c) {
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i * d + k, c) = 1.0;
        }
    }
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = a + 1; b < d; ++b, ++c) {
            for (Eigen::Index i = 0; i < n; ++i) {
                m(i * d + a, c) = -p.coord(static_cast<Index>(i), static_cast<Index>(b));
                m(i * d + b, c) = p.coord(static_cast<Index>(i), static_cast<Index>(a));
            }
        }
    }
    return m;
}

} // namespace phid
