#pragma once

// Classical bar-joint rigidity: rank test, (2,3)-pebble game, connectivity,
// redundant rigidity and generic global rigidity (combinatorial in the plane,
// randomized stress-matrix test in any dimension).

#include "phid/errors.hpp"
#include "phid/geometry.hpp"
#include "phid/graph.hpp"
#include "phid/linalg.hpp"
#include "phid/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace phid {

struct Framework {
    Graph graph;
    PointCloud config;

    Framework(Graph g, PointCloud p) : graph(std::move(g)), config(std::move(p))
    {
        if (graph.n != config.size()) {
            throw InputError("framework graph has " + std::to_string(graph.n) + " vertices but configuration has " +
                             std::to_string(config.size()) + " points");
        }
    }
};

enum class RigidityStatus { Flexible, Rigid };

inline const char* to_string(RigidityStatus s) { return s == RigidityStatus::Rigid ? "rigid" : "flexible"; }

struct RigidityVerdict {
    RigidityStatus status = RigidityStatus::Flexible;
    int rank = 0;
    int target_rank = 0;
    int dof = 0; // target_rank - rank

    bool rigid() const { return status == RigidityStatus::Rigid; }
};

/// n d - C(d+1, 2): rank of a rigid framework whose points span R^d.
inline int rigid_target_rank(std::size_t n, std::size_t d)
{
    return static_cast<int>(n * d) - static_cast<int>(d * (d + 1) / 2);
}

/// Throws DomainError unless n >= d+1 and the points affinely span R^d.
inline void require_full_span(const PointCloud& p, double rank_tol = kDefaultRankTol)
{
    if (p.size() < p.dim() + 1) {
        throw DomainError("rigidity tests need n >= d+1 (n = " + std::to_string(p.size()) +
                          ", d = " + std::to_string(p.dim()) + ")");
    }
    if (affine_dimension(p, all_points(p.size()), rank_tol) != static_cast<int>(p.dim())) {
        throw DomainError("configuration does not affinely span R^" + std::to_string(p.dim()));
    }
}

inline RigidityVerdict make_verdict(int rank, int target)
{
    RigidityVerdict v;
    v.rank = rank;
    v.target_rank = target;
    v.dof = target - rank;
    v.status = rank == target ? RigidityStatus::Rigid : RigidityStatus::Flexible;
    return v;
}

inline RigidityVerdict infinitesimal_rigidity_test(const Framework& fw, double rank_tol = kDefaultRankTol)
{
    require_full_span(fw.config, rank_tol);
    const int rank = numerical_rank(rigidity_matrix(fw.config, fw.graph.edges), rank_tol);
    return make_verdict(rank, rigid_target_rank(fw.config.size(), fw.config.dim()));
}

namespace detail {

// (2,3)-pebble game. Every vertex starts with two pebbles; an edge is
// independent iff four pebbles can be gathered on its endpoints.
class PebbleGame {
public:
    explicit PebbleGame(std::size_t n) : pebbles_(n, 2), out_(n) {}

    bool insert(Index u, Index v)
    {
        while (pebbles_[u] + pebbles_[v] < 4) {
            if (!(pebbles_[u] < 2 && fetch(u, v)) && !(pebbles_[v] < 2 && fetch(v, u))) {
                return false;
            }
        }
        --pebbles_[u];
        out_[u].push_back(v);
        return true;
    }

private:
    // Move a free pebble to `root` along a directed path, never through `frozen`.
    bool fetch(Index root, Index frozen)
    {
        const std::size_t n = pebbles_.size();
        std::vector<Index> parent(n, n);
        std::vector<bool> seen(n, false);
        std::vector<Index> stack{root};
        seen[root] = true;
        seen[frozen] = true;
        while (!stack.empty()) {
            const Index x = stack.back();
            stack.pop_back();
            for (Index y : out_[x]) {
                if (seen[y]) {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if (pebbles_[y] > 0) {
                    // Reverse the path root -> ... -> y.
                    --pebbles_[y];
                    ++pebbles_[root];
                    for (Index c = y; c != root; c = parent[c]) {
                        const Index p = parent[c];
                        auto& edges = out_[p];
                        edges.erase(std::find(edges.begin(), edges.end(), c));
                        out_[c].push_back(p);
                    }
                    return true;
                }
                stack.push_back(y);
            }
        }
        return false;
    }

    std::vector<int> pebbles_;
    std::vector<std::vector<Index>> out_;
};

inline bool connected_without(const Graph& g, const std::vector<std::vector<Index>>& adj, Index a, Index b)
{
    std::vector<bool> seen(g.n, false);
    seen[a] = seen[b] = true;
    Index start = g.n;
    std::size_t remaining = 0;
    for (Index v = 0; v < g.n; ++v) {
        if (!seen[v]) {
            ++remaining;
            if (start == g.n) {
                start = v;
            }
        }
    }
    if (remaining == 0) {
        return true;
    }
    std::vector<Index> stack{start};
    seen[start] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Index x = stack.back();
        stack.pop_back();
        for (Index y : adj[x]) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == remaining;
}

} // namespace detail

/// Number of independent edges found by the (2,3)-pebble game.
inline std::size_t laman_independent_count(const Graph& g)
{
    detail::PebbleGame game(g.n);
    std::size_t count = 0;
    for (const Edge& e : g.edges) {
        if (game.insert(e.u, e.v)) {
            ++count;
        }
    }
    return count;
}

/// Generic rigidity in the plane: a Laman-independent spanning set of 2n-3 edges.
inline bool laman_glr_2d(const Graph& g)
{
    if (g.n <= 1) {
        return true;
    }
    return laman_independent_count(g) == 2 * g.n - 3;
}

/// No deletion of two vertices disconnects the graph. Graphs with at most
/// three vertices pass vacuously (nothing or one vertex remains).
inline bool is_3_connected(const Graph& g)
{
    const auto adj = g.adjacency();
    for (Index a = 0; a < g.n; ++a) {
        for (Index b = a + 1; b < g.n; ++b) {
            if (!detail::connected_without(g, adj, a, b)) {
                return false;
            }
        }
    }
    return true;
}

/// Rigid, and still rigid after deleting any single edge.
inline bool is_redundantly_rigid_2d(const Graph& g)
{
    if (!laman_glr_2d(g)) {
        return false;
    }
    for (std::size_t skip = 0; skip < g.edges.size(); ++skip) {
        std::vector<Edge> e;
        e.reserve(g.edges.size() - 1);
        for (std::size_t k = 0; k < g.edges.size(); ++k) {
            if (k != skip) {
                e.push_back(g.edges[k]);
            }
        }
        if (!laman_glr_2d(Graph(g.n, std::move(e)))) {
            return false;
        }
    }
    return true;
}

/// Generic global rigidity in the plane: complete, or (n >= 4) 3-connected
/// and redundantly rigid.
inline bool ggr_2d(const Graph& g)
{
    if (g.is_complete()) {
        return true;
    }
    if (g.n <= 3) {
        return false;
    }
    return is_3_connected(g) && is_redundantly_rigid_2d(g);
}

inline constexpr int kDefaultGgrTrials = 3;

/// Stress matrix Omega of an edge stress w: Omega_ij = -w_ij on edges,
/// Omega_ii = sum_j w_ij.
inline Matrix stress_matrix(const Graph& g, const Vector& w)
{
    Matrix omega = Matrix::Zero(static_cast<Eigen::Index>(g.n), static_cast<Eigen::Index>(g.n));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto i = static_cast<Eigen::Index>(g.edges[e].u);
        const auto j = static_cast<Eigen::Index>(g.edges[e].v);
        const double we = w(static_cast<Eigen::Index>(e));
        omega(i, j) -= we;
        omega(j, i) -= we;
        omega(i, i) += we;
        omega(j, j) += we;
    }
    return omega;
}

/// One-sided Monte Carlo test for generic global rigidity in R^d. Each trial
/// (seeded with seed + trial) samples a generic configuration, requires full
/// rigidity-matrix rank, draws a random equilibrium stress and accepts iff
/// the stress matrix has rank n - d - 1.
inline bool ggr_randomized(const Graph& g, std::size_t d, int trials = kDefaultGgrTrials, std::uint64_t seed = 0,
                           double rank_tol = kDefaultRankTol)
{
    if (g.n <= d + 1) {
        return g.is_complete();
    }
    const int target = rigid_target_rank(g.n, d);
    const auto stress_target = static_cast<int>(g.n - d - 1);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        const PointCloud p = random_cloud(g.n, d, trial_seed);
        const Matrix r = rigidity_matrix(p, g.edges);
        if (numerical_rank(r, rank_tol) < target) {
            return false;
        }
        const Matrix stresses = left_null_space(r, rank_tol);
        if (stresses.cols() == 0) {
            return false;
        }
        Rng rng(trial_seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> normal;
        Vector coeff(stresses.cols());
        for (Eigen::Index k = 0; k < coeff.size(); ++k) {
            coeff(k) = normal(rng);
        }
        const Vector w = stresses * coeff;
        if (numerical_rank(stress_matrix(g, w), rank_tol) != stress_target) {
            return false;
        }
    }
    return true;
}

} // namespace phid
