#pragma once

// Circumsphere frameworks: hypergraphs realized at a configuration and
// constrained by the circumradii of their hyperedges.

#include "phid/errors.hpp"
#include "phid/geometry.hpp"
#include "phid/graph.hpp"
#include "phid/linalg.hpp"
#include "phid/random.hpp"
#include "phid/rigidity.hpp"

#include <cstdint>
#include <string>

namespace phid {

struct CircumsphereFramework {
    Hypergraph hypergraph;
    PointCloud config;

    CircumsphereFramework(Hypergraph h, PointCloud p) : hypergraph(std::move(h)), config(std::move(p))
    {
        if (hypergraph.n != config.size()) {
            throw InputError("hypergraph vertex count does not match configuration");
        }
        for (const SimplexKey& s : hypergraph.hyperedges) {
            if (s.size() < 2 || s.size() > config.dim() + 1) {
                throw InputError("hyperedge size " + std::to_string(s.size()) + " outside [2, " +
                                 std::to_string(config.dim() + 1) + "]");
            }
        }
    }
};

using CircumVerdict = RigidityVerdict;

/// det(Delta_P) det(Lambda_Q) - det(Delta_Q) det(Lambda_P) for the
/// sub-configurations on sigma; zero iff the circumradius constraint agrees.
inline double circumsphere_residual(const PointCloud& p, const PointCloud& q, const SimplexKey& sigma)
{
    if (p.size() != q.size() || p.dim() != q.dim()) {
        throw InputError("residual needs configurations of equal shape");
    }
    const auto [delta_p, lambda_p] = cayley_menger(p, sigma);
    const auto [delta_q, lambda_q] = cayley_menger(q, sigma);
    return delta_p.entries.determinant() * lambda_q.entries.determinant() -
           delta_q.entries.determinant() * lambda_p.entries.determinant();
}

/// Rows: gradients of the squared circumradius of each hyperedge.
inline Matrix circumsphere_jacobian(const CircumsphereFramework& fw, double rank_tol = kDefaultRankTol)
{
    const PointCloud& p = fw.config;
    Matrix j(static_cast<Eigen::Index>(fw.hypergraph.hyperedges.size()),
             static_cast<Eigen::Index>(p.size() * p.dim()));
    for (std::size_t e = 0; e < fw.hypergraph.hyperedges.size(); ++e) {
        j.row(static_cast<Eigen::Index>(e)) = circumradius_gradient(p, fw.hypergraph.hyperedges[e], rank_tol).transpose();
    }
    return j;
}

inline CircumVerdict circumsphere_rigidity_test(const CircumsphereFramework& fw, double rank_tol = kDefaultRankTol)
{
    require_full_span(fw.config, rank_tol);
    const int rank = numerical_rank(row_normalized(circumsphere_jacobian(fw, rank_tol)), rank_tol);
    return make_verdict(rank, rigid_target_rank(fw.config.size(), fw.config.dim()));
}

enum class ConjectureVerdict { Supported, Refuted };

inline const char* to_string(ConjectureVerdict v) { return v == ConjectureVerdict::Supported ? "supported" : "refuted"; }

struct ConjectureReport {
    std::size_t d = 0;
    std::size_t n = 0;
    int trials_run = 0;
    int rigid_count = 0;
    int degenerate_rejects = 0;
    int min_rank = 0;
    int max_rank = 0;
    int target_rank = 0;
    ConjectureVerdict verdict = ConjectureVerdict::Supported;
};

inline constexpr int kDefaultConjectureTrials = 20;

/// Rank test of the complete (d+1)-uniform hypergraph on n vertices at
/// random configurations; requires C(n, d+1) >= d n - C(d+1, 2).
inline ConjectureReport verify_complete_uniform_rigidity(std::size_t d, std::size_t n,
                                                         int trials = kDefaultConjectureTrials,
                                                         std::uint64_t seed = 0, double rank_tol = kDefaultRankTol)
{
    if (d < 1) {
        throw HypothesisViolated("dimension must be at least 1");
    }
    const long long lhs = binomial(static_cast<long long>(n), static_cast<long long>(d) + 1);
    const long long rhs = static_cast<long long>(d * n) - binomial(static_cast<long long>(d) + 1, 2);
    if (lhs < rhs || n < d + 1) {
        throw HypothesisViolated("C(" + std::to_string(n) + "," + std::to_string(d + 1) + ") = " +
                                 std::to_string(lhs) + " < " + std::to_string(rhs));
    }
    ConjectureReport rep;
    rep.d = d;
    rep.n = n;
    rep.target_rank = rigid_target_rank(n, d);
    rep.min_rank = rep.target_rank;
    const Hypergraph h = Hypergraph::complete_uniform(n, d + 1);
    constexpr int kMaxRejectsPerTrial = 100;

    std::uint64_t draw = 0;
    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            const PointCloud p = random_cloud(n, d, seed + draw++);
            try {
                const CircumVerdict v = circumsphere_rigidity_test(CircumsphereFramework(h, p), rank_tol);
                ++rep.trials_run;
                rep.min_rank = std::min(rep.min_rank, v.rank);
                rep.max_rank = std::max(rep.max_rank, v.rank);
                if (v.rigid()) {
                    ++rep.rigid_count;
                }
                break;
            } catch (const DegenerateSimplex&) {
                ++rep.degenerate_rejects;
            } catch (const DomainError&) {
                ++rep.degenerate_rejects;
            }
            if (attempt + 1 >= kMaxRejectsPerTrial) {
                throw DomainError("could not sample a non-degenerate configuration");
            }
        }
    }
    rep.verdict = rep.rigid_count == rep.trials_run ? ConjectureVerdict::Supported : ConjectureVerdict::Refuted;
    return rep;
}

} // namespace phid
