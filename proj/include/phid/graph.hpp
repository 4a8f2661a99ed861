#pragma once

#include "phid/errors.hpp"
#include "phid/geometry.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace phid {

/// Simple undirected graph on vertices 0..n-1 with a fixed edge order.
struct Graph {
    std::size_t n = 0;
    std::vector<Edge> edges;

    Graph() = default;
    Graph(std::size_t vertex_count, std::vector<Edge> e) : n(vertex_count), edges(std::move(e))
    {
        for (const Edge& x : edges) {
            if (x.v >= n) {
                throw InputError("edge {" + std::to_string(x.u) + "," + std::to_string(x.v) +
                                 "} out of range for n = " + std::to_string(n));
            }
        }
        std::vector<Edge> sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InputError("graph has a repeated edge");
        }
    }

    std::size_t edge_count() const { return edges.size(); }

    bool has_edge(Index a, Index b) const
    {
        const Edge e(a, b);
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }

    bool is_complete() const { return edges.size() == n * (n - 1) / 2; }

    std::vector<std::vector<Index>> adjacency() const
    {
        std::vector<std::vector<Index>> adj(n);
        for (const Edge& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    /// Same graph with its edge list sorted; used for set equality.
    Graph canonical() const
    {
        Graph g = *this;
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }

    /// Relabel vertex v as perm[v].
    Graph relabeled(const std::vector<Index>& perm) const
    {
        std::vector<Edge> e;
        e.reserve(edges.size());
        for (const Edge& x : edges) {
            e.emplace_back(perm[x.u], perm[x.v]);
        }
        return Graph(n, std::move(e));
    }

    static Graph complete(std::size_t n)
    {
        std::vector<Edge> e;
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                e.emplace_back(i, j);
            }
        }
        return Graph(n, std::move(e));
    }

    bool operator==(const Graph& o) const
    {
        return n == o.n && canonical().edges == o.canonical().edges;
    }
};

/// Hypergraph on 0..n-1 with hyperedges stored as simplex keys, in a fixed
/// order.
struct Hypergraph {
    std::size_t n = 0;
    std::vector<SimplexKey> hyperedges;

    Hypergraph() = default;
    Hypergraph(std::size_t vertex_count, std::vector<SimplexKey> h) : n(vertex_count), hyperedges(std::move(h))
    {
        for (const SimplexKey& s : hyperedges) {
            s.check_bounds(n);
        }
        std::vector<SimplexKey> sorted = hyperedges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InputError("hypergraph has a repeated hyperedge");
        }
    }

    Hypergraph canonical() const
    {
        Hypergraph h = *this;
        std::sort(h.hyperedges.begin(), h.hyperedges.end(), [](const SimplexKey& a, const SimplexKey& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return h;
    }

    Hypergraph relabeled(const std::vector<Index>& perm) const
    {
        std::vector<SimplexKey> h;
        h.reserve(hyperedges.size());
        for (const SimplexKey& s : hyperedges) {
            std::vector<Index> v;
            for (Index x : s) {
                v.push_back(perm[x]);
            }
            h.emplace_back(std::move(v));
        }
        return Hypergraph(n, std::move(h));
    }

    bool operator==(const Hypergraph& o) const
    {
        return n == o.n && canonical().hyperedges == o.canonical().hyperedges;
    }

    static Hypergraph from_graph(const Graph& g)
    {
        std::vector<SimplexKey> h;
        for (const Edge& e : g.edges) {
            h.push_back(SimplexKey{e.u, e.v});
        }
        return Hypergraph(g.n, std::move(h));
    }

    /// All (k)-element subsets of 0..n-1, lexicographic.
    static Hypergraph complete_uniform(std::size_t n, std::size_t k)
    {
        std::vector<SimplexKey> h;
        if (k <= n) {
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::vector<Index> v;
                for (Index i = 0; i < n; ++i) {
                    if (pick[i]) {
                        v.push_back(i);
                    }
                }
                h.emplace_back(std::move(v));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        return Hypergraph(n, std::move(h));
    }
};

using CriticalGraph = Graph;
using CriticalHypergraph = Hypergraph;

} // namespace phid
