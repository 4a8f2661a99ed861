#pragma once

#include "phid/filtration.hpp"
#include "phid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace phid {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Half-open interval [birth, death); death may be kInfinity.
struct Interval {
    double birth = 0.0;
    double death = kInfinity;

    bool infinite() const { return std::isinf(death); }
    bool contains(double t) const { return birth <= t && t < death; }

    auto operator<=>(const Interval&) const = default;
};

/// Canonical interval order: birth ascending, longer (later death) first.
inline bool interval_order(const Interval& a, const Interval& b)
{
    if (a.birth != b.birth) {
        return a.birth < b.birth;
    }
    return a.death > b.death;
}

struct Barcode {
    std::vector<Interval> intervals;

    std::size_t size() const { return intervals.size(); }
    bool empty() const { return intervals.empty(); }
    void normalize() { std::sort(intervals.begin(), intervals.end(), interval_order); }
};

struct FullBarcode {
    std::vector<Barcode> per_degree; // index = homological degree
    int max_degree = 0;

    const Barcode& degree(int i) const { return per_degree.at(static_cast<std::size_t>(i)); }
};

namespace detail {

using Column = std::vector<std::size_t>;

// Symmetric difference of two sorted index lists (addition over Z/2).
inline void add_column(Column& target, const Column& source)
{
    Column out;
    out.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(out));
    target.swap(out);
}

} // namespace detail

/// Barcodes in degrees 0..max_degree by standard column reduction over Z/2
/// with clearing. Zero-length intervals are dropped.
inline FullBarcode compute_barcodes(const FilteredComplex& f, int max_degree)
{
    const std::size_t m = f.size();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::vector<detail::Column> columns(m);
    int top_dim = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const SimplexKey& key = f[j].key;
        top_dim = std::max(top_dim, key.dimension());
        for (const SimplexKey& facet : key.facets()) {
            const std::size_t i = f.position(facet);
            if (i == m) {
                throw InputError("filtered complex is not closed under faces");
            }
            columns[j].push_back(i);
        }
        std::sort(columns[j].begin(), columns[j].end());
    }

    std::vector<std::size_t> pivot_owner(m, kNone); // row -> column with that pivot
    std::vector<std::size_t> partner(m, kNone);
    std::vector<bool> cleared(m, false);

    // Highest dimension first so that clearing can zero out positive columns.
    for (int dim = top_dim; dim >= 1; --dim) {
        for (std::size_t j = 0; j < m; ++j) {
            if (f[j].key.dimension() != dim || cleared[j]) {
                continue;
            }
            detail::Column& col = columns[j];
            while (!col.empty() && pivot_owner[col.back()] != kNone) {
                detail::add_column(col, columns[pivot_owner[col.back()]]);
            }
            if (!col.empty()) {
                const std::size_t low = col.back();
                pivot_owner[low] = j;
                partner[low] = j;
                partner[j] = low;
                cleared[low] = true;
                columns[low].clear();
            }
        }
    }

    FullBarcode out;
    out.max_degree = max_degree;
    out.per_degree.resize(static_cast<std::size_t>(max_degree) + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const int dim = f[i].key.dimension();
        if (dim > max_degree) {
            continue;
        }
        const bool negative = partner[i] != kNone && partner[i] < i;
        if (negative) {
            continue;
        }
        const double birth = f[i].value;
        if (partner[i] == kNone) {
            out.per_degree[static_cast<std::size_t>(dim)].intervals.push_back({birth, kInfinity});
        } else if (f[partner[i]].value > birth) {
            out.per_degree[static_cast<std::size_t>(dim)].intervals.push_back({birth, f[partner[i]].value});
        }
    }
    for (Barcode& b : out.per_degree) {
        b.normalize();
    }
    return out;
}

inline FullBarcode compute_barcodes(const PointCloud& p, FiltrationKind kind, int max_degree,
                                    std::size_t budget = kDefaultSimplexBudget)
{
    return compute_barcodes(build_filtered_complex(p, kind, max_degree, budget), max_degree);
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

/// Edges of a minimal spanning tree of the complete distance graph (Kruskal).
inline std::vector<Edge> minimal_spanning_tree(const PointCloud& p)
{
    const std::size_t n = p.size();
    std::vector<std::pair<double, Edge>> all;
    all.reserve(n * (n - 1) / 2);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            all.emplace_back(squared_distance(p, i, j), Edge(i, j));
        }
    }
    std::sort(all.begin(), all.end());
    detail::DisjointSets sets(n);
    std::vector<Edge> tree;
    for (const auto& [len, e] : all) {
        if (sets.unite(e.u, e.v)) {
            tree.push_back(e);
        }
    }
    return tree;
}

/// Sorted edge lengths of a minimal spanning tree.
inline std::vector<double> mst_edge_lengths(const PointCloud& p)
{
    std::vector<double> out;
    for (const Edge& e : minimal_spanning_tree(p)) {
        out.push_back(distance(p, e.u, e.v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Whether the MST edge lengths equal twice the finite degree-0 deaths,
/// with multiplicity, within the given relative error.
inline bool verify_mst_barcode_correspondence(const PointCloud& p, double max_rel_err = 1e-9)
{
    const FullBarcode bars = compute_barcodes(p, FiltrationKind::VietorisRips, 0);
    std::vector<double> doubled;
    for (const Interval& iv : bars.degree(0).intervals) {
        if (!iv.infinite()) {
            doubled.push_back(2.0 * iv.death);
        }
    }
    std::sort(doubled.begin(), doubled.end());
    const std::vector<double> mst = mst_edge_lengths(p);
    if (mst.size() != doubled.size()) {
        return false;
    }
    for (std::size_t i = 0; i < mst.size(); ++i) {
        if (std::abs(mst[i] - doubled[i]) > max_rel_err * std::max(std::abs(mst[i]), 1e-300)) {
            return false;
        }
    }
    return true;
}

} // namespace phid
