#pragma once

#include "phid/enclosing_ball.hpp"
#include "phid/errors.hpp"
#include "phid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phid {

enum class FiltrationKind { VietorisRips, Cech };

inline std::string_view to_string(FiltrationKind k)
{
    return k == FiltrationKind::VietorisRips ? "vr" : "cech";
}

inline constexpr std::size_t kDefaultSimplexBudget = 2'000'000;
inline constexpr double kDefaultTieTol = 1e-9;

/// Half the largest pairwise distance within sigma; 0 for singletons.
inline double phi_vr(const PointCloud& p, const SimplexKey& sigma)
{
    sigma.check_bounds(p.size());
    double best = 0.0;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        for (std::size_t b = a + 1; b < sigma.size(); ++b) {
            best = std::max(best, squared_distance(p, sigma[a], sigma[b]));
        }
    }
    return 0.5 * std::sqrt(best);
}

inline double phi_cech(const PointCloud& p, const SimplexKey& sigma) { return min_enclosing_radius(p, sigma); }

inline double phi(FiltrationKind kind, const PointCloud& p, const SimplexKey& sigma)
{
    return kind == FiltrationKind::VietorisRips ? phi_vr(p, sigma) : phi_cech(p, sigma);
}

struct FilteredSimplex {
    SimplexKey key;
    double value = 0.0;
};

/// Simplices of K(n) up to dim_cap with their filtration values, sorted by
/// (value, dimension, lexicographic vertices).
class FilteredComplex {
public:
    FilteredComplex(std::vector<FilteredSimplex> entries, int dim_cap, FiltrationKind kind)
        : entries_(std::move(entries)), dim_cap_(dim_cap), kind_(kind)
    {
        index_.reserve(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            index_.emplace(entries_[i].key.mask(), i);
        }
    }

    const std::vector<FilteredSimplex>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const FilteredSimplex& operator[](std::size_t i) const { return entries_[i]; }
    int dim_cap() const { return dim_cap_; }
    FiltrationKind kind() const { return kind_; }

    /// Position of a simplex in the filtration order, or size() if absent.
    std::size_t position(const SimplexKey& key) const
    {
        const auto it = index_.find(key.mask());
        return it == index_.end() ? entries_.size() : it->second;
    }

    double value(const SimplexKey& key) const
    {
        const std::size_t i = position(key);
        if (i == entries_.size()) {
            throw InputError("simplex not present in filtered complex");
        }
        return entries_[i].value;
    }

private:
    std::vector<FilteredSimplex> entries_;
    int dim_cap_ = 0;
    FiltrationKind kind_ = FiltrationKind::VietorisRips;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

inline bool filtration_order(const FilteredSimplex& a, const FilteredSimplex& b)
{
    if (a.value != b.value) {
        return a.value < b.value;
    }
    if (a.key.size() != b.key.size()) {
        return a.key.size() < b.key.size();
    }
    return a.key < b.key;
}

/// Number of simplices of K(n) with at most max_size vertices.
inline long long simplex_count(std::size_t n, std::size_t max_size)
{
    long long total = 0;
    for (std::size_t k = 1; k <= max_size; ++k) {
        total += binomial(static_cast<long long>(n), static_cast<long long>(k));
    }
    return total;
}

inline FilteredComplex build_filtered_complex(const PointCloud& p, FiltrationKind kind, int max_degree,
                                              std::size_t budget = kDefaultSimplexBudget)
{
    if (max_degree < 0) {
        throw InputError("max_degree must be non-negative");
    }
    const std::size_t n = p.size();
    const int dim_cap = std::min(max_degree + 1, static_cast<int>(n) - 1);
    const auto max_size = static_cast<std::size_t>(dim_cap) + 1;
    if (n > 63) {
        throw ComplexTooLarge("filtrations support at most 63 points");
    }
    const long long count = simplex_count(n, max_size);
    if (count > static_cast<long long>(budget)) {
        throw ComplexTooLarge("complex would contain " + std::to_string(count) + " simplices, budget is " +
                              std::to_string(budget));
    }

    std::vector<FilteredSimplex> entries;
    entries.reserve(static_cast<std::size_t>(count));
    std::unordered_map<std::uint64_t, double> values;
    values.reserve(static_cast<std::size_t>(count));
    // Size-by-size so facets are valued before their cofaces.
    for (std::size_t k = 1; k <= max_size; ++k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<Index> v;
            v.reserve(k);
            for (Index i = 0; i < n; ++i) {
                if (pick[i]) {
                    v.push_back(i);
                }
            }
            SimplexKey key(std::move(v));
            double value = phi(kind, p, key);
            // Round-off in the enclosing-ball solve must not break face order.
            for (const SimplexKey& f : key.facets()) {
                value = std::max(value, values.at(f.mask()));
            }
            values.emplace(key.mask(), value);
            entries.push_back({std::move(key), value});
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::sort(entries.begin(), entries.end(), filtration_order);
    return FilteredComplex(std::move(entries), dim_cap, kind);
}

/// Tie-groups of equal filtration value, in increasing value order. Each
/// group lists positions into the filtered complex.
struct PreorderSignature {
    std::vector<std::vector<std::size_t>> groups;
};

/// Keys-only view of a signature, comparable across two complexes on the
/// same vertex set.
inline std::vector<std::vector<SimplexKey>> signature_keys(const FilteredComplex& f, const PreorderSignature& s)
{
    std::vector<std::vector<SimplexKey>> out;
    out.reserve(s.groups.size());
    for (const auto& g : s.groups) {
        std::vector<SimplexKey> keys;
        keys.reserve(g.size());
        for (std::size_t i : g) {
            keys.push_back(f[i].key);
        }
        std::sort(keys.begin(), keys.end());
        out.push_back(std::move(keys));
    }
    return out;
}

inline PreorderSignature preorder_signature(const FilteredComplex& f, double tol = kDefaultTieTol)
{
    PreorderSignature sig;
    double group_start = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f[i].value;
        if (sig.groups.empty() || v - group_start > tol * (1.0 + std::abs(group_start))) {
            sig.groups.emplace_back();
            group_start = v;
        }
        sig.groups.back().push_back(i);
    }
    return sig;
}

} // namespace phid
