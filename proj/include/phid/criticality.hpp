#pragma once

#include "phid/enclosing_ball.hpp"
#include "phid/filtration.hpp"
#include "phid/graph.hpp"
#include "phid/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace phid {

inline constexpr double kDefaultEndpointTol = 1e-9;

/// Relative closeness used for every endpoint / tie comparison.
inline bool approx_equal(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * (1.0 + std::abs(a));
}

/// A merged group of finite endpoint values.
struct EndpointGroup {
    double value = 0.0; // smallest member
    double spread = 0.0; // largest - smallest member
};

/// Distinct finite endpoints of all intervals, merged within tol and sorted.
/// Always contains 0 when the barcode is nonempty.
inline std::vector<EndpointGroup> endpoint_groups(const FullBarcode& bars, double tol = kDefaultEndpointTol)
{
    std::vector<double> raw;
    for (const Barcode& b : bars.per_degree) {
        for (const Interval& iv : b.intervals) {
            raw.push_back(iv.birth);
            if (!iv.infinite()) {
                raw.push_back(iv.death);
            }
        }
    }
    std::sort(raw.begin(), raw.end());
    std::vector<EndpointGroup> groups;
    for (double v : raw) {
        if (groups.empty() || !approx_equal(groups.back().value, v, tol)) {
            groups.push_back({v, 0.0});
        } else {
            groups.back().spread = v - groups.back().value;
        }
    }
    return groups;
}

inline std::vector<double> bounded_endpoints(const FullBarcode& bars, double tol = kDefaultEndpointTol)
{
    std::vector<double> out;
    for (const EndpointGroup& g : endpoint_groups(bars, tol)) {
        out.push_back(g.value);
    }
    return out;
}

/// Index of the endpoint matching value within tol, if any.
inline std::optional<std::size_t> match_endpoint(const std::vector<double>& endpoints, double value, double tol)
{
    auto it = std::lower_bound(endpoints.begin(), endpoints.end(), value);
    std::optional<std::size_t> best;
    double best_gap = 0.0;
    for (auto c : {it, it == endpoints.begin() ? it : std::prev(it)}) {
        if (c == endpoints.end()) {
            continue;
        }
        const double gap = std::abs(*c - value);
        if (approx_equal(*c, value, tol) && (!best || gap < best_gap)) {
            best = static_cast<std::size_t>(c - endpoints.begin());
            best_gap = gap;
        }
    }
    return best;
}

/// Pairs whose half-distance is a bounded endpoint of the (VR) barcode.
inline std::vector<Edge> critical_edges(const PointCloud& p, const FullBarcode& bars, double tol = kDefaultEndpointTol)
{
    const std::vector<double> endpoints = bounded_endpoints(bars, tol);
    std::vector<Edge> out;
    for (Index i = 0; i < p.size(); ++i) {
        for (Index j = i + 1; j < p.size(); ++j) {
            const double half = 0.5 * distance(p, i, j);
            if (match_endpoint(endpoints, half, tol)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

/// Default homological degree range: n-2 for Vietoris-Rips (all of K(n)),
/// d for Cech.
inline int default_max_degree(FiltrationKind kind, const PointCloud& p)
{
    if (kind == FiltrationKind::VietorisRips) {
        return std::max(0, static_cast<int>(p.size()) - 2);
    }
    return static_cast<int>(p.dim());
}

struct CriticalityOptions {
    double tol = kDefaultEndpointTol;
    std::optional<int> max_degree;
    std::size_t budget = kDefaultSimplexBudget;
};

inline CriticalGraph critical_graph(const PointCloud& p, const FullBarcode& vr_bars, double tol = kDefaultEndpointTol)
{
    return CriticalGraph(p.size(), critical_edges(p, vr_bars, tol));
}

inline CriticalGraph critical_graph(const PointCloud& p, const CriticalityOptions& opt = {})
{
    const int deg = opt.max_degree.value_or(default_max_degree(FiltrationKind::VietorisRips, p));
    return critical_graph(p, compute_barcodes(p, FiltrationKind::VietorisRips, deg, opt.budget), opt.tol);
}

/// Simplices with 2..d+1 vertices whose enclosing radius is a bounded Cech
/// endpoint and strictly exceeds the enclosing radius of each facet.
inline CriticalHypergraph critical_hypergraph(const PointCloud& p, const FullBarcode& cech_bars,
                                              double tol = kDefaultEndpointTol)
{
    const std::vector<double> endpoints = bounded_endpoints(cech_bars, tol);
    const std::size_t n = p.size();
    const std::size_t max_size = std::min(n, p.dim() + 1);
    std::vector<SimplexKey> out;
    for (std::size_t k = 2; k <= max_size; ++k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<Index> v;
            for (Index i = 0; i < n; ++i) {
                if (pick[i]) {
                    v.push_back(i);
                }
            }
            SimplexKey sigma(std::move(v));
            const double rho = phi_cech(p, sigma);
            if (!match_endpoint(endpoints, rho, tol)) {
                continue;
            }
            bool strict = true;
            for (const SimplexKey& f : sigma.facets()) {
                if (rho - phi_cech(p, f) <= tol * (1.0 + rho)) {
                    strict = false;
                    break;
                }
            }
            if (strict) {
                out.push_back(std::move(sigma));
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return CriticalHypergraph(n, std::move(out));
}

inline CriticalHypergraph critical_hypergraph(const PointCloud& p, const CriticalityOptions& opt = {})
{
    const int deg = opt.max_degree.value_or(default_max_degree(FiltrationKind::Cech, p));
    return critical_hypergraph(p, compute_barcodes(p, FiltrationKind::Cech, deg, opt.budget), opt.tol);
}

} // namespace phid
