#pragma once

// Identifiability of point clouds from their persistence barcodes and
// dimension bounds for the fibers of the persistence map.

#include "phid/circumsphere.hpp"
#include "phid/criticality.hpp"
#include "phid/enclosing_ball.hpp"
#include "phid/filtration.hpp"
#include "phid/persistence.hpp"
#include "phid/rigidity.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace phid {

struct FiberBounds {
    long long lower = 0; // n d - k + 1, valid for generic P
    long long upper = 0; // n d - n + 1, bound on the whole fiber
};

inline FiberBounds fiber_dim_bounds(long long n, long long d, long long k)
{
    if (n < 1 || d < 1 || k < 1) {
        throw InputError("fiber bounds need n, d, k >= 1");
    }
    return {n * d - k + 1, n * d - n + 1};
}

struct AnalysisOptions {
    double tol = kDefaultEndpointTol;
    double rank_tol = kDefaultRankTol;
    std::optional<int> max_degree;
    std::size_t budget = kDefaultSimplexBudget;
    int trials = kDefaultGgrTrials;
    std::uint64_t seed = 0;

    CriticalityOptions criticality() const { return {tol, max_degree, budget}; }
};

struct LocalFiberResult {
    int dimension = 0;
    int rank = 0;
    std::vector<double> endpoints;            // includes 0
    std::vector<SimplexKey> representatives;  // one per nonzero endpoint
};

namespace detail {

inline Vector half_distance_gradient(const PointCloud& p, Index i, Index j)
{
    const auto d = static_cast<Eigen::Index>(p.dim());
    Vector g = Vector::Zero(static_cast<Eigen::Index>(p.size()) * d);
    const Vector diff = p.point(i) - p.point(j);
    const Vector unit = 0.5 * diff / diff.norm();
    g.segment(static_cast<Eigen::Index>(i) * d, d) = unit;
    g.segment(static_cast<Eigen::Index>(j) * d, d) = -unit;
    return g;
}

inline Vector phi_gradient(FiltrationKind kind, const PointCloud& p, const SimplexKey& sigma, double rank_tol)
{
    if (kind == FiltrationKind::VietorisRips) {
        Index bi = sigma[0];
        Index bj = sigma[1];
        double best = -1.0;
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            for (std::size_t b = a + 1; b < sigma.size(); ++b) {
                const double s = squared_distance(p, sigma[a], sigma[b]);
                if (s > best) {
                    best = s;
                    bi = sigma[a];
                    bj = sigma[b];
                }
            }
        }
        return half_distance_gradient(p, bi, bj);
    }
    const SimplexKey tau = min_enclosing_support(p, sigma);
    // d rho = d(R^2) / (2 R)
    return circumradius_gradient(p, tau, rank_tol) / (2.0 * std::sqrt(circumradius_squared(p, tau, rank_tol)));
}

} // namespace detail

/// n d minus the rank of the Jacobian of P -> (Phi_{sigma_1}(P), ...), one
/// row per nonzero bounded endpoint; sigma_i is the first simplex in
/// filtration order attaining endpoint i.
inline LocalFiberResult local_fiber_dimension(const PointCloud& p, FiltrationKind kind,
                                              const AnalysisOptions& opt = {})
{
    const int deg = opt.max_degree.value_or(default_max_degree(kind, p));
    const FilteredComplex f = build_filtered_complex(p, kind, deg, opt.budget);
    const FullBarcode bars = compute_barcodes(f, deg);

    LocalFiberResult out;
    out.endpoints = bounded_endpoints(bars, opt.tol);
    const auto nd = static_cast<Eigen::Index>(p.size() * p.dim());
    Matrix jac(0, nd);
    std::size_t cursor = 0;
    for (double b : out.endpoints) {
        if (b == 0.0) {
            continue;
        }
        while (cursor < f.size() && f[cursor].value < b && !approx_equal(b, f[cursor].value, opt.tol)) {
            ++cursor;
        }
        if (cursor == f.size() || !approx_equal(b, f[cursor].value, opt.tol)) {
            throw DomainError("barcode endpoint not attained by any simplex");
        }
        const SimplexKey& sigma = f[cursor].key;
        out.representatives.push_back(sigma);
        jac.conservativeResize(jac.rows() + 1, Eigen::NoChange);
        jac.row(jac.rows() - 1) = detail::phi_gradient(kind, p, sigma, opt.rank_tol).transpose();
    }
    out.rank = numerical_rank(row_normalized(std::move(jac)), opt.rank_tol);
    out.dimension = static_cast<int>(nd) - out.rank;
    return out;
}

/// Rigidity of the critical-graph framework (G_P, P).
inline RigidityVerdict vr_local_rigidity(const PointCloud& p, const AnalysisOptions& opt = {})
{
    return infinitesimal_rigidity_test(Framework(critical_graph(p, opt.criticality()), p), opt.rank_tol);
}

inline bool vr_local_identifiability(const PointCloud& p, const AnalysisOptions& opt = {})
{
    return vr_local_rigidity(p, opt).rigid();
}

/// Sufficient condition for (global) identifiability up to isometry: generic
/// global rigidity of G_P. Needs n >= d+2 and d >= 2.
inline bool vr_global_identifiability_sufficient(const PointCloud& p, const AnalysisOptions& opt = {})
{
    if (p.dim() < 2 || p.size() < p.dim() + 2) {
        throw NotApplicable("global criterion needs d >= 2 and n >= d+2");
    }
    const CriticalGraph g = critical_graph(p, opt.criticality());
    if (p.dim() == 2) {
        return ggr_2d(g);
    }
    return ggr_randomized(g, p.dim(), opt.trials, opt.seed, opt.rank_tol);
}

inline CircumVerdict cech_local_rigidity(const PointCloud& p, const AnalysisOptions& opt = {})
{
    return circumsphere_rigidity_test(CircumsphereFramework(critical_hypergraph(p, opt.criticality()), p),
                                      opt.rank_tol);
}

inline bool cech_local_identifiability(const PointCloud& p, const AnalysisOptions& opt = {})
{
    return cech_local_rigidity(p, opt).rigid();
}

namespace detail {

inline std::string key_string(const SimplexKey& s)
{
    std::string out = "{";
    for (std::size_t a = 0; a < s.size(); ++a) {
        out += (a ? "," : "") + std::to_string(s[a]);
    }
    return out + "}";
}

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k > n || k == 0) {
        return;
    }
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
        fn(SimplexKey(std::move(v)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
}

inline constexpr long long kDiagnosticSubsetCap = 200'000;

} // namespace detail

/// Warnings for configurations off the generic set: coincident distances,
/// affinely dependent small subsets, coincident enclosing radii and points
/// lying on the enclosing sphere of a subset without supporting it.
inline std::vector<std::string> genericity_diagnostics(const PointCloud& p, double tol = kDefaultEndpointTol,
                                                       double rank_tol = kDefaultRankTol)
{
    std::vector<std::string> warnings;
    const std::size_t n = p.size();
    const std::size_t d = p.dim();
    const double diam = p.diameter();

    struct PairValue {
        double value;
        Edge edge;
    };
    std::vector<PairValue> pairs;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double dist = distance(p, i, j);
            pairs.push_back({dist, Edge(i, j)});
            if (dist <= 1e-8 * diam) {
                warnings.push_back("near-duplicate points " + std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairValue& a, const PairValue& b) { return a.value < b.value; });
    for (std::size_t a = 0; a + 1 < pairs.size(); ++a) {
        if (approx_equal(pairs[a].value, pairs[a + 1].value, tol)) {
            const Edge& x = pairs[a].edge;
            const Edge& y = pairs[a + 1].edge;
            warnings.push_back("coincident pairwise distances d(" + std::to_string(x.u) + "," + std::to_string(x.v) +
                               ") = d(" + std::to_string(y.u) + "," + std::to_string(y.v) + ")");
        }
    }

    const std::size_t max_size = std::min(n, d + 1);
    long long subsets = 0;
    for (std::size_t k = 3; k <= max_size; ++k) {
        subsets += binomial(static_cast<long long>(n), static_cast<long long>(k));
    }
    if (subsets > detail::kDiagnosticSubsetCap) {
        warnings.push_back("subset diagnostics skipped: " + std::to_string(subsets) + " subsets");
        return warnings;
    }

    // Minimal enclosing radii of simplices that are their own support.
    struct SupportValue {
        double value;
        SimplexKey key;
    };
    std::vector<SupportValue> supports;
    for (std::size_t k = 2; k <= max_size; ++k) {
        detail::for_each_subset(n, k, [&](const SimplexKey& sigma) {
            if (k >= 3 && !affinely_independent(p, sigma, rank_tol)) {
                warnings.push_back("affinely dependent points " + detail::key_string(sigma));
                return;
            }
            const Ball ball = min_enclosing_ball(p, sigma);
            const SimplexKey tau = min_enclosing_support(p, sigma);
            const double radius = std::sqrt(ball.radius_sq);
            if (tau == sigma) {
                supports.push_back({min_enclosing_radius(p, sigma), sigma});
                return;
            }
            for (Index v : sigma) {
                if (!tau.contains(v) &&
                    std::abs((p.point(v) - ball.center).norm() - radius) <= tol * (1.0 + radius)) {
                    warnings.push_back("point " + std::to_string(v) + " lies on the enclosing sphere of " +
                                       detail::key_string(tau));
                }
            }
        });
    }
    std::sort(supports.begin(), supports.end(),
              [](const SupportValue& a, const SupportValue& b) { return a.value < b.value; });
    for (std::size_t a = 0; a + 1 < supports.size(); ++a) {
        const SupportValue& x = supports[a];
        const SupportValue& y = supports[a + 1];
        if (x.key.size() == 2 && y.key.size() == 2) {
            continue; // already reported as a distance coincidence
        }
        if (approx_equal(x.value, y.value, tol)) {
            warnings.push_back("coincident enclosing radii of " + detail::key_string(x.key) + " and " +
                               detail::key_string(y.key));
        }
    }
    return warnings;
}

/// Warnings for endpoint groups that merged numerically distinct values.
inline std::vector<std::string> endpoint_diagnostics(const FullBarcode& bars, FiltrationKind kind,
                                                     double tol = kDefaultEndpointTol)
{
    std::vector<std::string> warnings;
    for (const EndpointGroup& g : endpoint_groups(bars, tol)) {
        if (g.spread > 0.0) {
            std::ostringstream os;
            os.precision(17);
            os << to_string(kind) << " barcode has near-coincident endpoints at " << g.value << " (spread "
               << g.spread << ")";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

/// Planar chain p_0 = 0, p_{i+1} = p_i + 2 r_i (cos a_i, sin a_i). Every
/// direction p_j - p_i (i < j) must make an angle below pi/4 with (1, 0).
inline PointCloud generate_chain_cloud(const std::vector<double>& radii, const std::vector<double>& angles)
{
    constexpr double kQuarter = std::numbers::pi / 4.0;
    if (radii.size() != angles.size()) {
        throw InputError("chain needs as many angles as radii");
    }
    const std::size_t n = radii.size() + 1;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) {
            throw InputError("chain radii must be positive");
        }
        if (!(std::abs(angles[i]) < kQuarter)) {
            throw AngleViolation("step angle " + std::to_string(angles[i]) + " outside (-pi/4, pi/4)");
        }
        const auto r = static_cast<Eigen::Index>(i);
        m(r + 1, 0) = m(r, 0) + 2.0 * radii[i] * std::cos(angles[i]);
        m(r + 1, 1) = m(r, 1) + 2.0 * radii[i] * std::sin(angles[i]);
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
            const double dx = m(j, 0) - m(i, 0);
            const double dy = m(j, 1) - m(i, 1);
            if (!(std::abs(std::atan2(dy, dx)) < kQuarter)) {
                throw AngleViolation("direction from point " + std::to_string(i) + " to " + std::to_string(j) +
                                     " is not within pi/4 of the x-axis");
            }
        }
    }
    return PointCloud(std::move(m));
}

/// Tri-state verdict: a value, or the reason none is available.
struct VerdictEntry {
    std::optional<bool> value;
    std::string note;
    std::optional<RigidityVerdict> rank;
};

struct FiberSection {
    FiltrationKind kind = FiltrationKind::VietorisRips;
    int k = 0;
    FiberBounds bounds;
    LocalFiberResult local;
};

struct IdentifiabilityReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<FiberSection> fibers;
    VerdictEntry vr_locally_identifiable;
    VerdictEntry vr_globally_identifiable_sufficient;
    VerdictEntry cech_locally_identifiable;
    std::vector<std::string> genericity_flags;
    AnalysisOptions options;
};

namespace detail {

template <class Fn>
VerdictEntry guarded(Fn&& fn)
{
    VerdictEntry e;
    try {
        fn(e);
    } catch (const NotApplicable& ex) {
        e.value.reset();
        e.note = std::string("not applicable: ") + ex.what();
    } catch (const DomainError& ex) {
        e.value.reset();
        e.note = std::string("domain error: ") + ex.what();
    } catch (const DegenerateSimplex& ex) {
        e.value.reset();
        e.note = std::string("degenerate: ") + ex.what();
    }
    return e;
}

} // namespace detail

/// Full analysis of P for the requested filtrations.
inline IdentifiabilityReport identify(const PointCloud& p, bool want_vr, bool want_cech, const AnalysisOptions& opt = {})
{
    IdentifiabilityReport rep;
    rep.n = p.size();
    rep.d = p.dim();
    rep.options = opt;
    rep.genericity_flags = genericity_diagnostics(p, opt.tol, opt.rank_tol);

    const auto not_requested = [] {
        VerdictEntry e;
        e.note = "filtration not requested";
        return e;
    };
    rep.vr_locally_identifiable = not_requested();
    rep.vr_globally_identifiable_sufficient = not_requested();
    rep.cech_locally_identifiable = not_requested();

    for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
        if ((kind == FiltrationKind::VietorisRips && !want_vr) || (kind == FiltrationKind::Cech && !want_cech)) {
            continue;
        }
        const int deg = opt.max_degree.value_or(default_max_degree(kind, p));
        const FullBarcode bars = compute_barcodes(p, kind, deg, opt.budget);
        for (std::string& w : endpoint_diagnostics(bars, kind, opt.tol)) {
            rep.genericity_flags.push_back(std::move(w));
        }
        FiberSection sec;
        sec.kind = kind;
        sec.local = local_fiber_dimension(p, kind, opt);
        sec.k = static_cast<int>(sec.local.endpoints.size());
        sec.bounds = fiber_dim_bounds(static_cast<long long>(p.size()), static_cast<long long>(p.dim()), sec.k);
        rep.fibers.push_back(std::move(sec));
    }
    if (want_vr) {
        rep.vr_locally_identifiable = detail::guarded([&](VerdictEntry& e) {
            e.rank = vr_local_rigidity(p, opt);
            e.value = e.rank->rigid();
        });
        rep.vr_globally_identifiable_sufficient = detail::guarded([&](VerdictEntry& e) {
            e.value = vr_global_identifiability_sufficient(p, opt);
            if (!*e.value) {
                e.note = "sufficient condition not met; identifiability undecided";
            }
        });
    }
    if (want_cech) {
        rep.cech_locally_identifiable = detail::guarded([&](VerdictEntry& e) {
            e.rank = cech_local_rigidity(p, opt);
            e.value = e.rank->rigid();
        });
    }
    return rep;
}

} // namespace phid
