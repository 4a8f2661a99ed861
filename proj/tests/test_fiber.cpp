#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace phid;

namespace {

// Seven planar points whose critical graph (12 edges) is generically
// globally rigid. Found by local search; five planar points never produce
// enough distinct endpoints for a globally rigid critical graph.
PointCloud ggr_fixture()
{
    return PointCloud({{1.2743, 1.1879},
                       {0.6852, -1.1836},
                       {-0.0885, -0.9789},
                       {0.0113, 1.0866},
                       {0.2757, 0.3261},
                       {1.2335, 0.1268},
                       {-1.6479, 0.1094}});
}

PointCloud acute_triangle() { return PointCloud({{0.0, 0.0}, {1.0, 0.1}, {0.45, 0.9}}); }
PointCloud obtuse_triangle() { return PointCloud({{0.0, 0.0}, {2.0, 0.3}, {-1.8, 0.4}}); }

} // namespace

TEST(FiberBounds, Examples)
{
    EXPECT_EQ(fiber_dim_bounds(1, 2, 1).lower, 2);
    EXPECT_EQ(fiber_dim_bounds(1, 2, 1).upper, 2);
    EXPECT_EQ(fiber_dim_bounds(3, 2, 3).lower, 4);
    EXPECT_EQ(fiber_dim_bounds(3, 2, 3).upper, 4);
    EXPECT_EQ(fiber_dim_bounds(4, 2, 6).lower, 3);
    EXPECT_EQ(fiber_dim_bounds(4, 2, 6).upper, 5);
    EXPECT_THROW(fiber_dim_bounds(0, 2, 1), InputError);
}

TEST(FiberBounds, PerturbedSquareEndpointCount)
{
    const PointCloud p = oracle::perturbed_square(3, 1e-2);
    const FullBarcode b = compute_barcodes(p, FiltrationKind::VietorisRips, 2);
    EXPECT_EQ(bounded_endpoints(b).size(), 6U);
}

TEST(LocalFiberDimension, Examples)
{
    for (std::size_t d = 1; d <= 3; ++d) {
        const PointCloud two = random_cloud(2, d, 10 + d);
        const LocalFiberResult r = local_fiber_dimension(two, FiltrationKind::VietorisRips);
        EXPECT_EQ(r.dimension, static_cast<int>(2 * d) - 1);
        EXPECT_EQ(r.representatives, (std::vector<SimplexKey>{SimplexKey{0, 1}}));
    }
    const PointCloud three = random_cloud(3, 2, 5);
    const LocalFiberResult r = local_fiber_dimension(three, FiltrationKind::VietorisRips);
    EXPECT_EQ(r.rank, 2);
    EXPECT_EQ(r.dimension, 4);
    EXPECT_EQ(r.endpoints.size(), 3U);
    EXPECT_EQ(local_fiber_dimension(PointCloud({{0.0, 0.0}}), FiltrationKind::Cech).dimension, 2);
}

TEST(LocalFiberDimension, Sandwich)
{
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t d = 2; d <= 3; ++d) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const PointCloud p = random_cloud(n, d, 10000 * n + 100 * d + seed);
                for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
                    const LocalFiberResult r = local_fiber_dimension(p, kind);
                    const FiberBounds b = fiber_dim_bounds(static_cast<long long>(n), static_cast<long long>(d),
                                                           static_cast<long long>(r.endpoints.size()));
                    EXPECT_LE(b.lower, r.dimension);
                    EXPECT_LE(r.dimension, b.upper);
                }
            }
        }
    }
}

TEST(LocalFiberDimension, RepresentativesAttainEndpoints)
{
    const PointCloud p = random_cloud(6, 2, 77);
    for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
        const LocalFiberResult r = local_fiber_dimension(p, kind);
        ASSERT_EQ(r.representatives.size() + 1, r.endpoints.size());
        for (std::size_t i = 0; i < r.representatives.size(); ++i) {
            EXPECT_NEAR(phi(kind, p, r.representatives[i]), r.endpoints[i + 1], 1e-12);
        }
    }
}

TEST(LocalFiberDimension, CechRowsMatchFiniteDifferences)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointCloud p = random_cloud(4, 2, 3000 + seed);
        const SimplexKey all = all_points(4);
        const auto f = [&](const Vector& x) { return phi_cech(PointCloud::from_flat(x, 2), all); };
        const Vector fd = oracle::finite_difference_gradient(f, p.flat(), 1e-6 * p.diameter());
        const Vector g = detail::phi_gradient(FiltrationKind::Cech, p, all, kDefaultRankTol);
        EXPECT_LT((g - fd).norm(), 1e-6 * g.norm()) << "seed " << seed;
    }
}

TEST(VrLocal, Examples)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_FALSE(vr_local_identifiability(random_cloud(3, 2, seed)));
    }
    EXPECT_TRUE(vr_local_identifiability(oracle::perturbed_square(1, 1e-2)));
    EXPECT_TRUE(vr_local_identifiability(PointCloud({{0.0}, {1.5}})));
    EXPECT_THROW(vr_local_identifiability(random_cloud(3, 3, 0)), DomainError);
}

TEST(VrGlobal, Examples)
{
    EXPECT_FALSE(vr_global_identifiability_sufficient(oracle::perturbed_square(2, 1e-2)));
    EXPECT_THROW(vr_global_identifiability_sufficient(random_cloud(3, 2, 0)), NotApplicable);
    EXPECT_THROW(vr_global_identifiability_sufficient(random_cloud(4, 1, 0)), NotApplicable);

    const PointCloud p = ggr_fixture();
    EXPECT_TRUE(genericity_diagnostics(p).empty());
    EXPECT_EQ(critical_graph(p).edges.size(), 12U);
    EXPECT_TRUE(vr_global_identifiability_sufficient(p));
    EXPECT_TRUE(vr_local_identifiability(p));
}

TEST(VrGlobal, ImpliesLocal)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t d = 2 + seed % 2;
        const PointCloud p = random_cloud(d + 2 + seed % 4, d, 5000 + seed);
        AnalysisOptions opt;
        opt.seed = seed;
        if (vr_global_identifiability_sufficient(p, opt)) {
            EXPECT_TRUE(vr_local_identifiability(p, opt));
        }
    }
}

TEST(CechLocal, Examples)
{
    EXPECT_FALSE(cech_local_identifiability(obtuse_triangle()));
    EXPECT_TRUE(cech_local_identifiability(acute_triangle()));
    EXPECT_TRUE(cech_local_identifiability(PointCloud({{0.0}, {2.0}})));
}

TEST(CechLocal, TriangleDichotomy)
{
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        const PointCloud p = oracle::random_triangle_off_right(rng, 5e-4);
        EXPECT_EQ(cech_local_identifiability(p), oracle::is_acute(p));
    }
}

TEST(Verdicts, InvariantUnderMotionAndRelabeling)
{
    Rng rng(13);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const PointCloud p = random_cloud(5, 2, 6000 + seed);
        const PointCloud q = permute_points(random_rigid_motion(p, rng), random_permutation(5, rng));
        EXPECT_EQ(vr_local_identifiability(p), vr_local_identifiability(q));
        EXPECT_EQ(vr_global_identifiability_sufficient(p), vr_global_identifiability_sufficient(q));
        EXPECT_EQ(cech_local_identifiability(p), cech_local_identifiability(q));
        EXPECT_EQ(local_fiber_dimension(p, FiltrationKind::Cech).dimension,
                  local_fiber_dimension(q, FiltrationKind::Cech).dimension);
    }
}

TEST(Genericity, Examples)
{
    const auto square = genericity_diagnostics(PointCloud({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}));
    EXPECT_FALSE(square.empty());
    const auto has = [](const std::vector<std::string>& w, const std::string& what) {
        return std::any_of(w.begin(), w.end(), [&](const std::string& s) { return s.find(what) != std::string::npos; });
    };
    EXPECT_TRUE(has(square, "d(0,2)") || has(square, "d(1,3)"));
    EXPECT_TRUE(has(square, "coincident pairwise distances"));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_TRUE(genericity_diagnostics(random_cloud(6, 2 + seed % 2, 7000 + seed)).empty());
    }
    EXPECT_TRUE(has(genericity_diagnostics(PointCloud({{0.0, 0.0}, {1.0, 0.0}, {2.5, 0.0}})), "affinely dependent"));
}

TEST(Genericity, EndpointMerging)
{
    FullBarcode b;
    b.per_degree.resize(1);
    b.per_degree[0].intervals = {{0.0, kInfinity}, {0.0, 1.0}, {0.0, 1.0 + 1e-13}};
    EXPECT_EQ(endpoint_diagnostics(b, FiltrationKind::VietorisRips).size(), 1U);
}

TEST(ChainCloud, Examples)
{
    const PointCloud two = generate_chain_cloud({1.0}, {0.0});
    EXPECT_EQ(two.coords(), (Eigen::Matrix2d() << 0, 0, 2, 0).finished());

    const std::vector<double> radii{0.7, 1.1, 0.9, 1.3};
    const PointCloud p = generate_chain_cloud(radii, {0.1, -0.2, 0.15, -0.05});
    const FullBarcode b = compute_barcodes(p, FiltrationKind::Cech, 2);
    EXPECT_TRUE(b.degree(1).empty());
    EXPECT_TRUE(b.degree(2).empty());
    std::vector<double> deaths;
    for (const Interval& iv : b.degree(0).intervals) {
        if (!iv.infinite()) {
            deaths.push_back(iv.death);
        }
    }
    std::sort(deaths.begin(), deaths.end());
    std::vector<double> expect = radii;
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(deaths.size(), expect.size());
    for (std::size_t i = 0; i < deaths.size(); ++i) {
        EXPECT_NEAR(deaths[i], expect[i], 1e-9);
    }
    std::vector<Edge> path;
    for (Index i = 0; i + 1 < p.size(); ++i) {
        path.emplace_back(i, i + 1);
    }
    EXPECT_EQ(Graph(p.size(), minimal_spanning_tree(p)), Graph(p.size(), path));
}

TEST(ChainCloud, AngleViolations)
{
    EXPECT_THROW(generate_chain_cloud({1.0}, {std::numbers::pi / 4.0}), AngleViolation);
    EXPECT_THROW(generate_chain_cloud({1.0, 1.0}, {0.1, -0.9}), AngleViolation);
    // Directions between non-consecutive points stay inside the cone of the steps.
    EXPECT_NO_THROW(generate_chain_cloud({1.0, 1.0, 1.0}, {0.78, -0.78, 0.78}));
    EXPECT_THROW(generate_chain_cloud({1.0}, {0.1, 0.2}), InputError);
    EXPECT_THROW(generate_chain_cloud({-1.0}, {0.1}), InputError);
}

TEST(Identify, ReportContents)
{
    AnalysisOptions opt;
    opt.seed = 3;
    const IdentifiabilityReport r = identify(acute_triangle(), true, true, opt);
    ASSERT_EQ(r.fibers.size(), 2U);
    EXPECT_EQ(r.fibers[0].kind, FiltrationKind::VietorisRips);
    EXPECT_EQ(r.fibers[0].k, 3);
    EXPECT_EQ(r.fibers[1].k, 5);
    EXPECT_EQ(r.vr_locally_identifiable.value, std::optional<bool>(false));
    EXPECT_FALSE(r.vr_globally_identifiable_sufficient.value.has_value());
    EXPECT_NE(r.vr_globally_identifiable_sufficient.note.find("not applicable"), std::string::npos);
    EXPECT_EQ(r.cech_locally_identifiable.value, std::optional<bool>(true));
    EXPECT_TRUE(r.genericity_flags.empty());

    const IdentifiabilityReport c = identify(acute_triangle(), false, true, opt);
    EXPECT_EQ(c.fibers.size(), 1U);
    EXPECT_FALSE(c.vr_locally_identifiable.value.has_value());
}
