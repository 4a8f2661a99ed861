#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace phid;

namespace {

PointCloud unit_equilateral()
{
    return PointCloud({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}});
}

SimplexKey relabel(const SimplexKey& s, const std::vector<Index>& perm)
{
    std::vector<Index> v;
    for (Index x : s) {
        v.push_back(perm[x]);
    }
    return SimplexKey(std::move(v));
}

} // namespace

TEST(Phi, VietorisRipsExamples)
{
    const PointCloud p({{0.0, 0.0}, {2.0, 0.0}, {1.0, 5.0}});
    EXPECT_EQ(phi_vr(p, SimplexKey{1}), 0.0);
    EXPECT_DOUBLE_EQ(phi_vr(p, SimplexKey{0, 1}), 1.0);
    EXPECT_DOUBLE_EQ(phi_vr(p, SimplexKey{0, 1, 2}), 0.5 * std::sqrt(26.0));
}

TEST(Phi, CechExamples)
{
    const PointCloud p({{0.0, 0.0}, {2.0, 0.0}});
    EXPECT_EQ(phi_cech(p, SimplexKey{0}), 0.0);
    EXPECT_DOUBLE_EQ(phi_cech(p, SimplexKey{0, 1}), 1.0);
    const PointCloud eq = unit_equilateral();
    EXPECT_NEAR(phi_cech(eq, SimplexKey{0, 1, 2}), 1.0 / std::sqrt(3.0), 1e-14);
    EXPECT_GT(phi_cech(eq, SimplexKey{0, 1, 2}), phi_vr(eq, SimplexKey{0, 1, 2}));
}

TEST(Phi, PairsAgreeAcrossFiltrations)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointCloud p = random_cloud(6, 1 + seed % 4, seed);
        for (Index i = 0; i < 6; ++i) {
            for (Index j = i + 1; j < 6; ++j) {
                EXPECT_NEAR(phi_vr(p, SimplexKey{i, j}), phi_cech(p, SimplexKey{i, j}), 1e-12);
            }
        }
    }
}

TEST(BuildFilteredComplex, SinglePoint)
{
    const PointCloud p({{3.0, 1.0}});
    for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
        const FilteredComplex f = build_filtered_complex(p, kind, 2);
        ASSERT_EQ(f.size(), 1U);
        EXPECT_EQ(f[0].key, SimplexKey{0});
        EXPECT_EQ(f[0].value, 0.0);
        EXPECT_EQ(f.dim_cap(), 0);
    }
}

TEST(BuildFilteredComplex, EquilateralVietorisRips)
{
    const FilteredComplex f = build_filtered_complex(unit_equilateral(), FiltrationKind::VietorisRips, 1);
    ASSERT_EQ(f.size(), 7U);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(f[i].value, 0.0);
        EXPECT_EQ(f[i].key.size(), 1U);
    }
    for (std::size_t i = 3; i < 7; ++i) {
        EXPECT_NEAR(f[i].value, 0.5, 1e-15);
    }
    EXPECT_EQ(f[6].key, (SimplexKey{0, 1, 2}));
}

TEST(BuildFilteredComplex, EquilateralCech)
{
    const FilteredComplex f = build_filtered_complex(unit_equilateral(), FiltrationKind::Cech, 1);
    ASSERT_EQ(f.size(), 7U);
    EXPECT_EQ(f[6].key, (SimplexKey{0, 1, 2}));
    EXPECT_NEAR(f[6].value, 1.0 / std::sqrt(3.0), 1e-14);
    EXPECT_GT(f[6].value, f[5].value + 0.05);
}

TEST(BuildFilteredComplex, DimensionCapAndBudget)
{
    const PointCloud p = random_cloud(6, 2, 1);
    EXPECT_EQ(build_filtered_complex(p, FiltrationKind::VietorisRips, 0).size(), 6U + 15U);
    EXPECT_EQ(build_filtered_complex(p, FiltrationKind::VietorisRips, 9).dim_cap(), 5);
    EXPECT_EQ(build_filtered_complex(p, FiltrationKind::VietorisRips, 9).size(), 63U);
    EXPECT_THROW(build_filtered_complex(p, FiltrationKind::VietorisRips, 1, 10), ComplexTooLarge);
    EXPECT_THROW(build_filtered_complex(p, FiltrationKind::VietorisRips, -1), InputError);
}

TEST(BuildFilteredComplex, OrderedAndFaceMonotone)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointCloud p = random_cloud(7, 1 + seed % 3, 100 + seed);
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const FilteredComplex f = build_filtered_complex(p, kind, 2);
            EXPECT_EQ(f.size(), 7U + 21U + 35U + 35U);
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i > 0) {
                    EXPECT_TRUE(filtration_order(f[i - 1], f[i]));
                }
                if (f[i].key.size() == 1) {
                    EXPECT_EQ(f[i].value, 0.0);
                }
                for (const SimplexKey& face : f[i].key.facets()) {
                    EXPECT_LT(f.position(face), i);
                    EXPECT_LE(f.value(face), f[i].value);
                }
            }
        }
    }
}

TEST(BuildFilteredComplex, CechValuesDominateVietorisRips)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud p = random_cloud(6, 3, 40 + seed);
        const FilteredComplex vr = build_filtered_complex(p, FiltrationKind::VietorisRips, 2);
        const FilteredComplex cech = build_filtered_complex(p, FiltrationKind::Cech, 2);
        for (const FilteredSimplex& s : cech.entries()) {
            EXPECT_GE(s.value, vr.value(s.key) - 1e-12);
        }
    }
}

TEST(BuildFilteredComplex, IsometryAndRelabelInvariance)
{
    Rng rng(9);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud p = random_cloud(6, 2, 200 + seed);
        const auto perm = random_permutation(6, rng);
        const PointCloud q = permute_points(random_rigid_motion(p, rng), perm);
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const FilteredComplex a = build_filtered_complex(p, kind, 2);
            const FilteredComplex b = build_filtered_complex(q, kind, 2);
            for (const FilteredSimplex& s : a.entries()) {
                const double w = b.value(relabel(s.key, perm));
                EXPECT_NEAR(w, s.value, 1e-9 * std::max(1.0, s.value));
            }
        }
    }
}

TEST(PreorderSignature, GenericPairsAreSingletons)
{
    const PointCloud p = random_cloud(6, 2, 77);
    const FilteredComplex f = build_filtered_complex(p, FiltrationKind::VietorisRips, 0);
    const PreorderSignature sig = preorder_signature(f);
    // All six vertices tie at zero; every edge is alone.
    ASSERT_EQ(sig.groups.size(), 16U);
    EXPECT_EQ(sig.groups.front().size(), 6U);
    for (std::size_t g = 1; g < sig.groups.size(); ++g) {
        EXPECT_EQ(sig.groups[g].size(), 1U);
    }
}

TEST(PreorderSignature, EquilateralEdgesTieWithTriangle)
{
    const FilteredComplex f = build_filtered_complex(unit_equilateral(), FiltrationKind::VietorisRips, 1);
    const PreorderSignature sig = preorder_signature(f);
    ASSERT_EQ(sig.groups.size(), 2U);
    EXPECT_EQ(sig.groups[1].size(), 4U);

    const FilteredComplex c = build_filtered_complex(unit_equilateral(), FiltrationKind::Cech, 1);
    EXPECT_EQ(preorder_signature(c).groups.size(), 3U);
}

TEST(PreorderSignature, CongruentCloudsAgree)
{
    Rng rng(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud p = random_cloud(6, 3, 300 + seed);
        const PointCloud q = random_rigid_motion(p, rng);
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const FilteredComplex a = build_filtered_complex(p, kind, 2);
            const FilteredComplex b = build_filtered_complex(q, kind, 2);
            EXPECT_EQ(signature_keys(a, preorder_signature(a)), signature_keys(b, preorder_signature(b)));
        }
    }
}

TEST(PreorderSignature, StableUnderSmallPerturbation)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud p = random_cloud(5, 2, 400 + seed);
        Matrix m = p.coords();
        m(0, 0) += 1e-11;
        const PointCloud q(m);
        const FilteredComplex a = build_filtered_complex(p, FiltrationKind::VietorisRips, 1);
        const FilteredComplex b = build_filtered_complex(q, FiltrationKind::VietorisRips, 1);
        EXPECT_EQ(signature_keys(a, preorder_signature(a)), signature_keys(b, preorder_signature(b)));
    }
}
