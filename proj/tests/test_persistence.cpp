#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace phid;

namespace {

void expect_degree0_structure(const PointCloud& p, const Barcode& b0)
{
    ASSERT_EQ(b0.size(), p.size());
    int infinite = 0;
    for (const Interval& iv : b0.intervals) {
        EXPECT_EQ(iv.birth, 0.0);
        if (iv.infinite()) {
            ++infinite;
        } else {
            EXPECT_GT(iv.death, 0.0);
        }
    }
    EXPECT_EQ(infinite, 1);
}

// Number of simplices of each dimension with value <= t.
long long euler_characteristic(const FilteredComplex& f, double t)
{
    long long chi = 0;
    for (const FilteredSimplex& s : f.entries()) {
        if (s.value <= t) {
            chi += s.key.dimension() % 2 == 0 ? 1 : -1;
        }
    }
    return chi;
}

// Face-respecting shuffle: reorder within equal values, keep faces first by
// sorting on (value, dimension) after a random permutation.
FilteredComplex shuffled_ties(const FilteredComplex& f, Rng& rng)
{
    std::vector<FilteredSimplex> e = f.entries();
    std::shuffle(e.begin(), e.end(), rng);
    std::stable_sort(e.begin(), e.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
        if (a.value != b.value) {
            return a.value < b.value;
        }
        return a.key.size() < b.key.size();
    });
    return FilteredComplex(std::move(e), f.dim_cap(), f.kind());
}

} // namespace

TEST(Barcodes, SinglePoint)
{
    const PointCloud p({{1.0, 2.0}});
    const FullBarcode b = compute_barcodes(p, FiltrationKind::VietorisRips, 2);
    ASSERT_EQ(b.per_degree.size(), 3U);
    ASSERT_EQ(b.degree(0).size(), 1U);
    EXPECT_EQ(b.degree(0).intervals[0], (Interval{0.0, kInfinity}));
    EXPECT_TRUE(b.degree(1).empty());
    EXPECT_TRUE(b.degree(2).empty());
}

TEST(Barcodes, TwoPoints)
{
    const PointCloud p({{0.0, 0.0}, {2.0, 0.0}});
    const FullBarcode b = compute_barcodes(p, FiltrationKind::VietorisRips, 1);
    EXPECT_EQ(b.degree(0).intervals, (std::vector<Interval>{{0.0, kInfinity}, {0.0, 1.0}}));
    EXPECT_TRUE(b.degree(1).empty());
}

TEST(Barcodes, EquilateralSideTwo)
{
    const PointCloud p({{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}});
    const FullBarcode vr = compute_barcodes(p, FiltrationKind::VietorisRips, 1);
    EXPECT_TRUE(vr.degree(1).empty());
    const FullBarcode cech = compute_barcodes(p, FiltrationKind::Cech, 1);
    ASSERT_EQ(cech.degree(1).size(), 1U);
    EXPECT_NEAR(cech.degree(1).intervals[0].birth, 1.0, 1e-12);
    EXPECT_NEAR(cech.degree(1).intervals[0].death, 2.0 / std::sqrt(3.0), 1e-12);
}

TEST(Barcodes, SquareHasOneLoopInVietorisRips)
{
    const PointCloud p({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    const FullBarcode vr = compute_barcodes(p, FiltrationKind::VietorisRips, 1);
    // Sides and diagonals appear at 1/2 and sqrt(2)/2; the loop lives in between.
    ASSERT_EQ(vr.degree(1).size(), 1U);
    EXPECT_DOUBLE_EQ(vr.degree(1).intervals[0].birth, 0.5);
    EXPECT_DOUBLE_EQ(vr.degree(1).intervals[0].death, 0.5 * std::sqrt(2.0));
}

TEST(Barcodes, DegreeZeroStructureAndSingleLinkage)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 1 + seed % 9;
        const PointCloud p = random_cloud(n, 1 + seed % 4, 600 + seed);
        const FullBarcode b = compute_barcodes(p, FiltrationKind::VietorisRips, 0);
        expect_degree0_structure(p, b.degree(0));
        std::vector<double> deaths;
        for (const Interval& iv : b.degree(0).intervals) {
            if (!iv.infinite()) {
                deaths.push_back(iv.death);
            }
        }
        std::sort(deaths.begin(), deaths.end());
        EXPECT_EQ(deaths, oracle::single_linkage_deaths(p));
    }
}

TEST(Barcodes, DegreeZeroIdenticalAcrossFiltrations)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointCloud p = random_cloud(2 + seed % 6, 1 + seed % 3, 700 + seed);
        const FullBarcode vr = compute_barcodes(p, FiltrationKind::VietorisRips, 1);
        const FullBarcode cech = compute_barcodes(p, FiltrationKind::Cech, 1);
        EXPECT_EQ(vr.degree(0).intervals, cech.degree(0).intervals);
    }
}

TEST(Barcodes, EulerCharacteristic)
{
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t n = 3 + seed % 4;
        const PointCloud p = random_cloud(n, 2, 800 + seed);
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const int top = static_cast<int>(n) - 1;
            const FilteredComplex f = build_filtered_complex(p, kind, top);
            const FullBarcode b = compute_barcodes(f, top);
            std::vector<double> ts{0.0};
            for (const FilteredSimplex& s : f.entries()) {
                ts.push_back(s.value);
                ts.push_back(s.value * 1.0001 + 1e-6);
            }
            for (double t : ts) {
                long long chi = 0;
                for (int deg = 0; deg <= top; ++deg) {
                    for (const Interval& iv : b.degree(deg).intervals) {
                        if (iv.contains(t)) {
                            chi += deg % 2 == 0 ? 1 : -1;
                        }
                    }
                }
                EXPECT_EQ(chi, euler_characteristic(f, t)) << "seed " << seed << " t " << t;
            }
        }
    }
}

TEST(Barcodes, InvariantUnderTieReordering)
{
    Rng rng(17);
    // Lattice points produce many exact ties.
    const PointCloud grid({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});
    const PointCloud eq({{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}});
    for (const PointCloud* p : {&grid, &eq}) {
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const FilteredComplex f = build_filtered_complex(*p, kind, 2);
            const FullBarcode ref = compute_barcodes(f, 2);
            for (int trial = 0; trial < 5; ++trial) {
                const FullBarcode b = compute_barcodes(shuffled_ties(f, rng), 2);
                for (int deg = 0; deg <= 2; ++deg) {
                    EXPECT_EQ(b.degree(deg).intervals, ref.degree(deg).intervals);
                }
            }
        }
    }
}

TEST(Barcodes, IsometryAndPermutationInvariance)
{
    Rng rng(23);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointCloud p = random_cloud(6, 3, 900 + seed);
        const PointCloud q = permute_points(random_rigid_motion(p, rng), random_permutation(6, rng));
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            EXPECT_TRUE(oracle::barcodes_close(compute_barcodes(p, kind, 2), compute_barcodes(q, kind, 2), 1e-9));
        }
    }
}

TEST(Barcodes, IntervalsAreNonEmpty)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointCloud p = random_cloud(7, 2, 1000 + seed);
        for (FiltrationKind kind : {FiltrationKind::VietorisRips, FiltrationKind::Cech}) {
            const FullBarcode b = compute_barcodes(p, kind, 2);
            for (const Barcode& bar : b.per_degree) {
                for (const Interval& iv : bar.intervals) {
                    EXPECT_LT(iv.birth, iv.death);
                    EXPECT_GE(iv.birth, 0.0);
                }
            }
        }
    }
}

TEST(Mst, Examples)
{
    EXPECT_TRUE(mst_edge_lengths(PointCloud({{4.0}})).empty());
    EXPECT_EQ(mst_edge_lengths(PointCloud({{0.0}, {1.0}, {3.0}})), (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(mst_edge_lengths(PointCloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Mst, CorrespondsToDegreeZeroDeaths)
{
    EXPECT_TRUE(verify_mst_barcode_correspondence(PointCloud({{0.0, 0.0}, {2.0, 0.0}})));
    EXPECT_TRUE(verify_mst_barcode_correspondence(PointCloud({{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}})));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        EXPECT_TRUE(verify_mst_barcode_correspondence(random_cloud(2 + seed % 10, 1 + seed % 5, 1100 + seed)));
    }
}
