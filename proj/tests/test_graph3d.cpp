#include <random>

#include <gtest/gtest.h>

#include "reference.hpp"
#include "susp/graph3d.hpp"
#include "susp/oracle.hpp"
#include "test_util.hpp"

using namespace susp;
using testutil::rows;

namespace {

ref::TripleSet as_set(const Graph3D &h)
{
    ref::TripleSet out;
    h.for_each_edge([&](std::size_t u, std::size_t v, std::size_t w) { out.insert({u, v, w}); });
    return out;
}

} // namespace

TEST(EdgeCondition, HandEvaluated)
{
    const Puzzle p = rows({"11", "23", "12"});
    // Column 1 of (11, 23, 11): u=1 and v=2 but w=1, so exactly two hold.
    EXPECT_TRUE(edge_condition(p, 0, 1, 0));
    // (12, 12, 12): one hit per column.
    EXPECT_FALSE(edge_condition(p, 2, 2, 2));
    for (std::size_t u = 0; u < 3; ++u)
        EXPECT_FALSE(edge_condition(p, u, u, u));
}

TEST(EdgeCondition, AgreesWithReferenceAcrossBlockBoundaries)
{
    std::mt19937_64 rng(21);
    for (std::size_t k : {1u, 5u, 63u, 64u, 65u, 130u}) {
        const auto r = ref::random_rows(6, k, rng);
        const Puzzle p = Puzzle::from_strings(r);
        const std::size_t n = r.size();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < n; ++w)
                    ASSERT_EQ(edge_condition(p, u, v, w), ref::separated(r[u], r[v], r[w])) << k;
    }
}

TEST(BuildH, SingleRow)
{
    const Graph3D h = build_h(rows({"1"}));
    EXPECT_EQ(h.n(), 1u);
    EXPECT_EQ(h.edge_count(), 1u);
    EXPECT_TRUE(h.contains(0, 0, 0));
}

TEST(BuildH, TwoByTwo)
{
    const Graph3D h = build_h(rows({"11", "23"}));
    EXPECT_FALSE(h.contains(0, 1, 0));
    EXPECT_TRUE(h.has_diagonal());
    EXPECT_EQ(as_set(h), ref::build_h({"11", "23"}));
}

TEST(BuildH, MatchesReferenceOnRandomPuzzles)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng() % 6;
        const std::size_t s = 1 + rng() % std::min<std::size_t>(9, ref::pow3(k));
        const auto r = ref::random_rows(s, k, rng);
        const Graph3D h = build_h(Puzzle::from_strings(r));
        ASSERT_EQ(as_set(h), ref::build_h(r));
        EXPECT_EQ(h.edge_count(), ref::build_h(r).size());
        EXPECT_TRUE(h.has_diagonal());
    }
}

TEST(BuildH, VertexCap)
{
    const Puzzle p = testutil::load_fixture("susp_14_6.txt");
    EXPECT_SUSP_ERROR(build_h(p, 13), Errc::SizeOverflow);
}

TEST(Graph3D, InsertEraseCount)
{
    Graph3D g(3);
    g.insert(0, 1, 2);
    g.insert(0, 1, 2);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_TRUE(g.erase(0, 1, 2));
    EXPECT_FALSE(g.erase(0, 1, 2));
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_EQ(Graph3D::full(3).edge_count(), 27u);
}

TEST(Project, Examples)
{
    for (int f = 0; f < 3; ++f)
        EXPECT_EQ(project(Graph3D::trivial(4), f), Graph2D::identity(4));

    Graph3D h = Graph3D::trivial(3);
    h.insert(0, 1, 2);
    EXPECT_TRUE(project(h, 0).contains(1, 2));
    EXPECT_TRUE(project(h, 1).contains(0, 2));
    EXPECT_TRUE(project(h, 2).contains(0, 1));
    EXPECT_EQ(project(h, 0).edge_count(), 4u);
}

TEST(Project, MatchesReference)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = ref::random_rows(1 + rng() % 7, 1 + rng() % 4 + 2, rng);
        const Graph3D h = build_h(Puzzle::from_strings(r));
        const auto hs = ref::build_h(r);
        for (int f = 0; f < 3; ++f) {
            const auto expected = ref::project(hs, f);
            const auto edges = project(h, f).edges();
            EXPECT_EQ(ref::PairSet(edges.begin(), edges.end()), expected);
        }
    }
}

TEST(Project, PerfectMatchingsProjectToPerfectMatchings)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = ref::random_rows(2 + rng() % 4, 1 + rng() % 3, rng);
        const Graph3D h = build_h(Puzzle::from_strings(r));
        for (const auto &m : enumerate_perfect_matchings_3d(h)) {
            for (int f = 0; f < 3; ++f) {
                const Graph2D face = project(h, f);
                std::vector<bool> left(h.n()), right(h.n());
                for (const auto &t : m.triples) {
                    const auto [a, b] = ref::face_pair(t, f);
                    EXPECT_TRUE(face.contains(a, b));
                    EXPECT_FALSE(left[a]);
                    EXPECT_FALSE(right[b]);
                    left[a] = right[b] = true;
                }
            }
        }
    }
}

TEST(Trivial, Examples)
{
    EXPECT_TRUE(is_trivial_matching(Graph3D::trivial(3)));
    Graph3D h = Graph3D::trivial(2);
    h.insert(0, 1, 1);
    EXPECT_FALSE(is_trivial_matching(h));
    Graph3D missing(2);
    missing.insert(0, 0, 0);
    missing.insert(0, 1, 1);
    EXPECT_FALSE(is_trivial_matching(missing));
}

TEST(TensorProduct, TrivialTimesTrivial)
{
    EXPECT_EQ(tensor_product(Graph3D::trivial(3), Graph3D::trivial(4)), Graph3D::trivial(12));
}

TEST(TensorProduct, EdgeCountsMultiply)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph3D a = build_h(Puzzle::from_strings(ref::random_rows(1 + rng() % 4, 2, rng)));
        const Graph3D b = build_h(Puzzle::from_strings(ref::random_rows(1 + rng() % 4, 2, rng)));
        EXPECT_EQ(tensor_product(a, b).edge_count(), a.edge_count() * b.edge_count());
    }
}

TEST(TensorProduct, HomomorphismExhaustiveSmall)
{
    // build_h(P1 x P2) == build_h(P1) (x) build_h(P2) for every pair of
    // puzzles with at most 3 rows of width 1 or 2 (rows in lexicographic order).
    std::vector<Puzzle> puzzles;
    for (std::size_t k = 1; k <= 2; ++k) {
        const auto all = ref::all_rows(k);
        const std::size_t n = all.size();
        for (std::size_t a = 0; a < n; ++a) {
            puzzles.push_back(Puzzle::from_strings(ref::Rows{all[a]}));
            for (std::size_t b = a + 1; b < n; ++b) {
                puzzles.push_back(Puzzle::from_strings(ref::Rows{all[a], all[b]}));
                for (std::size_t c = b + 1; c < n; ++c)
                    puzzles.push_back(Puzzle::from_strings(ref::Rows{all[a], all[b], all[c]}));
            }
        }
    }
    std::vector<Graph3D> hs;
    for (const auto &p : puzzles)
        hs.push_back(build_h(p));
    std::size_t checked = 0;
    for (std::size_t i = 0; i < puzzles.size(); ++i)
        for (std::size_t j = 0; j < puzzles.size(); ++j) {
            ASSERT_EQ(build_h(product(puzzles[i], puzzles[j])), tensor_product(hs[i], hs[j]));
            ++checked;
        }
    EXPECT_EQ(checked, puzzles.size() * puzzles.size());
}

TEST(TensorProduct, SizeOverflow)
{
    EXPECT_SUSP_ERROR(tensor_product(Graph3D::trivial(40), Graph3D::trivial(40), 1000),
                      Errc::SizeOverflow);
}
