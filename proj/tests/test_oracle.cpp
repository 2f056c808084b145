#include <random>

#include <gtest/gtest.h>

#include "reference.hpp"
#include "susp/oracle.hpp"
#include "susp/simplify.hpp"
#include "test_util.hpp"

using namespace susp;
using testutil::rows;

namespace {
const Puzzle kFourRow = rows({"2233", "1232", "1123", "3311"});
}

TEST(MatchingOracle, PaperExamples)
{
    EXPECT_TRUE(is_susp_by_matching(kFourRow));
    EXPECT_FALSE(is_susp_by_matching(product(kFourRow, kFourRow)));
    EXPECT_TRUE(is_susp_by_matching(rows({"12", "33"})));
    EXPECT_TRUE(is_susp_by_matching(rows({"11", "23"})));
    EXPECT_FALSE(is_susp_by_matching(rows({"11", "22"})));
}

TEST(MatchingOracle, Fixtures)
{
    for (const char *name : {"susp_1_1.txt", "susp_2_2.txt", "susp_3_3.txt", "susp_5_4.txt", "susp_8_5.txt",
                             "susp_14_6.txt"})
        EXPECT_TRUE(is_susp_by_matching(testutil::load_fixture(name))) << name;
}

TEST(MatchingOracle, Cap)
{
    EXPECT_SUSP_ERROR(is_susp_by_matching(testutil::load_fixture("susp_23_7.txt")), Errc::OracleCapExceeded);
    EXPECT_SUSP_ERROR(is_susp_by_matching(testutil::load_fixture("susp_14_6.txt"), 13),
                      Errc::OracleCapExceeded);
}

TEST(DefinitionOracle, Examples)
{
    EXPECT_TRUE(is_susp_by_definition(rows({"1"})));
    EXPECT_TRUE(is_susp_by_definition(rows({"2313"})));
    EXPECT_TRUE(is_susp_by_definition(rows({"11", "23"})));
    EXPECT_FALSE(is_susp_by_definition(rows({"11", "22"})));
    EXPECT_TRUE(is_susp_by_definition(kFourRow));
    EXPECT_SUSP_ERROR(is_susp_by_definition(testutil::load_fixture("susp_8_5.txt")), Errc::OracleCapExceeded);
}

TEST(Oracles, AgreeWithEachOtherAndReference)
{
    std::mt19937_64 rng(200);
    std::size_t positives = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        const std::size_t s = 1 + rng() % 4;
        const auto r = ref::random_rows(s, 1 + rng() % 4 + (s > 2), rng);
        const Puzzle p = Puzzle::from_strings(r);
        const bool by_matching = is_susp_by_matching(p);
        ASSERT_EQ(by_matching, is_susp_by_definition(p)) << serialize_puzzle(p);
        ASSERT_EQ(by_matching, ref::is_susp(r)) << serialize_puzzle(p);
        ASSERT_EQ(by_matching, enumerate_nontrivial_matchings(build_h(p)).empty());
        positives += by_matching;
    }
    EXPECT_GT(positives, 100u);
}

TEST(Oracles, SuspIsRowPermutationInvariant)
{
    std::mt19937_64 rng(201);
    for (int trial = 0; trial < 300; ++trial) {
        auto r = ref::random_rows(2 + rng() % 5, 3 + rng() % 3, rng);
        const bool before = is_susp_by_matching(Puzzle::from_strings(r));
        std::shuffle(r.begin(), r.end(), rng);
        EXPECT_EQ(is_susp_by_matching(Puzzle::from_strings(r)), before);
    }
}

TEST(Enumerate3D, Examples)
{
    EXPECT_TRUE(enumerate_nontrivial_matchings(Graph3D::trivial(4)).empty());
    EXPECT_EQ(enumerate_perfect_matchings_3d(Graph3D::trivial(4)).size(), 1u);
    // Full graph on 2 vertices: 2! * 2! = 4 matchings, one of them trivial.
    EXPECT_EQ(enumerate_perfect_matchings_3d(Graph3D::full(2)).size(), 4u);
    EXPECT_EQ(enumerate_nontrivial_matchings(Graph3D::full(2)).size(), 3u);
    EXPECT_EQ(enumerate_perfect_matchings_3d(Graph3D::full(3)).size(), 36u);
    EXPECT_TRUE(enumerate_nontrivial_matchings(build_h(testutil::load_fixture("susp_5_4.txt"))).empty());
    EXPECT_SUSP_ERROR(enumerate_perfect_matchings_3d(Graph3D::trivial(9)), Errc::OracleCapExceeded);
}

TEST(Enumerate3D, MatchingsAreValid)
{
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = ref::random_rows(2 + rng() % 4, 1 + rng() % 3, rng);
        const Graph3D h = build_h(Puzzle::from_strings(r));
        const auto ms = enumerate_perfect_matchings_3d(h);
        EXPECT_EQ(ms.size(), ref::perfect_matchings_3d(ref::build_h(r), r.size()).size());
        EXPECT_TRUE(std::is_sorted(ms.begin(), ms.end()));
        for (const auto &m : ms) {
            std::vector<int> cover[3];
            for (auto &c : cover)
                c.assign(h.n(), 0);
            for (const auto &t : m.triples) {
                EXPECT_TRUE(h.contains(t[0], t[1], t[2]));
                for (int d = 0; d < 3; ++d)
                    ++cover[d][t[d]];
            }
            for (auto &c : cover)
                for (int x : c)
                    EXPECT_EQ(x, 1);
        }
    }
}
