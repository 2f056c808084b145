#include <random>

#include <gtest/gtest.h>

#include "reference.hpp"
#include "susp/puzzle.hpp"
#include "test_util.hpp"

using namespace susp;
using testutil::rows;

TEST(Parse, TwoRows)
{
    const Puzzle p = parse_puzzle("11\n23");
    EXPECT_EQ(p.width(), 2u);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.row_string(0), "11");
    EXPECT_EQ(p.row_string(1), "23");
}

TEST(Parse, SingleRow)
{
    const Puzzle p = parse_puzzle("1");
    EXPECT_EQ(p.width(), 1u);
    EXPECT_EQ(p.size(), 1u);
}

TEST(Parse, SkipsCommentsBlankLinesAndCarriageReturns)
{
    const Puzzle p = parse_puzzle("# header\r\n\r\n11\r\n\n# mid\n23\r\n");
    EXPECT_EQ(p, rows({"11", "23"}));
}

TEST(Parse, Errors)
{
    EXPECT_SUSP_ERROR(parse_puzzle("12\n12"), Errc::DuplicateRow);
    EXPECT_SUSP_ERROR(parse_puzzle("12\n4"), Errc::MixedWidth);
    EXPECT_SUSP_ERROR(parse_puzzle("12\n14"), Errc::BadSymbol);
    EXPECT_SUSP_ERROR(parse_puzzle("1 2"), Errc::BadSymbol);
    EXPECT_SUSP_ERROR(parse_puzzle("# nothing\n\n"), Errc::Empty);
    EXPECT_SUSP_ERROR(Puzzle::empty(0), Errc::Empty);
}

TEST(Serialize, Examples)
{
    EXPECT_EQ(serialize_puzzle(rows({"11", "23"})), "11\n23\n");
    EXPECT_EQ(serialize_puzzle(rows({"1"})), "1\n");
}

TEST(Serialize, RoundTripOnFixtures)
{
    for (const auto &f : testutil::all_fixtures()) {
        const Puzzle p = testutil::load_fixture(f.file());
        EXPECT_EQ(p.size(), f.s) << f.file();
        EXPECT_EQ(p.width(), f.k) << f.file();
        const Puzzle q = parse_puzzle(serialize_puzzle(p));
        EXPECT_TRUE(q.same_order(p)) << f.file();
    }
}

TEST(Serialize, RoundTripWideRows)
{
    // Rows longer than one packed word.
    std::mt19937_64 rng(11);
    for (std::size_t k : {31u, 32u, 33u, 64u, 65u, 100u}) {
        const auto r = ref::random_rows(5, k, rng);
        const Puzzle p = Puzzle::from_strings(r);
        EXPECT_EQ(p.row_strings(), r);
        EXPECT_TRUE(parse_puzzle(serialize_puzzle(p)).same_order(p));
    }
}

TEST(Equality, IsSetEquality)
{
    EXPECT_EQ(rows({"11", "23"}), rows({"23", "11"}));
    EXPECT_FALSE(rows({"11", "23"}).same_order(rows({"23", "11"})));
    EXPECT_NE(rows({"11", "23"}), rows({"11", "22"}));
    EXPECT_NE(rows({"11"}), rows({"111"}));
}

TEST(Product, WidthOneSingletonActsAsSuffix)
{
    EXPECT_EQ(product(rows({"11", "23"}), rows({"1"})), rows({"111", "231"}));
}

TEST(Product, RowIndexConvention)
{
    const Puzzle p = product(rows({"1", "2"}), rows({"1", "3"}));
    EXPECT_EQ(p.row_strings(), (std::vector<std::string>{"11", "13", "21", "23"}));
}

TEST(Product, SquareOfFourRowPuzzle)
{
    const Puzzle p = rows({"2233", "1232", "1123", "3311"});
    const Puzzle sq = product(p, p);
    EXPECT_EQ(sq.size(), 16u);
    EXPECT_EQ(sq.width(), 8u);
}

TEST(Product, Associative)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Puzzle a = Puzzle::from_strings(ref::random_rows(1 + rng() % 3, 1 + rng() % 3, rng));
        const Puzzle b = Puzzle::from_strings(ref::random_rows(1 + rng() % 3, 2, rng));
        const Puzzle c = Puzzle::from_strings(ref::random_rows(1 + rng() % 3, 2, rng));
        EXPECT_EQ(product(product(a, b), c), product(a, product(b, c)));
    }
}

TEST(Product, SizeOverflow)
{
    const Puzzle p = testutil::load_fixture("susp_14_6.txt");
    EXPECT_SUSP_ERROR(product(p, p, 195), Errc::SizeOverflow);
    EXPECT_EQ(product(p, p, 196).size(), 196u);
    EXPECT_SUSP_ERROR(power(p, 6), Errc::SizeOverflow);
}

TEST(Power, Examples)
{
    EXPECT_EQ(power(rows({"11", "23"}), 2), rows({"1111", "1123", "2311", "2323"}));
    EXPECT_EQ(power(rows({"11", "23"}), 1), rows({"11", "23"}));
    EXPECT_SUSP_ERROR(power(rows({"1"}), 0), Errc::Empty);

    const Puzzle sq = power(testutil::load_fixture("susp_14_6.txt"), 2);
    EXPECT_EQ(sq.size(), 196u);
    EXPECT_EQ(sq.width(), 12u);
}

TEST(Capacity, Examples)
{
    EXPECT_DOUBLE_EQ(capacity(rows({"1"})), 1.0);
    EXPECT_NEAR(capacity(testutil::load_fixture("susp_14_6.txt")), 1.5525, 1e-4);
    EXPECT_NEAR(capacity(testutil::load_fixture("susp_2_2.txt")), 1.41421, 1e-5);
    EXPECT_NEAR(capacity(rows({"12", "33"})), std::sqrt(2.0), 1e-15);
}

TEST(Capacity, InvariantUnderPowers)
{
    for (const char *name : {"susp_2_2.txt", "susp_3_3.txt", "susp_5_4.txt"}) {
        const Puzzle p = testutil::load_fixture(name);
        for (std::size_t m = 2; m <= 4; ++m)
            EXPECT_NEAR(capacity(power(p, m)), capacity(p), 1e-12) << name << " m=" << m;
    }
    const Puzzle p = testutil::load_fixture("susp_8_5.txt");
    EXPECT_NEAR(capacity(power(p, 2)), capacity(p), 1e-12);
}

TEST(Local, Examples)
{
    EXPECT_FALSE(is_local_susp(rows({"11", "23"})));
    EXPECT_TRUE(is_local_susp(rows({"1"})));
    EXPECT_TRUE(is_local_susp(rows({"3"})));
    EXPECT_TRUE(is_local_susp(rows({"2132"})));
}

TEST(Local, MatchesReferenceExhaustively)
{
    // Every puzzle with s <= 3 rows of width <= 3, compared with a second
    // formulation of the local condition.
    std::size_t local_count = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto all = ref::all_rows(k);
        const std::size_t n = all.size();
        for (std::size_t a = 0; a < n; ++a) {
            EXPECT_EQ(is_local_susp(Puzzle::from_strings(ref::Rows{all[a]})), ref::is_local({all[a]}));
            for (std::size_t b = a + 1; b < n; ++b) {
                const ref::Rows two{all[a], all[b]};
                const bool local2 = is_local_susp(Puzzle::from_strings(two));
                EXPECT_EQ(local2, ref::is_local(two));
                local_count += local2;
                for (std::size_t c = b + 1; c < n; ++c) {
                    const ref::Rows three{all[a], all[b], all[c]};
                    const bool local3 = is_local_susp(Puzzle::from_strings(three));
                    ASSERT_EQ(local3, ref::is_local(three)) << all[a] << ' ' << all[b] << ' ' << all[c];
                    local_count += local3;
                }
            }
        }
    }
    EXPECT_GT(local_count, 0u);
}

TEST(Local, RowPermutationInvariance)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        auto r = ref::random_rows(1 + rng() % 4, 1 + rng() % 4, rng);
        const bool before = is_local_susp(Puzzle::from_strings(r));
        std::shuffle(r.begin(), r.end(), rng);
        EXPECT_EQ(is_local_susp(Puzzle::from_strings(r)), before);
    }
}

TEST(Masks, AgreeWithCells)
{
    std::mt19937_64 rng(9);
    const auto r = ref::random_rows(4, 70, rng);
    const Puzzle p = Puzzle::from_strings(r);
    for (std::size_t row = 0; row < 4; ++row) {
        const RowMasks m = p.masks(row);
        for (std::size_t c = 0; c < 70; ++c) {
            const std::uint64_t bit = std::uint64_t{1} << (c % 64);
            EXPECT_EQ((m.is1[c / 64] & bit) != 0, r[row][c] == '1');
            EXPECT_EQ((m.is2[c / 64] & bit) != 0, r[row][c] == '2');
            EXPECT_EQ((m.is3[c / 64] & bit) != 0, r[row][c] == '3');
        }
    }
}
