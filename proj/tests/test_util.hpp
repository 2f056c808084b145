#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "susp/error.hpp"
#include "susp/puzzle.hpp"

namespace testutil {

inline std::string fixture_path(const std::string &name)
{
    return std::string(SUSP_FIXTURES_DIR) + "/" + name;
}

inline susp::Puzzle load_fixture(const std::string &name)
{
    std::ifstream in(fixture_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return susp::parse_puzzle(ss.str());
}

inline susp::Puzzle rows(std::vector<std::string> r) { return susp::Puzzle::from_strings(r); }

struct FixtureSpec {
    std::size_t s, k;
    std::string file() const { return "susp_" + std::to_string(s) + "_" + std::to_string(k) + ".txt"; }
};

inline const std::vector<FixtureSpec> &all_fixtures()
{
    static const std::vector<FixtureSpec> list{{1, 1},  {2, 2},  {3, 3},  {5, 4},  {8, 5},
                                               {14, 6}, {23, 7}, {35, 8}, {52, 9}, {78, 10}};
    return list;
}

} // namespace testutil

#define EXPECT_SUSP_ERROR(stmt, errc)                                                            \
    do {                                                                                         \
        try {                                                                                    \
            stmt;                                                                                \
            ADD_FAILURE() << "expected " << susp::to_string(errc);                               \
        } catch (const susp::Error &e) {                                                         \
            EXPECT_EQ(e.code(), errc) << e.what();                                               \
        }                                                                                        \
    } while (0)
