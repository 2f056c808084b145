// oracle.hpp -- exponential-time ground truth for small puzzles
//
// These exist to cross-check the polynomial-time verifier; none of them is
// used on the main verification path.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "susp/error.hpp"
#include "susp/graph3d.hpp"
#include "susp/puzzle.hpp"

namespace susp {

inline constexpr std::size_t kDefaultSuspMatchingCap = 16;
inline constexpr std::size_t kDefaultSuspDefinitionCap = 5;
inline constexpr std::size_t kDefaultMatchingEnumerationCap = 8;

/// A perfect 3D matching: triples[u] = (u, sigma(u), tau(u)).
struct Matching3D {
    std::vector<std::array<std::size_t, 3>> triples;

    bool is_trivial() const noexcept
    {
        return std::all_of(triples.begin(), triples.end(),
                           [](const auto &t) { return t[0] == t[1] && t[1] == t[2]; });
    }

    friend auto operator<=>(const Matching3D &, const Matching3D &) = default;
};

/// All perfect matchings of `h` (including the trivial one, if present) in
/// lexicographic order of (sigma, tau) interleaved by vertex.
inline std::vector<Matching3D> enumerate_perfect_matchings_3d(
    const Graph3D &h, std::size_t cap = kDefaultMatchingEnumerationCap)
{
    const std::size_t n = h.n();
    if (n > cap)
        throw Error(Errc::OracleCapExceeded,
                    "3D matching enumeration limited to " + std::to_string(cap) + " vertices");
    std::vector<Matching3D> out;
    Matching3D current;
    current.triples.resize(n);
    std::vector<bool> used_v(n, false), used_w(n, false);

    auto extend = [&](auto &&self, std::size_t u) -> void {
        if (u == n) {
            out.push_back(current);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used_v[v])
                continue;
            for (std::size_t w = 0; w < n; ++w) {
                if (used_w[w] || !h.contains(u, v, w))
                    continue;
                used_v[v] = used_w[w] = true;
                current.triples[u] = {u, v, w};
                self(self, u + 1);
                used_v[v] = used_w[w] = false;
            }
        }
    };
    extend(extend, 0);
    return out;
}

inline std::vector<Matching3D> enumerate_nontrivial_matchings(
    const Graph3D &h, std::size_t cap = kDefaultMatchingEnumerationCap)
{
    auto all = enumerate_perfect_matchings_3d(h, cap);
    std::erase_if(all, [](const Matching3D &m) { return m.is_trivial(); });
    return all;
}

/// Searches H_P for a perfect matching other than the diagonal. The search
/// assigns (sigma(u), tau(u)) one vertex at a time, always branching on the
/// unassigned vertex with the fewest remaining options.
inline bool is_susp_by_matching(const Puzzle &p, std::size_t cap = kDefaultSuspMatchingCap)
{
    const std::size_t n = p.size();
    if (n > cap || n > 64)
        throw Error(Errc::OracleCapExceeded,
                    "matching oracle limited to " + std::to_string(std::min<std::size_t>(cap, 64)) +
                        " rows");
    const Graph3D h = build_h(p);

    struct Option {
        std::uint8_t v, w;
    };
    std::vector<std::vector<Option>> options(n);
    h.for_each_edge([&](std::size_t u, std::size_t v, std::size_t w) {
        options[u].push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(w)});
    });

    std::uint64_t used_v = 0, used_w = 0, assigned = 0;
    bool nontrivial_found = false;

    auto search = [&](auto &&self, std::size_t depth, bool nontrivial) -> void {
        if (depth == n) {
            nontrivial_found = nontrivial;
            return;
        }
        std::size_t best_u = n, best_count = SIZE_MAX;
        for (std::size_t u = 0; u < n; ++u) {
            if (assigned >> u & 1u)
                continue;
            std::size_t count = 0;
            for (const Option &o : options[u])
                if (!(used_v >> o.v & 1u) && !(used_w >> o.w & 1u))
                    ++count;
            if (count < best_count) {
                best_count = count;
                best_u = u;
                if (count == 0)
                    return;
            }
        }
        assigned |= std::uint64_t{1} << best_u;
        for (const Option &o : options[best_u]) {
            if ((used_v >> o.v & 1u) || (used_w >> o.w & 1u))
                continue;
            used_v |= std::uint64_t{1} << o.v;
            used_w |= std::uint64_t{1} << o.w;
            self(self, depth + 1, nontrivial || o.v != best_u || o.w != best_u);
            used_v &= ~(std::uint64_t{1} << o.v);
            used_w &= ~(std::uint64_t{1} << o.w);
            if (nontrivial_found)
                break;
        }
        assigned &= ~(std::uint64_t{1} << best_u);
    };
    search(search, 0, false);
    return !nontrivial_found;
}

/// Direct check of the SUSP definition over all triples of row permutations.
/// Costs (s!)^3 s k, hence the small default cap.
inline bool is_susp_by_definition(const Puzzle &p, std::size_t cap = kDefaultSuspDefinitionCap)
{
    const std::size_t s = p.size();
    const std::size_t k = p.width();
    if (s > cap)
        throw Error(Errc::OracleCapExceeded,
                    "definition oracle limited to " + std::to_string(cap) + " rows");

    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    const auto cells = p.cells();
    for (const auto &p1 : perms)
        for (const auto &p2 : perms)
            for (const auto &p3 : perms) {
                if (p1 == p2 && p2 == p3)
                    continue;
                bool witnessed = false;
                for (std::size_t r = 0; r < s && !witnessed; ++r)
                    for (std::size_t i = 0; i < k && !witnessed; ++i) {
                        const int hits = (cells[p1[r] * k + i] == 1) + (cells[p2[r] * k + i] == 2) +
                                         (cells[p3[r] * k + i] == 3);
                        witnessed = hits == 2;
                    }
                if (!witnessed)
                    return false;
            }
    return true;
}

} // namespace susp
