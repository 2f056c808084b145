// bipartite_filter.hpp -- edges of a 2D face that lie in no perfect matching

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "susp/error.hpp"
#include "susp/graph3d.hpp"

namespace susp {

/// Default vertex cap for the brute-force perfect matching enumerator.
inline constexpr std::size_t kDefaultMatchingOracleCap = 8;

struct SccPartition {
    /// component_id[v] is the index of v's component.
    std::vector<std::size_t> component_id;
    /// Components in reverse topological order of the condensation: every
    /// edge between components goes from a higher index to a lower one.
    std::vector<std::vector<std::size_t>> components;

    std::size_t component_count() const noexcept { return components.size(); }
};

/// Strongly connected components of the directed view of `g` (Tarjan, with
/// an explicit DFS stack so deep graphs do not exhaust the call stack).
inline SccPartition scc_decompose(const Graph2D &g)
{
    constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t n = g.n();

    SccPartition out;
    out.component_id.assign(n, kUnvisited);

    std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    // DFS frame: vertex and the next successor candidate to examine.
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    std::size_t counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (order[root] != kUnvisited)
            continue;
        frames.emplace_back(root, 0);
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            auto &[v, cursor] = frames.back();
            const std::size_t next = g.next_successor(v, cursor);
            if (next < n) {
                cursor = next + 1;
                if (order[next] == kUnvisited) {
                    order[next] = low[next] = counter++;
                    stack.push_back(next);
                    on_stack[next] = true;
                    frames.emplace_back(next, 0);
                } else if (on_stack[next]) {
                    low[v] = std::min(low[v], order[next]);
                }
                continue;
            }

            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const std::size_t parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == order[done]) {
                const std::size_t id = out.components.size();
                auto &component = out.components.emplace_back();
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component_id[w] = id;
                    component.push_back(w);
                } while (w != done);
                std::sort(component.begin(), component.end());
            }
        }
    }
    return out;
}

/// Edges of `g` that belong to no perfect matching.
///
/// Requires the identity matching to be present. Relative to that matching an
/// edge (u,v), u != v, extends to a perfect matching exactly when it closes an
/// alternating cycle, i.e. when v reaches u in the directed view; so the
/// removable edges are precisely those joining two different SCCs.
///
/// Repeatedly peeling a source or sink component S of the condensation and
/// deleting its incident edges (each step satisfies the one-sided cut
/// condition, so it keeps every perfect matching) ends once the condensation
/// has no edges left, which happens exactly when all cross-component edges are
/// gone. Both procedures therefore delete the same set; this one does it in a
/// single pass.
inline std::vector<Edge2D> removable_edges(const Graph2D &g)
{
    if (!g.has_diagonal())
        throw Error(Errc::MissingDiagonal, "removable_edges requires every (u,u) edge");
    const SccPartition scc = scc_decompose(g);
    std::vector<Edge2D> out;
    for (std::size_t u = 0; u < g.n(); ++u)
        g.for_each_successor(u, [&](std::size_t v) {
            if (scc.component_id[u] != scc.component_id[v])
                out.emplace_back(u, v);
        });
    return out;
}

/// All perfect matchings of `g` as permutations (u -> perm[u]), in
/// lexicographic order. Brute force; oracle use only.
inline std::vector<std::vector<std::size_t>>
enumerate_perfect_matchings(const Graph2D &g, std::size_t cap = kDefaultMatchingOracleCap)
{
    const std::size_t n = g.n();
    if (n > cap)
        throw Error(Errc::OracleCapExceeded, "2D matching oracle limited to " +
                                                 std::to_string(cap) + " vertices");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> perm(n);
    std::vector<bool> used(n, false);

    auto extend = [&](auto &&self, std::size_t u) -> void {
        if (u == n) {
            out.push_back(perm);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || !g.contains(u, v))
                continue;
            used[v] = true;
            perm[u] = v;
            self(self, u + 1);
            used[v] = false;
        }
    };
    extend(extend, 0);
    return out;
}

} // namespace susp
