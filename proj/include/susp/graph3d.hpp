// graph3d.hpp -- the tripartite 3-uniform hypergraph H_P and its 2D faces

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "susp/error.hpp"
#include "susp/puzzle.hpp"

namespace susp {

/// Vertex cap for dense hypergraphs (n^3 bits). 1000 vertices is 125 MB.
inline constexpr std::size_t kDefaultMaxVertices = 1000;

using Edge2D = std::pair<std::size_t, std::size_t>;

/// Dense bitset over n^3 triples. Vertex (u,v,w) lives at bit (u*n + v)*n + w.
class Graph3D {
public:
    Graph3D() = default;

    explicit Graph3D(std::size_t n) : n_(n), bits_((n * n * n + 63) / 64, 0) {}

    /// The trivial matching {(u,u,u)} on n vertices.
    static Graph3D trivial(std::size_t n)
    {
        Graph3D g(n);
        for (std::size_t u = 0; u < n; ++u)
            g.insert(u, u, u);
        return g;
    }

    static Graph3D full(std::size_t n)
    {
        Graph3D g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < n; ++w)
                    g.insert(u, v, w);
        return g;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    bool contains(std::size_t u, std::size_t v, std::size_t w) const noexcept
    {
        const std::size_t i = index(u, v, w);
        return (bits_[i / 64] >> (i % 64)) & 1u;
    }

    void insert(std::size_t u, std::size_t v, std::size_t w) noexcept
    {
        const std::size_t i = index(u, v, w);
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (!(bits_[i / 64] & bit)) {
            bits_[i / 64] |= bit;
            ++edge_count_;
        }
    }

    /// Returns true if the edge was present.
    bool erase(std::size_t u, std::size_t v, std::size_t w) noexcept
    {
        const std::size_t i = index(u, v, w);
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (bits_[i / 64] & bit) {
            bits_[i / 64] &= ~bit;
            --edge_count_;
            return true;
        }
        return false;
    }

    /// Calls fn(u, v, w) for every edge in lexicographic order.
    template <class Fn>
    void for_each_edge(Fn &&fn) const
    {
        for (std::size_t word = 0; word < bits_.size(); ++word) {
            std::uint64_t bits = bits_[word];
            while (bits) {
                const std::size_t i = word * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                fn(i / (n_ * n_), (i / n_) % n_, i % n_);
            }
        }
    }

    std::vector<std::array<std::size_t, 3>> edges() const
    {
        std::vector<std::array<std::size_t, 3>> out;
        out.reserve(edge_count_);
        for_each_edge([&](std::size_t u, std::size_t v, std::size_t w) { out.push_back({u, v, w}); });
        return out;
    }

    bool has_diagonal() const noexcept
    {
        for (std::size_t u = 0; u < n_; ++u)
            if (!contains(u, u, u))
                return false;
        return true;
    }

    friend bool operator==(const Graph3D &a, const Graph3D &b) = default;

private:
    std::size_t index(std::size_t u, std::size_t v, std::size_t w) const noexcept
    {
        return (u * n_ + v) * n_ + w;
    }

    std::size_t n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Directed view of a bipartite face: entry (u,v) is the edge u -> v.
/// Adjacency rows are bitsets so successor scans are word-at-a-time.
class Graph2D {
public:
    Graph2D() = default;

    explicit Graph2D(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    static Graph2D identity(std::size_t n)
    {
        Graph2D g(n);
        for (std::size_t u = 0; u < n; ++u)
            g.insert(u, u);
        return g;
    }

    static Graph2D from_edges(std::size_t n, const std::vector<Edge2D> &edges)
    {
        Graph2D g(n);
        for (const auto &[u, v] : edges)
            g.insert(u, v);
        return g;
    }

    std::size_t n() const noexcept { return n_; }

    bool contains(std::size_t u, std::size_t v) const noexcept
    {
        return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
    }

    void insert(std::size_t u, std::size_t v) noexcept
    {
        bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }

    void erase(std::size_t u, std::size_t v) noexcept
    {
        bits_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }

    std::size_t edge_count() const noexcept
    {
        std::size_t count = 0;
        for (std::uint64_t w : bits_)
            count += static_cast<std::size_t>(std::popcount(w));
        return count;
    }

    /// Calls fn(v) for each successor v of u, ascending.
    template <class Fn>
    void for_each_successor(std::size_t u, Fn &&fn) const
    {
        for (std::size_t word = 0; word < words_; ++word) {
            std::uint64_t bits = bits_[u * words_ + word];
            while (bits) {
                fn(word * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    /// Lowest successor of u that is >= from, or n if none.
    std::size_t next_successor(std::size_t u, std::size_t from) const noexcept
    {
        if (from >= n_)
            return n_;
        std::size_t word = from / 64;
        std::uint64_t bits = bits_[u * words_ + word] & (~std::uint64_t{0} << (from % 64));
        while (true) {
            if (bits)
                return word * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (++word == words_)
                return n_;
            bits = bits_[u * words_ + word];
        }
    }

    std::vector<Edge2D> edges() const
    {
        std::vector<Edge2D> out;
        for (std::size_t u = 0; u < n_; ++u)
            for_each_successor(u, [&](std::size_t v) { out.emplace_back(u, v); });
        return out;
    }

    bool has_diagonal() const noexcept
    {
        for (std::size_t u = 0; u < n_; ++u)
            if (!contains(u, u))
                return false;
        return true;
    }

    friend bool operator==(const Graph2D &a, const Graph2D &b) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// f(u,v,w): true iff some column has exactly two of u_i = 1, v_i = 2, w_i = 3.
inline bool edge_condition(const RowMasks &u, const RowMasks &v, const RowMasks &w) noexcept
{
    for (std::size_t b = 0; b < u.is1.size(); ++b) {
        const std::uint64_t x = u.is1[b], y = v.is2[b], z = w.is3[b];
        if ((x & y & ~z) | ((x ^ y) & z))
            return true;
    }
    return false;
}

inline bool edge_condition(const Puzzle &p, std::size_t u, std::size_t v, std::size_t w)
{
    return edge_condition(p.masks(u), p.masks(v), p.masks(w));
}

/// H_P: the triples (u,v,w) of row indices with f(u,v,w) = 0.
inline Graph3D build_h(const Puzzle &p, std::size_t max_vertices = kDefaultMaxVertices)
{
    const std::size_t n = p.size();
    if (n > max_vertices)
        throw Error(Errc::SizeOverflow, "puzzle has " + std::to_string(n) + " rows; cap is " +
                                            std::to_string(max_vertices));
    std::vector<RowMasks> masks;
    masks.reserve(n);
    for (std::size_t r = 0; r < n; ++r)
        masks.push_back(p.masks(r));
    const std::size_t blocks = (p.width() + 63) / 64;

    Graph3D h(n);
    std::vector<std::uint64_t> both(blocks), one(blocks);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t b = 0; b < blocks; ++b) {
                both[b] = masks[u].is1[b] & masks[v].is2[b];
                one[b] = masks[u].is1[b] ^ masks[v].is2[b];
            }
            for (std::size_t w = 0; w < n; ++w) {
                bool exactly_two = false;
                for (std::size_t b = 0; b < blocks && !exactly_two; ++b) {
                    const std::uint64_t z = masks[w].is3[b];
                    exactly_two = ((both[b] & ~z) | (one[b] & z)) != 0;
                }
                if (!exactly_two)
                    h.insert(u, v, w);
            }
        }
    return h;
}

/// Face f drops coordinate f: face 0 keeps (v,w), face 1 keeps (u,w),
/// face 2 keeps (u,v).
inline Graph2D project(const Graph3D &h, int face)
{
    Graph2D g(h.n());
    h.for_each_edge([&](std::size_t u, std::size_t v, std::size_t w) {
        switch (face) {
        case 0: g.insert(v, w); break;
        case 1: g.insert(u, w); break;
        default: g.insert(u, v); break;
        }
    });
    return g;
}

inline bool is_trivial_matching(const Graph3D &h) noexcept
{
    return h.edge_count() == h.n() && h.has_diagonal();
}

/// Vertex (a,b) of the product is a*n2 + b.
inline Graph3D tensor_product(const Graph3D &a, const Graph3D &b,
                              std::size_t max_vertices = kDefaultMaxVertices)
{
    const std::size_t n2 = b.n();
    if (n2 != 0 && a.n() > max_vertices / n2)
        throw Error(Errc::SizeOverflow, "tensor product exceeds the vertex cap");
    Graph3D out(a.n() * n2);
    const auto eb = b.edges();
    a.for_each_edge([&](std::size_t u1, std::size_t v1, std::size_t w1) {
        for (const auto &e : eb)
            out.insert(u1 * n2 + e[0], v1 * n2 + e[1], w1 * n2 + e[2]);
    });
    return out;
}

} // namespace susp
