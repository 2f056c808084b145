// puzzle.hpp -- (s,k)-puzzles: sets of rows over the alphabet {1,2,3}

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "susp/error.hpp"

namespace susp {

/// A puzzle symbol, always one of 1, 2, 3 once validated.
using Symbol = std::uint8_t;

/// Default row cap for power() and other size-multiplying constructions.
inline constexpr std::size_t kDefaultMaxRows = 1'000'000;

/// Per-row column masks: bit c of block c/64 is set iff the row holds the
/// symbol at column c. One mask vector per symbol.
struct RowMasks {
    std::vector<std::uint64_t> is1, is2, is3;
};

/// An (s,k)-puzzle. Rows are stored packed at two bits per symbol; the row
/// order given at construction is preserved (vertex indices of the derived
/// hypergraph refer to it) but equality is set equality.
class Puzzle {
public:
    static constexpr std::size_t kSymbolsPerWord = 32;

    /// Zero-row puzzle of the given width; the seed of an empty search.
    static Puzzle empty(std::size_t width)
    {
        if (width == 0)
            throw Error(Errc::Empty, "puzzle width must be positive");
        Puzzle p;
        p.width_ = width;
        p.words_per_row_ = (width + kSymbolsPerWord - 1) / kSymbolsPerWord;
        return p;
    }

    /// Builds a puzzle from a row-major grid of symbols. Throws on symbols
    /// outside 1..3 and on duplicate rows.
    static Puzzle from_cells(std::size_t width, std::span<const Symbol> cells)
    {
        Puzzle p = empty(width);
        if (cells.size() % width != 0)
            throw Error(Errc::MixedWidth, "cell count is not a multiple of the width");
        const std::size_t rows = cells.size() / width;
        p.words_.assign(rows * p.words_per_row_, 0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < width; ++c) {
                const Symbol sym = cells[r * width + c];
                if (sym < 1 || sym > 3)
                    throw Error(Errc::BadSymbol, "symbol out of range at row " + std::to_string(r));
                p.set(r, c, sym);
            }
        p.size_ = rows;
        p.require_distinct();
        return p;
    }

    /// Builds a puzzle from row strings, validating exactly as parse_puzzle.
    static Puzzle from_strings(std::span<const std::string> rows)
    {
        if (rows.empty())
            throw Error(Errc::Empty, "no rows");
        const std::size_t width = rows.front().size();
        if (width == 0)
            throw Error(Errc::Empty, "empty row");
        std::vector<Symbol> cells;
        cells.reserve(rows.size() * width);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != width)
                throw Error(Errc::MixedWidth, "row " + std::to_string(r) + " has width " +
                                                  std::to_string(rows[r].size()) + ", expected " +
                                                  std::to_string(width));
            for (char ch : rows[r]) {
                if (ch < '1' || ch > '3')
                    throw Error(Errc::BadSymbol, std::string("unexpected character '") + ch +
                                                     "' in row " + std::to_string(r));
                cells.push_back(static_cast<Symbol>(ch - '0'));
            }
        }
        return from_cells(width, cells);
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    Symbol at(std::size_t row, std::size_t col) const noexcept
    {
        const std::uint64_t word = words_[row * words_per_row_ + col / kSymbolsPerWord];
        return static_cast<Symbol>((word >> (2 * (col % kSymbolsPerWord))) & 3u);
    }

    std::span<const std::uint64_t> packed_row(std::size_t row) const noexcept
    {
        return {words_.data() + row * words_per_row_, words_per_row_};
    }

    std::string row_string(std::size_t row) const
    {
        std::string out(width_, '0');
        for (std::size_t c = 0; c < width_; ++c)
            out[c] = static_cast<char>('0' + at(row, c));
        return out;
    }

    std::vector<std::string> row_strings() const
    {
        std::vector<std::string> out;
        out.reserve(size_);
        for (std::size_t r = 0; r < size_; ++r)
            out.push_back(row_string(r));
        return out;
    }

    /// Row-major copy of all symbols.
    std::vector<Symbol> cells() const
    {
        std::vector<Symbol> out;
        out.reserve(size_ * width_);
        for (std::size_t r = 0; r < size_; ++r)
            for (std::size_t c = 0; c < width_; ++c)
                out.push_back(at(r, c));
        return out;
    }

    RowMasks masks(std::size_t row) const
    {
        const std::size_t blocks = (width_ + 63) / 64;
        RowMasks m{std::vector<std::uint64_t>(blocks), std::vector<std::uint64_t>(blocks),
                   std::vector<std::uint64_t>(blocks)};
        for (std::size_t c = 0; c < width_; ++c) {
            const std::uint64_t bit = std::uint64_t{1} << (c % 64);
            switch (at(row, c)) {
            case 1: m.is1[c / 64] |= bit; break;
            case 2: m.is2[c / 64] |= bit; break;
            default: m.is3[c / 64] |= bit; break;
            }
        }
        return m;
    }

    /// Packed rows in sorted order: the canonical form under row permutation.
    std::vector<std::vector<std::uint64_t>> sorted_rows() const
    {
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(size_);
        for (std::size_t r = 0; r < size_; ++r) {
            const auto w = packed_row(r);
            rows.emplace_back(w.begin(), w.end());
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    }

    /// Set equality: same width and same rows regardless of order.
    friend bool operator==(const Puzzle &a, const Puzzle &b)
    {
        return a.width_ == b.width_ && a.size_ == b.size_ && a.sorted_rows() == b.sorted_rows();
    }

    /// Exact equality including row order.
    bool same_order(const Puzzle &other) const
    {
        return width_ == other.width_ && size_ == other.size_ && words_ == other.words_;
    }

private:
    Puzzle() = default;

    void set(std::size_t row, std::size_t col, Symbol sym) noexcept
    {
        std::uint64_t &word = words_[row * words_per_row_ + col / kSymbolsPerWord];
        const unsigned shift = 2 * (col % kSymbolsPerWord);
        word = (word & ~(std::uint64_t{3} << shift)) | (std::uint64_t{sym} << shift);
    }

    void require_distinct() const
    {
        const auto rows = sorted_rows();
        const auto dup = std::adjacent_find(rows.begin(), rows.end());
        if (dup != rows.end()) {
            for (std::size_t r = 0; r < size_; ++r)
                if (std::equal(dup->begin(), dup->end(), packed_row(r).begin()))
                    throw Error(Errc::DuplicateRow, "duplicate row " + row_string(r));
        }
    }

    std::size_t width_ = 0;
    std::size_t size_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Parses the text format: one row per line; blank lines and lines starting
/// with '#' are skipped. A trailing '\r' is tolerated.
inline Puzzle parse_puzzle(std::string_view text)
{
    std::vector<std::string> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!line.empty() && line.front() != '#')
            rows.emplace_back(line);
        pos = end + 1;
    }
    if (rows.empty())
        throw Error(Errc::Empty, "no puzzle rows in input");
    return Puzzle::from_strings(rows);
}

inline std::string serialize_puzzle(const Puzzle &p)
{
    std::string out;
    out.reserve(p.size() * (p.width() + 1));
    for (std::size_t r = 0; r < p.size(); ++r) {
        out += p.row_string(r);
        out += '\n';
    }
    return out;
}

/// Cartesian product: row r1*s2 + r2 is row r1 of `a` followed by row r2 of `b`.
inline Puzzle product(const Puzzle &a, const Puzzle &b, std::size_t max_rows = kDefaultMaxRows)
{
    if (a.size() != 0 && b.size() > max_rows / a.size())
        throw Error(Errc::SizeOverflow, "product would have " + std::to_string(a.size()) + "*" +
                                            std::to_string(b.size()) + " rows");
    const std::size_t width = a.width() + b.width();
    std::vector<Symbol> cells;
    cells.reserve(a.size() * b.size() * width);
    for (std::size_t r1 = 0; r1 < a.size(); ++r1)
        for (std::size_t r2 = 0; r2 < b.size(); ++r2) {
            for (std::size_t c = 0; c < a.width(); ++c)
                cells.push_back(a.at(r1, c));
            for (std::size_t c = 0; c < b.width(); ++c)
                cells.push_back(b.at(r2, c));
        }
    return Puzzle::from_cells(width, cells);
}

/// m-th Cartesian power, built left to right: power(P,m) = power(P,m-1) x P.
inline Puzzle power(const Puzzle &p, std::size_t m, std::size_t max_rows = kDefaultMaxRows)
{
    if (m == 0)
        throw Error(Errc::Empty, "power exponent must be at least 1");
    Puzzle out = p;
    for (std::size_t i = 1; i < m; ++i)
        out = product(out, p, max_rows);
    return out;
}

/// C_P = s^(1/k).
inline double capacity(const Puzzle &p)
{
    return std::pow(static_cast<double>(p.size()), 1.0 / static_cast<double>(p.width()));
}

/// The six column patterns that certify a row triple in a local SUSP.
inline constexpr std::array<std::array<Symbol, 3>, 6> kLocalTriples{{
    {1, 2, 1}, {1, 2, 2}, {1, 1, 3}, {1, 3, 3}, {2, 2, 3}, {3, 2, 3},
}};

/// Checks every ordered row triple (u,v,w), not all equal, for a column whose
/// symbol triple is one of kLocalTriples. O(s^3 k).
inline bool is_local_susp(const Puzzle &p)
{
    // 27-entry lookup indexed by the symbol triple.
    std::array<bool, 27> local{};
    for (const auto &t : kLocalTriples)
        local[(t[0] - 1) * 9 + (t[1] - 1) * 3 + (t[2] - 1)] = true;

    const std::size_t s = p.size();
    const std::size_t k = p.width();
    const auto cells = p.cells();
    for (std::size_t u = 0; u < s; ++u)
        for (std::size_t v = 0; v < s; ++v)
            for (std::size_t w = 0; w < s; ++w) {
                if (u == v && v == w)
                    continue;
                bool found = false;
                for (std::size_t c = 0; c < k && !found; ++c)
                    found = local[(cells[u * k + c] - 1) * 9 + (cells[v * k + c] - 1) * 3 +
                                  (cells[w * k + c] - 1)];
                if (!found)
                    return false;
            }
    return true;
}

} // namespace susp
