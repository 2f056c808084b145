// simplify.hpp -- fixed-point simplification of H_P and its witnesses

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "susp/bipartite_filter.hpp"
#include "susp/error.hpp"
#include "susp/graph3d.hpp"
#include "susp/puzzle.hpp"

namespace susp {

struct TraceStep {
    int face = 0;
    /// Face edges deleted at this step, ascending.
    std::vector<Edge2D> edges;

    friend bool operator==(const TraceStep &, const TraceStep &) = default;
};

struct SimplificationTrace {
    std::vector<TraceStep> steps;
    std::size_t initial_edge_count = 0;
    std::size_t final_edge_count = 0;
    bool reached_trivial = false;

    friend bool operator==(const SimplificationTrace &, const SimplificationTrace &) = default;
};

namespace detail {

/// H together with per-face multiplicity counters: counts[f][a*n + b] is the
/// number of 3D edges projecting onto face-f edge (a,b). Deleting a 3D edge
/// decrements the two faces it does not come from, so projections stay exact
/// without recomputation.
class IncrementalFaces {
public:
    explicit IncrementalFaces(Graph3D h) : h_(std::move(h)), n_(h_.n())
    {
        for (auto &c : counts_)
            c.assign(n_ * n_, 0);
        h_.for_each_edge([&](std::size_t u, std::size_t v, std::size_t w) {
            ++counts_[0][v * n_ + w];
            ++counts_[1][u * n_ + w];
            ++counts_[2][u * n_ + v];
        });
    }

    const Graph3D &graph() const noexcept { return h_; }
    Graph3D release() && { return std::move(h_); }

    Graph2D face(int f) const
    {
        Graph2D g(n_);
        const auto &c = counts_[f];
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (c[a * n_ + b])
                    g.insert(a, b);
        return g;
    }

    /// Deletes every 3D edge projecting onto face-f edge (a,b).
    void remove(int f, std::size_t a, std::size_t b)
    {
        const std::size_t n = n_;
        switch (f) {
        case 0: // (*, a, b)
            for (std::size_t u = 0; u < n; ++u)
                if (h_.erase(u, a, b)) {
                    --counts_[1][u * n + b];
                    --counts_[2][u * n + a];
                }
            break;
        case 1: // (a, *, b)
            for (std::size_t v = 0; v < n; ++v)
                if (h_.erase(a, v, b)) {
                    --counts_[0][v * n + b];
                    --counts_[2][a * n + v];
                }
            break;
        default: // (a, b, *)
            for (std::size_t w = 0; w < n; ++w)
                if (h_.erase(a, b, w)) {
                    --counts_[0][b * n + w];
                    --counts_[1][a * n + w];
                }
            break;
        }
        counts_[f][a * n + b] = 0;
    }

private:
    Graph3D h_;
    std::size_t n_;
    std::array<std::vector<std::uint32_t>, 3> counts_;
};

} // namespace detail

struct SimplifyResult {
    Graph3D graph;
    SimplificationTrace trace;
};

/// Complete simplification of `h`. Faces are visited 0,1,2,0,... ; on each
/// visit the edges of the current projection lying in no perfect matching are
/// deleted (with every 3D edge above them). Stops after three consecutive
/// visits delete nothing. The result has the same perfect matchings as `h`.
inline SimplifyResult simplify(Graph3D h)
{
    SimplifyResult out;
    out.trace.initial_edge_count = h.edge_count();
    detail::IncrementalFaces faces(std::move(h));

    int face = 0;
    int since_change = 0;
    while (since_change < 3) {
        auto edges = removable_edges(faces.face(face));
        if (edges.empty()) {
            ++since_change;
        } else {
            since_change = 0;
            for (const auto &[a, b] : edges)
                faces.remove(face, a, b);
            out.trace.steps.push_back({face, std::move(edges)});
        }
        face = (face + 1) % 3;
    }

    out.graph = std::move(faces).release();
    out.trace.final_edge_count = out.graph.edge_count();
    out.trace.reached_trivial = is_trivial_matching(out.graph);
    return out;
}

struct SimplifiableCheck {
    bool simplifiable = false;
    SimplificationTrace trace;

    explicit operator bool() const noexcept { return simplifiable; }
};

/// Polynomial-time verifier: builds H_P, simplifies, tests for the trivial
/// matching.
inline SimplifiableCheck is_simplifiable_susp(const Puzzle &p)
{
    auto result = simplify(build_h(p));
    return {result.trace.reached_trivial, std::move(result.trace)};
}

/// s^3 - |E(Simplify(H_P))|; equals s^3 - s exactly for simplifiable SUSPs.
inline std::uint64_t fitness(const Puzzle &p)
{
    if (p.empty())
        return 0;
    const std::uint64_t s = p.size();
    return s * s * s - simplify(build_h(p)).graph.edge_count();
}

inline std::uint64_t max_fitness(std::size_t rows) noexcept
{
    const std::uint64_t s = rows;
    return s * s * s - s;
}

enum class ReplayMode {
    /// Every deleted edge must join two SCCs of the face at that step.
    Strict,
    /// Every deleted edge (a,b) must have no path b -> a in the face, so that
    /// the set reachable from b isolates it by a one-sided cut. Checked by
    /// breadth-first search, independent of the SCC code.
    Reachability,
};

struct TraceCheck {
    bool ok = false;
    std::optional<std::size_t> failed_step;
    std::string reason;
    std::size_t final_edge_count = 0;

    explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline bool reaches(const Graph2D &g, std::size_t from, std::size_t to)
{
    std::vector<bool> seen(g.n(), false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        if (x == to)
            return true;
        g.for_each_successor(x, [&](std::size_t y) {
            if (!seen[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        });
    }
    return false;
}

} // namespace detail

/// Replays `trace` against H_P. Succeeds iff every step is a legal
/// simplification at the point it is applied, the replay ends at the trivial
/// matching, and the trace's `reached_trivial` claim agrees.
inline TraceCheck verify_trace(const Puzzle &p, const SimplificationTrace &trace,
                               ReplayMode mode = ReplayMode::Strict)
{
    TraceCheck check;
    detail::IncrementalFaces faces(build_h(p));
    const std::size_t n = p.size();

    auto fail = [&](std::size_t step, std::string reason) {
        check.ok = false;
        check.failed_step = step;
        check.reason = std::move(reason);
        check.final_edge_count = faces.graph().edge_count();
        return check;
    };

    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep &step = trace.steps[i];
        if (step.face < 0 || step.face > 2)
            return fail(i, "face index out of range");
        if (step.edges.empty())
            return fail(i, "step deletes no edges");
        const Graph2D g = faces.face(step.face);
        std::optional<SccPartition> scc;
        if (mode == ReplayMode::Strict)
            scc = scc_decompose(g);
        for (std::size_t e = 0; e < step.edges.size(); ++e) {
            const auto [a, b] = step.edges[e];
            if (a >= n || b >= n)
                return fail(i, "vertex index out of range");
            if (e > 0 && !(step.edges[e - 1] < step.edges[e]))
                return fail(i, "edges not strictly ascending");
            if (!g.contains(a, b))
                return fail(i, "edge " + std::to_string(a) + "," + std::to_string(b) +
                                   " absent from face");
            const bool removable = mode == ReplayMode::Strict
                                       ? scc->component_id[a] != scc->component_id[b]
                                       : !detail::reaches(g, b, a);
            if (!removable)
                return fail(i, "edge " + std::to_string(a) + "," + std::to_string(b) +
                                   " may lie in a perfect matching");
        }
        for (const auto &[a, b] : step.edges)
            faces.remove(step.face, a, b);
    }

    const bool trivial = is_trivial_matching(faces.graph());
    check.final_edge_count = faces.graph().edge_count();
    if (trivial != trace.reached_trivial) {
        check.failed_step = trace.steps.size();
        check.reason = "replay does not match the trace's trivial flag";
        return check;
    }
    if (!trivial) {
        check.failed_step = trace.steps.size();
        check.reason = "replay does not end at the trivial matching";
        return check;
    }
    check.ok = true;
    return check;
}

// ---------------------------------------------------------------------------
// Witness files
//
//   susp-witness v1
//   <puzzle rows, one per line>
//   face:<f> edges:<a1,b1;a2,b2;...>     (one line per step)
//   trivial:<true|false>
// ---------------------------------------------------------------------------

inline constexpr std::string_view kWitnessHeader = "susp-witness v1";

struct Witness {
    Puzzle puzzle;
    SimplificationTrace trace;
};

inline std::string write_witness(const Puzzle &p, const SimplificationTrace &trace)
{
    std::string out;
    out += kWitnessHeader;
    out += '\n';
    out += serialize_puzzle(p);
    for (const auto &step : trace.steps) {
        out += "face:" + std::to_string(step.face) + " edges:";
        for (std::size_t e = 0; e < step.edges.size(); ++e) {
            if (e)
                out += ';';
            out += std::to_string(step.edges[e].first) + ',' + std::to_string(step.edges[e].second);
        }
        out += '\n';
    }
    out += trace.reached_trivial ? "trivial:true\n" : "trivial:false\n";
    return out;
}

namespace detail {

inline std::size_t parse_index(std::string_view text, std::size_t line_no)
{
    if (text.empty() || text.size() > 9)
        throw Error(Errc::BadFormat, "bad vertex index on line " + std::to_string(line_no));
    std::size_t value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw Error(Errc::BadFormat, "bad vertex index on line " + std::to_string(line_no));
        value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    return value;
}

} // namespace detail

/// Parses a witness file. The step counts and trivial flag are taken as
/// claims; use verify_trace to check them.
inline Witness parse_witness(std::string_view text)
{
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        pos = end + 1;
    }
    if (lines.empty() || lines[0] != kWitnessHeader)
        throw Error(Errc::BadFormat, "missing witness header");

    std::size_t i = 1;
    std::string puzzle_text;
    for (; i < lines.size() && !lines[i].starts_with("face:") && !lines[i].starts_with("trivial:"); ++i) {
        puzzle_text += lines[i];
        puzzle_text += '\n';
    }
    Witness w{parse_puzzle(puzzle_text), {}};

    for (; i < lines.size() && lines[i].starts_with("face:"); ++i) {
        const std::string_view line = lines[i];
        const std::size_t sep = line.find(" edges:");
        if (sep == std::string_view::npos || sep != 6)
            throw Error(Errc::BadFormat, "malformed step on line " + std::to_string(i + 1));
        TraceStep step;
        const char f = line[5];
        if (f < '0' || f > '2')
            throw Error(Errc::BadFormat, "bad face on line " + std::to_string(i + 1));
        step.face = f - '0';
        std::string_view rest = line.substr(sep + 7);
        while (!rest.empty()) {
            const std::size_t semi = rest.find(';');
            const std::string_view pair = rest.substr(0, semi);
            const std::size_t comma = pair.find(',');
            if (comma == std::string_view::npos)
                throw Error(Errc::BadFormat, "malformed edge on line " + std::to_string(i + 1));
            step.edges.emplace_back(detail::parse_index(pair.substr(0, comma), i + 1),
                                    detail::parse_index(pair.substr(comma + 1), i + 1));
            if (semi == std::string_view::npos)
                break;
            rest = rest.substr(semi + 1);
            if (rest.empty())
                throw Error(Errc::BadFormat, "trailing ';' on line " + std::to_string(i + 1));
        }
        w.trace.steps.push_back(std::move(step));
    }

    if (i >= lines.size())
        throw Error(Errc::BadFormat, "missing trivial footer");
    if (lines[i] == "trivial:true")
        w.trace.reached_trivial = true;
    else if (lines[i] == "trivial:false")
        w.trace.reached_trivial = false;
    else
        throw Error(Errc::BadFormat, "bad footer on line " + std::to_string(i + 1));
    for (++i; i < lines.size(); ++i)
        if (!lines[i].empty())
            throw Error(Errc::BadFormat, "content after footer on line " + std::to_string(i + 1));
    return w;
}

} // namespace susp
