// commands.hpp -- subcommand bodies for the `susp` tool
//
// Each command reads its inputs, calls into the library, writes a report to
// `out` (diagnostics to `err`) and returns the process exit status.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "susp/susp.hpp"

namespace susp::cli {

/// Process exit codes; stable across releases.
enum class ExitStatus : int {
    Holds = 0,
    Fails = 1,
    UsageError = 2,
    OracleCapExceeded = 3,
};

inline int code(ExitStatus s) noexcept { return static_cast<int>(s); }

inline std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::BadFormat, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::BadFormat, "cannot write " + path.string());
    out << text;
}

inline Puzzle load_puzzle(const std::filesystem::path &path) { return parse_puzzle(read_file(path)); }

/// Maps a library error onto an exit status and reports it.
inline ExitStatus report_error(const Error &e, std::ostream &err)
{
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::OracleCapExceeded ? ExitStatus::OracleCapExceeded : ExitStatus::UsageError;
}

class Stopwatch {
public:
    double millis() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

enum class VerifyMode { Simplifiable, Local, Brute, Definition };

struct VerifyOptions {
    std::optional<std::filesystem::path> puzzle_file;
    VerifyMode mode = VerifyMode::Simplifiable;
    std::optional<std::filesystem::path> witness_out;
    /// Check an existing witness instead of running a verifier.
    std::optional<std::filesystem::path> witness_in;
    std::size_t oracle_cap = 0; // 0: the oracle's default
};

inline ExitStatus cmd_verify(const VerifyOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        Stopwatch clock;
        if (opt.witness_in) {
            const Witness w = parse_witness(read_file(*opt.witness_in));
            if (opt.puzzle_file && !(load_puzzle(*opt.puzzle_file) == w.puzzle)) {
                out << "witness: puzzle differs from " << opt.puzzle_file->string() << '\n';
                return ExitStatus::Fails;
            }
            const TraceCheck check = verify_trace(w.puzzle, w.trace);
            if (check) {
                out << "witness: valid (s=" << w.puzzle.size() << ", k=" << w.puzzle.width()
                    << ", steps=" << w.trace.steps.size() << ", " << clock.millis() << " ms)\n";
                return ExitStatus::Holds;
            }
            out << "witness: invalid at step " << check.failed_step.value_or(0) << ": " << check.reason
                << '\n';
            return ExitStatus::Fails;
        }

        if (!opt.puzzle_file) {
            err << "error: a puzzle file is required\n";
            return ExitStatus::UsageError;
        }
        const Puzzle p = load_puzzle(*opt.puzzle_file);
        bool holds = false;
        std::string label;
        switch (opt.mode) {
        case VerifyMode::Simplifiable: {
            auto check = is_simplifiable_susp(p);
            holds = check.simplifiable;
            label = "simplifiable SUSP";
            if (opt.witness_out)
                write_file(*opt.witness_out, write_witness(p, check.trace));
            break;
        }
        case VerifyMode::Local:
            holds = is_local_susp(p);
            label = "local SUSP";
            break;
        case VerifyMode::Brute:
            holds = opt.oracle_cap ? is_susp_by_matching(p, opt.oracle_cap) : is_susp_by_matching(p);
            label = "SUSP (matching oracle)";
            break;
        case VerifyMode::Definition:
            holds = opt.oracle_cap ? is_susp_by_definition(p, opt.oracle_cap) : is_susp_by_definition(p);
            label = "SUSP (definition oracle)";
            break;
        }
        out << label << ": " << (holds ? "yes" : "no") << " (s=" << p.size()
            << ", k=" << p.width() << ", " << std::fixed << std::setprecision(2) << clock.millis()
            << " ms)\n";
        out.unsetf(std::ios::fixed);
        return holds ? ExitStatus::Holds : ExitStatus::Fails;
    } catch (const Error &e) {
        return report_error(e, err);
    }
}

// ---------------------------------------------------------------------------
// simplify
// ---------------------------------------------------------------------------

struct SimplifyOptions {
    std::filesystem::path puzzle_file;
    std::optional<std::filesystem::path> witness_out;
};

inline ExitStatus cmd_simplify(const SimplifyOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        const Puzzle p = load_puzzle(opt.puzzle_file);
        const auto result = simplify(build_h(p));
        const std::uint64_t s = p.size();
        nlohmann::json j{
            {"s", p.size()},
            {"k", p.width()},
            {"initial_edges", result.trace.initial_edge_count},
            {"final_edges", result.trace.final_edge_count},
            {"fitness", s * s * s - result.trace.final_edge_count},
            {"max_fitness", max_fitness(p.size())},
            {"steps", result.trace.steps.size()},
            {"trivial", result.trace.reached_trivial},
        };
        out << j.dump() << '\n';
        if (opt.witness_out)
            write_file(*opt.witness_out, write_witness(p, result.trace));
        return result.trace.reached_trivial ? ExitStatus::Holds : ExitStatus::Fails;
    } catch (const Error &e) {
        return report_error(e, err);
    }
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const OmegaBound &b)
{
    nlohmann::json j{
        {"omega", b.omega},
        {"m", b.m},
        {"variant", std::string(to_string(b.variant))},
        {"s", nullptr},
        {"k", nullptr},
        {"at_cap", b.at_cap},
    };
    if (b.s != 0) {
        j["s"] = b.s;
        j["k"] = b.k;
    }
    return j;
}

struct BoundOptions {
    std::uint64_t s = 0;
    std::uint64_t k = 0;
    BoundVariant variant = BoundVariant::Capacity;
    /// Evaluate the family bound at this capacity instead of (s,k).
    std::optional<double> capacity;
};

inline ExitStatus cmd_bound(const BoundOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        OmegaBound b;
        if (opt.capacity)
            b = omega_from_capacity(*opt.capacity);
        else if (opt.variant == BoundVariant::Capacity)
            b = omega_capacity(opt.s, opt.k);
        else
            b = omega_single(opt.s, opt.k);
        out << to_json(b).dump() << '\n';
        return ExitStatus::Holds;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return ExitStatus::UsageError;
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

/// Expected size and rounded bound for each width covered by the shipped
/// fixtures. Width 12 is the square of the width-6 fixture.
struct TableTarget {
    std::size_t k;
    std::size_t s;
    double omega;
    int decimals;
};

inline const std::vector<TableTarget> &table_targets()
{
    static const std::vector<TableTarget> targets{
        {1, 1, 3.00, 2},   {2, 2, 2.67, 2},   {3, 3, 2.65, 2},   {4, 5, 2.59, 2},
        {5, 8, 2.57, 2},   {6, 14, 2.52, 2},  {7, 23, 2.505, 3}, {8, 35, 2.52, 2},
        {9, 52, 2.53, 2},  {10, 78, 2.53, 2}, {12, 196, 2.52, 2},
    };
    return targets;
}

inline constexpr double kTableTolerance = 0.005;

struct TableRow {
    std::size_t k = 0;
    std::size_t s = 0;
    bool fixture_found = false;
    bool simplifiable = false;
    OmegaBound bound;
    double rounded = 0;
    double expected = 0;
    bool bound_matches = false;
    double millis = 0;

    bool ok() const noexcept { return fixture_found && simplifiable && bound_matches; }
};

inline std::vector<TableRow> build_table(const std::filesystem::path &dir)
{
    std::vector<TableRow> rows;
    for (const TableTarget &t : table_targets()) {
        TableRow row;
        row.k = t.k;
        row.s = t.s;
        row.expected = t.omega;
        Stopwatch clock;
        std::optional<Puzzle> p;
        const auto direct = dir / ("susp_" + std::to_string(t.s) + "_" + std::to_string(t.k) + ".txt");
        const auto base = dir / "susp_14_6.txt";
        try {
            if (std::filesystem::exists(direct))
                p = load_puzzle(direct);
            else if (t.k == 12 && std::filesystem::exists(base))
                p = power(load_puzzle(base), 2);
        } catch (const Error &) {
            p.reset();
        }
        if (p && p->size() == t.s && p->width() == t.k) {
            row.fixture_found = true;
            row.simplifiable = is_simplifiable_susp(*p).simplifiable;
        }
        row.bound = omega_capacity(t.s, t.k);
        row.rounded = round_bound_up(row.bound.omega, t.decimals);
        row.bound_matches = std::abs(row.rounded - t.omega) <= kTableTolerance;
        row.millis = clock.millis();
        rows.push_back(row);
    }
    return rows;
}

struct TableOptions {
    std::filesystem::path fixtures_dir = "fixtures";
    bool json = false;
};

inline ExitStatus cmd_table(const TableOptions &opt, std::ostream &out, std::ostream &err)
{
    if (!std::filesystem::is_directory(opt.fixtures_dir)) {
        err << "error: not a directory: " << opt.fixtures_dir.string() << '\n';
        return ExitStatus::UsageError;
    }
    const auto rows = build_table(opt.fixtures_dir);
    bool all_ok = true;
    if (opt.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto &r : rows) {
            j.push_back({{"k", r.k},
                         {"s", r.s},
                         {"fixture_found", r.fixture_found},
                         {"simplifiable", r.simplifiable},
                         {"omega", r.bound.omega},
                         {"m", r.bound.m},
                         {"at_cap", r.bound.at_cap},
                         {"rounded", r.rounded},
                         {"expected", r.expected},
                         {"ok", r.ok()}});
            all_ok = all_ok && r.ok();
        }
        out << j.dump(2) << '\n';
    } else {
        out << "  k     s  simplifiable       omega        m  rounded  expected  status\n";
        for (const auto &r : rows) {
            all_ok = all_ok && r.ok();
            out << std::setw(3) << r.k << std::setw(6) << r.s << std::setw(14)
                << (r.fixture_found ? (r.simplifiable ? "yes" : "NO") : "missing") << std::setw(12)
                << std::fixed << std::setprecision(6) << r.bound.omega << std::setw(9) << r.bound.m
                << (r.bound.at_cap ? "+" : " ") << std::setw(8) << std::setprecision(3) << r.rounded
                << std::setw(10) << r.expected << "  " << (r.ok() ? "ok" : "MISMATCH") << '\n';
        }
        out.unsetf(std::ios::fixed);
        out << "bounds are rounded up to the printed precision; '+' marks a scan that hit the m cap\n";
    }
    return all_ok ? ExitStatus::Holds : ExitStatus::Fails;
}

// ---------------------------------------------------------------------------
// product
// ---------------------------------------------------------------------------

struct ProductOptions {
    std::filesystem::path left;
    std::filesystem::path right;
    std::optional<std::filesystem::path> output;
    bool verify = false;
};

inline ExitStatus cmd_product(const ProductOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        const Puzzle p = product(load_puzzle(opt.left), load_puzzle(opt.right));
        const std::string text = serialize_puzzle(p);
        if (opt.output)
            write_file(*opt.output, text);
        else
            out << text;
        err << "product: " << p.size() << " rows, width " << p.width() << '\n';
        if (opt.verify) {
            const bool ok = is_simplifiable_susp(p).simplifiable;
            err << "product is " << (ok ? "" : "not ") << "a simplifiable SUSP\n";
            return ok ? ExitStatus::Holds : ExitStatus::Fails;
        }
        return ExitStatus::Holds;
    } catch (const Error &e) {
        return report_error(e, err);
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

struct SearchOptions {
    SearchConfig config;
    std::optional<std::filesystem::path> prime_file;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> log_file;
    std::optional<std::filesystem::path> checkpoint_out;
    std::optional<std::filesystem::path> resume_from;
    /// Run with no budget until the frontier empties and report the largest
    /// size found. Only sensible for tiny widths.
    bool exhaustive_smoke = false;
};

inline constexpr std::size_t kMaxExhaustiveWidth = 3;

inline ExitStatus cmd_search(SearchOptions opt, std::ostream &out, std::ostream &err)
{
    try {
        if (opt.prime_file)
            opt.config.prime = load_puzzle(*opt.prime_file);
        if (opt.exhaustive_smoke) {
            if (opt.config.width > kMaxExhaustiveWidth) {
                err << "error: --exhaustive-smoke supports widths up to " << kMaxExhaustiveWidth << '\n';
                return ExitStatus::UsageError;
            }
            opt.config.max_steps.reset();
            opt.config.max_seconds.reset();
            opt.config.max_frontier = std::numeric_limits<std::size_t>::max();
        }
        opt.config.validate();

        std::optional<std::ofstream> log;
        if (opt.log_file) {
            log.emplace(*opt.log_file, std::ios::binary);
            if (!*log)
                throw Error(Errc::BadFormat, "cannot write " + opt.log_file->string());
        }
        if (opt.out_dir)
            std::filesystem::create_directories(*opt.out_dir);

        std::optional<IteratedLocalSearch> search;
        if (opt.resume_from) {
            std::ifstream in(*opt.resume_from, std::ios::binary);
            if (!in)
                throw Error(Errc::BadFormat, "cannot open " + opt.resume_from->string());
            search.emplace(IteratedLocalSearch::resume(opt.config, in));
        } else {
            search.emplace(opt.config);
        }

        Stopwatch clock;
        const auto result = search->run([&](const Emission &e) {
            const std::string record = format_emission(e);
            out << record << std::flush;
            if (log)
                *log << record << std::flush;
            if (opt.out_dir) {
                const std::string stem =
                    "susp_" + std::to_string(e.puzzle.size()) + "_" + std::to_string(e.puzzle.width());
                write_file(*opt.out_dir / (stem + ".txt"), serialize_puzzle(e.puzzle));
                write_file(*opt.out_dir / (stem + ".witness"), write_witness(e.puzzle, e.trace));
            }
            err << "found size " << e.puzzle.size() << " after " << e.step << " steps ("
                << std::fixed << std::setprecision(1) << clock.millis() / 1000.0 << " s)\n";
            err.unsetf(std::ios::fixed);
            return true;
        });

        if (opt.checkpoint_out) {
            std::ofstream cp(*opt.checkpoint_out, std::ios::binary);
            search->save_checkpoint(cp);
        }
        err << "search " << to_string(result.status) << ": " << result.steps << " steps, "
            << result.emitted << " found, frontier " << search->frontier().size() << ", seen "
            << search->frontier().seen_count() << '\n';
        if (opt.exhaustive_smoke)
            out << "best size found = " << result.best_size << '\n';
        return ExitStatus::Holds;
    } catch (const Error &e) {
        return report_error(e, err);
    }
}

} // namespace susp::cli
