// search.hpp -- iterated local search for large simplifiable SUSPs at fixed width

#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "susp/error.hpp"
#include "susp/puzzle.hpp"
#include "susp/simplify.hpp"

namespace susp {

// ---------------------------------------------------------------------------
// Digests
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Width, row count, then the sorted packed rows: equal keys iff equal sets.
inline std::vector<std::uint64_t> canonical_key(const Puzzle &p)
{
    std::vector<std::uint64_t> key{p.width(), p.size()};
    for (const auto &row : p.sorted_rows())
        key.insert(key.end(), row.begin(), row.end());
    return key;
}

inline std::uint64_t digest_of_key(const std::vector<std::uint64_t> &key) noexcept
{
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t word : key)
        h = mix64(h ^ word);
    return h;
}

} // namespace detail

/// 64-bit digest of the sorted row set; invariant under row order and stable
/// across runs and platforms.
inline std::uint64_t puzzle_digest(const Puzzle &p)
{
    return detail::digest_of_key(detail::canonical_key(p));
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Relative use of each move kind. A weight of zero disables the kind. Cell
/// changes and line relabelings are enumerated exhaustively when enabled; for
/// random line replacement the weight is the expected number of samples per
/// row and per column.
struct MoveWeights {
    double cell = 1.0;
    double permute = 1.0;
    double replace = 1.0;
};

struct SearchConfig {
    std::size_t width = 0;
    std::uint64_t seed = 0;
    std::size_t max_frontier = std::size_t{1} << 20;
    std::optional<std::uint64_t> max_steps;
    std::optional<double> max_seconds;
    MoveWeights move_weights;
    std::size_t extension_cap = std::size_t{1} << 16;
    unsigned threads = 1;
    std::optional<Puzzle> prime;

    void validate() const
    {
        if (width == 0)
            throw Error(Errc::BadFormat, "search width must be positive");
        if (max_frontier == 0)
            throw Error(Errc::BadFormat, "max_frontier must be positive");
        if (extension_cap == 0)
            throw Error(Errc::BadFormat, "extension_cap must be positive");
        const auto &w = move_weights;
        if (w.cell < 0 || w.permute < 0 || w.replace < 0 || (w.cell + w.permute + w.replace) <= 0)
            throw Error(Errc::BadFormat, "move weights must be nonnegative and not all zero");
        if (prime && prime->width() != width)
            throw Error(Errc::MixedWidth, "primed puzzle width differs from the search width");
    }
};

// ---------------------------------------------------------------------------
// Random numbers
// ---------------------------------------------------------------------------

/// mt19937_64 has a fully specified output sequence; bounded draws are done
/// here rather than through std::uniform_int_distribution, whose algorithm is
/// implementation-defined, so runs replay identically on every platform.
class SearchRng {
public:
    explicit SearchRng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Symbol symbol() { return static_cast<Symbol>(1 + below(3)); }

    friend std::ostream &operator<<(std::ostream &os, const SearchRng &r) { return os << r.engine_; }
    friend std::istream &operator>>(std::istream &is, SearchRng &r) { return is >> r.engine_; }

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

/// The five non-identity permutations of {1,2,3}, as images of 1, 2, 3.
inline constexpr std::array<std::array<Symbol, 3>, 5> kSymbolPermutations{{
    {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
}};

namespace detail {

inline bool rows_distinct(const std::vector<Symbol> &cells, std::size_t s, std::size_t k)
{
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i)
        idx[i] = i;
    auto row = [&](std::size_t r) { return cells.begin() + static_cast<std::ptrdiff_t>(r * k); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(k), row(b),
                                            row(b) + static_cast<std::ptrdiff_t>(k));
    });
    for (std::size_t i = 1; i < s; ++i)
        if (std::equal(row(idx[i - 1]), row(idx[i - 1]) + static_cast<std::ptrdiff_t>(k), row(idx[i])))
            return false;
    return true;
}

/// True iff row r differs from every other row.
inline bool row_unique(const std::vector<Symbol> &cells, std::size_t s, std::size_t k, std::size_t r)
{
    const auto mine = cells.begin() + static_cast<std::ptrdiff_t>(r * k);
    for (std::size_t o = 0; o < s; ++o)
        if (o != r && std::equal(mine, mine + static_cast<std::ptrdiff_t>(k),
                                 cells.begin() + static_cast<std::ptrdiff_t>(o * k)))
            return false;
    return true;
}

/// Number of samples for a fractional weight: floor(w) plus one more with
/// probability frac(w).
inline std::size_t sample_count(double weight, SearchRng &rng)
{
    const double whole = std::floor(weight);
    std::size_t count = static_cast<std::size_t>(whole);
    if (weight > whole && rng.unit() < weight - whole)
        ++count;
    return count;
}

} // namespace detail

/// Local modifications of `p`, in a fixed order: every single-cell change,
/// then every non-identity symbol relabeling of each column and each row,
/// then random replacements of rows and columns. Candidates with repeated
/// rows are dropped.
inline std::vector<Puzzle> neighbors(const Puzzle &p, SearchRng &rng, const MoveWeights &weights = {})
{
    const std::size_t s = p.size();
    const std::size_t k = p.width();
    const std::vector<Symbol> base = p.cells();
    std::vector<Puzzle> out;
    std::vector<Symbol> cells;

    if (weights.cell > 0)
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = 0; c < k; ++c)
                for (Symbol sym = 1; sym <= 3; ++sym) {
                    if (sym == base[r * k + c])
                        continue;
                    cells = base;
                    cells[r * k + c] = sym;
                    if (detail::row_unique(cells, s, k, r))
                        out.push_back(Puzzle::from_cells(k, cells));
                }

    if (weights.permute > 0) {
        for (std::size_t c = 0; c < k; ++c)
            for (const auto &perm : kSymbolPermutations) {
                cells = base;
                for (std::size_t r = 0; r < s; ++r)
                    cells[r * k + c] = perm[cells[r * k + c] - 1];
                if (detail::rows_distinct(cells, s, k))
                    out.push_back(Puzzle::from_cells(k, cells));
            }
        for (std::size_t r = 0; r < s; ++r)
            for (const auto &perm : kSymbolPermutations) {
                cells = base;
                for (std::size_t c = 0; c < k; ++c)
                    cells[r * k + c] = perm[cells[r * k + c] - 1];
                if (detail::row_unique(cells, s, k, r))
                    out.push_back(Puzzle::from_cells(k, cells));
            }
    }

    if (weights.replace > 0) {
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t n = detail::sample_count(weights.replace, rng); n > 0; --n) {
                cells = base;
                for (std::size_t c = 0; c < k; ++c)
                    cells[r * k + c] = rng.symbol();
                if (detail::row_unique(cells, s, k, r))
                    out.push_back(Puzzle::from_cells(k, cells));
            }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t n = detail::sample_count(weights.replace, rng); n > 0; --n) {
                cells = base;
                for (std::size_t r = 0; r < s; ++r)
                    cells[r * k + c] = rng.symbol();
                if (detail::rows_distinct(cells, s, k))
                    out.push_back(Puzzle::from_cells(k, cells));
            }
    }
    return out;
}

/// The (s+1)-row puzzles having `p` as their first s rows. All 3^k new rows
/// (in lexicographic order) when 3^k <= cap, otherwise `cap` distinct rows
/// drawn from `rng`.
inline std::vector<Puzzle> extensions(const Puzzle &p, std::size_t cap, SearchRng &rng)
{
    const std::size_t k = p.width();
    const std::size_t s = p.size();
    std::unordered_set<std::string> existing;
    for (std::size_t r = 0; r < s; ++r)
        existing.insert(p.row_string(r));

    std::uint64_t total = 1;
    bool exhaustive = true;
    for (std::size_t i = 0; i < k && exhaustive; ++i) {
        total *= 3;
        exhaustive = total <= cap;
    }

    std::vector<Symbol> cells = p.cells();
    cells.resize((s + 1) * k);
    std::vector<Puzzle> out;
    auto emit = [&](const std::string &row) {
        for (std::size_t c = 0; c < k; ++c)
            cells[s * k + c] = static_cast<Symbol>(row[c] - '0');
        out.push_back(Puzzle::from_cells(k, cells));
    };

    if (exhaustive) {
        std::string row(k, '1');
        for (std::uint64_t i = 0; i < total; ++i) {
            if (!existing.contains(row))
                emit(row);
            for (std::size_t c = k; c-- > 0;) {
                if (row[c] != '3') {
                    ++row[c];
                    break;
                }
                row[c] = '1';
            }
        }
        return out;
    }

    std::unordered_set<std::string> drawn;
    std::string row(k, '1');
    // 3^k > cap >= s + cap here, so rejection sampling always terminates.
    while (out.size() < cap) {
        for (std::size_t c = 0; c < k; ++c)
            row[c] = static_cast<char>('0' + rng.symbol());
        if (existing.contains(row) || !drawn.insert(row).second)
            continue;
        emit(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frontier
// ---------------------------------------------------------------------------

/// Priority queue of puzzles by fitness (highest first, ties in insertion
/// order) with a seen-set so no puzzle enters twice. When over capacity the
/// lowest-fitness entry is dropped.
class Frontier {
public:
    struct Entry {
        std::uint64_t fitness;
        std::uint64_t seq;
        Puzzle puzzle;
    };

    explicit Frontier(std::size_t max_size = std::size_t{1} << 20) : max_size_(max_size) {}

    /// Records `p` as examined. Returns false if it had been seen already.
    bool mark_seen(const Puzzle &p)
    {
        auto key = detail::canonical_key(p);
        const std::uint64_t digest = detail::digest_of_key(key);
        if (digest_only_.contains(digest))
            return false;
        auto &bucket = seen_[digest];
        for (const auto &other : bucket)
            if (other == key)
                return false;
        if (!bucket.empty())
            ++collisions_;
        bucket.push_back(std::move(key));
        ++seen_count_;
        return true;
    }

    bool seen(const Puzzle &p) const
    {
        const auto key = detail::canonical_key(p);
        const std::uint64_t digest = detail::digest_of_key(key);
        if (digest_only_.contains(digest))
            return true;
        const auto it = seen_.find(digest);
        return it != seen_.end() && std::find(it->second.begin(), it->second.end(), key) != it->second.end();
    }

    void push(Puzzle p, std::uint64_t fitness)
    {
        queue_.insert(Entry{fitness, next_seq_++, std::move(p)});
        if (queue_.size() > max_size_)
            queue_.erase(std::prev(queue_.end()));
    }

    std::optional<Entry> pop_best()
    {
        if (queue_.empty())
            return std::nullopt;
        auto node = queue_.extract(queue_.begin());
        return std::move(node.value());
    }

    /// Empties the queue; the seen-set is kept.
    void clear() { queue_.clear(); }

    std::size_t size() const noexcept { return queue_.size(); }
    bool empty() const noexcept { return queue_.empty(); }
    std::size_t max_size() const noexcept { return max_size_; }
    std::size_t seen_count() const noexcept { return seen_count_ + digest_only_.size(); }
    /// Distinct puzzles that shared a digest with an earlier one.
    std::size_t digest_collisions() const noexcept { return collisions_; }

    std::optional<std::uint64_t> lowest_fitness() const
    {
        if (queue_.empty())
            return std::nullopt;
        return std::prev(queue_.end())->fitness;
    }

    template <class Fn>
    void for_each_entry(Fn &&fn) const
    {
        for (const Entry &e : queue_)
            fn(e);
    }

    std::vector<std::uint64_t> seen_digests() const
    {
        std::vector<std::uint64_t> out(digest_only_.begin(), digest_only_.end());
        for (const auto &[digest, bucket] : seen_)
            out.push_back(digest);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint64_t next_seq() const noexcept { return next_seq_; }

    /// Checkpoint restore: entries keep their original sequence numbers;
    /// seen puzzles are known only by digest.
    void restore(std::vector<Entry> entries, std::vector<std::uint64_t> digests, std::uint64_t next_seq)
    {
        queue_.clear();
        seen_.clear();
        seen_count_ = 0;
        for (auto &e : entries)
            queue_.insert(std::move(e));
        digest_only_ = {digests.begin(), digests.end()};
        next_seq_ = next_seq;
    }

private:
    struct Order {
        bool operator()(const Entry &a, const Entry &b) const noexcept
        {
            if (a.fitness != b.fitness)
                return a.fitness > b.fitness;
            return a.seq < b.seq;
        }
    };

    std::size_t max_size_;
    std::uint64_t next_seq_ = 0;
    std::set<Entry, Order> queue_;
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> seen_;
    std::unordered_set<std::uint64_t> digest_only_;
    std::size_t seen_count_ = 0;
    std::size_t collisions_ = 0;
};

// ---------------------------------------------------------------------------
// Iterated local search
// ---------------------------------------------------------------------------

struct Emission {
    std::size_t index;
    std::uint64_t step;
    Puzzle puzzle;
    SimplificationTrace trace;
};

enum class SearchStatus { BudgetExhausted, FrontierEmpty, Stopped };

constexpr std::string_view to_string(SearchStatus s) noexcept
{
    switch (s) {
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    case SearchStatus::FrontierEmpty: return "frontier_empty";
    case SearchStatus::Stopped: return "stopped";
    }
    return "unknown";
}

struct SearchResult {
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::uint64_t steps = 0;
    std::size_t best_size = 0;
    std::size_t emitted = 0;
};

/// Called for every simplifiable SUSP found; return false to stop the search.
using EmitFn = std::function<bool(const Emission &)>;

/// One-line header plus rows: the unit of the emission log.
inline std::string format_emission(const Emission &e)
{
    std::ostringstream os;
    os << "# found " << e.index << " size=" << e.puzzle.size() << " width=" << e.puzzle.width()
       << " step=" << e.step << " trace_steps=" << e.trace.steps.size() << '\n'
       << serialize_puzzle(e.puzzle);
    return os.str();
}

inline constexpr std::string_view kCheckpointHeader = "susp-checkpoint v1";

class IteratedLocalSearch {
public:
    explicit IteratedLocalSearch(SearchConfig config)
      : config_(std::move(config)), frontier_(config_.max_frontier), rng_(config_.seed)
    {
        config_.validate();
    }

    /// Runs until the step or time budget of `config` is spent, the frontier
    /// empties, or `emit` asks to stop. May be called again to continue.
    SearchResult run(const EmitFn &emit)
    {
        const auto start = std::chrono::steady_clock::now();
        if (!started_) {
            started_ = true;
            const Puzzle seed = config_.prime ? *config_.prime : Puzzle::empty(config_.width);
            frontier_.mark_seen(seed);
            if (seed.empty())
                reseed_from(seed);
            else
                frontier_.push(seed, fitness(seed));
        }

        std::uint64_t steps_this_run = 0;
        auto finish = [&](SearchStatus status) {
            return SearchResult{status, steps_, best_size_, emitted_};
        };

        while (true) {
            if (config_.max_steps && steps_this_run >= *config_.max_steps)
                return finish(SearchStatus::BudgetExhausted);
            if (config_.max_seconds &&
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >=
                    *config_.max_seconds)
                return finish(SearchStatus::BudgetExhausted);

            auto entry = frontier_.pop_best();
            if (!entry)
                return finish(SearchStatus::FrontierEmpty);
            ++steps_;
            ++steps_this_run;

            if (entry->fitness == max_fitness(entry->puzzle.size())) {
                auto check = is_simplifiable_susp(entry->puzzle);
                if (check) {
                    Emission e{emitted_++, steps_, entry->puzzle, std::move(check.trace)};
                    best_size_ = std::max(best_size_, entry->puzzle.size());
                    const bool keep_going = emit ? emit(e) : true;
                    frontier_.clear();
                    reseed_from(entry->puzzle);
                    if (!keep_going)
                        return finish(SearchStatus::Stopped);
                    continue;
                }
            }

            auto candidates = neighbors(entry->puzzle, rng_, config_.move_weights);
            enqueue_new(std::move(candidates));
        }
    }

    const Frontier &frontier() const noexcept { return frontier_; }
    const SearchConfig &config() const noexcept { return config_; }

    void save_checkpoint(std::ostream &os) const
    {
        os << kCheckpointHeader << '\n'
           << "width " << config_.width << '\n'
           << "started " << (started_ ? 1 : 0) << '\n'
           << "steps " << steps_ << '\n'
           << "emitted " << emitted_ << '\n'
           << "best " << best_size_ << '\n'
           << "seq " << frontier_.next_seq() << '\n'
           << "rng " << rng_ << '\n'
           << "frontier " << frontier_.size() << '\n';
        frontier_.for_each_entry([&](const Frontier::Entry &e) {
            os << e.fitness << ' ' << e.seq << ' ';
            for (std::size_t r = 0; r < e.puzzle.size(); ++r)
                os << (r ? "," : "") << e.puzzle.row_string(r);
            os << '\n';
        });
        const auto digests = frontier_.seen_digests();
        os << "seen " << digests.size() << '\n';
        for (std::uint64_t d : digests)
            os << std::hex << std::setw(16) << std::setfill('0') << d << std::dec << '\n';
        os << "end\n";
    }

    /// Restores state written by save_checkpoint. Budgets, weights and thread
    /// count come from `config`; its width must match the checkpoint.
    static IteratedLocalSearch resume(SearchConfig config, std::istream &is)
    {
        IteratedLocalSearch search(std::move(config));
        std::string line;
        if (!std::getline(is, line) || line != kCheckpointHeader)
            throw Error(Errc::BadFormat, "missing checkpoint header");

        auto expect = [&](const char *name) {
            std::string word;
            if (!(is >> word) || word != name)
                throw Error(Errc::BadFormat, std::string("expected '") + name + "' in checkpoint");
        };
        std::size_t width = 0, count = 0;
        int started = 0;
        std::uint64_t seq = 0;
        expect("width");
        is >> width;
        if (width != search.config_.width)
            throw Error(Errc::MixedWidth, "checkpoint width differs from the search width");
        expect("started");
        is >> started;
        expect("steps");
        is >> search.steps_;
        expect("emitted");
        is >> search.emitted_;
        expect("best");
        is >> search.best_size_;
        expect("seq");
        is >> seq;
        expect("rng");
        is >> search.rng_;
        expect("frontier");
        is >> count;
        if (!is)
            throw Error(Errc::BadFormat, "truncated checkpoint");

        std::vector<Frontier::Entry> entries;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t fit = 0, entry_seq = 0;
            std::string rows;
            if (!(is >> fit >> entry_seq >> rows))
                throw Error(Errc::BadFormat, "truncated checkpoint frontier");
            std::vector<std::string> parts;
            std::stringstream ss(rows);
            for (std::string part; std::getline(ss, part, ',');)
                parts.push_back(part);
            entries.push_back({fit, entry_seq, Puzzle::from_strings(parts)});
        }
        expect("seen");
        is >> count;
        std::vector<std::uint64_t> digests(count);
        for (auto &d : digests)
            if (!(is >> std::hex >> d >> std::dec))
                throw Error(Errc::BadFormat, "truncated checkpoint digests");
        expect("end");
        search.frontier_.restore(std::move(entries), std::move(digests), seq);
        search.started_ = started != 0;
        return search;
    }

private:
    void reseed_from(const Puzzle &found)
    {
        enqueue_new(extensions(found, config_.extension_cap, rng_));
    }

    void enqueue_new(std::vector<Puzzle> candidates)
    {
        std::erase_if(candidates, [&](const Puzzle &p) { return !frontier_.mark_seen(p); });
        const auto scores = evaluate(candidates);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            frontier_.push(std::move(candidates[i]), scores[i]);
    }

    /// Fitness of each candidate; with several threads the work is striped
    /// across workers and results are stored by index, so the outcome does
    /// not depend on scheduling.
    std::vector<std::uint64_t> evaluate(const std::vector<Puzzle> &candidates) const
    {
        std::vector<std::uint64_t> scores(candidates.size());
        const unsigned threads =
            std::max(1u, std::min<unsigned>(config_.threads, static_cast<unsigned>(candidates.size())));
        if (threads <= 1) {
            for (std::size_t i = 0; i < candidates.size(); ++i)
                scores[i] = fitness(candidates[i]);
            return scores;
        }
        {
            std::vector<std::jthread> workers;
            for (unsigned t = 0; t < threads; ++t)
                workers.emplace_back([&, t] {
                    for (std::size_t i = t; i < candidates.size(); i += threads)
                        scores[i] = fitness(candidates[i]);
                });
        }
        return scores;
    }

    SearchConfig config_;
    Frontier frontier_;
    SearchRng rng_;
    std::uint64_t steps_ = 0;
    std::size_t best_size_ = 0;
    std::size_t emitted_ = 0;
    bool started_ = false;
};

inline SearchResult ils_search(const SearchConfig &config, const EmitFn &emit)
{
    IteratedLocalSearch search(config);
    return search.run(emit);
}

} // namespace susp
