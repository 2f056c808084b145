// susp -- verify, simplify, bound, search and multiply strong uniquely solvable puzzles

#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace susp;
using namespace susp::cli;

int main(int argc, char **argv)
{
    CLI::App app{"Simplifiable SUSP toolkit"};
    app.require_subcommand(1);

    // verify
    VerifyOptions verify_opt;
    std::string verify_mode = "simplifiable";
    std::string verify_file, witness_out, witness_in;
    auto *verify = app.add_subcommand("verify", "Check a puzzle (or a witness file)");
    verify->add_option("file", verify_file, "Puzzle file");
    verify->add_option("--mode", verify_mode, "simplifiable | local | brute | definition")
        ->check(CLI::IsMember({"simplifiable", "local", "brute", "definition"}));
    verify->add_option("--witness-out", witness_out, "Write the simplification witness here");
    verify->add_option("--witness", witness_in, "Verify this witness file");
    verify->add_option("--cap", verify_opt.oracle_cap, "Row cap for the brute/definition oracles");

    // simplify
    SimplifyOptions simplify_opt;
    std::string simplify_witness;
    auto *simplify_cmd = app.add_subcommand("simplify", "Simplify H_P and report edge counts as JSON");
    simplify_cmd->add_option("file", simplify_opt.puzzle_file, "Puzzle file")->required();
    simplify_cmd->add_option("--witness-out", simplify_witness, "Write the simplification witness here");

    // bound
    BoundOptions bound_opt;
    std::string variant = "capacity";
    double capacity_value = 0;
    auto *bound = app.add_subcommand("bound", "Upper bound on omega as JSON");
    bound->add_option("s", bound_opt.s, "Rows");
    bound->add_option("k", bound_opt.k, "Width");
    bound->add_option("variant", variant, "capacity | single")
        ->check(CLI::IsMember({"capacity", "single"}));
    auto *capacity_flag =
        bound->add_option("--capacity", capacity_value, "Evaluate the family bound at this capacity");

    // table
    TableOptions table_opt;
    auto *table = app.add_subcommand("table", "Verify the fixtures and reproduce their omega bounds");
    table->add_option("fixtures_dir", table_opt.fixtures_dir, "Directory of susp_<s>_<k>.txt files");
    table->add_flag("--json", table_opt.json, "JSON report");

    // product
    ProductOptions product_opt;
    std::string product_out;
    auto *product_cmd = app.add_subcommand("product", "Cartesian product of two puzzles");
    product_cmd->add_option("left", product_opt.left)->required();
    product_cmd->add_option("right", product_opt.right)->required();
    product_cmd->add_option("-o,--out", product_out, "Output file (default: stdout)");
    product_cmd->add_flag("--verify", product_opt.verify, "Check the product is a simplifiable SUSP");

    // search
    SearchOptions search_opt;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 0;
    double max_seconds = 0;
    std::string prime, out_dir, log_file, checkpoint, resume;
    std::vector<double> weights;
    auto *search = app.add_subcommand("search", "Iterated local search for simplifiable SUSPs");
    search->add_option("--k", search_opt.config.width, "Puzzle width")->required();
    auto *seed_opt = search->add_option("--seed", seed, "RNG seed (default: random, printed)");
    auto *steps_opt = search->add_option("--max-steps", max_steps, "Stop after this many expansions");
    auto *seconds_opt = search->add_option("--max-seconds", max_seconds, "Stop after this much time");
    search->add_option("--max-frontier", search_opt.config.max_frontier, "Frontier capacity");
    search->add_option("--extension-cap", search_opt.config.extension_cap,
                       "Max (s+1)-row extensions enqueued per find");
    search->add_option("--threads", search_opt.config.threads, "Fitness worker threads");
    search->add_option("--weights", weights, "Move weights: cell,permute,replace")
        ->delimiter(',')
        ->expected(3);
    search->add_option("--prime", prime, "Start from this puzzle");
    search->add_option("--out-dir", out_dir, "Write each find and its witness here");
    search->add_option("--log", log_file, "Append the emission log here");
    search->add_option("--checkpoint", checkpoint, "Write a checkpoint on exit");
    search->add_option("--resume", resume, "Resume from a checkpoint");
    search->add_flag("--exhaustive-smoke", search_opt.exhaustive_smoke,
                     "Run until the frontier empties and report the largest size (k <= 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return code(ExitStatus::UsageError);
    }

    if (*verify) {
        if (!verify_file.empty())
            verify_opt.puzzle_file = verify_file;
        if (!witness_out.empty())
            verify_opt.witness_out = witness_out;
        if (!witness_in.empty())
            verify_opt.witness_in = witness_in;
        verify_opt.mode = verify_mode == "local"        ? VerifyMode::Local
                          : verify_mode == "brute"      ? VerifyMode::Brute
                          : verify_mode == "definition" ? VerifyMode::Definition
                                                        : VerifyMode::Simplifiable;
        return code(cmd_verify(verify_opt, std::cout, std::cerr));
    }
    if (*simplify_cmd) {
        if (!simplify_witness.empty())
            simplify_opt.witness_out = simplify_witness;
        return code(cmd_simplify(simplify_opt, std::cout, std::cerr));
    }
    if (*bound) {
        if (*capacity_flag) {
            bound_opt.capacity = capacity_value;
        } else if (bound_opt.s == 0 || bound_opt.k == 0) {
            std::cerr << "error: bound needs positive s and k, or --capacity\n";
            return code(ExitStatus::UsageError);
        }
        bound_opt.variant = variant == "single" ? BoundVariant::SinglePuzzle : BoundVariant::Capacity;
        return code(cmd_bound(bound_opt, std::cout, std::cerr));
    }
    if (*table)
        return code(cmd_table(table_opt, std::cout, std::cerr));
    if (*product_cmd) {
        if (!product_out.empty())
            product_opt.output = product_out;
        return code(cmd_product(product_opt, std::cout, std::cerr));
    }
    if (*search) {
        if (*seed_opt) {
            search_opt.config.seed = seed;
        } else {
            std::random_device rd;
            search_opt.config.seed = (std::uint64_t{rd()} << 32) | rd();
            std::cerr << "seed " << search_opt.config.seed << '\n';
        }
        if (*steps_opt)
            search_opt.config.max_steps = max_steps;
        if (*seconds_opt)
            search_opt.config.max_seconds = max_seconds;
        if (!weights.empty())
            search_opt.config.move_weights = {weights[0], weights[1], weights[2]};
        if (!prime.empty())
            search_opt.prime_file = prime;
        if (!out_dir.empty())
            search_opt.out_dir = out_dir;
        if (!log_file.empty())
            search_opt.log_file = log_file;
        if (!checkpoint.empty())
            search_opt.checkpoint_out = checkpoint;
        if (!resume.empty())
            search_opt.resume_from = resume;
        return code(cmd_search(std::move(search_opt), std::cout, std::cerr));
    }
    return code(ExitStatus::UsageError);
}
