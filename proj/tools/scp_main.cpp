// Command-line front end: evaluate, specialize, analyze, and run the bundled
// problem generators.
//
// Exit codes: 0 success, 1 analysis came out false under --fail-if-false,
// 2 usage or input error, 3 budget exceeded.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scp/scp.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t node_budget_default() {
    if (const char* env = std::getenv("SCP_NODE_BUDGET")) return std::strtoull(env, nullptr, 10);
    return 20000;
}

std::vector<scp::Symbol> parse_alphabet(const std::string& chars, const std::string& names) {
    std::vector<scp::Symbol> out;
    for (char c : chars) out.push_back(scp::chr(c));
    std::istringstream ss(names);
    std::string word;
    while (std::getline(ss, word, ','))
        if (!word.empty()) out.push_back(scp::ident(word));
    return out;
}

int run_goal(const scp::Program& p, const scp::Expression& goal, std::uint64_t budget) {
    scp::EvalOutcome r = scp::eval(p, goal, budget);
    switch (r.st) {
    case scp::EvalOutcome::St::Value:
        std::cout << scp::to_string(r.value) << "\n";
        return 0;
    case scp::EvalOutcome::St::Abnormal:
        std::cout << "recognition impossible\n";
        return 0;
    case scp::EvalOutcome::St::Budget:
        std::cout << "step budget exceeded\n";
        return 3;
    }
    return 2;
}

int specialize_and_print(const scp::Program& p, const scp::Expression& goal,
                         const scp::ScpOptions& opt, bool stats) {
    scp::ScpResult r = scp::supercompile(p, goal, opt);
    if (!r.ok) {
        std::cout << "node budget exceeded\n";
        return 3;
    }
    std::cout << scp::print_program(r.residual);
    std::cout << "/* goal: " << scp::to_string(r.goal) << " */\n";
    if (stats)
        std::cout << "/* nodes: " << r.stats.nodes << ", folds: " << r.stats.folds
                  << ", generalizations: " << r.stats.generalizations << " */\n";
    return 0;
}

}   // namespace

int main(int argc, char** argv) {
    CLI::App app{"mini supercompiler for a first-order sequence language"};
    app.require_subcommand(1);

    std::string file, goal_text, equation, alphabet_chars, alphabet_names;
    std::uint64_t step_budget = 1'000'000;
    std::uint64_t node_budget = node_budget_default();
    bool no_whistle = false, fail_if_false = false, show_stats = false;
    bool want_returns_true = false, want_is_empty = false, want_dot = false;
    std::size_t enumerate_len = 0, shortest_len = 0, max_len = 12;
    int m = 3, c = 3;
    bool cut_false = false, block_rep = false, restricted = false, oracle = false,
         do_specialize = false;

    auto* run = app.add_subcommand("run", "evaluate a goal expression against a program");
    run->add_option("file", file)->required();
    run->add_option("goal", goal_text)->required();
    run->add_option("--budget", step_budget, "max call rewrites");

    auto* spec = app.add_subcommand("specialize", "supercompile a goal and print the residual");
    spec->add_option("file", file)->required();
    spec->add_option("goal", goal_text)->required();
    spec->add_option("--node-budget", node_budget);
    spec->add_flag("--no-whistle", no_whistle, "disable generalization (may not terminate)");
    spec->add_flag("--stats", show_stats);

    auto* an = app.add_subcommand("analyze", "inspect a residual program");
    an->add_option("file", file)->required();
    an->add_flag("--returns-true", want_returns_true);
    an->add_flag("--is-empty", want_is_empty);
    an->add_flag("--dot", want_dot);
    an->add_option("--enumerate", enumerate_len, "list accepted words up to this length");
    an->add_option("--shortest", shortest_len, "list shortest accepted words, searching to this length");
    an->add_option("--alphabet", alphabet_chars, "character symbols, e.g. ab");
    an->add_option("--symbols", alphabet_names, "named symbols, comma separated");
    an->add_flag("--fail-if-false", fail_if_false);

    auto* weq = app.add_subcommand("wordeq", "specialize a word equation");
    weq->add_option("equation", equation)->required();
    weq->add_option("--node-budget", node_budget);
    weq->add_option("--max-len", max_len);
    weq->add_flag("--stats", show_stats);

    auto* puz = app.add_subcommand("puzzle", "missionaries and cannibals");
    puz->add_option("missionaries", m)->required();
    puz->add_option("cannibals", c)->required();
    puz->add_flag("--cut-false", cut_false);
    puz->add_flag("--block-repetition", block_rep);
    puz->add_flag("--restricted-move", restricted);
    puz->add_flag("--oracle", oracle, "print shortest solutions by direct search");
    puz->add_flag("--specialize", do_specialize);
    puz->add_option("--node-budget", node_budget);

    auto* mat = app.add_subcommand("matrix", "solvability table");
    mat->add_option("missionaries", m)->required();
    mat->add_option("cannibals", c)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        scp::ScpOptions opt{node_budget, !no_whistle};

        if (run->parsed()) {
            scp::Program p = scp::parse_program(slurp(file));
            return run_goal(p, scp::parse_expression(goal_text), step_budget);
        }
        if (spec->parsed()) {
            scp::Program p = scp::parse_program(slurp(file));
            return specialize_and_print(p, scp::parse_expression(goal_text), opt, show_stats);
        }
        if (an->parsed()) {
            scp::Program p = scp::parse_program(slurp(file));
            bool verdict = true;
            if (want_returns_true) {
                verdict = scp::returns_true(p);
                std::cout << "returns_true: " << (verdict ? "true" : "false") << "\n";
            }
            if (want_is_empty) {
                verdict = scp::is_empty(p);
                std::cout << "is_empty: " << (verdict ? "true" : "false") << "\n";
            }
            if (want_dot) std::cout << scp::to_dot(p);
            std::vector<scp::Symbol> alpha = parse_alphabet(alphabet_chars, alphabet_names);
            if (enumerate_len > 0) {
                scp::Enumeration e = scp::enumerate_accepted(p, alpha, enumerate_len);
                for (const auto& w : e.accepted)
                    std::cout << (w.empty() ? "(empty)" : scp::to_string(w)) << "\n";
                if (!e.complete) std::cout << "...search budget exceeded\n";
            }
            if (shortest_len > 0) {
                auto ws = scp::shortest_accepted(p, alpha, shortest_len);
                for (const auto& w : ws)
                    std::cout << (w.empty() ? "(empty)" : scp::to_string(w)) << "\n";
                if (ws.empty()) verdict = false;
            }
            return fail_if_false && !verdict ? 1 : 0;
        }
        if (weq->parsed()) {
            scp::WordEquation eq = scp::parse_word_equation(equation);
            scp::EncodedProblem enc = scp::encode_word_equation(eq);
            int rc = specialize_and_print(enc.program, enc.goal, opt, show_stats);
            if (rc != 0) return rc;
            if (eq.variables().size() == 1) {
                std::cout << "/* solutions up to length " << max_len << ": */\n";
                for (const std::string& w : scp::word_equation_oracle(eq, max_len))
                    std::cout << (w.empty() ? "(empty)" : "'" + w + "'") << "\n";
            }
            return 0;
        }
        if (puz->parsed()) {
            scp::PuzzleSpec ps{m, c, cut_false, block_rep, restricted};
            if (oracle || !do_specialize) {
                scp::PuzzleSolutions sol = scp::puzzle_oracle(m, c, restricted, block_rep);
                if (sol.length < 0) {
                    std::cout << "unsolvable\n";
                    return fail_if_false ? 1 : 0;
                }
                std::cout << "shortest length: " << sol.length << "\n";
                for (const auto& path : sol.paths) {
                    for (size_t i = 0; i < path.size(); ++i)
                        std::cout << (i ? " " : "") << path[i];
                    std::cout << "\n";
                }
                if (!do_specialize) return 0;
            }
            scp::EncodedProblem enc = scp::encode_puzzle(ps);
            return specialize_and_print(enc.program, enc.goal, opt, show_stats);
        }
        if (mat->parsed()) {
            auto table = scp::answer_matrix(m, c);
            std::cout << "c\\m";
            for (int j = 0; j <= m; ++j) std::cout << " " << j;
            std::cout << "\n";
            for (int i = 0; i <= c; ++i) {
                std::cout << i;
                for (int j = 0; j <= m; ++j) std::cout << " " << (table[i][j] ? "T" : "F");
                std::cout << "\n";
            }
            return 0;
        }
    } catch (const scp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
