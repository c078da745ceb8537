#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace scp;

namespace {

Expression path_expr(const std::vector<std::string>& moves) {
    Expression out;
    for (const auto& m : moves) out.push_back(id(m));
    return out;
}

EvalOutcome run_path(const Program& p, int m, int c, const std::vector<std::string>& moves) {
    Expression args = encode_crowd(m, c);
    Expression path = path_expr(moves);
    args.insert(args.end(), path.begin(), path.end());
    return eval(p, {call("MainInt", args)});
}

}   // namespace

TEST_CASE("word equations parse") {
    WordEquation eq = parse_word_equation("abX = Xba");
    REQUIRE(eq.lhs.size() == 3);
    CHECK(eq.lhs[2].is_var);
    CHECK(eq.variables() == std::vector<char>{'X'});
    CHECK(eq.letters() == std::vector<char>{'a', 'b'});
    CHECK_THROWS_AS(parse_word_equation("ab"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word_equation("a=b=c"), std::invalid_argument);
}

TEST_CASE("the encoded word equation program tests solutions") {
    EncodedProblem enc = encode_word_equation(parse_word_equation("abX=Xba"));
    auto run = [&](const std::string& w) {
        Subst st;
        Expression word;
        for (char ch : w) word.push_back(sym(ch));
        st.e.emplace("X", word);
        return to_string(eval(enc.program, apply_subst(enc.goal, st)).value);
    };
    CHECK(run("a") == "True");
    CHECK(run("aba") == "True");
    CHECK(run("") == "False");
    CHECK(run("ba") == "False");
}

TEST_CASE("the word oracle enumerates solutions exhaustively") {
    WordEquation eq = parse_word_equation("abX=Xba");
    auto sols = word_equation_oracle(eq, 9);
    CHECK(sols == std::vector<std::string>{"a", "aba", "ababa", "abababa", "ababababa"});
    CHECK(word_equation_oracle(parse_word_equation("abXa=Xba"), 8).empty());
}

TEST_CASE("crowd encoding uses the unary m p c triple") {
    CHECK(to_string(encode_crowd(3, 3)) == "(() ('ppp') ())");
    CHECK(to_string(encode_crowd(5, 3)) == "(('mm') ('ppp') ())");
    CHECK(to_string(encode_crowd(2, 3)) == "(() ('pp') ('c'))");
    CHECK(to_string(encode_crowd(0, 0)) == "(() () ())");
}

TEST_CASE("the interpreter replays the reference crossing") {
    Program p = build_puzzle_program(PuzzleSpec{3, 3});
    EvalOutcome r = run_path(p, 3, 3,
                             {"CC", "C", "CC", "C", "MM", "MC", "MM", "C", "CC", "M", "MC", "MC"});
    REQUIRE(r.is_value());
    CHECK(to_string(r.value) == "True MC");
}

TEST_CASE("the interpreter accepts each shortest crossing for two pairs") {
    Program p = build_puzzle_program(PuzzleSpec{2, 2});
    for (auto path : {std::vector<std::string>{"CC", "C", "MM", "M", "MC"},
                      std::vector<std::string>{"CC", "C", "MM", "C", "CC"},
                      std::vector<std::string>{"MC", "M", "MM", "M", "MC"},
                      std::vector<std::string>{"MC", "M", "MM", "C", "CC"}}) {
        EvalOutcome r = run_path(p, 2, 2, path);
        REQUIRE(r.is_value());
        CHECK(to_string(r.value) == "True");
    }
}

TEST_CASE("an unsafe or illegal path stops or returns False") {
    Program p = build_puzzle_program(PuzzleSpec{3, 3});
    EvalOutcome too_short = run_path(p, 3, 3, {"MC"});
    REQUIRE(too_short.is_value());
    CHECK(to_string(too_short.value).substr(0, 5) == "False");

    // two missionaries leave first: cannibals outnumber on the left, no rule fits
    EvalOutcome unsafe = run_path(p, 3, 3, {"MM", "M"});
    CHECK(unsafe.st == EvalOutcome::St::Abnormal);
}

TEST_CASE("variant programs cut instead of returning False") {
    Program p = build_puzzle_program(PuzzleSpec{3, 3, true, true});
    EvalOutcome r = run_path(p, 3, 3, {"MC"});
    CHECK(r.st == EvalOutcome::St::Abnormal);

    // immediate repetition runs into BlockRepetition
    EvalOutcome rep = run_path(p, 3, 3, {"MC", "MC", "M"});
    CHECK(rep.st == EvalOutcome::St::Abnormal);
}

TEST_CASE("restricted moves reject a backward pair") {
    Program p = build_puzzle_program(PuzzleSpec{3, 2, false, false, true});
    // MC out, MC back is impossible when only singles may return
    EvalOutcome r = run_path(p, 3, 2, {"MC", "MC"});
    CHECK(r.st == EvalOutcome::St::Abnormal);
}

TEST_CASE("puzzle oracle small cases") {
    PuzzleSolutions s11 = puzzle_oracle(1, 1);
    CHECK(s11.length == 1);
    CHECK(s11.paths == std::set<std::vector<std::string>>{{"MC"}});

    PuzzleSolutions s10 = puzzle_oracle(1, 0);
    CHECK(s10.length == 1);
    CHECK(s10.paths == std::set<std::vector<std::string>>{{"M"}});

    PuzzleSolutions s22 = puzzle_oracle(2, 2);
    CHECK(s22.length == 5);
    CHECK(s22.paths == std::set<std::vector<std::string>>{{"CC", "C", "MM", "M", "MC"},
                                                          {"CC", "C", "MM", "C", "CC"},
                                                          {"MC", "M", "MM", "M", "MC"},
                                                          {"MC", "M", "MM", "C", "CC"}});

    CHECK(puzzle_oracle(4, 4).length == -1);
    CHECK(puzzle_oracle(0, 0).length == 0);
}

TEST_CASE("puzzle oracle for three pairs matches the published exits") {
    PuzzleSolutions s = puzzle_oracle(3, 3);
    CHECK(s.length == 11);
    for (auto path : {std::vector<std::string>{"CC", "C", "CC", "C", "MM", "MC", "MM", "C", "CC",
                                               "M", "MC"},
                      std::vector<std::string>{"CC", "C", "CC", "C", "MM", "MC", "MM", "C", "CC",
                                               "C", "CC"},
                      std::vector<std::string>{"MC", "M", "CC", "C", "MM", "MC", "MM", "C", "CC",
                                               "M", "MC"},
                      std::vector<std::string>{"MC", "M", "CC", "C", "MM", "MC", "MM", "C", "CC",
                                               "C", "CC"}}) {
        CHECK(s.paths.count(path) == 1);
    }
    CHECK(s.paths.size() == 4);
}

TEST_CASE("restricted oracle reproduces the nine narrow crossings") {
    PuzzleSolutions s = puzzle_oracle(3, 2, true, true);
    CHECK(s.length == 7);
    REQUIRE(s.paths.size() == 9);
    CHECK(s.paths.count({"MC", "M", "MM", "M", "MM", "M", "MC"}) == 1);
    CHECK(s.paths.count({"MC", "C", "MC", "M", "MC", "C", "MC"}) == 1);
    CHECK(s.paths.count({"CC", "C", "MM", "M", "MC", "C", "MC"}) == 1);
}

TEST_CASE("every oracle path replays to True on the interpreter") {
    for (int n = 0; n <= 3; ++n) {
        for (int k = 0; k <= 3; ++k) {
            PuzzleSolutions s = puzzle_oracle(n, k);
            if (s.length <= 0) continue;   // nothing to replay
            Program p = build_puzzle_program(PuzzleSpec{n, k});
            for (const auto& path : s.paths) {
                EvalOutcome r = run_path(p, n, k, path);
                INFO(n << "," << k);
                REQUIRE(r.is_value());
                CHECK(contains_symbol(r.value, ident("True")));
            }
        }
    }
}

TEST_CASE("the answer matrix matches the published table") {
    auto t = answer_matrix(7, 7);
    // rows are cannibal counts, columns missionary counts
    std::vector<std::string> expected{
        "TTTTTTTT",   // c = 0
        "TTTTTTTT",   // c = 1
        "TFTTTTTT",   // c = 2
        "TFFTTTTT",   // c = 3
        "TFFFFTTT",   // c = 4
        "TFFFFFTT",   // c = 5
        "TFFFFFFT",   // c = 6
        "TFFFFFFF",   // c = 7
    };
    for (int c = 0; c <= 7; ++c) {
        std::string row;
        for (int m = 0; m <= 7; ++m) row += t[c][m] ? 'T' : 'F';
        INFO("c = " << c);
        CHECK(row == expected[c]);
    }
}
