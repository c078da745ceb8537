#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace scp;
using testutil::Rng;

TEST_CASE("parse and print a simple function") {
    Program p = parse_program("F { 'ab' e.x = <F e.x> ; = True ; }");
    REQUIRE(p.entry == "F");
    REQUIRE(p.functions.size() == 1);
    REQUIRE(p.functions[0].sentences.size() == 2);
    CHECK(print_program(p) == "F {\n  'ab' e.x = <F e.x> ;\n  = True ;\n}\n");
}

TEST_CASE("character runs split into single symbols") {
    Expression e = parse_expression("'abc'");
    REQUIRE(e.size() == 3);
    CHECK(e[0] == sym('a'));
    CHECK(to_string(e) == "'abc'");
}

TEST_CASE("nested brackets and calls") {
    Expression e = parse_expression("((() ()) s.x) <G (e.y) True>");
    REQUIRE(e.size() == 2);
    CHECK(e[0].kind == Term::Kind::Bracket);
    CHECK(e[1].kind == Term::Kind::Call);
    CHECK(to_string(e) == "((() ()) s.x) <G (e.y) True>");
}

TEST_CASE("comments and numbered variables") {
    Expression e = parse_expression("/* hi */ s.1 e.2 /* bye */");
    REQUIRE(e.size() == 2);
    CHECK(e[0] == svar("1"));
    CHECK(e[1] == evar("2"));
}

TEST_CASE("parser rejects ill-formed programs") {
    CHECK_THROWS_AS(parse_program("F { <F> = ; }"), ParseError);              // call in pattern
    CHECK_THROWS_AS(parse_program("F { e.x e.x = ; }"), ParseError);          // repeated e-var
    CHECK_THROWS_AS(parse_program("F { e.x e.y = ; }"), ParseError);          // two open e-vars
    CHECK_THROWS_AS(parse_program("F { (e.x) (e.y) = e.z ; }"), ParseError);  // unbound body var
    CHECK_THROWS_AS(parse_program("F { = <G> ; }"), ParseError);              // undefined call
    CHECK_THROWS_AS(parse_program("F { = ; } F { = ; }"), ParseError);        // duplicate name
    CHECK_THROWS_AS(parse_program("F { 'a = ; }"), ParseError);               // open quote
    CHECK_THROWS_AS(parse_program(""), ParseError);
}

TEST_CASE("two e-variables are fine on different levels") {
    CHECK_NOTHROW(parse_program("F { (e.x) e.y = e.x e.y ; }"));
}

TEST_CASE("empty function bodies and empty functions parse") {
    Program p = parse_program("F { }");
    CHECK(p.functions[0].sentences.empty());
    Program q = parse_program("F { = ; }");
    CHECK(q.functions[0].sentences[0].pattern.empty());
    CHECK(q.functions[0].sentences[0].body.empty());
}

TEST_CASE("fixtures parse and survive a print-parse round trip") {
    for (const char* name :
         {"wordeq1.scpl", "wordeq1_residual.scpl", "example1.scpl", "example2.scpl",
          "example3.scpl", "example4_empty.scpl", "example6.scpl", "appendix_a.scpl"}) {
        Program p = testutil::load_fixture(name);
        Program q = parse_program(print_program(p));
        INFO(name);
        CHECK(p == q);
    }
}

TEST_CASE("random expressions survive a print-parse round trip") {
    Rng rng(20240901);
    for (int i = 0; i < 1000; ++i) {
        int vc = 0;
        Expression e = testutil::random_pattern(rng, vc, 6);
        Expression back = parse_expression(to_string(e));
        REQUIRE(e == back);
    }
}

TEST_CASE("random programs survive a print-parse round trip") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        int vc = 0;
        Program p;
        Function f;
        f.name = "F";
        for (int s = 0; s < 3; ++s) {
            Sentence sen;
            sen.pattern = testutil::random_pattern(rng, vc, 5);
            // body reuses pattern variables and may call F
            for (const VarRef& v : free_vars(sen.pattern))
                sen.body.push_back(v.is_evar ? evar(v.name) : svar(v.name));
            if (rng.chance(0.5)) sen.body = {call("F", sen.body)};
            f.sentences.push_back(std::move(sen));
        }
        p.functions.push_back(std::move(f));
        p.entry = "F";
        Program q = parse_program(print_program(p));
        REQUIRE(p == q);
    }
}

TEST_CASE("ground matching follows first-match and two-pointer semantics") {
    auto pat = parse_expression("(s.x e.xs) (s.x e.ys)");
    auto arg = parse_expression("('ab') ('ac')");
    auto st = match(pat, arg);
    REQUIRE(st);
    CHECK(st->s.at("x") == sym('a'));
    CHECK(to_string(st->e.at("xs")) == "'b'");
    CHECK_FALSE(match(pat, parse_expression("('ab') ('cd')")));
}

TEST_CASE("matching consumes fixed tail after the e-variable") {
    auto st = match(parse_expression("'a' e.x 'b'"), parse_expression("'axyzb'"));
    REQUIRE(st);
    CHECK(to_string(st->e.at("x")) == "'xyz'");
    CHECK_FALSE(match(parse_expression("'a' e.x 'b'"), parse_expression("'a'")));
}

TEST_CASE("repeated s-variables must agree") {
    CHECK(match(parse_expression("s.x s.x"), parse_expression("'aa'")));
    CHECK_FALSE(match(parse_expression("s.x s.x"), parse_expression("'ab'")));
}

TEST_CASE("matcher agrees with the backtracking oracle") {
    Rng rng(42);
    int agree_hits = 0;
    for (int i = 0; i < 3000; ++i) {
        int vc = 0;
        Expression pat = testutil::random_pattern(rng, vc, 4);
        Expression arg = testutil::random_ground(rng, 4);
        auto fast = match(pat, arg);
        auto slow = testutil::oracle_match(pat, arg);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            ++agree_hits;
            CHECK(apply_subst(pat, *fast) == arg);
        }
    }
    CHECK(agree_hits > 50);   // the sample actually exercises successes
}

TEST_CASE("apply substitutes and splices") {
    Subst st;
    st.s.emplace("x", sym('a'));
    st.e.emplace("y", parse_expression("'bc'"));
    CHECK(to_string(apply_subst(parse_expression("s.x (e.y) e.y"), st)) == "'a' ('bc') 'bc'");
}

TEST_CASE("free variables come in first-occurrence order") {
    auto vs = free_vars(parse_expression("(e.b) s.a e.b <F s.c>"));
    REQUIRE(vs.size() == 3);
    CHECK(vs[0].name == "b");
    CHECK(vs[1].name == "a");
    CHECK(vs[2].name == "c");
}

TEST_CASE("evaluator runs the word equality predicate") {
    Program p = testutil::load_fixture("wordeq1.scpl");
    auto run = [&](const std::string& w) {
        Expression word;
        for (char ch : w) word.push_back(sym(ch));
        return eval(p, {call("Main", word)});
    };
    CHECK(to_string(run("aba").value) == "True");
    CHECK(to_string(run("ab").value) == "False");
    CHECK(to_string(run("").value) == "False");
    CHECK(to_string(run("ababa").value) == "True");
}

TEST_CASE("evaluator reports abnormal stops") {
    Program p = parse_program("F { 'a' = True ; }");
    EvalOutcome r = eval(p, parse_expression("<F 'b'>"));
    CHECK(r.st == EvalOutcome::St::Abnormal);
}

TEST_CASE("evaluator enforces its step budget") {
    Program p = parse_program("Loop { e.x = <Loop e.x 'a'> ; }");
    EvalOutcome r = eval(p, parse_expression("<Loop>"), 1000);
    CHECK(r.st == EvalOutcome::St::Budget);
}
