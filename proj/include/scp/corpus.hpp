// Problem corpora: word equations and the missionaries-and-cannibals puzzle,
// each as a generator producing a source program plus a goal, and a direct
// combinatorial oracle to check results against.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <deque>

#include "lang.hpp"
#include "parse.hpp"

namespace scp {

// --- word equations ----------------------------------------------------------
//
// "abX=Xba": lowercase letters are constants, uppercase letters variables.

struct WordEquation {
    struct Atom {
        bool is_var = false;
        char c = 0;
        bool operator==(const Atom&) const = default;
    };
    std::vector<Atom> lhs, rhs;

    std::vector<char> variables() const {
        std::vector<char> out;
        auto scan = [&out](const std::vector<Atom>& side) {
            for (const Atom& a : side)
                if (a.is_var && std::find(out.begin(), out.end(), a.c) == out.end())
                    out.push_back(a.c);
        };
        scan(lhs);
        scan(rhs);
        return out;
    }

    std::vector<char> letters() const {
        std::vector<char> out;
        auto scan = [&out](const std::vector<Atom>& side) {
            for (const Atom& a : side)
                if (!a.is_var && std::find(out.begin(), out.end(), a.c) == out.end())
                    out.push_back(a.c);
        };
        scan(lhs);
        scan(rhs);
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline WordEquation parse_word_equation(std::string_view text) {
    WordEquation eq;
    std::vector<WordEquation::Atom>* side = &eq.lhs;
    bool seen_eq = false;
    for (char c : text) {
        if (c == '=') {
            if (seen_eq) throw std::invalid_argument("two '=' in a word equation");
            seen_eq = true;
            side = &eq.rhs;
        } else if (std::islower(static_cast<unsigned char>(c))) {
            side->push_back({false, c});
        } else if (std::isupper(static_cast<unsigned char>(c))) {
            side->push_back({true, c});
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument(std::string("bad character in word equation: ") + c);
        }
    }
    if (!seen_eq) throw std::invalid_argument("word equation needs '='");
    return eq;
}

struct EncodedProblem {
    Program program;
    Expression goal;
};

// Main takes a candidate value per variable and hands both instantiated sides
// to Equal, which strips equal head symbols one pair at a time.
inline EncodedProblem encode_word_equation(const WordEquation& eq) {
    std::vector<char> vars = eq.variables();
    auto side_expr = [](const std::vector<WordEquation::Atom>& side) {
        Expression out;
        for (const auto& a : side) {
            if (a.is_var)
                out.push_back(evar(std::string(1, a.c)));
            else
                out.push_back(sym(chr(a.c)));
        }
        return out;
    };

    Expression main_pat, goal_args;
    for (char v : vars) {
        if (vars.size() == 1) {
            main_pat.push_back(evar(std::string(1, v)));
            goal_args.push_back(evar(std::string(1, v)));
        } else {
            main_pat.push_back(bracket({evar(std::string(1, v))}));
            goal_args.push_back(bracket({evar(std::string(1, v))}));
        }
    }

    Function main_fn{"Main",
                     {Sentence{main_pat,
                               {call("Equal", {bracket(side_expr(eq.lhs)),
                                               bracket(side_expr(eq.rhs))})}}}};
    Program p;
    p.functions.push_back(std::move(main_fn));
    p.functions.push_back(parse_program("Equal {\n"
                                        "  (s.x e.xs) (s.x e.ys) = <Equal (e.xs) (e.ys)> ;\n"
                                        "  () () = True ;\n"
                                        "  (e.xs) (e.ys) = False ;\n"
                                        "}\n")
                              .functions.front());
    p.entry = "Main";
    return {std::move(p), {call("Main", goal_args)}};
}

// Exhaustive oracle for single-variable equations: all words over the
// equation's letters, up to max_len, that make the two sides equal.
inline std::vector<std::string> word_equation_oracle(const WordEquation& eq, size_t max_len) {
    std::vector<char> vars = eq.variables();
    if (vars.size() != 1) throw std::invalid_argument("oracle handles one variable");
    std::vector<char> alpha = eq.letters();
    auto instantiate = [&](const std::vector<WordEquation::Atom>& side, const std::string& w) {
        std::string out;
        for (const auto& a : side) {
            if (a.is_var)
                out += w;
            else
                out += a.c;
        }
        return out;
    };
    std::vector<std::string> accepted;
    std::vector<std::string> level{""};
    for (size_t len = 0; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const std::string& w : level) {
            if (instantiate(eq.lhs, w) == instantiate(eq.rhs, w)) accepted.push_back(w);
            if (len < max_len)
                for (char c : alpha) next.push_back(w + c);
        }
        level = std::move(next);
    }
    return accepted;
}

// --- missionaries and cannibals ------------------------------------------------

struct PuzzleSpec {
    int missionaries = 3;
    int cannibals = 3;
    bool cut_false = false;          // abort instead of returning False mid-path
    bool block_repetition = false;   // forbid the same boat load twice in a row
    bool restricted_move = false;    // pairs only to the right, singles back
};

// A bank holds lone missionaries, missionary-cannibal pairs, and lone
// cannibals in three inner brackets; the unary encoding keeps every count a
// plain run of symbols.
inline Expression encode_crowd(int missionaries, int cannibals) {
    auto run = [](char c, int n) {
        Expression out;
        for (int i = 0; i < n; ++i) out.push_back(sym(chr(c)));
        return out;
    };
    int pairs = std::min(missionaries, cannibals);
    return {bracket({bracket(run('m', missionaries - pairs)), bracket(run('p', pairs)),
                     bracket(run('c', cannibals - pairs))})};
}

inline Program build_puzzle_program(const PuzzleSpec& spec) {
    std::string text;
    text +=
        "MainInt {\n"
        "  (e.l) s.a e.path = <Int s.a <Move s.a L (e.l) (()()())> e.path> ;\n"
        "}\n";
    if (spec.restricted_move) {
        text +=
            "Move {\n"
            "  MM L (e.l) (e.r) = R (<Minus MM e.l>) (<Plus MM e.r>) ;\n"
            "  MC L (e.l) (e.r) = R (<Minus MC e.l>) (<Plus MC e.r>) ;\n"
            "  CC L (e.l) (e.r) = R (<Minus CC e.l>) (<Plus CC e.r>) ;\n"
            "  M R (e.l) (e.r) = L (<Plus M e.l>) (<Minus M e.r>) ;\n"
            "  C R (e.l) (e.r) = L (<Plus C e.l>) (<Minus C e.r>) ;\n"
            "}\n";
    } else {
        text +=
            "Move {\n"
            "  s.a L (e.l) (e.r) = R (<Minus s.a e.l>) (<Plus s.a e.r>) ;\n"
            "  s.a R (e.l) (e.r) = L (<Plus s.a e.l>) (<Minus s.a e.r>) ;\n"
            "}\n";
    }
    text += "Int {\n";
    text += "  s.pa R (()()()) (e.r) e.path = True e.path ;\n";
    if (spec.cut_false)
        text += "  s.pa s.d (e.l) (e.r) = <CutFalse> ;\n";
    else
        text += "  s.pa s.d (e.l) (e.r) = False e.r ;\n";
    if (spec.block_repetition)
        text += "  s.pa s.d (e.l) (e.r) s.pa e.path = <BlockRepetition> ;\n";
    text += "  s.pa s.d (e.l) (e.r) s.x e.path = <Int s.x <Move s.x s.d (e.l) (e.r)> e.path> ;\n";
    text += "}\n";
    if (spec.cut_false) text += "CutFalse { Deadlock = ; }\n";
    if (spec.block_repetition) text += "BlockRepetition { Deadlock = ; }\n";
    text +=
        "Minus {\n"
        "  MM ('mm' e.m) (e.p) () = (e.m) (e.p) () ;\n"
        "  MM () ('pp') () = () () ('cc') ;\n"
        "  MM ('m') ('p') () = () () ('c') ;\n"
        "  CC () () ('cc' e.c) = () () (e.c) ;\n"
        "  CC (e.m) ('pp' e.p) () = ('mm' e.m) (e.p) () ;\n"
        "  MC (e.m) ('p' e.p) () = (e.m) (e.p) () ;\n"
        "  M () ('p') () = () () ('c') ;\n"
        "  M ('m' e.m) (e.p) () = (e.m) (e.p) () ;\n"
        "  C () () ('c' e.c) = () () (e.c) ;\n"
        "  C (e.m) ('p' e.p) () = ('m' e.m) (e.p) () ;\n"
        "}\n"
        "Plus {\n"
        "  MM () () ('cc') = () ('pp') () ;\n"
        "  MM () () ('c') = ('m') ('p') () ;\n"
        "  MM (e.m) (e.p) () = ('mm' e.m) (e.p) () ;\n"
        "  CC ('mm' e.m) (e.p) () = (e.m) ('pp' e.p) () ;\n"
        "  CC () () (e.c) = () () ('cc' e.c) ;\n"
        "  MC (e.m) (e.p) () = (e.m) ('p' e.p) () ;\n"
        "  M () () ('c') = () ('p') () ;\n"
        "  M (e.m) (e.p) () = ('m' e.m) (e.p) () ;\n"
        "  C ('m' e.m) (e.p) () = (e.m) ('p' e.p) () ;\n"
        "  C () () (e.c) = () () ('c' e.c) ;\n"
        "}\n";
    return parse_program(text);
}

inline EncodedProblem encode_puzzle(const PuzzleSpec& spec) {
    Program p = build_puzzle_program(spec);
    Expression goal{call("MainInt", [&] {
        Expression args = encode_crowd(spec.missionaries, spec.cannibals);
        args.push_back(evar("path"));
        return args;
    }())};
    return {std::move(p), std::move(goal)};
}

// --- puzzle oracle -------------------------------------------------------------

struct PuzzleSolutions {
    int length = -1;                              // -1 when unsolvable
    std::set<std::vector<std::string>> paths;     // all shortest move lists
};

namespace detail {

struct PuzzleState {
    int m, c;     // on the left bank
    int side;     // 0 = boat left, 1 = boat right
    int last;     // index of previous move, -1 initially

    auto operator<=>(const PuzzleState&) const = default;
};

struct MoveDef {
    const char* name;
    int dm, dc;
};

inline const std::array<MoveDef, 5>& move_defs() {
    static const std::array<MoveDef, 5> defs{
        {{"MM", 2, 0}, {"CC", 0, 2}, {"MC", 1, 1}, {"M", 1, 0}, {"C", 0, 1}}};
    return defs;
}

}   // namespace detail

// Breadth-first search over (left bank, boat side); returns every shortest
// path. The flags mirror the interpreter variants.
inline PuzzleSolutions puzzle_oracle(int missionaries, int cannibals, bool restricted_move = false,
                                     bool block_repetition = false) {
    using detail::PuzzleState;
    PuzzleSolutions out;
    if (missionaries == 0 && cannibals == 0) {
        out.length = 0;
        out.paths.insert({});
        return out;
    }
    auto safe = [&](int m, int c) {
        int rm = missionaries - m, rc = cannibals - c;
        if (m < 0 || c < 0 || rm < 0 || rc < 0) return false;
        if (m > 0 && c > m) return false;
        if (rm > 0 && rc > rm) return false;
        return true;
    };
    auto allowed = [&](int mv, int side) {
        if (!restricted_move) return true;
        return side == 0 ? mv <= 2 : mv >= 3;   // pairs/doubles out, singles back
    };
    PuzzleState start{missionaries, cannibals, 0, -1};
    std::map<PuzzleState, int> dist{{start, 0}};
    std::map<PuzzleState, std::vector<std::pair<PuzzleState, int>>> parents;
    std::deque<PuzzleState> queue{start};
    int goal_dist = -1;
    std::vector<PuzzleState> goals;
    while (!queue.empty()) {
        PuzzleState s = queue.front();
        queue.pop_front();
        int d = dist[s];
        if (goal_dist >= 0 && d >= goal_dist) continue;
        const auto& defs = detail::move_defs();
        for (int i = 0; i < static_cast<int>(defs.size()); ++i) {
            if (!allowed(i, s.side)) continue;
            if (block_repetition && i == s.last) continue;
            int dir = s.side == 0 ? -1 : 1;
            PuzzleState n{s.m + dir * defs[i].dm, s.c + dir * defs[i].dc, 1 - s.side,
                          block_repetition ? i : -1};
            // the boat must actually carry its load from the departure bank
            int avail_m = s.side == 0 ? s.m : missionaries - s.m;
            int avail_c = s.side == 0 ? s.c : cannibals - s.c;
            if (defs[i].dm > avail_m || defs[i].dc > avail_c) continue;
            if (!safe(n.m, n.c)) continue;
            auto it = dist.find(n);
            int nd = d + 1;
            if (it == dist.end()) {
                dist.emplace(n, nd);
                parents[n].push_back({s, i});
                if (n.m == 0 && n.c == 0 && n.side == 1) {
                    if (goal_dist < 0) goal_dist = nd;
                    goals.push_back(n);
                } else {
                    queue.push_back(n);
                }
            } else if (it->second == nd) {
                parents[n].push_back({s, i});
            }
        }
    }
    if (goal_dist < 0) return out;
    out.length = goal_dist;
    // walk all parent chains back to the start
    std::vector<std::string> path;
    auto rec = [&](auto&& self, const PuzzleState& s) -> void {
        if (s == start) {
            out.paths.insert(std::vector<std::string>(path.rbegin(), path.rend()));
            return;
        }
        for (const auto& [prev, mv] : parents[s]) {
            path.push_back(detail::move_defs()[mv].name);
            self(self, prev);
            path.pop_back();
        }
    };
    for (const PuzzleState& g : goals) rec(rec, g);
    return out;
}

// Solvability table: cell [c][m] says whether m missionaries and c cannibals
// can all cross.
inline std::vector<std::vector<bool>> answer_matrix(int max_m, int max_c) {
    std::vector<std::vector<bool>> out;
    for (int c = 0; c <= max_c; ++c) {
        std::vector<bool> row;
        for (int m = 0; m <= max_m; ++m) row.push_back(puzzle_oracle(m, c).length >= 0);
        out.push_back(std::move(row));
    }
    return out;
}

}   // namespace scp
