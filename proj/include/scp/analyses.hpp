// Syntactic and semi-semantic analyses of residual programs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "drive.hpp"
#include "eval.hpp"
#include "lang.hpp"

namespace scp {

namespace detail {

inline void body_calls(const Expression& e, std::vector<std::string>& out) {
    for (const Term& t : e) {
        if (t.kind == Term::Kind::Call) out.push_back(t.name);
        if (t.kind == Term::Kind::Call || t.kind == Term::Kind::Bracket) body_calls(t.items, out);
    }
}

inline std::set<std::string> reachable(const Program& p) {
    std::set<std::string> live;
    std::vector<std::string> todo{p.entry};
    while (!todo.empty()) {
        std::string fn = todo.back();
        todo.pop_back();
        if (!live.insert(fn).second) continue;
        if (const Function* f = p.find(fn))
            for (const Sentence& s : f->sentences) body_calls(s.body, todo);
    }
    return live;
}

}   // namespace detail

// Whether any sentence reachable from the entry can mention True at all.
inline bool returns_true(const Program& p) {
    for (const std::string& fn : detail::reachable(p)) {
        const Function* f = p.find(fn);
        if (!f) continue;
        for (const Sentence& s : f->sentences)
            if (contains_symbol(s.body, ident("True"))) return true;
    }
    return false;
}

// Whether the entry function has no sentences: every input is rejected.
inline bool is_empty(const Program& p) {
    const Function* f = p.find(p.entry);
    return f && f->sentences.empty();
}

// --- accepted-word enumeration ----------------------------------------------
//
// A word w (a flat run of symbols) is accepted when <entry w> evaluates to a
// value containing True. Enumeration walks the prefix tree over the given
// alphabet; a prefix is dropped when driving <entry prefix e.t> reaches
// "recognition impossible" on every branch, which is exact rejection, so
// pruning never loses an accepted word.

struct Enumeration {
    std::vector<Expression> accepted;   // shortest first, then alphabet order
    bool complete = true;               // false when the node budget ran out
};

namespace detail {

inline bool prefix_feasible(const Program& p, Expression config, bool alphabet_has_true,
                            std::uint64_t step_limit) {
    Neqs none;
    NameGen gen(p, config);
    for (std::uint64_t i = 0; i < step_limit; ++i) {
        if (!find_redex(config)) {
            if (contains_symbol(config, ident("True"))) return true;
            return alphabet_has_true && !free_vars(config).empty();
        }
        DriveResult d = drive_step(config, none, p, gen);
        std::vector<Branch*> live;
        for (Branch& b : d.branches)
            if (!b.abnormal) live.push_back(&b);
        if (live.empty()) return false;
        if (live.size() == 1 && live[0]->contractions.empty()) {
            config = std::move(live[0]->config);
            continue;
        }
        return true;   // a genuine split: the variable part is still in play
    }
    return true;
}

}   // namespace detail

inline Enumeration enumerate_accepted(const Program& p, const std::vector<Symbol>& alphabet,
                                      size_t max_len, std::uint64_t eval_budget = 1'000'000,
                                      std::uint64_t frontier_budget = 200'000) {
    Enumeration out;
    std::vector<Expression> frontier{Expression{}};
    std::uint64_t visited = 0;
    for (size_t len = 0; len <= max_len; ++len) {
        std::vector<Expression> next;
        for (const Expression& w : frontier) {
            if (++visited > frontier_budget) {
                out.complete = false;
                return out;
            }
            EvalOutcome r = eval(p, {call(p.entry, w)}, eval_budget);
            if (r.is_value() && contains_symbol(r.value, ident("True"))) out.accepted.push_back(w);
            if (len == max_len) continue;
            Expression probe = w;
            probe.push_back(evar("probe_tail"));
            bool has_true = std::find(alphabet.begin(), alphabet.end(), ident("True")) !=
                            alphabet.end();
            if (!detail::prefix_feasible(p, {call(p.entry, probe)}, has_true, 10'000)) continue;
            for (const Symbol& s : alphabet) {
                Expression w2 = w;
                w2.push_back(sym(s));
                next.push_back(std::move(w2));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

// All accepted words of minimal length, up to max_len; empty if none exist.
inline std::vector<Expression> shortest_accepted(const Program& p,
                                                 const std::vector<Symbol>& alphabet,
                                                 size_t max_len,
                                                 std::uint64_t eval_budget = 1'000'000) {
    Enumeration e = enumerate_accepted(p, alphabet, max_len, eval_budget);
    std::vector<Expression> out;
    for (const Expression& w : e.accepted) {
        if (!out.empty() && w.size() > out.front().size()) break;
        out.push_back(w);
    }
    return out;
}

// --- call graph ---------------------------------------------------------------

struct Graph {
    struct Edge {
        std::string from, to, label;
        bool operator==(const Edge&) const = default;
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
};

inline Graph to_graph(const Program& p) {
    Graph g;
    std::map<std::string, std::string> rets;   // printed body -> ret vertex
    for (const Function& f : p.functions) g.vertices.push_back(f.name);
    for (const Function& f : p.functions) {
        for (const Sentence& s : f.sentences) {
            std::vector<std::string> calls;
            detail::body_calls(s.body, calls);
            std::string to;
            if (!calls.empty()) {
                to = calls.front();
            } else {
                std::string printed = to_string(s.body);
                auto it = rets.find(printed);
                if (it == rets.end()) {
                    to = "ret" + std::to_string(rets.size());
                    rets.emplace(printed, to);
                    g.vertices.push_back(to);
                } else {
                    to = it->second;
                }
            }
            g.edges.push_back({f.name, to, to_string(s.pattern)});
        }
    }
    return g;
}

inline std::string to_dot(const Program& p) {
    Graph g = to_graph(p);
    std::ostringstream os;
    os << "digraph residual {\n";
    for (const std::string& v : g.vertices) os << "  \"" << v << "\";\n";
    for (const Graph::Edge& e : g.edges)
        os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

// --- alpha equivalence ---------------------------------------------------------
//
// Two programs are considered the same when they agree up to consistent
// renaming of functions and of variables within each sentence. Functions are
// ordered entry first, then by first call occurrence.

namespace detail {

inline void canon_vars(Expression& e, std::map<std::string, std::string>& m, int& next) {
    for (Term& t : e) {
        if (t.kind == Term::Kind::SVar || t.kind == Term::Kind::EVar) {
            auto it = m.find((t.kind == Term::Kind::SVar ? "s" : "e") + t.name);
            if (it == m.end()) {
                std::string v = std::to_string(++next);
                m.emplace((t.kind == Term::Kind::SVar ? "s" : "e") + t.name, v);
                t.name = v;
            } else {
                t.name = it->second;
            }
        } else if (t.kind == Term::Kind::Bracket || t.kind == Term::Kind::Call) {
            canon_vars(t.items, m, next);
        }
    }
}

inline void canon_fn_names(Expression& e, const std::map<std::string, std::string>& m) {
    for (Term& t : e) {
        if (t.kind == Term::Kind::Call) {
            auto it = m.find(t.name);
            if (it != m.end()) t.name = it->second;
        }
        if (t.kind == Term::Kind::Call || t.kind == Term::Kind::Bracket)
            canon_fn_names(t.items, m);
    }
}

}   // namespace detail

inline Program canonicalize(const Program& p) {
    // order: entry, then functions in order of first call, then the rest
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::vector<std::string> queue{p.entry};
    size_t qi = 0;
    while (qi < queue.size()) {
        std::string fn = queue[qi++];
        if (!seen.insert(fn).second) continue;
        order.push_back(fn);
        if (const Function* f = p.find(fn))
            for (const Sentence& s : f->sentences) detail::body_calls(s.body, queue);
    }
    for (const Function& f : p.functions)
        if (!seen.count(f.name)) order.push_back(f.name);

    std::map<std::string, std::string> names;
    int k = 0;
    for (const std::string& fn : order)
        names[fn] = fn == p.entry ? "Entry" : "F" + std::to_string(++k);

    Program out;
    out.entry = "Entry";
    for (const std::string& fn : order) {
        const Function* f = p.find(fn);
        if (!f) continue;
        Function g;
        g.name = names[fn];
        for (Sentence s : f->sentences) {
            std::map<std::string, std::string> vm;
            int next = 0;
            detail::canon_vars(s.pattern, vm, next);
            detail::canon_vars(s.body, vm, next);
            detail::canon_fn_names(s.body, names);
            g.sentences.push_back(std::move(s));
        }
        out.functions.push_back(std::move(g));
    }
    return out;
}

inline bool alpha_equivalent(const Program& a, const Program& b) {
    return canonicalize(a) == canonicalize(b);
}

}   // namespace scp
