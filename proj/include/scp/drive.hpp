// Driving: one symbolic evaluation step of a configuration (an expression
// with free variables). Where the evaluator would need to know the value of
// a variable, driving splits into branches, each labeled with a contraction
// that refines the variable. Branches also carry inequality constraints on
// s-variables so that alternatives excluded by an earlier "no" answer are
// never re-explored.
#pragma once

#include <cstdint>
#include <utility>

#include "lang.hpp"

namespace scp {

class NameGen {
public:
    NameGen() = default;

    // Reserve every variable name occurring in the program and goal so fresh
    // names never collide.
    NameGen(const Program& p, const Expression& goal) {
        for (const Function& f : p.functions)
            for (const Sentence& s : f.sentences) {
                reserve(s.pattern);
                reserve(s.body);
            }
        reserve(goal);
    }

    std::string fresh() {
        std::string n;
        do {
            n = std::to_string(next_++);
        } while (used_.count(n));
        return n;
    }

    void reserve(const Expression& e) {
        for (const Term& t : e) {
            if (t.kind == Term::Kind::SVar || t.kind == Term::Kind::EVar) used_.insert(t.name);
            if (t.kind == Term::Kind::Bracket || t.kind == Term::Kind::Call) reserve(t.items);
        }
    }

private:
    std::set<std::string> used_;
    std::uint64_t next_ = 1;
};

struct Contraction {
    enum class Kind {
        EvarEmpty,         // e.v := []
        EvarSym,           // e.v := s.f e.v
        EvarBracket,       // e.v := (e.f) e.v
        EvarSymBack,       // e.v := e.v s.f
        EvarBracketBack,   // e.v := e.v (e.f)
        SvarSym,           // s.v := 'c' / Name
        SvarUnify,         // s.v := s.o
        SvarNeqSym,        // s.v # 'c'
        SvarNeqVar,        // s.v # s.o
    };
    Kind kind;
    std::string var;
    Symbol symval;       // SvarSym / SvarNeqSym
    std::string other;   // fresh name for Evar* variants, other variable otherwise

    bool operator==(const Contraction&) const = default;

    bool is_binding() const { return kind != Kind::SvarNeqSym && kind != Kind::SvarNeqVar; }

    Subst as_subst() const {
        Subst st;
        switch (kind) {
        case Kind::EvarEmpty: st.e.emplace(var, Expression{}); break;
        case Kind::EvarSym: st.e.emplace(var, Expression{svar(other), evar(var)}); break;
        case Kind::EvarBracket:
            st.e.emplace(var, Expression{bracket({evar(other)}), evar(var)});
            break;
        case Kind::EvarSymBack: st.e.emplace(var, Expression{evar(var), svar(other)}); break;
        case Kind::EvarBracketBack:
            st.e.emplace(var, Expression{evar(var), bracket({evar(other)})});
            break;
        case Kind::SvarSym: st.s.emplace(var, sym(symval)); break;
        case Kind::SvarUnify: st.s.emplace(var, svar(other)); break;
        default: break;
        }
        return st;
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::EvarEmpty: return "e." + var + " := ";
        case Kind::EvarSym: return "e." + var + " := s." + other + " e." + var;
        case Kind::EvarBracket: return "e." + var + " := (e." + other + ") e." + var;
        case Kind::EvarSymBack: return "e." + var + " := e." + var + " s." + other;
        case Kind::EvarBracketBack: return "e." + var + " := e." + var + " (e." + other + ")";
        case Kind::SvarSym:
            return "s." + var + " := " + (symval.ident ? symval.text : "'" + symval.text + "'");
        case Kind::SvarUnify: return "s." + var + " := s." + other;
        case Kind::SvarNeqSym:
            return "s." + var + " # " + (symval.ident ? symval.text : "'" + symval.text + "'");
        case Kind::SvarNeqVar: return "s." + var + " # s." + other;
        }
        return {};
    }
};

// A set of disequality atoms between symbol-valued terms (Sym or SVar).
struct Neqs {
    std::vector<std::pair<Term, Term>> atoms;

    bool operator==(const Neqs&) const = default;

    static std::pair<Term, Term> norm(Term a, Term b) {
        if (to_string(b) < to_string(a)) std::swap(a, b);
        return {std::move(a), std::move(b)};
    }

    bool contains(const Term& a, const Term& b) const {
        auto p = norm(a, b);
        for (const auto& q : atoms)
            if (q == p) return true;
        return false;
    }

    // Returns false when the atom is refutable (a == b); drops atoms that are
    // already true on the ground (two distinct symbols).
    bool add(const Term& a, const Term& b) {
        if (a == b) return false;
        if (a.kind == Term::Kind::Sym && b.kind == Term::Kind::Sym) return true;
        if (!contains(a, b)) atoms.push_back(norm(a, b));
        return true;
    }

    // Applies a substitution; nullopt when some atom becomes refuted.
    std::optional<Neqs> substituted(const Subst& st) const {
        Neqs out;
        for (const auto& [a, b] : atoms) {
            Expression ea = apply_subst(Expression{a}, st);
            Expression eb = apply_subst(Expression{b}, st);
            if (!out.add(ea.at(0), eb.at(0))) return std::nullopt;
        }
        return out;
    }
};

// Path to the innermost-leftmost call: indices into nested `items` vectors.
using RedexPath = std::vector<size_t>;

inline std::optional<RedexPath> find_redex(const Expression& e) {
    for (size_t i = 0; i < e.size(); ++i) {
        const Term& t = e[i];
        if (t.kind == Term::Kind::Bracket || t.kind == Term::Kind::Call) {
            if (auto inner = find_redex(t.items)) {
                inner->insert(inner->begin(), i);
                return inner;
            }
            if (t.kind == Term::Kind::Call) return RedexPath{i};
        }
    }
    return std::nullopt;
}

inline const Term& term_at(const Expression& e, const RedexPath& path, size_t depth = 0) {
    const Term& t = e.at(path.at(depth));
    return depth + 1 == path.size() ? t : term_at(t.items, path, depth + 1);
}

// Replaces the term at `path` by `repl`, spliced into the surrounding level.
inline Expression splice_at(const Expression& e, const RedexPath& path, const Expression& repl,
                            size_t depth = 0) {
    Expression out;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i != path.at(depth)) {
            out.push_back(e[i]);
        } else if (depth + 1 == path.size()) {
            out.insert(out.end(), repl.begin(), repl.end());
        } else {
            Term t = e[i];
            t.items = splice_at(e[i].items, path, repl, depth + 1);
            out.push_back(std::move(t));
        }
    }
    return out;
}

namespace detail {

struct SymMatch {
    enum class St { Success, Fail, Split };
    St st = St::Fail;
    Subst theta;
    std::vector<Contraction> split;

    static SymMatch fail() { return {}; }
    static SymMatch splitting(std::vector<Contraction> cs) {
        SymMatch m;
        m.st = St::Split;
        m.split = std::move(cs);
        return m;
    }
};

class SymMatcher {
public:
    SymMatcher(const Neqs& neqs, NameGen& gen) : neqs_(neqs), gen_(gen) {}

    SymMatch run(const Expression& pat, const Expression& arg) {
        theta_ = {};
        SymMatch m;
        m.st = match_seq(pat, arg, m);
        if (m.st == SymMatch::St::Success) m.theta = theta_;
        return m;
    }

private:
    const Neqs& neqs_;
    NameGen& gen_;
    Subst theta_;

    std::vector<Contraction> split_evar(const std::string& name, bool back) {
        using K = Contraction::Kind;
        std::string fs = gen_.fresh();
        std::string fb = gen_.fresh();
        return {
            Contraction{K::EvarEmpty, name, {}, {}},
            Contraction{back ? K::EvarSymBack : K::EvarSym, name, {}, fs},
            Contraction{back ? K::EvarBracketBack : K::EvarBracket, name, {}, fb},
        };
    }

    // Compares two symbol-valued terms (Sym or SVar from the configuration).
    SymMatch::St sym_eq(const Term& a, const Term& b, SymMatch& out) {
        using St = SymMatch::St;
        if (a == b) return St::Success;
        if (a.kind == Term::Kind::Sym && b.kind == Term::Kind::Sym) return St::Fail;
        if (neqs_.contains(a, b)) return St::Fail;
        const Term& v = a.kind == Term::Kind::SVar ? a : b;
        const Term& o = a.kind == Term::Kind::SVar ? b : a;
        Contraction bind, neq;
        if (o.kind == Term::Kind::Sym) {
            bind = Contraction{Contraction::Kind::SvarSym, v.name, o.sym, {}};
            neq = Contraction{Contraction::Kind::SvarNeqSym, v.name, o.sym, {}};
        } else {
            bind = Contraction{Contraction::Kind::SvarUnify, v.name, {}, o.name};
            neq = Contraction{Contraction::Kind::SvarNeqVar, v.name, {}, o.name};
        }
        out = SymMatch::splitting({std::move(bind), std::move(neq)});
        return St::Split;
    }

    // Matches one non-e-variable pattern term against one configuration term
    // that is not an e-variable.
    SymMatch::St match_one(const Term& p, const Term& a, SymMatch& out) {
        using St = SymMatch::St;
        switch (p.kind) {
        case Term::Kind::Sym:
            if (a.kind == Term::Kind::Bracket) return St::Fail;
            return sym_eq(p, a, out);
        case Term::Kind::SVar: {
            if (a.kind == Term::Kind::Bracket) return St::Fail;
            auto it = theta_.s.find(p.name);
            if (it != theta_.s.end()) return sym_eq(it->second, a, out);
            theta_.s.emplace(p.name, a);
            return St::Success;
        }
        case Term::Kind::Bracket:
            if (a.kind != Term::Kind::Bracket) return St::Fail;
            return match_seq(p.items, a.items, out);
        default:
            return St::Fail;
        }
    }

    SymMatch::St match_seq(const Expression& pat, const Expression& arg, SymMatch& out) {
        using St = SymMatch::St;
        size_t pi = 0, ai = 0;
        size_t pj = pat.size(), aj = arg.size();
        while (pi < pj && pat[pi].kind != Term::Kind::EVar) {
            if (ai >= aj) return St::Fail;
            if (arg[ai].kind == Term::Kind::EVar) {
                out = SymMatch::splitting(split_evar(arg[ai].name, false));
                return St::Split;
            }
            St r = match_one(pat[pi], arg[ai], out);
            if (r != St::Success) return r;
            ++pi;
            ++ai;
        }
        if (pi == pj) {
            if (ai == aj) return St::Success;
            if (arg[ai].kind == Term::Kind::EVar) {
                out = SymMatch::splitting(split_evar(arg[ai].name, false));
                return St::Split;
            }
            return St::Fail;
        }
        while (pj - 1 > pi) {
            if (aj <= ai) return St::Fail;
            if (arg[aj - 1].kind == Term::Kind::EVar) {
                out = SymMatch::splitting(split_evar(arg[aj - 1].name, true));
                return St::Split;
            }
            St r = match_one(pat[pj - 1], arg[aj - 1], out);
            if (r != St::Success) return r;
            --pj;
            --aj;
        }
        theta_.e.emplace(pat[pi].name, Expression(arg.begin() + ai, arg.begin() + aj));
        return St::Success;
    }
};

}   // namespace detail

struct Branch {
    std::vector<Contraction> contractions;
    Expression config;
    Neqs neqs;
    bool abnormal = false;
    int sentence = -1;   // index of the matched sentence, -1 when abnormal
};

struct DriveResult {
    bool leaf = false;   // no call left in the configuration
    std::vector<Branch> branches;

    bool transient() const {
        return branches.size() == 1 && branches[0].contractions.empty() && !branches[0].abnormal;
    }
};

namespace detail {

inline void drive_into(const Expression& config, const Neqs& neqs,
                       std::vector<Contraction> acc, size_t sentence_from, const Program& p,
                       NameGen& gen, std::vector<Branch>& out) {
    RedexPath path = *find_redex(config);
    const Term& redex = term_at(config, path);
    const Function* f = p.find(redex.name);
    if (!f) throw std::logic_error("call to undefined function " + redex.name);
    for (size_t i = sentence_from; i < f->sentences.size(); ++i) {
        const Sentence& s = f->sentences[i];
        SymMatch m = SymMatcher(neqs, gen).run(s.pattern, redex.items);
        switch (m.st) {
        case SymMatch::St::Success:
            out.push_back(Branch{std::move(acc), splice_at(config, path, apply_subst(s.body, m.theta)),
                                 neqs, false, static_cast<int>(i)});
            return;
        case SymMatch::St::Fail:
            continue;
        case SymMatch::St::Split:
            for (const Contraction& c : m.split) {
                std::vector<Contraction> acc2 = acc;
                acc2.push_back(c);
                if (c.is_binding()) {
                    Subst st = c.as_subst();
                    auto neqs2 = neqs.substituted(st);
                    if (!neqs2) continue;   // excluded by an inequality already known
                    drive_into(apply_subst(config, st), *neqs2, std::move(acc2), i, p, gen, out);
                } else {
                    Neqs neqs2 = neqs;
                    if (!neqs2.add(c.kind == Contraction::Kind::SvarNeqSym ? sym(c.symval)
                                                                           : svar(c.other),
                                   svar(c.var)))
                        continue;
                    drive_into(config, neqs2, std::move(acc2), i, p, gen, out);
                }
            }
            return;
        }
    }
    out.push_back(Branch{std::move(acc), config, neqs, true, -1});
}

}   // namespace detail

inline DriveResult drive_step(const Expression& config, const Neqs& neqs, const Program& p,
                              NameGen& gen) {
    DriveResult r;
    if (!find_redex(config)) {
        r.leaf = true;
        return r;
    }
    detail::drive_into(config, neqs, {}, 0, p, gen, r.branches);
    return r;
}

}   // namespace scp
