// Core object language: symbols, terms, expressions, sentences, programs,
// substitutions, and the canonical printer.
//
// Expressions are flat sequences of terms; structure brackets give them tree
// shape. s-variables range over single symbols, e-variables over arbitrary
// (possibly empty) subsequences. Calls may appear only in sentence bodies.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scp {

struct Symbol {
    bool ident = false;   // identifier symbol (True, MC, ...) vs character symbol
    std::string text;

    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

inline Symbol chr(char c) { return Symbol{false, std::string(1, c)}; }
inline Symbol ident(std::string name) { return Symbol{true, std::move(name)}; }

struct Term;
using Expression = std::vector<Term>;

struct Term {
    enum class Kind { Sym, SVar, EVar, Bracket, Call };

    Kind kind = Kind::Sym;
    Symbol sym;            // Kind::Sym
    std::string name;      // variable name or call target
    Expression items;      // bracket body / call argument

    bool operator==(const Term&) const = default;
};

inline Term sym(Symbol s) { return Term{Term::Kind::Sym, std::move(s), {}, {}}; }
inline Term sym(char c) { return sym(chr(c)); }
inline Term id(std::string name) { return sym(ident(std::move(name))); }
inline Term svar(std::string name) { return Term{Term::Kind::SVar, {}, std::move(name), {}}; }
inline Term evar(std::string name) { return Term{Term::Kind::EVar, {}, std::move(name), {}}; }
inline Term bracket(Expression body) { return Term{Term::Kind::Bracket, {}, {}, std::move(body)}; }
inline Term call(std::string fn, Expression arg) {
    return Term{Term::Kind::Call, {}, std::move(fn), std::move(arg)};
}

struct Sentence {
    Expression pattern;   // call-free
    Expression body;

    bool operator==(const Sentence&) const = default;
};

struct Function {
    std::string name;
    std::vector<Sentence> sentences;   // ordered; empty only for trivial residuals

    bool operator==(const Function&) const = default;
};

struct Program {
    std::vector<Function> functions;   // definition order; entry listed first
    std::string entry;

    const Function* find(const std::string& name) const {
        for (const auto& f : functions)
            if (f.name == name) return &f;
        return nullptr;
    }
    bool operator==(const Program&) const = default;
};

// s-var names bind to a single Sym or SVar term; e-var names to expressions.
struct Subst {
    std::map<std::string, Term> s;
    std::map<std::string, Expression> e;

    bool empty() const { return s.empty() && e.empty(); }
};

inline Expression apply_subst(const Expression& expr, const Subst& st) {
    Expression out;
    out.reserve(expr.size());
    for (const Term& t : expr) {
        switch (t.kind) {
        case Term::Kind::Sym:
            out.push_back(t);
            break;
        case Term::Kind::SVar: {
            auto it = st.s.find(t.name);
            out.push_back(it == st.s.end() ? t : it->second);
            break;
        }
        case Term::Kind::EVar: {
            auto it = st.e.find(t.name);
            if (it == st.e.end()) {
                out.push_back(t);
            } else {
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
            break;
        }
        case Term::Kind::Bracket:
            out.push_back(bracket(apply_subst(t.items, st)));
            break;
        case Term::Kind::Call:
            out.push_back(call(t.name, apply_subst(t.items, st)));
            break;
        }
    }
    return out;
}

inline bool is_ground(const Expression& expr) {
    for (const Term& t : expr) {
        switch (t.kind) {
        case Term::Kind::SVar:
        case Term::Kind::EVar:
        case Term::Kind::Call:
            return false;
        case Term::Kind::Bracket:
            if (!is_ground(t.items)) return false;
            break;
        default:
            break;
        }
    }
    return true;
}

inline bool contains_call(const Expression& expr) {
    for (const Term& t : expr) {
        if (t.kind == Term::Kind::Call) return true;
        if (t.kind == Term::Kind::Bracket && contains_call(t.items)) return true;
    }
    return false;
}

inline bool contains_symbol(const Expression& expr, const Symbol& s) {
    for (const Term& t : expr) {
        if (t.kind == Term::Kind::Sym && t.sym == s) return true;
        if ((t.kind == Term::Kind::Bracket || t.kind == Term::Kind::Call) &&
            contains_symbol(t.items, s))
            return true;
    }
    return false;
}

// Free variables in first-occurrence order, left to right, outside-in.
struct VarRef {
    std::string name;
    bool is_evar = false;

    bool operator==(const VarRef&) const = default;
    auto operator<=>(const VarRef&) const = default;
};

inline void collect_vars(const Expression& expr, std::vector<VarRef>& out) {
    auto seen = [&out](const VarRef& v) {
        for (const auto& w : out)
            if (w == v) return true;
        return false;
    };
    for (const Term& t : expr) {
        switch (t.kind) {
        case Term::Kind::SVar:
            if (!seen({t.name, false})) out.push_back({t.name, false});
            break;
        case Term::Kind::EVar:
            if (!seen({t.name, true})) out.push_back({t.name, true});
            break;
        case Term::Kind::Bracket:
        case Term::Kind::Call:
            collect_vars(t.items, out);
            break;
        default:
            break;
        }
    }
}

inline std::vector<VarRef> free_vars(const Expression& expr) {
    std::vector<VarRef> out;
    collect_vars(expr, out);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical printer. Adjacent character symbols merge into one quoted run.

inline void print_expr(const Expression& expr, std::string& out);

inline void print_term(const Term& t, std::string& out) {
    switch (t.kind) {
    case Term::Kind::Sym:
        if (t.sym.ident) {
            out += t.sym.text;
        } else {
            out += '\'';
            out += t.sym.text;
            out += '\'';
        }
        break;
    case Term::Kind::SVar:
        out += "s.";
        out += t.name;
        break;
    case Term::Kind::EVar:
        out += "e.";
        out += t.name;
        break;
    case Term::Kind::Bracket:
        out += '(';
        print_expr(t.items, out);
        out += ')';
        break;
    case Term::Kind::Call:
        out += '<';
        out += t.name;
        if (!t.items.empty()) {
            out += ' ';
            print_expr(t.items, out);
        }
        out += '>';
        break;
    }
}

inline void print_expr(const Expression& expr, std::string& out) {
    bool in_chars = false;
    bool first = true;
    for (const Term& t : expr) {
        bool is_char = t.kind == Term::Kind::Sym && !t.sym.ident;
        if (in_chars && is_char) {
            out.pop_back();   // reopen the quoted run
            out += t.sym.text;
            out += '\'';
            continue;
        }
        if (!first) out += ' ';
        print_term(t, out);
        first = false;
        in_chars = is_char;
    }
}

inline std::string to_string(const Expression& expr) {
    std::string out;
    print_expr(expr, out);
    return out;
}

inline std::string to_string(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

inline std::string print_program(const Program& p) {
    std::string out;
    for (const Function& f : p.functions) {
        out += f.name;
        out += " {\n";
        for (const Sentence& s : f.sentences) {
            out += "  ";
            print_expr(s.pattern, out);
            if (!s.pattern.empty()) out += ' ';
            out += "=";
            if (!s.body.empty()) {
                out += ' ';
                print_expr(s.body, out);
            }
            out += " ;\n";
        }
        out += "}\n";
    }
    return out;
}

}   // namespace scp
