// Ground pattern matching. With at most one open e-variable per bracket
// level, matching needs no backtracking: consume the pattern from the front
// up to the e-variable, then from the back, and bind the e-variable to
// whatever subsequence remains.
#pragma once

#include "lang.hpp"

namespace scp {

namespace detail {

inline bool match_seq(const Expression& pat, const Expression& arg, Subst& st);

inline bool match_one(const Term& p, const Term& a, Subst& st) {
    switch (p.kind) {
    case Term::Kind::Sym:
        return a.kind == Term::Kind::Sym && a.sym == p.sym;
    case Term::Kind::SVar: {
        if (a.kind != Term::Kind::Sym) return false;
        auto it = st.s.find(p.name);
        if (it != st.s.end()) return it->second == a;
        st.s.emplace(p.name, a);
        return true;
    }
    case Term::Kind::Bracket:
        return a.kind == Term::Kind::Bracket && match_seq(p.items, a.items, st);
    default:
        return false;
    }
}

inline bool match_seq(const Expression& pat, const Expression& arg, Subst& st) {
    size_t pi = 0, ai = 0;
    size_t pj = pat.size(), aj = arg.size();
    while (pi < pj && pat[pi].kind != Term::Kind::EVar) {
        if (ai >= aj || !match_one(pat[pi], arg[ai], st)) return false;
        ++pi;
        ++ai;
    }
    if (pi == pj) return ai == aj;
    while (pj - 1 > pi) {
        if (aj <= ai || !match_one(pat[pj - 1], arg[aj - 1], st)) return false;
        --pj;
        --aj;
    }
    st.e.emplace(pat[pi].name, Expression(arg.begin() + ai, arg.begin() + aj));
    return true;
}

}   // namespace detail

// Matches a ground argument against a pattern; returns the substitution on
// success. The argument must contain no variables or calls.
inline std::optional<Subst> match(const Expression& pattern, const Expression& arg) {
    Subst st;
    if (detail::match_seq(pattern, arg, st)) return st;
    return std::nullopt;
}

}   // namespace scp
