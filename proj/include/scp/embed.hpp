// Homeomorphic embedding on configurations, the whistle that triggers
// generalization. a is embedded in b when a can be obtained from b by
// deleting terms; variables of the same kind embed each other.
#pragma once

#include "lang.hpp"

namespace scp {

namespace detail {

inline bool embeds_seq(const Expression& a, const Expression& b);

inline bool embeds_term(const Term& a, const Term& b) {
    switch (a.kind) {
    case Term::Kind::Sym:
        if (b.kind == Term::Kind::Sym) return a.sym == b.sym;
        break;
    case Term::Kind::SVar:
        if (b.kind == Term::Kind::SVar) return true;
        break;
    case Term::Kind::EVar:
        return b.kind == Term::Kind::EVar;
    case Term::Kind::Bracket:
        if (b.kind == Term::Kind::Bracket) return embeds_seq(a.items, b.items);
        break;
    case Term::Kind::Call:
        if (b.kind == Term::Kind::Call && a.name == b.name) return embeds_seq(a.items, b.items);
        break;
    }
    // diving: a embedded in some subterm of b
    if (b.kind == Term::Kind::Bracket || b.kind == Term::Kind::Call)
        return embeds_seq(Expression{a}, b.items);
    return false;
}

inline bool embeds_seq(const Expression& a, const Expression& b) {
    // a must embed into b keeping order; classic subsequence dynamic program.
    size_t n = a.size(), m = b.size();
    if (n == 0) return true;
    std::vector<std::vector<char>> ok(n + 1, std::vector<char>(m + 1, 0));
    for (size_t j = 0; j <= m; ++j) ok[0][j] = 1;
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= m; ++j)
            ok[i][j] = (ok[i][j - 1] || (ok[i - 1][j - 1] && embeds_term(a[i - 1], b[j - 1]))) ? 1 : 0;
    return ok[n][m];
}

}   // namespace detail

inline bool embeds(const Expression& a, const Expression& b) {
    return detail::embeds_seq(a, b);
}

}   // namespace scp
