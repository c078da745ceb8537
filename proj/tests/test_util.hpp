#pragma once

#include <fstream>
#include <random>
#include <sstream>

#include "scp/scp.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline scp::Program load_fixture(const std::string& name) {
    return scp::parse_program(read_file(std::string(FIXTURES_DIR) + "/" + name));
}

// --- random term generation -------------------------------------------------

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
    bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(gen) < p; }
};

inline scp::Expression random_ground(Rng& rng, int max_terms, int depth = 0) {
    scp::Expression out;
    int n = rng.below(max_terms + 1);
    for (int i = 0; i < n; ++i) {
        int kind = rng.below(depth < 2 ? 4 : 3);
        switch (kind) {
        case 0: out.push_back(scp::sym(scp::chr("ab"[rng.below(2)]))); break;
        case 1: out.push_back(scp::sym(scp::chr('c'))); break;
        case 2: out.push_back(scp::id(rng.chance(0.5) ? "True" : "Blue")); break;
        default: out.push_back(scp::bracket(random_ground(rng, max_terms - 1, depth + 1)));
        }
    }
    return out;
}

// A random pattern obeying the rules: no calls, at most one open e-variable
// per level, no repeated e-variables.
inline scp::Expression random_pattern(Rng& rng, int& var_counter, int max_terms, int depth = 0) {
    scp::Expression out;
    int n = rng.below(max_terms + 1);
    bool evar_used = false;
    for (int i = 0; i < n; ++i) {
        int kind = rng.below(depth < 2 ? 6 : 5);
        switch (kind) {
        case 0: out.push_back(scp::sym(scp::chr("ab"[rng.below(2)]))); break;
        case 1: out.push_back(scp::sym(scp::chr('c'))); break;
        case 2: out.push_back(scp::id("True")); break;
        case 3:
            // repeated s-variables are allowed, so reuse names sometimes
            out.push_back(scp::svar("v" + std::to_string(rng.below(3))));
            break;
        case 4:
            if (!evar_used) {
                evar_used = true;
                out.push_back(scp::evar("w" + std::to_string(var_counter++)));
            }
            break;
        default:
            out.push_back(scp::bracket(random_pattern(rng, var_counter, max_terms - 1, depth + 1)));
        }
    }
    return out;
}

// --- reference matcher --------------------------------------------------------
//
// Full backtracking matcher with no restriction on e-variables; the oracle
// that the deterministic matcher must agree with on restricted patterns.

inline bool oracle_match_seq(const scp::Expression& pat, size_t pi, const scp::Expression& arg,
                             size_t ai, scp::Subst& st);

inline bool oracle_match_rest(const scp::Expression& pat, size_t pi, const scp::Expression& arg,
                              size_t ai, scp::Subst& st) {
    using K = scp::Term::Kind;
    if (pi == pat.size()) return ai == arg.size();
    const scp::Term& p = pat[pi];
    switch (p.kind) {
    case K::EVar: {
        auto it = st.e.find(p.name);
        if (it != st.e.end()) {
            const scp::Expression& v = it->second;
            if (ai + v.size() > arg.size() ||
                !std::equal(v.begin(), v.end(), arg.begin() + ai))
                return false;
            return oracle_match_rest(pat, pi + 1, arg, ai + v.size(), st);
        }
        for (size_t k = 0; ai + k <= arg.size(); ++k) {
            scp::Subst saved = st;
            st.e.emplace(p.name, scp::Expression(arg.begin() + ai, arg.begin() + ai + k));
            if (oracle_match_rest(pat, pi + 1, arg, ai + k, st)) return true;
            st = saved;
        }
        return false;
    }
    case K::SVar: {
        if (ai >= arg.size() || arg[ai].kind != K::Sym) return false;
        auto it = st.s.find(p.name);
        if (it != st.s.end()) {
            if (!(it->second == arg[ai])) return false;
        } else {
            st.s.emplace(p.name, arg[ai]);
        }
        return oracle_match_rest(pat, pi + 1, arg, ai + 1, st);
    }
    case K::Sym:
        if (ai >= arg.size() || !(arg[ai] == p)) return false;
        return oracle_match_rest(pat, pi + 1, arg, ai + 1, st);
    case K::Bracket: {
        if (ai >= arg.size() || arg[ai].kind != K::Bracket) return false;
        scp::Subst saved = st;
        if (oracle_match_seq(p.items, 0, arg[ai].items, 0, st) &&
            oracle_match_rest(pat, pi + 1, arg, ai + 1, st))
            return true;
        st = saved;
        return false;
    }
    default:
        return false;
    }
}

inline bool oracle_match_seq(const scp::Expression& pat, size_t pi, const scp::Expression& arg,
                             size_t ai, scp::Subst& st) {
    return oracle_match_rest(pat, pi, arg, ai, st);
}

inline std::optional<scp::Subst> oracle_match(const scp::Expression& pat,
                                              const scp::Expression& arg) {
    scp::Subst st;
    if (oracle_match_rest(pat, 0, arg, 0, st)) return st;
    return std::nullopt;
}

// --- goal instantiation ---------------------------------------------------------

// Replaces every free variable of the expression by random ground data:
// s-variables by a symbol, e-variables by a word over the pool.
inline scp::Expression random_instance(const scp::Expression& goal, Rng& rng,
                                       const std::vector<scp::Symbol>& pool, int max_word) {
    scp::Subst st;
    for (const scp::VarRef& v : scp::free_vars(goal)) {
        if (v.is_evar) {
            scp::Expression w;
            int n = rng.below(max_word + 1);
            for (int i = 0; i < n; ++i) w.push_back(scp::sym(pool[rng.below((int)pool.size())]));
            st.e.emplace(v.name, std::move(w));
        } else {
            st.s.emplace(v.name, scp::sym(pool[rng.below((int)pool.size())]));
        }
    }
    return scp::apply_subst(goal, st);
}

}   // namespace testutil
