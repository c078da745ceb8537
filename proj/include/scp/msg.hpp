// Most specific generalization of two configurations: a generalized
// expression g and substitutions sa, sb with g·sa == a and g·sb == b.
// Common structure is kept term by term from both ends of each sequence;
// whatever differs in the middle is abstracted by a fresh e-variable, and
// differing symbol positions by a fresh s-variable. Equal abstracted pairs
// share one variable, which is what makes the result most specific.
#pragma once

#include "drive.hpp"
#include "lang.hpp"

namespace scp {

struct MsgResult {
    Expression g;
    Subst sa, sb;
};

namespace detail {

class MsgBuilder {
public:
    explicit MsgBuilder(NameGen& gen) : gen_(gen) {}

    Expression seq(const Expression& a, const Expression& b, Subst& sa, Subst& sb) {
        size_t ai = 0, bi = 0;
        size_t aj = a.size(), bj = b.size();
        Expression front, back;
        while (ai < aj && bi < bj) {
            auto t = term(a[ai], b[bi], sa, sb);
            if (!t) break;
            front.push_back(std::move(*t));
            ++ai;
            ++bi;
        }
        while (aj > ai && bj > bi) {
            auto t = term(a[aj - 1], b[bj - 1], sa, sb);
            if (!t) break;
            back.insert(back.begin(), std::move(*t));
            --aj;
            --bj;
        }
        if (ai != aj || bi != bj) {
            Expression ma(a.begin() + ai, a.begin() + aj);
            Expression mb(b.begin() + bi, b.begin() + bj);
            std::string v = shared_evar(ma, mb);
            sa.e.emplace(v, std::move(ma));
            sb.e.emplace(v, std::move(mb));
            front.push_back(evar(v));
        }
        front.insert(front.end(), back.begin(), back.end());
        return front;
    }

private:
    NameGen& gen_;
    // printed (a, b) pair -> variable already abstracting it
    std::map<std::pair<std::string, std::string>, std::string> seen_;

    std::string shared_evar(const Expression& ma, const Expression& mb) {
        auto key = std::make_pair("e" + to_string(ma), "e" + to_string(mb));
        auto it = seen_.find(key);
        if (it != seen_.end()) return it->second;
        std::string v = gen_.fresh();
        seen_.emplace(std::move(key), v);
        return v;
    }

    std::optional<Term> term(const Term& a, const Term& b, Subst& sa, Subst& sb) {
        if (a == b) return a;
        if (a.kind == Term::Kind::Bracket && b.kind == Term::Kind::Bracket)
            return bracket(seq(a.items, b.items, sa, sb));
        if (a.kind == Term::Kind::Call && b.kind == Term::Kind::Call && a.name == b.name)
            return call(a.name, seq(a.items, b.items, sa, sb));
        bool a_symish = a.kind == Term::Kind::Sym || a.kind == Term::Kind::SVar;
        bool b_symish = b.kind == Term::Kind::Sym || b.kind == Term::Kind::SVar;
        if (a_symish && b_symish) {
            auto key = std::make_pair("s" + to_string(a), "s" + to_string(b));
            auto it = seen_.find(key);
            std::string v;
            if (it != seen_.end()) {
                v = it->second;
            } else {
                v = gen_.fresh();
                seen_.emplace(std::move(key), v);
                sa.s.emplace(v, a);
                sb.s.emplace(v, b);
            }
            return svar(v);
        }
        return std::nullopt;   // abstract at the sequence level instead
    }
};

}   // namespace detail

inline MsgResult msg(const Expression& a, const Expression& b, NameGen& gen) {
    MsgResult r;
    r.g = detail::MsgBuilder(gen).seq(a, b, r.sa, r.sb);
    return r;
}

}   // namespace scp
