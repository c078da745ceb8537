// Strict evaluator: innermost-leftmost call first, sentences tried in order.
// If no sentence of the called function matches, evaluation stops abnormally
// ("recognition impossible"); that outcome is an ordinary result here, since
// programs use it on purpose to prune searches.
#pragma once

#include <cstdint>

#include "lang.hpp"
#include "match.hpp"

namespace scp {

struct EvalOutcome {
    enum class St { Value, Abnormal, Budget };
    St st = St::Value;
    Expression value;   // only meaningful for Value

    bool is_value() const { return st == St::Value; }
};

namespace detail {

struct AbnormalStop {};
struct StepsExceeded {};

class Evaluator {
public:
    Evaluator(const Program& p, std::uint64_t budget) : p_(p), budget_(budget) {}

    Expression eval_seq(const Expression& e) {
        Expression out;
        for (const Term& t : e) {
            switch (t.kind) {
            case Term::Kind::Sym:
                out.push_back(t);
                break;
            case Term::Kind::Bracket:
                out.push_back(bracket(eval_seq(t.items)));
                break;
            case Term::Kind::Call: {
                Expression res = eval_call(t.name, eval_seq(t.items));
                out.insert(out.end(), res.begin(), res.end());
                break;
            }
            default:
                throw std::logic_error("evaluating an expression with free variables");
            }
        }
        return out;
    }

private:
    const Program& p_;
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;

    Expression eval_call(const std::string& fn, const Expression& arg) {
        if (++steps_ > budget_) throw StepsExceeded{};
        const Function* f = p_.find(fn);
        if (!f) throw std::logic_error("call to undefined function " + fn);
        for (const Sentence& s : f->sentences) {
            if (auto st = match(s.pattern, arg)) return eval_seq(apply_subst(s.body, *st));
        }
        throw AbnormalStop{};
    }
};

}   // namespace detail

// Evaluates a ground expression; `budget` caps the number of call rewrites.
inline EvalOutcome eval(const Program& p, const Expression& goal,
                        std::uint64_t budget = 1'000'000) {
    try {
        detail::Evaluator ev(p, budget);
        return EvalOutcome{EvalOutcome::St::Value, ev.eval_seq(goal)};
    } catch (detail::AbnormalStop) {
        return EvalOutcome{EvalOutcome::St::Abnormal, {}};
    } catch (detail::StepsExceeded) {
        return EvalOutcome{EvalOutcome::St::Budget, {}};
    }
}

}   // namespace scp
