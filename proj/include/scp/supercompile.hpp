// The supercompiler: builds a process tree by driving, folds configurations
// that are instances of an ancestor, generalizes upward (via msg) when the
// homeomorphic-embedding whistle blows, and converts the finished tree into
// a residual program.
#pragma once

#include <algorithm>
#include <cstdint>

#include "drive.hpp"
#include "embed.hpp"
#include "lang.hpp"
#include "msg.hpp"

namespace scp {

// Matches a configuration `specific` against `general`, whose variables may
// repeat; returns a substitution st with general . st == specific. Needs
// backtracking because a level of `general` may hold several e-variables.
namespace detail {

inline bool inst_seq(const Expression& g, size_t gi, const Expression& s, size_t si, Subst& st);

inline bool inst_rest(const Expression& g, size_t gi, const Expression& s, size_t si, Subst& st) {
    if (gi == g.size()) return si == s.size();
    const Term& t = g[gi];
    switch (t.kind) {
    case Term::Kind::EVar: {
        auto it = st.e.find(t.name);
        if (it != st.e.end()) {
            const Expression& v = it->second;
            if (si + v.size() > s.size()) return false;
            if (!std::equal(v.begin(), v.end(), s.begin() + si)) return false;
            return inst_rest(g, gi + 1, s, si + v.size(), st);
        }
        for (size_t k = 0; si + k <= s.size(); ++k) {
            Subst saved = st;
            st.e.emplace(t.name, Expression(s.begin() + si, s.begin() + si + k));
            if (inst_rest(g, gi + 1, s, si + k, st)) return true;
            st = saved;
        }
        return false;
    }
    case Term::Kind::SVar: {
        if (si >= s.size()) return false;
        const Term& a = s[si];
        if (a.kind != Term::Kind::Sym && a.kind != Term::Kind::SVar) return false;
        auto it = st.s.find(t.name);
        if (it != st.s.end()) {
            if (!(it->second == a)) return false;
        } else {
            st.s.emplace(t.name, a);
        }
        return inst_rest(g, gi + 1, s, si + 1, st);
    }
    case Term::Kind::Sym:
        if (si >= s.size() || !(s[si] == t)) return false;
        return inst_rest(g, gi + 1, s, si + 1, st);
    case Term::Kind::Bracket:
    case Term::Kind::Call: {
        if (si >= s.size() || s[si].kind != t.kind) return false;
        if (t.kind == Term::Kind::Call && s[si].name != t.name) return false;
        Subst saved = st;
        if (inst_seq(t.items, 0, s[si].items, 0, st) && inst_rest(g, gi + 1, s, si + 1, st))
            return true;
        st = saved;
        return false;
    }
    }
    return false;
}

inline bool inst_seq(const Expression& g, size_t gi, const Expression& s, size_t si, Subst& st) {
    return inst_rest(g, gi, s, si, st);
}

}   // namespace detail

inline std::optional<Subst> instance_of(const Expression& general, const Expression& specific) {
    Subst st;
    if (detail::inst_rest(general, 0, specific, 0, st)) return st;
    return std::nullopt;
}

struct ScpOptions {
    std::uint64_t node_budget = 20000;
    bool whistle = true;
};

struct ScpStats {
    std::uint64_t nodes = 0;
    std::uint64_t folds = 0;
    std::uint64_t generalizations = 0;
};

struct ScpResult {
    bool ok = false;
    bool budget_exceeded = false;
    Program residual;
    Expression goal;   // the original goal restated as a call to the entry
    ScpStats stats;
};

namespace detail {

class Supercompiler {
public:
    Supercompiler(const Program& p, Expression goal, ScpOptions opt)
        : p_(p), goal_(std::move(goal)), opt_(opt), gen_(p, goal_) {}

    ScpResult run() {
        ScpResult res;
        int root = new_node(goal_, Neqs{}, -1);
        nodes_[root].fn_target = true;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            if (nodes_.size() > opt_.node_budget) {
                res.budget_exceeded = true;
                res.stats = stats();
                return res;
            }
            int id = stack.back();
            stack.pop_back();
            if (nodes_[id].dead || nodes_[id].st != Node::St::Open) continue;
            process(id, stack);
        }
        res.ok = true;
        res.stats = stats();
        residualize(root, res);
        return res;
    }

private:
    struct Node {
        Expression config;
        Neqs neqs;
        int parent;
        enum class St { Open, Branch, Leaf, Abnormal, Folded, Generalized } st = St::Open;
        std::vector<std::pair<std::vector<Contraction>, int>> children;
        int fold_target = -1;
        Subst fold_subst;
        int gen_child = -1;
        Subst gen_subst;
        std::string sel_fn;
        bool dead = false;
        bool fn_target = false;
    };

    const Program& p_;
    Expression goal_;
    ScpOptions opt_;
    NameGen gen_;
    std::vector<Node> nodes_;
    std::uint64_t folds_ = 0, gens_ = 0;

    ScpStats stats() const { return ScpStats{nodes_.size(), folds_, gens_}; }

    int new_node(Expression config, Neqs neqs, int parent) {
        nodes_.push_back(Node{std::move(config), std::move(neqs), parent});
        return static_cast<int>(nodes_.size()) - 1;
    }

    void kill_subtree(int id) {
        for (auto& [cs, c] : nodes_[id].children) kill(c);
        nodes_[id].children.clear();
        if (nodes_[id].gen_child >= 0) kill(nodes_[id].gen_child);
        nodes_[id].gen_child = -1;
    }

    void kill(int id) {
        nodes_[id].dead = true;
        kill_subtree(id);
    }

    // Every inequality the ancestor relied on must still hold at the node
    // after instantiation, or folding to it would prune live branches.
    bool neqs_entailed(const Neqs& anc, const Subst& st, const Neqs& here) const {
        for (const auto& [a, b] : anc.atoms) {
            Term ta = apply_subst(Expression{a}, st).at(0);
            Term tb = apply_subst(Expression{b}, st).at(0);
            if (ta.kind == Term::Kind::Sym && tb.kind == Term::Kind::Sym && !(ta == tb)) continue;
            if (!here.contains(ta, tb)) return false;
        }
        return true;
    }

    void process(int id, std::vector<int>& stack) {
        Node& n = nodes_[id];
        auto redex = find_redex(n.config);
        if (!redex) {
            n.st = Node::St::Leaf;
            return;
        }
        n.sel_fn = term_at(n.config, *redex).name;

        // fold to the nearest ancestor this configuration is an instance of
        for (int a = n.parent; a >= 0; a = nodes_[a].parent) {
            if (nodes_[a].st == Node::St::Generalized) continue;
            if (nodes_[a].sel_fn != n.sel_fn) continue;
            auto st = instance_of(nodes_[a].config, n.config);
            if (st && neqs_entailed(nodes_[a].neqs, *st, n.neqs)) {
                n.st = Node::St::Folded;
                n.fold_target = a;
                n.fold_subst = std::move(*st);
                nodes_[a].fn_target = true;
                ++folds_;
                return;
            }
        }

        if (opt_.whistle) {
            for (int a = n.parent; a >= 0; a = nodes_[a].parent) {
                if (nodes_[a].st == Node::St::Generalized) continue;
                if (nodes_[a].sel_fn != n.sel_fn) continue;
                if (!embeds(nodes_[a].config, n.config)) continue;
                MsgResult m = msg(nodes_[a].config, n.config, gen_);
                if (degenerate(m)) continue;
                generalize(a, std::move(m), stack);
                ++gens_;
                return;   // n is inside the killed subtree
            }
        }

        DriveResult d = drive_step(n.config, n.neqs, p_, gen_);
        n.st = Node::St::Branch;
        std::vector<int> to_push;
        for (Branch& b : d.branches) {
            int c = new_node(std::move(b.config), std::move(b.neqs), id);
            if (b.abnormal)
                nodes_[c].st = Node::St::Abnormal;
            else
                to_push.push_back(c);
            nodes_[id].children.emplace_back(std::move(b.contractions), c);
        }
        for (auto it = to_push.rbegin(); it != to_push.rend(); ++it) stack.push_back(*it);
    }

    static bool degenerate(const MsgResult& m) {
        if (!contains_call(m.g)) return true;
        if (m.g.size() == 1 && m.g[0].kind == Term::Kind::EVar) return true;
        for (const auto& [v, t] : m.sa.s)
            if (contains_call(Expression{t})) return true;
        for (const auto& [v, e] : m.sa.e)
            if (contains_call(e)) return true;
        return false;
    }

    void generalize(int a, MsgResult m, std::vector<int>& stack) {
        kill_subtree(a);
        Node& A = nodes_[a];
        A.st = Node::St::Generalized;
        A.gen_subst = std::move(m.sa);
        int g = new_node(std::move(m.g), Neqs{}, a);
        nodes_[g].fn_target = true;
        nodes_[a].gen_child = g;
        stack.push_back(g);
    }

    // --- residual program construction --------------------------------------

    std::map<int, std::string> fn_names_;

    static Expression enc(const Expression& config) {
        std::vector<VarRef> vars = free_vars(config);
        size_t evars = 0;
        for (const auto& v : vars)
            if (v.is_evar) ++evars;
        Expression out;
        for (const auto& v : vars) {
            if (!v.is_evar)
                out.push_back(svar(v.name));
            else if (evars > 1)
                out.push_back(bracket({evar(v.name)}));
            else
                out.push_back(evar(v.name));
        }
        return out;
    }

    std::string entry_name() const {
        if (goal_.size() == 1 && goal_[0].kind == Term::Kind::Call) return goal_[0].name;
        return "Main";
    }

    std::vector<char> productive_;

    // A node is productive when some leaf is reachable from it through
    // branches and folds; anything else can only end in an abnormal stop, so
    // its residual body is a bare cut.
    void compute_productive() {
        productive_.assign(nodes_.size(), 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < nodes_.size(); ++i) {
                if (productive_[i] || nodes_[i].dead) continue;
                const Node& n = nodes_[i];
                bool p = false;
                switch (n.st) {
                case Node::St::Leaf: p = true; break;
                case Node::St::Folded: p = productive_[n.fold_target]; break;
                case Node::St::Generalized:
                    p = n.gen_child >= 0 && productive_[n.gen_child];
                    break;
                case Node::St::Branch:
                    for (const auto& [cs, c] : n.children) p = p || productive_[c];
                    break;
                default: break;
                }
                if (p) {
                    productive_[i] = 1;
                    changed = true;
                }
            }
        }
    }

    void emit(int fnode, Function& f, const Expression& patacc, int id) {
        const Node& n = nodes_[id];
        if (!productive_[id]) {
            f.sentences.push_back(Sentence{patacc, {call("Cut", {})}});
            return;
        }
        if (id != fnode && n.fn_target) {
            f.sentences.push_back(Sentence{patacc, {call(fn_names_.at(id), enc(n.config))}});
            return;
        }
        switch (n.st) {
        case Node::St::Leaf:
            f.sentences.push_back(Sentence{patacc, n.config});
            return;
        case Node::St::Abnormal:
            f.sentences.push_back(Sentence{patacc, {call("Cut", {})}});
            return;
        case Node::St::Folded:
            f.sentences.push_back(Sentence{
                patacc,
                {call(fn_names_.at(n.fold_target), apply_subst(enc(nodes_[n.fold_target].config), n.fold_subst))}});
            return;
        case Node::St::Generalized:
            f.sentences.push_back(Sentence{
                patacc,
                {call(fn_names_.at(n.gen_child), apply_subst(enc(nodes_[n.gen_child].config), n.gen_subst))}});
            return;
        case Node::St::Branch:
            for (const auto& [cs, c] : n.children) {
                Expression pat = patacc;
                for (const Contraction& ctr : cs)
                    if (ctr.is_binding()) pat = apply_subst(pat, ctr.as_subst());
                emit(fnode, f, pat, c);
            }
            return;
        case Node::St::Open:
            throw std::logic_error("open node survived supercompilation");
        }
    }

    void residualize(int root, ScpResult& res) {
        compute_productive();
        std::vector<int> fnodes;
        for (size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].fn_target && !nodes_[i].dead &&
                (productive_[i] || static_cast<int>(i) == root))
                fnodes.push_back(static_cast<int>(i));

        std::string entry = entry_name();
        int k = 0;
        for (int id : fnodes) {
            if (id == root)
                fn_names_[id] = entry;
            else
                fn_names_[id] = "F" + std::to_string(++k);
        }

        Program r;
        bool cut_used = false;
        for (int id : fnodes) {
            Function f;
            f.name = fn_names_[id];
            emit(id, f, enc(nodes_[id].config), id);
            // a tail of cut sentences is unreachable fall-through: drop it
            while (!f.sentences.empty() && is_cut(f.sentences.back())) f.sentences.pop_back();
            for (const Sentence& s : f.sentences)
                if (contains_symbol_call(s.body, "Cut")) cut_used = true;
            r.functions.push_back(std::move(f));
        }
        if (cut_used)
            r.functions.push_back(Function{"Cut", {Sentence{{id("Deadlock")}, {}}}});
        r.entry = entry;

        merge_trivial_entry(r);
        collect_garbage(r);
        std::stable_partition(r.functions.begin(), r.functions.end(),
                              [&](const Function& f) { return f.name == r.entry; });
        res.residual = std::move(r);
        res.goal = {call(res.residual.entry, enc(nodes_[root].config))};
    }

    static bool is_cut(const Sentence& s) {
        return s.body.size() == 1 && s.body[0].kind == Term::Kind::Call && s.body[0].name == "Cut";
    }

    static bool contains_symbol_call(const Expression& e, const std::string& fn) {
        for (const Term& t : e) {
            if (t.kind == Term::Kind::Call && (t.name == fn || contains_symbol_call(t.items, fn)))
                return true;
            if (t.kind == Term::Kind::Bracket && contains_symbol_call(t.items, fn)) return true;
        }
        return false;
    }

    // When the entry merely forwards to F1 with the identical argument list,
    // drop it and let F1 take the entry's name.
    static void merge_trivial_entry(Program& r) {
        const Function* e = r.find(r.entry);
        if (!e || e->sentences.size() != 1) return;
        const Sentence& s = e->sentences.front();
        if (s.body.size() != 1 || s.body[0].kind != Term::Kind::Call) return;
        const std::string target = s.body[0].name;
        if (target == r.entry || target == "Cut") return;
        if (!(s.body[0].items == s.pattern)) return;
        std::string entry = r.entry;
        std::erase_if(r.functions, [&](const Function& f) { return f.name == entry; });
        for (Function& f : r.functions) {
            if (f.name == target) f.name = entry;
            for (Sentence& sen : f.sentences) rename_calls(sen.body, target, entry);
        }
    }

    static void rename_calls(Expression& e, const std::string& from, const std::string& to) {
        for (Term& t : e) {
            if (t.kind == Term::Kind::Call && t.name == from) t.name = to;
            if (t.kind == Term::Kind::Call || t.kind == Term::Kind::Bracket)
                rename_calls(t.items, from, to);
        }
    }

    static void collect_garbage(Program& r) {
        std::set<std::string> live;
        std::vector<std::string> todo{r.entry};
        while (!todo.empty()) {
            std::string fn = todo.back();
            todo.pop_back();
            if (!live.insert(fn).second) continue;
            if (const Function* f = r.find(fn))
                for (const Sentence& s : f->sentences) collect_calls(s.body, todo);
        }
        std::erase_if(r.functions, [&](const Function& f) { return !live.count(f.name); });
    }

    static void collect_calls(const Expression& e, std::vector<std::string>& out) {
        for (const Term& t : e) {
            if (t.kind == Term::Kind::Call) out.push_back(t.name);
            if (t.kind == Term::Kind::Call || t.kind == Term::Kind::Bracket)
                collect_calls(t.items, out);
        }
    }
};

}   // namespace detail

inline ScpResult supercompile(const Program& p, const Expression& goal, ScpOptions opt = {}) {
    return detail::Supercompiler(p, goal, opt).run();
}

}   // namespace scp
