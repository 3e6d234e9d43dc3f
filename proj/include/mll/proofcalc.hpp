// Sequent-calculus proof trees for unit-only MLL (rules one, bot, par,
// tensor; identity and cut are out of scope), the proof-to-net
// translation, sequentialisation, and normalization to 1-targets.
//
// Connectives are n-ary, so the par rule releases all children of one par
// at once and the tensor rule takes one premise per child; this is the
// binary calculus read up to associativity, with names preserved through
// inferences.  Bot rules carry an explicit jump annotation: the name of a
// premise vertex the new bot attaches to.

#pragma once

#include <random>

#include "proofnet.hpp"

namespace mll {

struct proof_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProofTree {
    enum class Rule : uint8_t { One, Bot, Par, Tensor };
    Rule rule;
    Sequent conclusion;
    std::string jump;  // bot rule only: annotated target name
    std::vector<ProofTree> premises;
};

namespace detail {

// Canonical string of the subtree at id, all names explicit; used to
// compare formulas across different sequents.
inline void formula_key(const Sequent& s, int id, std::string& out) {
    const auto& n = s.node(id);
    switch (n.kind) {
        case Kind::One: out += "1:"; break;
        case Kind::Bot: out += "b:"; break;
        case Kind::Tensor: out += "t:"; break;
        case Kind::Par: out += "p:"; break;
    }
    out += n.name;
    if (!n.children.empty()) {
        out += '(';
        for (int c : n.children) { formula_key(s, c, out); out += ','; }
        out += ')';
    }
}

inline std::string formula_key(const Sequent& s, int id) {
    std::string out;
    formula_key(s, id, out);
    return out;
}

inline std::multiset<std::string> root_keys(const Sequent& s) {
    std::multiset<std::string> out;
    for (int r : s.roots) out.insert(formula_key(s, r));
    return out;
}

inline int copy_subtree(Sequent& dst, const Sequent& src, int src_id, int parent) {
    const auto& n = src.node(src_id);
    int id = dst.add_node(n.kind, parent, n.name);
    for (int c : n.children) copy_subtree(dst, src, c, id);
    return id;
}

inline Sequent sequent_from_roots(const Sequent& src, const std::vector<int>& roots) {
    Sequent out;
    for (int r : roots) copy_subtree(out, src, r, -1);
    out.finish();
    return out;
}

}  // namespace detail

inline bool check_proof(const ProofTree& p) {
    using Rule = ProofTree::Rule;
    const Sequent& c = p.conclusion;
    switch (p.rule) {
        case Rule::One:
            return p.premises.empty() && c.roots.size() == 1 && c.node(c.roots[0]).kind == Kind::One;

        case Rule::Bot: {
            if (p.premises.size() != 1 || !check_proof(p.premises[0])) return false;
            const Sequent& prem = p.premises[0].conclusion;
            if (c.roots.size() != prem.roots.size() + 1) return false;
            auto want = detail::root_keys(prem);
            int new_bot = -1;
            for (int r : c.roots) {
                auto key = detail::formula_key(c, r);
                auto it = want.find(key);
                if (it != want.end()) {
                    want.erase(it);
                } else {
                    if (new_bot >= 0 || c.node(r).kind != Kind::Bot) return false;
                    new_bot = r;
                }
            }
            if (new_bot < 0 || !want.empty()) return false;
            return prem.has_name(p.jump);
        }

        case Rule::Par: {
            if (p.premises.size() != 1 || !check_proof(p.premises[0])) return false;
            const Sequent& prem = p.premises[0].conclusion;
            for (int r : c.roots) {
                if (c.node(r).kind != Kind::Par) continue;
                std::multiset<std::string> expect;
                for (int r2 : c.roots)
                    if (r2 != r) expect.insert(detail::formula_key(c, r2));
                for (int ch : c.node(r).children) expect.insert(detail::formula_key(c, ch));
                if (expect == detail::root_keys(prem)) return true;
            }
            return false;
        }

        case Rule::Tensor: {
            if (p.premises.empty()) return false;
            for (const auto& q : p.premises)
                if (!check_proof(q)) return false;
            size_t k = p.premises.size();
            for (int r : c.roots) {
                if (c.node(r).kind != Kind::Tensor || c.node(r).children.size() != k) continue;
                std::multiset<std::string> expect;
                for (int r2 : c.roots)
                    if (r2 != r) expect.insert(detail::formula_key(c, r2));
                std::multiset<std::string> got;
                bool ok = true;
                for (size_t i = 0; i < k && ok; ++i) {
                    const Sequent& prem = p.premises[i].conclusion;
                    std::string child_key = detail::formula_key(c, c.node(r).children[i]);
                    bool found = false;
                    for (int pr : prem.roots) {
                        auto key = detail::formula_key(prem, pr);
                        if (!found && key == child_key) { found = true; continue; }
                        got.insert(key);
                    }
                    ok = found;
                }
                if (ok && got == expect) return true;
            }
            return false;
        }
    }
    return false;
}

namespace detail {

inline void collect_jumps(const ProofTree& p, Linking& out) {
    if (p.rule == ProofTree::Rule::Bot) {
        auto want = root_keys(p.premises[0].conclusion);
        for (int r : p.conclusion.roots) {
            auto key = formula_key(p.conclusion, r);
            auto it = want.find(key);
            if (it != want.end())
                want.erase(it);
            else
                out[p.conclusion.name_of(r)] = p.jump;
        }
    }
    for (const auto& q : p.premises) collect_jumps(q, out);
}

}  // namespace detail

// Reads off the linking of a checked proof: each bot jumps to its rule's
// annotation.
inline Linking proof_to_net(const ProofTree& p) {
    if (!check_proof(p)) throw proof_error("proof_to_net: ill-formed proof");
    Linking out;
    detail::collect_jumps(p, out);
    return out;
}

namespace detail {

struct Sequentialiser {
    const Sequent& s;
    const Jumps& jumps;

    // Sub-problems are root-index lists into s (bots removed so far are
    // simply absent).  Jump targets are looked up by bot node id.
    ProofTree run(std::vector<int> roots) {
        // single 1: base case
        if (roots.size() == 1 && s.node(roots[0]).kind == Kind::One) {
            ProofTree t;
            t.rule = ProofTree::Rule::One;
            t.conclusion = sequent_from_roots(s, roots);
            return t;
        }

        // prefer a root par, then a root bot, then a splitting tensor
        int pick = -1;
        for (int r : roots)
            if (s.node(r).kind == Kind::Par && (pick < 0 || s.name_of(r) < s.name_of(pick))) pick = r;
        if (pick >= 0) {
            std::vector<int> prem_roots;
            for (int r : roots) {
                if (r == pick)
                    for (int c : s.node(r).children) prem_roots.push_back(c);
                else
                    prem_roots.push_back(r);
            }
            ProofTree t;
            t.rule = ProofTree::Rule::Par;
            t.conclusion = sequent_from_roots(s, roots);
            t.premises.push_back(run(std::move(prem_roots)));
            return t;
        }

        for (int r : roots)
            if (s.node(r).kind == Kind::Bot && (pick < 0 || s.name_of(r) < s.name_of(pick))) pick = r;
        if (pick >= 0) {
            std::vector<int> prem_roots;
            for (int r : roots)
                if (r != pick) prem_roots.push_back(r);
            ProofTree t;
            t.rule = ProofTree::Rule::Bot;
            t.conclusion = sequent_from_roots(s, roots);
            t.jump = s.name_of(jumps[s.bot_ordinal(pick)]);
            t.premises.push_back(run(std::move(prem_roots)));
            return t;
        }

        // all roots are tensors or ones; find a splitting tensor
        std::vector<int> tensors;
        for (int r : roots)
            if (s.node(r).kind == Kind::Tensor) tensors.push_back(r);
        std::sort(tensors.begin(), tensors.end(),
                  [&](int a, int b) { return s.name_of(a) < s.name_of(b); });

        for (int t_root : tensors) {
            auto premise_sets = try_split(roots, t_root);
            if (premise_sets.empty()) continue;
            ProofTree t;
            t.rule = ProofTree::Rule::Tensor;
            t.conclusion = sequent_from_roots(s, roots);
            for (auto& pr : premise_sets) t.premises.push_back(run(std::move(pr)));
            return t;
        }
        throw proof_error("sequentialise: no rule applies (input is not a correct net)");
    }

    // If removing t_root splits the net into one component per child,
    // returns the premise root lists (child i plus its context), else {}.
    std::vector<std::vector<int>> try_split(const std::vector<int>& roots, int t_root) {
        UnionFind uf(s.size());
        std::vector<char> live(s.size(), 0);
        for (int r : roots)
            for (int id : subtree_nodes(s, r)) live[id] = 1;
        for (int r : roots) {
            for (int id : subtree_nodes(s, r)) {
                const auto& n = s.node(id);
                if (id == t_root) continue;
                if (n.kind == Kind::Tensor || n.kind == Kind::Par)
                    for (int c : n.children) uf.join(id, c);
                if (n.kind == Kind::Bot) uf.join(id, jumps[s.bot_ordinal(id)]);
            }
        }
        const auto& children = s.node(t_root).children;
        std::vector<int> comp;
        for (int c : children) comp.push_back(uf.find(c));
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (comp[i] == comp[j]) return {};
        std::vector<std::vector<int>> premise(children.size());
        for (int r : roots) {
            if (r == t_root) continue;
            int rc = uf.find(r);
            bool placed = false;
            for (size_t i = 0; i < comp.size(); ++i)
                if (rc == comp[i]) {
                    premise[i].push_back(r);
                    placed = true;
                    break;
                }
            if (!placed) return {};
        }
        for (size_t i = 0; i < children.size(); ++i) premise[i].push_back(children[i]);
        // keep preorder positions for determinism
        for (auto& pr : premise) std::sort(pr.begin(), pr.end());
        return premise;
    }
};

}  // namespace detail

// Builds a cut-free proof of a correct restricted net (Prop: every proof
// net sequentialises).  The result check_proofs and translates back to l.
inline ProofTree sequentialise(const Sequent& s, const Jumps& j) {
    if (!is_restricted(s, j)) throw proof_error("sequentialise: linking must be restricted to 1-targets");
    if (!is_correct_fast(s, j)) throw proof_error("sequentialise: not a correct net");
    detail::Sequentialiser sq{s, j};
    std::vector<int> roots = s.roots;
    return sq.run(std::move(roots));
}

inline ProofTree sequentialise(const Sequent& s, const Linking& l) { return sequentialise(s, compile_linking(s, l)); }

// Rewires every jump with a non-1 target onto some 1-occurrence, greedily
// and verified per step; the result is an equivalent restricted net.
inline Jumps normalize_to_unit_targets(const Sequent& s, const Jumps& start) {
    if (!is_correct_fast(s, start)) throw linking_error("normalize_to_unit_targets: not a correct net");
    Jumps j = start;
    bool progress = true;
    while (progress) {
        progress = false;
        bool any_bad = false;
        for (size_t bi = 0; bi < j.size(); ++bi) {
            if (s.node(j[bi]).kind == Kind::One) continue;
            any_bad = true;
            for (int w : s.ones) {
                int old = j[bi];
                j[bi] = w;
                if (is_correct_fast(s, j)) { progress = true; break; }
                j[bi] = old;
            }
        }
        if (!any_bad) return j;
        if (!progress) throw linking_error("normalize_to_unit_targets: stuck (no verified move)");
    }
    return j;
}

inline Linking normalize_to_unit_targets(const Sequent& s, const Linking& l) {
    return linking_of(s, normalize_to_unit_targets(s, compile_linking(s, l)));
}

// Deterministic random proof generator for property tests.
inline ProofTree random_proof(uint64_t seed, int size) {
    if (size < 1) throw proof_error("random_proof: size must be >= 1");
    std::mt19937_64 rng(seed);
    int counter = 0;
    auto fresh = [&]() { return "n" + std::to_string(counter++); };

    struct Gen {
        std::mt19937_64& rng;
        std::function<std::string()>& fresh;

        ProofTree one() {
            ProofTree t;
            t.rule = ProofTree::Rule::One;
            Sequent s;
            s.add_node(Kind::One, -1, fresh());
            s.finish();
            t.conclusion = std::move(s);
            return t;
        }

        ProofTree bot_over(ProofTree sub) {
            const Sequent& prem = sub.conclusion;
            std::vector<std::string> names;
            for (const auto& n : prem.nodes) names.push_back(n.name);
            ProofTree t;
            t.rule = ProofTree::Rule::Bot;
            t.jump = names[rng() % names.size()];
            Sequent s;
            for (int r : prem.roots) detail::copy_subtree(s, prem, r, -1);
            s.add_node(Kind::Bot, -1, fresh());
            s.finish();
            t.conclusion = std::move(s);
            t.premises.push_back(std::move(sub));
            return t;
        }

        ProofTree gen(int n) {
            if (n <= 1) return one();
            switch (rng() % 10) {
                case 0: case 1: case 2: case 3: {
                    return bot_over(gen(n - 1));
                }
                case 4: case 5: case 6: {  // par
                    ProofTree sub = gen(n - 1);
                    const Sequent& prem = sub.conclusion;
                    std::vector<int> cand;
                    for (int r : prem.roots)
                        if (prem.node(r).kind != Kind::Par) cand.push_back(r);
                    if (cand.size() < 2) return bot_over(std::move(sub));
                    size_t k = 2 + rng() % std::min<size_t>(2, cand.size() - 1);
                    for (size_t i = 0; i < cand.size(); ++i) std::swap(cand[i], cand[rng() % cand.size()]);
                    std::vector<int> picked(cand.begin(), cand.begin() + k);
                    std::sort(picked.begin(), picked.end());
                    Sequent s;
                    bool emitted = false;
                    for (int r : prem.roots) {
                        if (std::find(picked.begin(), picked.end(), r) != picked.end()) {
                            if (!emitted) {
                                int p = s.add_node(Kind::Par, -1, fresh());
                                for (int q : picked) detail::copy_subtree(s, prem, q, p);
                                emitted = true;
                            }
                        } else {
                            detail::copy_subtree(s, prem, r, -1);
                        }
                    }
                    s.finish();
                    ProofTree t;
                    t.rule = ProofTree::Rule::Par;
                    t.conclusion = std::move(s);
                    t.premises.push_back(std::move(sub));
                    return t;
                }
                default: {  // tensor
                    if (n < 3) return bot_over(gen(n - 1));
                    int n1 = 1 + (int)(rng() % (uint64_t)(n - 2));
                    ProofTree sub1 = gen(n1);
                    ProofTree sub2 = gen(n - 1 - n1);
                    auto pick_non_tensor = [&](const Sequent& prem) -> int {
                        std::vector<int> cand;
                        for (int r : prem.roots)
                            if (prem.node(r).kind != Kind::Tensor) cand.push_back(r);
                        if (cand.empty()) return -1;
                        return cand[rng() % cand.size()];
                    };
                    int a = pick_non_tensor(sub1.conclusion);
                    int b = pick_non_tensor(sub2.conclusion);
                    if (a < 0 || b < 0) return bot_over(std::move(sub1));
                    Sequent s;
                    for (int r : sub1.conclusion.roots) {
                        if (r == a) {
                            int tn = s.add_node(Kind::Tensor, -1, fresh());
                            detail::copy_subtree(s, sub1.conclusion, a, tn);
                            detail::copy_subtree(s, sub2.conclusion, b, tn);
                        } else {
                            detail::copy_subtree(s, sub1.conclusion, r, -1);
                        }
                    }
                    for (int r : sub2.conclusion.roots)
                        if (r != b) detail::copy_subtree(s, sub2.conclusion, r, -1);
                    s.finish();
                    ProofTree t;
                    t.rule = ProofTree::Rule::Tensor;
                    t.conclusion = std::move(s);
                    t.premises.push_back(std::move(sub1));
                    t.premises.push_back(std::move(sub2));
                    return t;
                }
            }
        }
    };

    std::function<std::string()> fr = fresh;
    Gen g{rng, fr};
    return g.gen(size);
}

}  // namespace mll
