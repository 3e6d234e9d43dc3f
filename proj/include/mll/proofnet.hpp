// Linkings, switching graphs, correctness checkers, boxings and empires.
//
// A linking attaches every bot occurrence of a sequent to a target vertex
// (in restricted form, a 1 occurrence).  A linking is correct when every
// switching graph is a tree; (sequent, correct linking) is a proof net.
// Two checkers are provided: an exhaustive one that enumerates switchings
// (the trusted oracle, exponential in the number of pars) and a
// contraction checker in the style of Danos' local retraction, which is
// the production path.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "core.hpp"

namespace mll {

// Serializable form: bot name -> target name.
using Linking = std::map<std::string, std::string>;

// Compiled form: bot ordinal -> target node id.
using Jumps = std::vector<int>;

struct linking_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Jumps compile_linking(const Sequent& s, const Linking& l) {
    Jumps j(s.bots.size(), -1);
    for (const auto& [bot, tgt] : l) {
        int b = s.index_of(bot);
        if (b < 0 || s.node(b).kind != Kind::Bot)
            throw linking_error("'" + bot + "' does not name a bot occurrence");
        int t = s.index_of(tgt);
        if (t < 0) throw linking_error("jump target '" + tgt + "' does not name a vertex");
        j[s.bot_ordinal(b)] = t;
    }
    for (size_t i = 0; i < j.size(); ++i)
        if (j[i] < 0) throw linking_error("no jump for bot '" + s.name_of(s.bots[i]) + "'");
    return j;
}

inline Linking linking_of(const Sequent& s, const Jumps& j) {
    Linking l;
    for (size_t i = 0; i < j.size(); ++i) l[s.name_of(s.bots[i])] = s.name_of(j[i]);
    return l;
}

inline bool is_restricted(const Sequent& s, const Jumps& j) {
    for (int t : j)
        if (s.node(t).kind != Kind::One) return false;
    return true;
}

// One selected child index per par node (by par ordinal).
using Switching = std::vector<int>;

// Undirected edges of the switching graph for (s, j, sw).
inline std::vector<std::pair<int, int>> switching_graph(const Sequent& s, const Jumps& j, const Switching& sw) {
    std::vector<std::pair<int, int>> edges;
    for (int id = 0; id < s.size(); ++id) {
        const auto& n = s.node(id);
        if (n.kind == Kind::Tensor)
            for (int c : n.children) edges.emplace_back(id, c);
    }
    for (size_t pi = 0; pi < s.pars.size(); ++pi) {
        int p = s.pars[pi];
        edges.emplace_back(p, s.node(p).children.at(sw[pi]));
    }
    for (size_t bi = 0; bi < j.size(); ++bi) edges.emplace_back(s.bots[bi], j[bi]);
    return edges;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n, -1) {}
    int find(int x) {
        int r = x;
        while (parent[r] >= 0) r = parent[r];
        while (parent[x] >= 0) { int nx = parent[x]; parent[x] = r; x = nx; }
        return r;
    }
    // Returns false if already joined (cycle).
    bool join(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (parent[a] > parent[b]) std::swap(a, b);
        parent[a] += parent[b];
        parent[b] = a;
        return true;
    }
};

inline bool edges_form_tree(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
    if (static_cast<size_t>(n_vertices) != edges.size() + 1) return false;
    UnionFind uf(n_vertices);
    for (auto [a, b] : edges)
        if (!uf.join(a, b)) return false;
    return true;  // n-1 successful joins on n vertices => connected and acyclic
}

}  // namespace detail

// Trusted oracle: every switching graph must be a tree.  Exponential in
// the number of pars; use only on small inputs.
inline bool is_correct_exhaustive(const Sequent& s, const Jumps& j) {
    size_t npars = s.pars.size();
    Switching sw(npars, 0);
    while (true) {
        if (!detail::edges_form_tree(s.size(), switching_graph(s, j, sw))) return false;
        size_t k = 0;
        while (k < npars) {
            if (++sw[k] < (int)s.node(s.pars[k]).children.size()) break;
            sw[k] = 0;
            ++k;
        }
        if (k == npars) break;
    }
    return true;
}

namespace detail {

// Contraction run: union tensor edges and jumps, close a par once all of
// its children sit in one component that contains no open par.  Records
// enough to reconstruct boxes when asked.
struct Contraction {
    const Sequent& s;
    UnionFind uf;
    std::vector<int> open_pars;            // per UF root: number of open pars inside
    std::vector<char> closed;              // per par ordinal
    bool cycle = false;
    std::vector<std::vector<int>> members; // per UF root: member vertices (boxes only)
    bool track_members;

    explicit Contraction(const Sequent& seq, bool track = false)
        : s(seq), uf(seq.size()), open_pars(seq.size(), 0), closed(seq.pars.size(), 0), track_members(track) {
        if (track_members) {
            members.resize(s.size());
            for (int i = 0; i < s.size(); ++i) members[i] = {i};
        }
        for (int p : s.pars) open_pars[p] = 1;
    }

    void merge(int a, int b) {
        int ra = uf.find(a), rb = uf.find(b);
        if (ra == rb) { cycle = true; return; }
        int keep = ra, gone = rb;
        uf.join(ra, rb);
        if (uf.find(keep) != keep) std::swap(keep, gone);
        open_pars[keep] += open_pars[gone];
        if (track_members) {
            auto& mk = members[keep];
            auto& mg = members[gone];
            mk.insert(mk.end(), mg.begin(), mg.end());
            mg.clear();
        }
    }

    // Runs to fixpoint; returns true iff correct.  On success, boxes[pi]
    // holds the vertices of par pi's box content (children side, without
    // the par itself) when tracking is enabled.
    std::vector<std::vector<int>> boxes;
    bool run(const Jumps& jumps) {
        if (track_members) boxes.assign(s.pars.size(), {});
        for (int id = 0; id < s.size() && !cycle; ++id) {
            const auto& n = s.node(id);
            if (n.kind == Kind::Tensor)
                for (int c : n.children) {
                    merge(id, c);
                    if (cycle) return false;
                }
        }
        for (size_t bi = 0; bi < jumps.size(); ++bi) {
            merge(s.bots[bi], jumps[bi]);
            if (cycle) return false;
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t pi = 0; pi < s.pars.size(); ++pi) {
                if (closed[pi]) continue;
                int p = s.pars[pi];
                const auto& ch = s.node(p).children;
                int r0 = uf.find(ch[0]);
                bool same = true;
                for (int c : ch)
                    if (uf.find(c) != r0) { same = false; break; }
                if (!same || open_pars[r0] != 0) continue;
                if (uf.find(p) == r0) { cycle = true; return false; }
                if (track_members) boxes[pi] = members[r0];
                closed[pi] = 1;
                merge(p, ch[0]);
                int r = uf.find(p);
                open_pars[r] -= 1;
                progress = true;
                if (cycle) return false;
            }
        }
        for (char c : closed)
            if (!c) return false;
        int r = uf.find(0);
        for (int id = 1; id < s.size(); ++id)
            if (uf.find(id) != r) return false;
        return true;
    }
};

}  // namespace detail

// Production checker; agrees with is_correct_exhaustive, near-linear time.
inline bool is_correct_fast(const Sequent& s, const Jumps& j) {
    if (s.size() == 0) return false;
    detail::Contraction c(s);
    return c.run(j);
}

inline bool is_correct_fast(const Sequent& s, const Linking& l) { return is_correct_fast(s, compile_linking(s, l)); }
inline bool is_correct_exhaustive(const Sequent& s, const Linking& l) { return is_correct_exhaustive(s, compile_linking(s, l)); }

// A sub-sequent: disjoint subformula roots within a host sequent.
using SubSequent = std::set<std::string>;

// Boxing: par name -> box sub-sequent (the par's own formula is a member).
using Boxing = std::map<std::string, SubSequent>;

inline std::optional<Boxing> find_boxing(const Sequent& s, const Jumps& j) {
    detail::Contraction c(s, /*track=*/true);
    if (!c.run(j)) return std::nullopt;
    Boxing out;
    for (size_t pi = 0; pi < s.pars.size(); ++pi) {
        int p = s.pars[pi];
        std::set<int> box(c.boxes[pi].begin(), c.boxes[pi].end());
        box.insert(p);
        SubSequent roots;
        for (int id : box)
            if (s.node(id).parent < 0 || !box.count(s.node(id).parent)) roots.insert(s.name_of(id));
        out[s.name_of(p)] = std::move(roots);
    }
    return out;
}

inline std::optional<Boxing> find_boxing(const Sequent& s, const Linking& l) {
    Jumps j;
    try {
        j = compile_linking(s, l);
    } catch (const linking_error&) {
        return std::nullopt;
    }
    return find_boxing(s, j);
}

// Empire of vertex v in a correct restricted net: the largest subnet with
// v as a port, computed as the fixpoint of propagation from v:
//   - through links, in both directions,
//   - down to subformulae,
//   - into a tensor when one child other than v is inside,
//   - into a par when all children are inside and none of them is v.
// Returns the member node ids (a union of disjoint subtrees).
inline std::vector<int> empire_nodes(const Sequent& s, const Jumps& j, int v) {
    std::vector<char> in(s.size(), 0);
    std::vector<std::vector<int>> jumps_on(s.size());
    for (size_t bi = 0; bi < j.size(); ++bi) jumps_on[j[bi]].push_back(s.bots[bi]);

    std::vector<int> work{v};
    in[v] = 1;
    auto add = [&](int id) {
        if (!in[id]) { in[id] = 1; work.push_back(id); }
    };
    while (!work.empty()) {
        int id = work.back();
        work.pop_back();
        const auto& n = s.node(id);
        for (int c : n.children) add(c);
        if (n.kind == Kind::Bot) add(j[s.bot_ordinal(id)]);
        for (int b : jumps_on[id]) add(b);
        int parent = n.parent;
        if (parent >= 0 && !in[parent]) {
            const auto& pn = s.node(parent);
            if (pn.kind == Kind::Tensor) {
                for (int c : pn.children)
                    if (c != v && in[c]) { add(parent); break; }
            } else if (pn.kind == Kind::Par) {
                bool all = true;
                for (int c : pn.children)
                    if (c == v || !in[c]) { all = false; break; }
                if (all) add(parent);
            }
        }
    }
    std::vector<int> out;
    for (int id = 0; id < s.size(); ++id)
        if (in[id]) out.push_back(id);
    return out;
}

inline SubSequent empire(const Sequent& s, const Jumps& j, const std::string& v) {
    int id = s.index_of(v);
    if (id < 0) throw linking_error("unknown vertex '" + v + "'");
    std::vector<char> in(s.size(), 0);
    auto nodes = empire_nodes(s, j, id);
    for (int n : nodes) in[n] = 1;
    SubSequent roots;
    for (int n : nodes)
        if (s.node(n).parent < 0 || !in[s.node(n).parent]) roots.insert(s.name_of(n));
    return roots;
}

inline SubSequent empire(const Sequent& s, const Linking& l, const std::string& v) {
    return empire(s, compile_linking(s, l), v);
}

}  // namespace mll
