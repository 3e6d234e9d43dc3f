// Relative parity of two proof nets over one sequent.
//
// Fix a switching for each net and view each switching graph as a tree
// rooted at the root connective (a virtual root par is added for
// multi-formula sequents).  Rooting gives a bijection between non-root
// vertices and named edges; composing the two bijections yields a
// permutation whose sign is the parity.  Odd parity certifies
// inequivalence; the value is independent of the chosen switchings.
//
// The sign argument needs strict alternation with the units read as
// 0-ary connectives (every tensor edge joins a {tensor,1}-class vertex
// to a {par,bot}-class one).  Unary connectives are harmless, so the
// view inserts a unary par above each 1 under a tensor, a unary tensor
// above each bot under a par, and unary tensors above par- or bot-rooted
// formulas under the virtual root.

#pragma once

#include "proofnet.hpp"

namespace mll {

enum class ParityClass { Even, Odd };

namespace detail {

struct ParityView {
    // vertex ids: 0..n-1 original nodes, then synthetic wrappers, then
    // (optionally) the virtual root par.
    int n_vertices = 0;
    int root = -1;
    std::vector<int> wrapper_of;            // original id -> wrapper id or -1
    std::vector<std::pair<int, int>> wrap;  // wrapper id - n: (child original id, is_par)
    std::vector<int> formula_tops;          // per root: root id or its wrapper

    explicit ParityView(const Sequent& s) {
        int n = s.size();
        wrapper_of.assign(n, -1);
        n_vertices = n;
        auto t_class = [&](int id) { return s.node(id).kind == Kind::One || s.node(id).kind == Kind::Tensor; };
        auto add_wrapper = [&](int child, bool is_par) {
            wrapper_of[child] = n_vertices++;
            wrap.emplace_back(child, is_par ? 1 : 0);
        };
        for (int id = 0; id < n; ++id) {
            const auto& nd = s.node(id);
            if (nd.parent >= 0) {
                Kind pk = s.node(nd.parent).kind;
                if (pk == Kind::Tensor && t_class(id)) add_wrapper(id, /*par*/ true);
                if (pk == Kind::Par && !t_class(id)) add_wrapper(id, /*par*/ false);
            }
        }
        if (s.roots.size() > 1) {
            for (int r : s.roots)
                if (!t_class(r)) add_wrapper(r, /*par*/ false);  // unary tensor under root par
            root = n_vertices++;                                 // virtual root par
        } else {
            root = s.roots[0];
        }
        for (int r : s.roots) formula_tops.push_back(wrapper_of[r] >= 0 ? wrapper_of[r] : r);
    }

    // Builds the directed-tree bijection vertex -> parent edge id for one
    // net and one switching (par ordinal -> child index; virtual root
    // always picks formula 0).  Edge ids are dense and shared across all
    // nets over the sequent.
    std::vector<int> bijection(const Sequent& s, const Jumps& j, const Switching& sw) const {
        // edge id layout: tensor edges by (node, child index), one switched
        // edge per par, one per bot, one per wrapper, one for the root par.
        std::vector<int> edge_base(n_vertices + 1, 0);
        auto edges_of = [&](int v) -> int {
            if (v < (int)s.nodes.size()) {
                const auto& nd = s.node(v);
                if (nd.kind == Kind::Tensor) return (int)nd.children.size();
                if (nd.kind == Kind::Par || nd.kind == Kind::Bot) return 1;
                return 0;
            }
            return 1;  // wrapper or virtual root
        };
        for (int v = 0; v < n_vertices; ++v) edge_base[v + 1] = edge_base[v] + edges_of(v);
        int n_edges = edge_base[n_vertices];

        auto top = [&](int child) { return wrapper_of[child] >= 0 ? wrapper_of[child] : child; };

        std::vector<std::vector<std::pair<int, int>>> adj(n_vertices);  // (neighbor, edge id)
        auto connect = [&](int a, int b, int eid) {
            adj[a].emplace_back(b, eid);
            adj[b].emplace_back(a, eid);
        };
        for (int id = 0; id < (int)s.nodes.size(); ++id) {
            const auto& nd = s.node(id);
            if (nd.kind == Kind::Tensor)
                for (size_t i = 0; i < nd.children.size(); ++i)
                    connect(id, top(nd.children[i]), edge_base[id] + (int)i);
        }
        for (size_t pi = 0; pi < s.pars.size(); ++pi) {
            int p = s.pars[pi];
            connect(p, top(s.node(p).children.at(sw[pi])), edge_base[p]);
        }
        for (size_t bi = 0; bi < j.size(); ++bi) connect(s.bots[bi], j[bi], edge_base[s.bots[bi]]);
        for (size_t wi = 0; wi < wrap.size(); ++wi) {
            int w = (int)s.nodes.size() + (int)wi;
            connect(w, wrap[wi].first, edge_base[w]);
        }
        if (root == n_vertices - 1 && s.roots.size() > 1)
            connect(root, formula_tops[0], edge_base[root]);

        std::vector<int> parent_edge(n_vertices, -1), stack{root};
        std::vector<char> seen(n_vertices, 0);
        seen[root] = 1;
        int visited = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, eid] : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent_edge[w] = eid;
                    stack.push_back(w);
                    ++visited;
                }
        }
        if (visited != n_vertices)
            throw linking_error("parity: switching graph is not a tree (net not correct?)");
        (void)n_edges;
        return parent_edge;
    }
};

}  // namespace detail

inline ParityClass parity(const Sequent& s, const Jumps& j1, const Switching& sw1, const Jumps& j2,
                          const Switching& sw2) {
    detail::ParityView view(s);
    auto b1 = view.bijection(s, j1, sw1);
    auto b2 = view.bijection(s, j2, sw2);

    // permutation: vertex u (net 1) -> vertex carrying the same edge in net 2
    std::unordered_map<int, int> edge_to_vertex;
    for (int v = 0; v < view.n_vertices; ++v)
        if (v != view.root) edge_to_vertex[b2[v]] = v;
    std::vector<int> perm(view.n_vertices, -1);
    for (int v = 0; v < view.n_vertices; ++v)
        if (v != view.root) perm[v] = edge_to_vertex.at(b1[v]);

    std::vector<char> seen(view.n_vertices, 0);
    int transpositions = 0;
    for (int v = 0; v < view.n_vertices; ++v) {
        if (v == view.root || seen[v]) continue;
        int len = 0, u = v;
        while (!seen[u]) {
            seen[u] = 1;
            u = perm[u];
            ++len;
        }
        transpositions += len - 1;
    }
    return (transpositions % 2 == 0) ? ParityClass::Even : ParityClass::Odd;
}

inline ParityClass parity(const Sequent& s, const Jumps& j1, const Jumps& j2) {
    Switching sw(s.pars.size(), 0);
    return parity(s, j1, sw, j2, sw);
}

inline ParityClass parity(const Sequent& s, const Linking& l1, const Linking& l2) {
    return parity(s, compile_linking(s, l1), compile_linking(s, l2));
}

}  // namespace mll
