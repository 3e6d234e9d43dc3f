// Constructive rewiring routes on basic-shaped scopes.
//
// A routable scope is a set of disjoint subformula roots whose shapes are:
// tensor-of-bots blocks, bare bots (singleton blocks), par-of-1s groups,
// and bare 1s.  Every bot inside the scope targets a 1 inside the scope.
// Correctness of such a (sub-)net is exactly: the bipartite jump graph H
// on blocks and 1s is a spanning tree (par groups do not constrain it).
//
// The router rewires any such net onto one of two canonical forms, a
// caterpillar whose blocks take consecutive runs of 1s in preorder,
// sharing one 1 with the previous block.  The two forms differ by a
// single transposition of jump targets; which one is reached is the
// net's equivalence class.  Shaping uses single verified moves; the
// within-block carrier permutations are realized by double exchanges
// whose pivots are the spine 1s shared between blocks.  All emitted
// moves are replayed through a PathBuilder, so every step of every
// produced path is checked on the full host net.

#pragma once

#include "rewiring.hpp"

namespace mll {

struct route_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

class QRouter {
  public:
    struct Move {
        int bot;  // bot node id in host sequent
        int one;  // target one node id in host sequent
    };

    QRouter(const Sequent& s, const std::vector<int>& scope_roots) : s_(s) {
        for (int r : scope_roots) {
            const auto& n = s.node(r);
            switch (n.kind) {
                case Kind::Bot:
                    blocks_.push_back({r});
                    break;
                case Kind::One:
                    ones_.push_back(r);
                    break;
                case Kind::Tensor: {
                    std::vector<int> bots;
                    for (int c : n.children) {
                        if (s.node(c).kind != Kind::Bot) throw route_error("scope block '" + n.name + "' is not a tensor of bots");
                        bots.push_back(c);
                    }
                    blocks_.push_back(std::move(bots));
                    break;
                }
                case Kind::Par: {
                    for (int c : n.children) {
                        if (s.node(c).kind != Kind::One) throw route_error("scope group '" + n.name + "' is not a par of 1s");
                        ones_.push_back(c);
                    }
                    break;
                }
            }
        }
        // keep 1s in host preorder regardless of root order
        std::sort(ones_.begin(), ones_.end());
        for (size_t i = 0; i < ones_.size(); ++i) one_index_[ones_[i]] = (int)i;
        size_t total_bots = 0;
        for (auto& b : blocks_) total_bots += b.size();
        if (blocks_.empty() || total_bots != ones_.size() + blocks_.size() - 1)
            throw route_error("scope is not balanced (jumps cannot form a spanning tree)");
        // caterpillar ranges: block k owns ones[c_{k-1} .. c_k]
        cuts_.push_back(0);
        for (size_t k = 0; k < blocks_.size(); ++k) cuts_.push_back(cuts_.back() + (int)blocks_[k].size() - 1);
    }

    int n_blocks() const { return (int)blocks_.size(); }
    const std::vector<int>& block_bots(int k) const { return blocks_[k]; }
    const std::vector<int>& ones() const { return ones_; }
    int spine_lo(int k) const { return cuts_[k]; }      // shared with block k-1
    int spine_hi(int k) const { return cuts_[k + 1]; }  // shared with block k+1

    // Routes the scope part of `jumps` to a canonical form; appends the
    // abstract moves and returns which of the two forms (0 or 1) was hit.
    int route_to_canonical(const Jumps& host_jumps, std::vector<Move>& out) {
        load(host_jumps);
        plan_ = &out;
        shape();
        return permute();
    }

    // Routes between two assignments over the same scope: current ->
    // target (bot node id -> one node id).  Returns the move list, or
    // nullopt if the endpoints lie in different classes.
    std::optional<std::vector<Move>> route_to_target(const Jumps& host_jumps, const std::map<int, int>& target) {
        std::vector<Move> fwd;
        int rep1 = route_to_canonical(host_jumps, fwd);

        Jumps target_jumps = host_jumps;
        for (auto [bot, one] : target) target_jumps[s_.bot_ordinal(bot)] = one;
        std::vector<Move> back;
        int rep2 = route_to_canonical(target_jumps, back);
        if (rep1 != rep2) return std::nullopt;

        // undo `back` from the canonical form
        std::map<int, int> at;
        for (auto [bot, one] : target) at[bot] = one;
        std::vector<Move> rev;
        for (const auto& m : back) {
            rev.push_back({m.bot, at.at(m.bot)});
            at[m.bot] = m.one;
        }
        std::reverse(rev.begin(), rev.end());
        fwd.insert(fwd.end(), rev.begin(), rev.end());
        return fwd;
    }

  private:
    const Sequent& s_;
    std::vector<std::vector<int>> blocks_;  // bot node ids, preorder per block
    std::vector<int> ones_;                 // one node ids, preorder
    std::unordered_map<int, int> one_index_;
    std::vector<int> cuts_;

    // mutable routing state
    std::vector<std::vector<int>> carrier_;  // [block][one index] -> bot id or -1
    std::vector<int> bot_at_;                // bot id -> one index (dense by bot ordinal)
    std::vector<int> bot_block_;             // bot ordinal -> block
    std::vector<Move>* plan_ = nullptr;

    int one_of(int bot) const { return bot_at_[s_.bot_ordinal(bot)]; }

    void load(const Jumps& host_jumps) {
        carrier_.assign(blocks_.size(), std::vector<int>(ones_.size(), -1));
        bot_at_.assign(s_.bots.size(), -1);
        bot_block_.assign(s_.bots.size(), -1);
        for (size_t k = 0; k < blocks_.size(); ++k)
            for (int b : blocks_[k]) {
                int bi = s_.bot_ordinal(b);
                bot_block_[bi] = (int)k;
                auto it = one_index_.find(host_jumps[bi]);
                if (it == one_index_.end()) throw route_error("scope bot '" + s_.name_of(b) + "' jumps outside the scope");
                if (carrier_[k][it->second] >= 0) throw route_error("two jumps of one block share a target (not a tree)");
                carrier_[k][it->second] = b;
                bot_at_[bi] = it->second;
            }
        if (!tree_ok()) throw route_error("scope jumps do not form a spanning tree");
    }

    bool tree_ok() const {
        // H has T + U vertices and T + U - 1 edges; connectivity suffices.
        auto reach = bfs_from_block(0);
        for (size_t k = 0; k < blocks_.size(); ++k)
            if (!reach.first[k]) return false;
        for (size_t u = 0; u < ones_.size(); ++u)
            if (!reach.second[u]) return false;
        return true;
    }

    std::pair<std::vector<char>, std::vector<char>> bfs_from_block(int start) const {
        std::vector<char> blk(blocks_.size(), 0), one(ones_.size(), 0);
        std::vector<int> stack{start};
        blk[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v >= 0) {  // block
                for (size_t u = 0; u < ones_.size(); ++u)
                    if (carrier_[v][u] >= 0 && !one[u]) {
                        one[u] = 1;
                        stack.push_back(-(int)u - 1);
                    }
            } else {
                int u = -v - 1;
                for (size_t k = 0; k < blocks_.size(); ++k)
                    if (carrier_[k][u] >= 0 && !blk[k]) {
                        blk[k] = 1;
                        stack.push_back((int)k);
                    }
            }
        }
        return {blk, one};
    }

    // Simple path from block `start` to one `goal` in the tree H.
    // Returned as alternating vertices: +k for block k, -(u+1) for one u.
    std::vector<int> h_path(int start, int goal_one) const {
        std::map<int, int> prev;
        std::vector<int> queue{start};
        prev[start] = start;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            auto push = [&](int w) {
                if (!prev.count(w)) {
                    prev[w] = v;
                    queue.push_back(w);
                }
            };
            if (v >= 0) {
                for (size_t u = 0; u < ones_.size(); ++u)
                    if (carrier_[v][u] >= 0) push(-(int)u - 1);
            } else {
                int u = -v - 1;
                for (size_t k = 0; k < blocks_.size(); ++k)
                    if (carrier_[k][u] >= 0) push((int)k);
            }
        }
        int goal = -goal_one - 1;
        if (!prev.count(goal)) throw route_error("router: goal unreachable (H not a tree?)");
        std::vector<int> path{goal};
        while (path.back() != start) path.push_back(prev.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
    }

    void apply(int bot, int new_one) {
        if (!try_apply(bot, new_one)) throw route_error("router: planned move breaks the tree");
    }

    bool try_apply(int bot, int new_one) {
        int bi = s_.bot_ordinal(bot);
        int k = bot_block_[bi];
        int old = bot_at_[bi];
        if (old == new_one) throw route_error("router: no-op move planned");
        if (carrier_[k][new_one] >= 0) return false;  // within-block share = cycle
        carrier_[k][old] = -1;
        carrier_[k][new_one] = bot;
        bot_at_[bi] = new_one;
        if (!tree_ok()) {
            carrier_[k][new_one] = -1;
            carrier_[k][old] = bot;
            bot_at_[bi] = old;
            return false;
        }
        plan_->push_back({bot, ones_[new_one]});
        return true;
    }

    std::set<int> block_ones(int k) const {
        std::set<int> out;
        for (size_t u = 0; u < ones_.size(); ++u)
            if (carrier_[k][u] >= 0) out.insert((int)u);
        return out;
    }

    std::set<int> wanted(int k) const {
        std::set<int> out;
        for (int u = cuts_[k]; u <= cuts_[k + 1]; ++u) out.insert(u);
        return out;
    }

    void shape() {
        for (int k = (int)blocks_.size() - 1; k >= 1; --k) {
            attach_all(k);
            clear_exclusives(k);
        }
        if (block_ones(0) != wanted(0)) throw route_error("router: shaping failed for block 0");
    }

    void attach_all(int k) {
        std::set<int> want = wanted(k);
        size_t guard = 0;
        while (true) {
            std::set<int> have = block_ones(k);
            if (have == want) return;
            if (++guard > 8 * (blocks_.size() + ones_.size()) * (want.size() + 1))
                throw route_error("router: attach loop guard tripped");
            int z = -1;
            for (int u : want)
                if (!have.count(u)) { z = u; break; }
            auto path = h_path(k, z);
            int wstar = -path[1] - 1;  // first 1 on the way out of block k
            if (!want.count(wstar)) {
                apply(carrier_[k][wstar], z);
                continue;
            }
            // detour: re-hang z's side behind a droppable 1 of block k by
            // moving the path jump of the nearest still-movable block
            bool moved = false;
            for (int pos = (int)path.size() - 2; pos >= 2 && !moved; pos -= 2) {
                int C = path[pos];
                if (C > k) continue;  // processed blocks stay fixed
                int y = -path[pos - 1] - 1;
                for (int u : have) {
                    if (want.count(u)) continue;
                    if (try_apply(carrier_[C][y], u)) { moved = true; break; }
                }
            }
            if (!moved) throw route_error("router: attach detour found no movable block");
        }
    }

    void clear_exclusives(int k) {
        for (int z = cuts_[k] + 1; z <= cuts_[k + 1]; ++z) {
            for (int c = 0; c < (int)blocks_.size(); ++c) {
                if (c == k) continue;
                if (carrier_[c][z] < 0) continue;
                if (c > k) {
                    if (c == k + 1 && z == cuts_[k + 1]) continue;  // its lo spine, legitimate
                    throw route_error("router: processed block holds a stray jump");
                }
                // park the stray on any 1 at or below this block's range
                bool moved = false;
                for (int u = cuts_[k]; u >= 0 && !moved; --u)
                    if (carrier_[c][u] < 0 && try_apply(carrier_[c][z], u)) moved = true;
                if (!moved) throw route_error("router: cannot park stray jump");
            }
        }
    }

    // Double exchange with pivots on the spines facing each other:
    // swaps carriers of (u, hi-spine) in block p and (x, lo-spine) in
    // block q, for any p < q.
    void de_swap(int p, int u, int q, int x) {
        int v = spine_hi(p), y = spine_lo(q);
        if (u == v || x == y) throw route_error("router: pivot used as free element");
        int A = carrier_[p][u], B = carrier_[p][v], C = carrier_[q][x], D = carrier_[q][y];
        if (A < 0 || B < 0 || C < 0 || D < 0) throw route_error("router: de_swap on missing carrier");
        apply(B, x);
        apply(C, u);
        apply(A, v);
        apply(D, x);
        apply(B, u);
        apply(C, y);
    }

    // Helper-side free element in block h when h plays the given side:
    // any 1 of h other than the spine facing the partner.
    int helper_free(int h, bool h_is_q) const {
        int facing = h_is_q ? spine_lo(h) : spine_hi(h);
        for (int u = cuts_[h]; u <= cuts_[h + 1]; ++u)
            if (u != facing) return u;
        throw route_error("router: helper block too small");
    }

    int permute() {
        int t = (int)blocks_.size();
        // accumulator L: last block with >= 2 bots; helper: first such
        int L = -1, H = -1;
        for (int k = 0; k < t; ++k)
            if (blocks_[k].size() >= 2) {
                if (H < 0) H = k;
                L = k;
            }
        if (L < 0 || H == L) {
            // at most one multi-bot block: carriers cannot be permuted by
            // rewiring at all, so the scope is already canonical or stuck
            for (int k = 0; k < t; ++k)
                for (int u = cuts_[k]; u <= cuts_[k + 1]; ++u)
                    if (carrier_[k][u] != target_carrier(k, u, 0))
                        throw route_error("router: need two blocks with >= 2 bots to permute carriers");
            return 0;
        }

        for (int k = 0; k < t; ++k) {
            if (k == L) continue;
            fix_block(k, L);
        }

        // remaining permutation lives in L; its sign picks the class
        int rep = parity_of_block(L) == 0 ? 0 : 1;
        fix_accumulator(L, H, rep);
        return rep;
    }

    // target carrier for block k at one u (canonical form `rep`)
    int target_carrier(int k, int u, int rep) const {
        int pos = u - cuts_[k];
        int n = (int)blocks_[k].size();
        if (rep == 1 && n >= 2) {
            if (pos == n - 1) pos = n - 2;
            else if (pos == n - 2) pos = n - 1;
        }
        return blocks_[k][pos];
    }

    void fix_block(int k, int L) {
        if (blocks_[k].size() < 2) return;
        int pivot = k < L ? spine_hi(k) : spine_lo(k);
        auto de = [&](int o) {
            if (k < L)
                de_swap(k, o, L, helper_free(L, /*q side*/ true));
            else
                de_swap(L, helper_free(L, /*q side*/ false), k, o);
        };
        for (int u = cuts_[k]; u <= cuts_[k + 1]; ++u) {
            if (u == pivot) continue;
            int want = target_carrier(k, u, 0);
            if (carrier_[k][u] == want) continue;
            int w = one_of(want);
            if (w != pivot) de(w);
            de(u);
        }
        for (int u = cuts_[k]; u <= cuts_[k + 1]; ++u)
            if (carrier_[k][u] != target_carrier(k, u, 0)) throw route_error("router: block fix incomplete");
    }

    int parity_of_block(int k) {
        std::vector<int> perm;
        for (int u = cuts_[k]; u <= cuts_[k + 1]; ++u) {
            int cur = carrier_[k][u];
            int pos = -1;
            for (size_t i = 0; i < blocks_[k].size(); ++i)
                if (blocks_[k][i] == cur) pos = (int)i;
            perm.push_back(pos);
        }
        std::vector<char> seen(perm.size(), 0);
        int trans = 0;
        for (size_t i = 0; i < perm.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (size_t u = i; !seen[u]; u = perm[u]) {
                seen[u] = 1;
                ++len;
            }
            trans += len - 1;
        }
        return trans % 2;
    }

    void fix_accumulator(int L, int H, int rep) {
        int pivot = H < L ? spine_lo(L) : spine_hi(L);
        int u_arb = helper_free(H, /*q side*/ H > L);
        int count = 0;
        auto de = [&](int x) {
            if (H < L)
                de_swap(H, u_arb, L, x);
            else
                de_swap(L, x, H, u_arb);
            ++count;
        };
        for (int u = cuts_[L]; u <= cuts_[L + 1]; ++u) {
            if (u == pivot) continue;
            int want = target_carrier(L, u, rep);
            if (carrier_[L][u] == want) continue;
            int w = one_of(want);
            if (w != pivot) de(w);
            de(u);
        }
        if (count % 2 != 0) throw route_error("router: accumulator fix has odd length");
        for (int u = cuts_[L]; u <= cuts_[L + 1]; ++u)
            if (carrier_[L][u] != target_carrier(L, u, rep)) throw route_error("router: accumulator fix incomplete");
    }
};

}  // namespace detail

// Parity decides equivalence on basic sequents with at least two
// tensor-formulae of two or more bots each.
inline bool basic_equivalent(const Sequent& s, const Jumps& j1, const Jumps& j2) {
    if (!is_basic(s)) throw route_error("basic_equivalent: sequent contains pars");
    int big = 0;
    for (int r : s.roots)
        if (s.node(r).kind == Kind::Tensor && s.node(r).children.size() >= 2) ++big;
    if (big < 2) throw route_error("basic_equivalent: need at least two tensor-formulae with two or more bots");
    for (const Jumps* j : {&j1, &j2})
        if (!is_correct_fast(s, *j)) throw route_error("basic_equivalent: input is not a correct net");
    return parity(s, j1, j2) == ParityClass::Even;
}

inline bool basic_equivalent(const Sequent& s, const Linking& l1, const Linking& l2) {
    return basic_equivalent(s, compile_linking(s, l1), compile_linking(s, l2));
}

// Constructive path between equivalent nets of a basic sequent: routes
// both to a class-canonical form and splices.  Every step is verified.
inline RewirePath basic_path(const Sequent& s, const Jumps& j1, const Jumps& j2) {
    if (!basic_equivalent(s, j1, j2)) throw route_error("basic_path: nets are not equivalent (odd parity)");
    if (j1 == j2) return RewirePath{linking_of(s, j1), {}};

    detail::QRouter router(s, s.roots);
    std::map<int, int> target;
    for (size_t bi = 0; bi < j2.size(); ++bi) target[s.bots[bi]] = j2[bi];
    auto moves = router.route_to_target(j1, target);
    if (!moves) throw route_error("basic_path: router split the pair across classes (parity bug)");

    PathBuilder pb(s, j1);
    for (const auto& m : *moves) pb.move_if_needed(m.bot, m.one);
    if (pb.current() != j2) throw route_error("basic_path: endpoint mismatch");
    return pb.finish();
}

inline RewirePath basic_path(const Sequent& s, const Linking& l1, const Linking& l2) {
    return basic_path(s, compile_linking(s, l1), compile_linking(s, l2));
}

}  // namespace mll
