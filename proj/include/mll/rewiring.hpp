// Rewiring steps between proof nets over a fixed sequent: legal retarget
// sets, neighbor relations (big-step and local), verified rewiring paths,
// bounded equivalence search with the parity certificate, class
// enumeration, and the double-exchange construction.

#pragma once

#include <deque>
#include <functional>
#include <sstream>

#include "parity.hpp"
#include "proofcalc.hpp"

namespace mll {

struct path_error : std::runtime_error {
    int step_index;  // 0-based step that failed, or -1
    path_error(const std::string& msg, int idx = -1) : std::runtime_error(msg), step_index(idx) {}
};

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RewireStep {
    std::string bot;
    std::string to;
    bool operator==(const RewireStep& o) const { return bot == o.bot && to == o.to; }
};

struct RewirePath {
    Linking start;
    std::vector<RewireStep> steps;
};

// Accumulates a rewiring path, verifying on every step that exactly one
// jump changes and the result stays a correct net.
class PathBuilder {
  public:
    PathBuilder(const Sequent& s, Jumps start) : s_(s), j_(std::move(start)), start_(j_) {
        if (!is_correct_fast(s_, j_)) throw path_error("path start is not a correct net");
    }

    const Jumps& current() const { return j_; }
    const std::vector<RewireStep>& steps() const { return steps_; }

    void move(int bot_id, int target_id) {
        int bi = s_.bot_ordinal(bot_id);
        if (bi < 0) throw path_error("step " + std::to_string(steps_.size()) + ": '" + s_.name_of(bot_id) + "' is not a bot", (int)steps_.size());
        if (j_[bi] == target_id)
            throw path_error("step " + std::to_string(steps_.size()) + ": no-op move of '" + s_.name_of(bot_id) + "'", (int)steps_.size());
        int old = j_[bi];
        j_[bi] = target_id;
        if (!is_correct_fast(s_, j_)) {
            j_[bi] = old;
            throw path_error("step " + std::to_string(steps_.size()) + ": rewiring '" + s_.name_of(bot_id) + "' to '" +
                                 s_.name_of(target_id) + "' breaks correctness",
                             (int)steps_.size());
        }
        steps_.push_back({s_.name_of(bot_id), s_.name_of(target_id)});
    }

    // Moves only if the jump actually changes.
    void move_if_needed(int bot_id, int target_id) {
        if (j_[s_.bot_ordinal(bot_id)] != target_id) move(bot_id, target_id);
    }

    RewirePath finish() const { return RewirePath{linking_of(s_, start_), steps_}; }

  private:
    const Sequent& s_;
    Jumps j_;
    Jumps start_;
    std::vector<RewireStep> steps_;
};

// Replays a path, checking every intermediate; returns the final jumps.
inline Jumps verify_path(const Sequent& s, const RewirePath& p) {
    PathBuilder pb(s, compile_linking(s, p.start));
    for (const auto& st : p.steps) {
        int b = s.index_of(st.bot), t = s.index_of(st.to);
        if (b < 0 || t < 0) throw path_error("path references unknown name");
        pb.move(b, t);
    }
    return pb.current();
}

inline RewirePath reverse_path(const Sequent& s, const RewirePath& p) {
    Jumps end = verify_path(s, p);
    RewirePath out;
    out.start = linking_of(s, end);
    Jumps j = compile_linking(s, p.start);
    std::vector<std::string> froms;
    for (const auto& st : p.steps) {
        int bi = s.bot_ordinal(s.index_of(st.bot));
        froms.push_back(s.name_of(j[bi]));
        j[bi] = s.index_of(st.to);
    }
    for (int i = (int)p.steps.size() - 1; i >= 0; --i) out.steps.push_back({p.steps[i].bot, froms[i]});
    return out;
}

// Legal retargets of a's jump: exactly the 1-occurrences in a's empire.
inline std::set<std::string> rewire_targets(const Sequent& s, const Jumps& j, const std::string& a) {
    int b = s.index_of(a);
    if (b < 0 || s.node(b).kind != Kind::Bot) throw linking_error("rewire_targets: '" + a + "' is not a bot");
    std::set<std::string> out;
    for (int id : empire_nodes(s, j, b))
        if (s.node(id).kind == Kind::One) out.insert(s.name_of(id));
    return out;
}

// All single-jump retargets, ordered by (bot name, target name).
inline std::vector<std::pair<Jumps, RewireStep>> neighbors(const Sequent& s, const Jumps& j) {
    std::vector<int> bots_sorted = s.bots;
    std::sort(bots_sorted.begin(), bots_sorted.end(),
              [&](int a, int b) { return s.name_of(a) < s.name_of(b); });
    std::vector<std::pair<Jumps, RewireStep>> out;
    for (int b : bots_sorted) {
        int bi = s.bot_ordinal(b);
        std::set<std::string> targets = rewire_targets(s, j, s.name_of(b));
        for (const auto& t : targets) {
            int tid = s.index_of(t);
            if (tid == j[bi]) continue;
            Jumps nj = j;
            nj[bi] = tid;
            out.push_back({std::move(nj), {s.name_of(b), t}});
        }
    }
    return out;
}

// Local (small-step) moves: retarget a jump from u to a "next 1 over" u',
// i.e. one reachable from u through connectives and other jumps without
// passing another 1-occurrence.  These are the Figure-style local steps
// (across a jump, across a tensor, into or out of a par when legal),
// restricted to 1-targets; their closure agrees with the big-step
// closure.
inline std::vector<std::pair<Jumps, RewireStep>> small_step_neighbors(const Sequent& s, const Jumps& j) {
    std::vector<int> bots_sorted = s.bots;
    std::sort(bots_sorted.begin(), bots_sorted.end(),
              [&](int a, int b) { return s.name_of(a) < s.name_of(b); });
    std::vector<std::pair<Jumps, RewireStep>> out;
    for (int b : bots_sorted) {
        int bi = s.bot_ordinal(b);
        int u = j[bi];
        // adjacency without b's own jump
        std::vector<std::vector<int>> adj(s.size());
        for (int id = 0; id < s.size(); ++id) {
            const auto& n = s.node(id);
            for (int c : n.children) {
                adj[id].push_back(c);
                adj[c].push_back(id);
            }
        }
        for (size_t k = 0; k < j.size(); ++k) {
            if ((int)k == bi) continue;
            adj[s.bots[k]].push_back(j[k]);
            adj[j[k]].push_back(s.bots[k]);
        }
        std::vector<char> seen(s.size(), 0);
        std::vector<int> stack{u};
        seen[u] = 1;
        std::set<std::string> hops;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (seen[w]) continue;
                seen[w] = 1;
                if (s.node(w).kind == Kind::One)
                    hops.insert(s.name_of(w));  // stop here: a 1 ends the hop
                else
                    stack.push_back(w);
            }
        }
        for (const auto& t : hops) {
            int tid = s.index_of(t);
            if (tid == u) continue;
            Jumps nj = j;
            nj[bi] = tid;
            if (is_correct_fast(s, nj)) out.push_back({std::move(nj), {s.name_of(b), t}});
        }
    }
    return out;
}

// Double exchange (six local rewirings): swaps the targets of a,b and of
// c,d simultaneously.  Each intermediate is verified; if one fails the
// error reports the failing step, meaning the path-shaped side condition
// did not hold.
inline RewirePath double_exchange(const Sequent& s, const Jumps& j, const std::string& a, const std::string& b,
                                  const std::string& c, const std::string& d) {
    std::set<std::string> names{a, b, c, d};
    if (names.size() != 4) throw path_error("double_exchange: a, b, c, d must be four distinct bots");
    int ia = s.index_of(a), ib = s.index_of(b), ic = s.index_of(c), id_ = s.index_of(d);
    for (int x : {ia, ib, ic, id_})
        if (x < 0 || s.node(x).kind != Kind::Bot) throw path_error("double_exchange: arguments must name bots");
    int u = j[s.bot_ordinal(ia)], v = j[s.bot_ordinal(ib)];
    int x = j[s.bot_ordinal(ic)], y = j[s.bot_ordinal(id_)];
    PathBuilder pb(s, j);
    pb.move_if_needed(ib, y);
    pb.move_if_needed(id_, u);
    pb.move_if_needed(ia, v);
    pb.move_if_needed(ic, y);
    pb.move_if_needed(ib, u);
    pb.move_if_needed(id_, x);
    // endpoint: targets of a,b exchanged and of c,d exchanged
    const Jumps& fin = pb.current();
    if (fin[s.bot_ordinal(ia)] != v || fin[s.bot_ordinal(ib)] != u || fin[s.bot_ordinal(ic)] != y ||
        fin[s.bot_ordinal(id_)] != x)
        throw path_error("double_exchange: endpoint mismatch");
    return pb.finish();
}

namespace detail {

struct JumpsHash {
    size_t operator()(const Jumps& j) const {
        size_t h = 1469598103934665603ull;
        for (int v : j) {
            h ^= (size_t)(v + 0x9e3779b9);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace detail

// BFS closure of the big-step relation.  Throws budget_exceeded when the
// class grows past `budget` states.
inline std::vector<Jumps> enumerate_class(const Sequent& s, const Jumps& start, size_t budget = 1000000) {
    if (!is_correct_fast(s, start)) throw linking_error("enumerate_class: not a correct net");
    std::unordered_set<Jumps, detail::JumpsHash> seen;
    std::deque<Jumps> queue;
    std::vector<Jumps> out;
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        Jumps cur = std::move(queue.front());
        queue.pop_front();
        out.push_back(cur);
        for (auto& [nj, step] : neighbors(s, cur)) {
            if (seen.count(nj)) continue;
            if (seen.size() >= budget) throw budget_exceeded("enumerate_class: state budget exceeded");
            seen.insert(nj);
            queue.push_back(std::move(nj));
        }
    }
    return out;
}

struct EquivResult {
    enum class Status { Found, Inequivalent, Exhausted };
    Status status;
    std::string reason;             // for Inequivalent
    std::optional<RewirePath> path; // for Found
};

// Decides equivalence of two correct restricted nets: parity gives a fast
// inequivalence certificate, otherwise bidirectional BFS within a state
// budget.  Deterministic for a fixed budget.
inline EquivResult equivalent(const Sequent& s, const Jumps& j1, const Jumps& j2, size_t budget = 1000000) {
    for (const Jumps* j : {&j1, &j2})
        if (!is_correct_fast(s, *j)) throw linking_error("equivalent: input is not a correct net");
    if (!is_restricted(s, j1) || !is_restricted(s, j2))
        throw linking_error("equivalent: linkings must be restricted to 1-targets");
    if (j1 == j2) return {EquivResult::Status::Found, "", RewirePath{linking_of(s, j1), {}}};
    if (parity(s, j1, j2) == ParityClass::Odd) return {EquivResult::Status::Inequivalent, "parity", std::nullopt};

    using Map = std::unordered_map<Jumps, std::pair<Jumps, RewireStep>, detail::JumpsHash>;
    Map parentF, parentB;  // state -> (previous state, step applied to previous)
    std::deque<Jumps> frontF{j1}, frontB{j2};
    parentF[j1] = {j1, {"", ""}};
    parentB[j2] = {j2, {"", ""}};

    auto build_path = [&](const Jumps& meet) {
        std::vector<RewireStep> fwd;
        Jumps cur = meet;
        while (!(parentF.at(cur).second.bot.empty())) {
            fwd.push_back(parentF.at(cur).second);
            cur = parentF.at(cur).first;
        }
        std::reverse(fwd.begin(), fwd.end());
        RewirePath path{linking_of(s, j1), fwd};
        cur = meet;
        while (!(parentB.at(cur).second.bot.empty())) {
            auto [prev, step] = parentB.at(cur);
            // reverse of step: the jump goes back to its value in prev
            int bi = s.bot_ordinal(s.index_of(step.bot));
            path.steps.push_back({step.bot, s.name_of(prev[bi])});
            cur = prev;
        }
        verify_path(s, path);
        return path;
    };

    while (!frontF.empty() && !frontB.empty()) {
        bool forward = frontF.size() <= frontB.size();
        auto& front = forward ? frontF : frontB;
        auto& self = forward ? parentF : parentB;
        auto& other = forward ? parentB : parentF;
        std::deque<Jumps> next;
        for (const Jumps& cur : front) {
            for (auto& [nj, step] : neighbors(s, cur)) {
                if (self.count(nj)) continue;
                if (parentF.size() + parentB.size() >= budget)
                    return {EquivResult::Status::Exhausted, "state budget exceeded", std::nullopt};
                self[nj] = {cur, step};
                if (other.count(nj)) return {EquivResult::Status::Found, "", build_path(nj)};
                next.push_back(std::move(nj));
            }
        }
        front = std::move(next);
    }
    std::string side = frontF.empty() ? "first" : "second";
    size_t size = frontF.empty() ? parentF.size() : parentB.size();
    return {EquivResult::Status::Inequivalent,
            "class of " + side + " net exhausted (" + std::to_string(size) + " nets)", std::nullopt};
}

inline EquivResult equivalent(const Sequent& s, const Linking& l1, const Linking& l2, size_t budget = 1000000) {
    return equivalent(s, compile_linking(s, l1), compile_linking(s, l2), budget);
}

}  // namespace mll
