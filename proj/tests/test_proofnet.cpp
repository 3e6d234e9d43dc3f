#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "mll/proofnet.hpp"

using namespace mll;

namespace {

Linking L(std::initializer_list<std::pair<const char*, const char*>> js) {
    Linking l;
    for (auto [a, b] : js) l[a] = b;
    return l;
}

// all total restricted linkings of s
std::vector<Jumps> all_restricted(const Sequent& s) {
    std::vector<Jumps> out;
    Jumps j(s.bots.size(), 0);
    size_t n = s.ones.size();
    if (s.bots.empty()) return {Jumps{}};
    std::vector<size_t> idx(s.bots.size(), 0);
    while (true) {
        Jumps cur;
        for (size_t i = 0; i < idx.size(); ++i) cur.push_back(s.ones[idx[i]]);
        out.push_back(cur);
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

// all total linkings with arbitrary vertex targets
std::vector<Jumps> all_general(const Sequent& s) {
    std::vector<Jumps> out;
    if (s.bots.empty()) return {Jumps{}};
    std::vector<size_t> idx(s.bots.size(), 0);
    size_t n = s.size();
    while (true) {
        Jumps cur;
        for (size_t i = 0; i < idx.size(); ++i) cur.push_back((int)idx[i]);
        out.push_back(cur);
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("exhaustive checker on the two-jump example") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y");
    CHECK(is_correct_exhaustive(s, L({{"a", "x"}, {"b", "y"}})));
    CHECK(is_correct_exhaustive(s, L({{"a", "y"}, {"b", "x"}})));
    CHECK_FALSE(is_correct_exhaustive(s, L({{"a", "x"}, {"b", "x"}})));
}

TEST_CASE("single 1 with empty linking is correct") {
    Sequent s = parse_sequent("1");
    CHECK(is_correct_exhaustive(s, Linking{}));
    CHECK(is_correct_fast(s, Linking{}));
}

TEST_CASE("fast checker agrees with the oracle and rejects self-jumps") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y");
    CHECK(is_correct_fast(s, L({{"a", "x"}, {"b", "y"}})));
    CHECK_FALSE(is_correct_fast(s, L({{"a", "x"}, {"b", "x"}})));
    Sequent t = parse_sequent("bot:a, 1:x");
    CHECK_FALSE(is_correct_fast(t, L({{"a", "a"}})));
}

TEST_CASE("unknown jump targets are rejected") {
    Sequent s = parse_sequent("bot:a, 1:x");
    CHECK_THROWS_AS(compile_linking(s, L({{"a", "zz"}})), linking_error);
    CHECK_THROWS_AS(compile_linking(s, L({{"q", "x"}})), linking_error);
    CHECK_THROWS_AS(compile_linking(s, Linking{}), linking_error);  // not total
}

TEST_CASE("checkers agree on every linking of small sequents") {
    for (const char* text : {
             "bot:a*bot:b, 1:x|1:y",
             "bot, 1",
             "bot|1",
             "(bot|1)*bot, 1",
             "bot*bot, bot*bot, 1, (1|1|1)*bot",
             "1, 1, bot*bot",
         }) {
        Sequent s = parse_sequent(text);
        for (const Jumps& j : all_general(s)) CHECK(is_correct_fast(s, j) == is_correct_exhaustive(s, j));
    }
}

TEST_CASE("correct nets live on balanced sequents") {
    for (const char* text : {"bot:a*bot:b, 1:x|1:y", "bot, 1", "1, 1, 1, bot*bot, bot*bot"}) {
        Sequent s = parse_sequent(text);
        bool any = false;
        for (const Jumps& j : all_restricted(s))
            if (is_correct_fast(s, j)) any = true;
        CHECK(any == (balance(s) == 0));
    }
    // unbalanced: no nets at all
    Sequent u = parse_sequent("1, 1");
    CHECK(balance(u) != 0);
    Sequent v = parse_sequent("bot, 1, 1");
    for (const Jumps& j : all_general(v)) CHECK_FALSE(is_correct_fast(v, j));
}

TEST_CASE("find_boxing returns a valid boxing exactly for correct nets") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y");
    auto good = find_boxing(s, L({{"a", "x"}, {"b", "y"}}));
    REQUIRE(good.has_value());
    // the par's box here must cover the tensor formula too: the smallest
    // valid box of the par is the whole sequent
    const SubSequent& box = good->at("1");
    CHECK(box.count("1"));
    CHECK(box.count("0"));

    CHECK_FALSE(find_boxing(s, L({{"a", "x"}, {"b", "x"}})).has_value());

    Sequent one = parse_sequent("1");
    auto empty_box = find_boxing(one, Linking{});
    REQUIRE(empty_box.has_value());
    CHECK(empty_box->empty());
}

TEST_CASE("boxes are disjoint or nested and contain their par as a port") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y, (bot:c|1:z)*1:w");
    for (const Jumps& j : all_restricted(s)) {
        if (!is_correct_fast(s, j)) continue;
        auto boxing = find_boxing(s, j);
        REQUIRE(boxing.has_value());
        for (const auto& [par, roots] : *boxing) {
            CHECK(roots.count(par));  // the par's formula is a member, rooted at the par
            std::set<int> nodes;
            for (const auto& r : roots)
                for (int id : subtree_nodes(s, s.index_of(r))) nodes.insert(id);
            for (const auto& [par2, roots2] : *boxing) {
                if (par == par2) continue;
                std::set<int> nodes2;
                for (const auto& r : roots2)
                    for (int id : subtree_nodes(s, s.index_of(r))) nodes2.insert(id);
                bool disjoint = true, sub12 = true, sub21 = true;
                for (int id : nodes) {
                    if (nodes2.count(id)) disjoint = false;
                    else sub12 = false;
                }
                for (int id : nodes2)
                    if (!nodes.count(id)) sub21 = false;
                CHECK((disjoint || sub12 || sub21));
            }
        }
    }
}

TEST_CASE("empire propagation") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y");
    Jumps j = compile_linking(s, L({{"a", "x"}, {"b", "y"}}));
    CHECK(empire(s, j, "a") == SubSequent{"a", "x"});

    Sequent t = parse_sequent("bot:a, 1:x");
    Jumps jt = compile_linking(t, L({{"a", "x"}}));
    CHECK(empire(t, jt, "a") == SubSequent{"a", "x"});  // whole sequent

    // the empire of a root contains that root's formula entirely
    Sequent u = parse_sequent("bot:a*bot:b, 1:x, 1:y");
    Jumps ju = compile_linking(u, L({{"a", "x"}, {"b", "y"}}));
    auto e = empire(u, ju, "0");
    CHECK(e.count("0"));

    CHECK_THROWS_AS(empire(s, j, "nope"), linking_error);
}

TEST_CASE("empire characterizes legal retargets on small nets") {
    for (const char* text : {"bot:a*bot:b, 1:x|1:y", "bot, bot, 1, 1, 1, bot*bot"}) {
        Sequent s = parse_sequent(text);
        for (const Jumps& j : all_restricted(s)) {
            if (!is_correct_fast(s, j)) continue;
            for (size_t bi = 0; bi < j.size(); ++bi) {
                int b = s.bots[bi];
                std::vector<char> in(s.size(), 0);
                for (int id : empire_nodes(s, j, b)) in[id] = 1;
                for (int w : s.ones) {
                    Jumps alt = j;
                    alt[bi] = w;
                    CHECK((bool)in[w] == is_correct_fast(s, alt));
                }
            }
        }
    }
}

TEST_CASE("empires restricted to the scope are themselves correct subnets") {
    Sequent s = parse_sequent("bot:a*bot:b, 1:x|1:y, bot:c, 1:z");
    for (const Jumps& j : all_restricted(s)) {
        if (!is_correct_fast(s, j)) continue;
        for (int b : s.bots) {
            std::vector<char> in(s.size(), 0);
            auto nodes = empire_nodes(s, j, b);
            for (int id : nodes) in[id] = 1;
            // collect roots and rebuild the induced subnet
            Sequent sub;
            std::map<int, int> remap;
            std::function<void(int, int)> copy = [&](int src, int parent) {
                int id = sub.add_node(s.node(src).kind, parent, s.name_of(src));
                remap[src] = id;
                for (int c : s.node(src).children) copy(c, id);
            };
            for (int id : nodes)
                if (s.node(id).parent < 0 || !in[s.node(id).parent]) copy(id, -1);
            sub.finish();
            Linking restricted;
            bool total = true;
            for (size_t bi = 0; bi < j.size(); ++bi) {
                if (!in[s.bots[bi]]) continue;
                if (!in[j[bi]]) { total = false; break; }
                restricted[s.name_of(s.bots[bi])] = s.name_of(j[bi]);
            }
            REQUIRE(total);
            CHECK(is_correct_fast(sub, restricted));
        }
    }
}

TEST_CASE("sibling empires under a tensor are disjoint") {
    Sequent s = parse_sequent("(bot:a|1:u)*(bot:b|1:v), 1:x, bot:c");
    for (const Jumps& j : all_restricted(s)) {
        if (!is_correct_fast(s, j)) continue;
        int t = s.roots[0];
        const auto& ch = s.node(t).children;
        for (size_t i = 0; i < ch.size(); ++i)
            for (size_t k = i + 1; k < ch.size(); ++k) {
                auto e1 = empire_nodes(s, j, ch[i]);
                auto e2 = empire_nodes(s, j, ch[k]);
                std::set<int> set1(e1.begin(), e1.end());
                for (int id : e2) CHECK_FALSE(set1.count(id));
            }
    }
}
