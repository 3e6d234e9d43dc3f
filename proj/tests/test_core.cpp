#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mll/core.hpp"

using namespace mll;

TEST_CASE("parse basic shapes") {
    Sequent s = parse_sequent("bot:a * bot:b, 1:x | 1:y");
    REQUIRE(s.roots.size() == 2);
    CHECK(s.node(s.roots[0]).kind == Kind::Tensor);
    CHECK(s.node(s.roots[1]).kind == Kind::Par);
    CHECK(s.node(s.roots[0]).children.size() == 2);
    CHECK(s.name_of(s.node(s.roots[0]).children[0]) == "a");
    CHECK(s.name_of(s.node(s.roots[1]).children[1]) == "y");
    CHECK(s.bots.size() == 2);
    CHECK(s.ones.size() == 2);
}

TEST_CASE("parse single unit gets auto name 0") {
    Sequent s = parse_sequent("1");
    REQUIRE(s.roots.size() == 1);
    CHECK(s.node(s.roots[0]).kind == Kind::One);
    CHECK(s.name_of(s.roots[0]) == "0");
}

TEST_CASE("parse keeps trees flat and alternating") {
    Sequent s = parse_sequent("(1|1)*(1|1)");
    REQUIRE(s.roots.size() == 1);
    const auto& root = s.node(s.roots[0]);
    CHECK(root.kind == Kind::Tensor);
    REQUIRE(root.children.size() == 2);
    for (int c : root.children) {
        CHECK(s.node(c).kind == Kind::Par);
        CHECK(s.node(c).children.size() == 2);
        for (int g : s.node(c).children) CHECK(s.node(g).kind == Kind::One);
    }

    // same-connective nesting flattens
    Sequent f = parse_sequent("1|(1|1)");
    CHECK(f.node(f.roots[0]).children.size() == 3);
    Sequent g = parse_sequent("bot*(bot*bot)*bot");
    CHECK(g.node(g.roots[0]).children.size() == 4);
}

TEST_CASE("auto names follow preorder paths") {
    Sequent s = parse_sequent("(1|1)*(1|1), bot");
    CHECK(s.name_of(s.roots[0]) == "0");
    CHECK(s.name_of(s.roots[1]) == "1");
    int par0 = s.node(s.roots[0]).children[0];
    CHECK(s.name_of(par0) == "0.0");
    CHECK(s.name_of(s.node(par0).children[1]) == "0.0.1");
}

TEST_CASE("print round trips, auto names stay implicit") {
    for (const char* text : {
             "bot:a*bot:b, 1:x|1:y",
             "1",
             "(1|1)*(1|1)",
             "bot*bot, bot*bot, 1, (1|1|1)*bot",  // example net sequent
             "1, 1, 1, bot*bot, bot*bot",
             "(bot|1:z)*bot, 1",
         }) {
        Sequent s = parse_sequent(text);
        std::string printed = print_sequent(s);
        Sequent back = parse_sequent(printed);
        CHECK(back == s);
        CHECK(print_sequent(back) == printed);
    }
    CHECK(print_sequent(parse_sequent("1")) == "1");
    CHECK(print_sequent(parse_sequent("bot * bot , 1 | 1")) == "bot*bot, 1|1");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_sequent("bot:a, bot:a"), sequent_error);  // duplicate name
    CHECK_THROWS_AS(parse_sequent("1 |"), parse_error);
    CHECK_THROWS_AS(parse_sequent("(1"), parse_error);
    CHECK_THROWS_AS(parse_sequent("2"), parse_error);
    CHECK_THROWS_AS(parse_sequent(""), parse_error);
    try {
        parse_sequent("1, ?");
    } catch (const parse_error& e) {
        CHECK(e.position == 3);
    }
}

TEST_CASE("balance") {
    CHECK(balance(parse_sequent("bot, 1")) == 0);
    CHECK(balance(parse_sequent("1, 1")) == -1);
    CHECK(balance(parse_sequent("bot*bot, 1|1")) == 0);
    // n-ary pars count arity-1
    CHECK(balance(parse_sequent("1|1|1")) == -2);
    CHECK(balance(parse_sequent("bot*bot, bot*bot, 1, (1|1|1)*bot")) == 0);
}

TEST_CASE("balance is additive over juxtaposition") {
    auto bal = [](const char* t) { return balance(parse_sequent(t)); };
    struct Case { const char* a; const char* b; };
    for (auto [a, b] : {Case{"bot, 1", "1, 1"}, Case{"bot*bot, 1|1", "bot, 1"}, Case{"1", "bot"}}) {
        std::string joined = std::string(a) + ", " + b;
        // rename clashes are impossible: auto names differ by root position
        CHECK(balance(parse_sequent(joined)) == bal(a) + bal(b) - 1);
    }
}

TEST_CASE("is_basic") {
    CHECK(is_basic(parse_sequent("1,1,1,bot*bot,bot*bot")));
    CHECK_FALSE(is_basic(parse_sequent("bot*bot, 1|1")));
    CHECK(is_basic(parse_sequent("1")));
}
