// Formula trees, sequents, parsing and printing for unit-only MLL.
//
// Sequents are forests of named n-ary formula trees over the units 1 and
// bot.  Trees are strictly alternating: a tensor never has a tensor child
// and a par never has a par child.  Every node carries a name that is
// unique within its sequent; unnamed nodes receive deterministic names
// derived from their preorder path ("0", "0.1", "0.1.2", ...).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mll {

enum class Kind : uint8_t { One, Bot, Tensor, Par };

inline bool is_unit(Kind k) { return k == Kind::One || k == Kind::Bot; }

struct parse_error : std::runtime_error {
    size_t position;
    parse_error(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct sequent_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sequent: an ordered list of formula roots stored as one flat node
// arena.  Nodes appear in preorder, roots in sequent order.  Immutable
// after construction; all operations elsewhere in the library work on
// node indices and only touch names at the I/O boundary.
class Sequent {
  public:
    struct Node {
        Kind kind;
        int parent = -1;     // -1 for roots
        int child_pos = 0;   // position among parent's children, or root position
        std::string name;
        std::vector<int> children;
    };

    std::vector<Node> nodes;
    std::vector<int> roots;
    std::vector<int> bots;  // bot node ids, preorder
    std::vector<int> ones;  // one node ids, preorder
    std::vector<int> pars;  // par node ids, preorder

    const Node& node(int id) const { return nodes[id]; }
    int size() const { return static_cast<int>(nodes.size()); }

    int index_of(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? -1 : it->second;
    }

    bool has_name(const std::string& name) const { return by_name_.count(name) != 0; }

    const std::string& name_of(int id) const { return nodes[id].name; }

    // Ordinal of a bot/one node among bots/ones (used to index linkings).
    int bot_ordinal(int id) const { return ord_.at(id).first == Kind::Bot ? ord_.at(id).second : -1; }
    int one_ordinal(int id) const { return ord_.at(id).first == Kind::One ? ord_.at(id).second : -1; }

    bool operator==(const Sequent& other) const {
        if (nodes.size() != other.nodes.size() || roots.size() != other.roots.size()) return false;
        for (size_t i = 0; i < nodes.size(); ++i) {
            const Node& a = nodes[i];
            const Node& b = other.nodes[i];
            if (a.kind != b.kind || a.parent != b.parent || a.name != b.name || a.children != b.children)
                return false;
        }
        return roots == other.roots;
    }
    bool operator!=(const Sequent& other) const { return !(*this == other); }

    // The name a node would get if it had no explicit name.
    std::string auto_name(int id) const {
        const Node& n = nodes[id];
        if (n.parent < 0) return std::to_string(n.child_pos);
        return auto_name(n.parent) + "." + std::to_string(n.child_pos);
    }

    // Builder interface: add nodes, then finish() to validate and index.
    int add_node(Kind kind, int parent, std::string name = "") {
        int id = static_cast<int>(nodes.size());
        Node n;
        n.kind = kind;
        n.parent = parent;
        n.name = std::move(name);
        if (parent >= 0) {
            n.child_pos = static_cast<int>(nodes[parent].children.size());
            nodes[parent].children.push_back(id);
        } else {
            n.child_pos = static_cast<int>(roots.size());
            roots.push_back(id);
        }
        nodes.push_back(std::move(n));
        return id;
    }

    void finish() {
        bots.clear();
        ones.clear();
        pars.clear();
        by_name_.clear();
        ord_.clear();
        for (int id = 0; id < size(); ++id) {
            Node& n = nodes[id];
            if (n.name.empty()) n.name = auto_name(id);
            if (!by_name_.emplace(n.name, id).second)
                throw sequent_error("duplicate name '" + n.name + "' in sequent");
            if (n.parent >= 0) {
                Kind pk = nodes[n.parent].kind;
                if (pk == Kind::Tensor && n.kind == Kind::Tensor)
                    throw sequent_error("tensor child of tensor at '" + n.name + "'");
                if (pk == Kind::Par && n.kind == Kind::Par)
                    throw sequent_error("par child of par at '" + n.name + "'");
            }
            if (!is_unit(n.kind) && n.children.size() < 2)
                throw sequent_error("connective '" + n.name + "' needs at least two children");
            if (is_unit(n.kind) && !n.children.empty())
                throw sequent_error("unit '" + n.name + "' cannot have children");
        }
        for (int id = 0; id < size(); ++id) {
            switch (nodes[id].kind) {
                case Kind::Bot: ord_[id] = {Kind::Bot, (int)bots.size()}; bots.push_back(id); break;
                case Kind::One: ord_[id] = {Kind::One, (int)ones.size()}; ones.push_back(id); break;
                case Kind::Par: ord_[id] = {Kind::Par, (int)pars.size()}; pars.push_back(id); break;
                default: ord_[id] = {Kind::Tensor, 0}; break;
            }
        }
    }

  private:
    std::unordered_map<std::string, int> by_name_;
    std::unordered_map<int, std::pair<Kind, int>> ord_;
};

namespace detail {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    static bool name_char(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
    }

    // Parsed tree before flattening into a Sequent.
    struct Tree {
        Kind kind;
        std::string name;
        std::vector<Tree> children;
    };

    std::string parse_name() {
        size_t start = pos;
        std::string out;
        while (pos < text.size() && name_char(text[pos])) out.push_back(text[pos++]);
        if (out.empty()) fail("expected name after ':'");
        (void)start;
        return out;
    }

    Tree parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        Tree t;
        if (text[pos] == '1') {
            ++pos;
            t.kind = Kind::One;
        } else if (text.compare(pos, 3, "bot") == 0) {
            pos += 3;
            t.kind = Kind::Bot;
        } else if (text[pos] == '(') {
            ++pos;
            t = parse_formula();
            if (!eat(')')) fail("expected ')'");
        } else {
            fail("expected '1', 'bot' or '('");
        }
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            std::string nm = parse_name();
            if (!t.name.empty()) fail("node already named '" + t.name + "'");
            t.name = std::move(nm);
        }
        return t;
    }

    Tree parse_term() {
        Tree first = parse_atom();
        if (!eat('*')) return first;
        Tree t;
        t.kind = Kind::Tensor;
        auto absorb = [&](Tree&& c) {
            if (c.kind == Kind::Tensor && c.name.empty()) {
                for (Tree& g : c.children) t.children.push_back(std::move(g));
            } else if (c.kind == Kind::Tensor) {
                fail("named tensor nested directly under tensor cannot keep its name");
            } else {
                t.children.push_back(std::move(c));
            }
        };
        absorb(std::move(first));
        do {
            absorb(parse_atom());
        } while (eat('*'));
        return t;
    }

    Tree parse_formula() {
        Tree first = parse_term();
        if (!eat('|')) return first;
        Tree t;
        t.kind = Kind::Par;
        auto absorb = [&](Tree&& c) {
            if (c.kind == Kind::Par && c.name.empty()) {
                for (Tree& g : c.children) t.children.push_back(std::move(g));
            } else if (c.kind == Kind::Par) {
                fail("named par nested directly under par cannot keep its name");
            } else {
                t.children.push_back(std::move(c));
            }
        };
        absorb(std::move(first));
        do {
            absorb(parse_term());
        } while (eat('|'));
        return t;
    }

    std::vector<Tree> parse_sequent() {
        std::vector<Tree> out;
        out.push_back(parse_formula());
        while (eat(',')) out.push_back(parse_formula());
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return out;
    }
};

inline void build_tree(Sequent& s, const Parser::Tree& t, int parent) {
    int id = s.add_node(t.kind, parent, t.name);
    for (const auto& c : t.children) build_tree(s, c, id);
}

}  // namespace detail

inline Sequent parse_sequent(const std::string& text) {
    detail::Parser p(text);
    auto trees = p.parse_sequent();
    Sequent s;
    for (const auto& t : trees) detail::build_tree(s, t, -1);
    s.finish();
    return s;
}

namespace detail {

inline void print_node(const Sequent& s, int id, std::string& out, bool parenthesize) {
    const Sequent::Node& n = s.node(id);
    auto emit_name = [&]() {
        if (n.name != s.auto_name(id)) { out += ':'; out += n.name; }
    };
    switch (n.kind) {
        case Kind::One: out += '1'; emit_name(); return;
        case Kind::Bot: out += "bot"; emit_name(); return;
        case Kind::Tensor: {
            bool wrap = parenthesize || n.name != s.auto_name(id);
            if (wrap) out += '(';
            for (size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += '*';
                print_node(s, n.children[i], out, s.node(n.children[i]).kind == Kind::Par);
            }
            if (wrap) { out += ')'; emit_name(); }
            return;
        }
        case Kind::Par: {
            bool wrap = parenthesize || n.name != s.auto_name(id);
            if (wrap) out += '(';
            for (size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += '|';
                // tensor children bind tighter than '|'; no parens needed
                print_node(s, n.children[i], out, false);
            }
            if (wrap) { out += ')'; emit_name(); }
            return;
        }
    }
}

}  // namespace detail

inline std::string print_sequent(const Sequent& s) {
    std::string out;
    for (size_t i = 0; i < s.roots.size(); ++i) {
        if (i) out += ", ";
        detail::print_node(s, s.roots[i], out, false);
    }
    return out;
}

// Balance: number of bots minus the number of pars and commas, where an
// n-ary par counts as n-1 binary pars.
inline int balance(const Sequent& s) {
    int b = static_cast<int>(s.bots.size());
    for (int p : s.pars) b -= static_cast<int>(s.node(p).children.size()) - 1;
    b -= static_cast<int>(s.roots.size()) - 1;
    return b;
}

inline bool is_basic(const Sequent& s) { return s.pars.empty(); }

// Subtree node ids of `root`, preorder.
inline std::vector<int> subtree_nodes(const Sequent& s, int root) {
    std::vector<int> out, stack{root};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        out.push_back(id);
        const auto& ch = s.node(id).children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

}  // namespace mll
