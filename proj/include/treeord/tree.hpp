#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treeord/errors.hpp"

namespace treeord {

/// A node of the infinite binary tree, written as a word over {0,1}.
/// The root is the empty word.
using NodeWord = std::string;

/// Alphabet symbols are opaque strings. Product symbols are "(a,b,_)"-style
/// tuples; the component "_" is reserved for the padding symbol.
using Symbol = std::string;

inline constexpr const char* kPadSymbol = "_";

/// Canonical node order: by length, then lexicographic. All enumeration
/// order in the library derives from this.
struct CanonicalLess {
    bool operator()(const std::string& a, const std::string& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using NodeSet = std::set<NodeWord, CanonicalLess>;

inline bool is_node_word(const NodeWord& u) {
    return std::all_of(u.begin(), u.end(), [](char c) { return c == '0' || c == '1'; });
}

inline bool is_prefix_of(const NodeWord& u, const NodeWord& v) {
    return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

inline bool prefix_comparable(const NodeWord& u, const NodeWord& v) {
    return is_prefix_of(u, v) || is_prefix_of(v, u);
}

/// A finite, prefix-closed set of {0,1}-words.
class TreeDomain {
   public:
    TreeDomain() = default;

    explicit TreeDomain(NodeSet nodes) : nodes_(std::move(nodes)) {
        for (const auto& u : nodes_) {
            if (!is_node_word(u)) throw FormatError("not a {0,1}-word: \"" + u + "\"");
            if (!u.empty() && nodes_.count(u.substr(0, u.size() - 1)) == 0)
                throw FormatError("domain not prefix-closed at node \"" + u + "\"");
        }
    }

    bool contains(const NodeWord& u) const { return nodes_.count(u) != 0; }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    const NodeSet& nodes() const { return nodes_; }

    /// Boundary: children of domain nodes just outside the domain.
    /// The boundary of the empty domain is {ε}.
    NodeSet boundary() const {
        NodeSet out;
        if (nodes_.empty()) {
            out.insert("");
            return out;
        }
        for (const auto& u : nodes_)
            for (char d : {'0', '1'}) {
                NodeWord v = u + d;
                if (!contains(v)) out.insert(v);
            }
        return out;
    }

    bool operator==(const TreeDomain& o) const = default;

   private:
    NodeSet nodes_;
};

/// A finite labeled binary tree: a map from a tree domain to symbols.
/// The empty tree is a valid value.
class Tree {
   public:
    using LabelMap = std::map<NodeWord, Symbol, CanonicalLess>;

    Tree() = default;

    explicit Tree(LabelMap labels) : labels_(std::move(labels)) {
        for (const auto& [u, s] : labels_) {
            if (!is_node_word(u)) throw FormatError("not a {0,1}-word: \"" + u + "\"");
            if (!u.empty() && labels_.count(u.substr(0, u.size() - 1)) == 0)
                throw FormatError("domain not prefix-closed at node \"" + u + "\"");
            if (s.empty()) throw FormatError("empty symbol at node \"" + u + "\"");
        }
    }

    bool empty() const { return labels_.empty(); }
    std::size_t size() const { return labels_.size(); }
    bool contains(const NodeWord& u) const { return labels_.count(u) != 0; }

    const Symbol& label(const NodeWord& u) const {
        auto it = labels_.find(u);
        if (it == labels_.end()) throw DomainError("node \"" + u + "\" outside tree domain");
        return it->second;
    }

    const LabelMap& labels() const { return labels_; }

    TreeDomain domain() const {
        NodeSet nodes;
        for (const auto& [u, s] : labels_) nodes.insert(u);
        return TreeDomain(std::move(nodes));
    }

    auto operator<=>(const Tree& o) const = default;

   private:
    LabelMap labels_;
};

/// Single-node tree.
inline Tree leaf(const Symbol& s) { return Tree({{"", s}}); }

/// The path tree with domain 0^{<n}, all nodes labeled s.
inline Tree zero_path(std::size_t n, const Symbol& s) {
    Tree::LabelMap m;
    NodeWord u;
    for (std::size_t i = 0; i < n; ++i) {
        m[u] = s;
        u += '0';
    }
    return Tree(std::move(m));
}

// --- product (convolution) symbols ---------------------------------------

inline Symbol make_product_symbol(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += parts[i];
    }
    s += ')';
    return s;
}

/// Splits "(a,b,_)" into {"a","b","_"}. Non-product symbols give a
/// singleton vector, so callers can treat both shapes uniformly.
inline std::vector<std::string> split_product_symbol(const Symbol& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return {s};
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += s[i];
        }
    }
    parts.push_back(cur);
    return parts;
}

// --- operations -----------------------------------------------------------

/// Subtree of t rooted at u; u must lie in the domain of t.
inline Tree subtree(const Tree& t, const NodeWord& u) {
    if (!t.contains(u)) throw DomainError("subtree root \"" + u + "\" outside tree domain");
    Tree::LabelMap m;
    for (const auto& [v, s] : t.labels())
        if (is_prefix_of(u, v)) m[v.substr(u.size())] = s;
    return Tree(std::move(m));
}

/// Simultaneous substitution t[u_1/t_1,...,u_n/t_n]. Positions must be
/// pairwise prefix-incomparable and lie in dom(t) ∪ ∂dom(t).
inline Tree substitute(const Tree& t, const std::vector<std::pair<NodeWord, Tree>>& bindings) {
    NodeSet boundary = t.domain().boundary();
    for (std::size_t i = 0; i < bindings.size(); ++i) {
        const NodeWord& u = bindings[i].first;
        if (!t.contains(u) && boundary.count(u) == 0)
            throw DomainError("substitution position \"" + u + "\" outside dom(t) ∪ ∂dom(t)");
        for (std::size_t j = i + 1; j < bindings.size(); ++j)
            if (prefix_comparable(u, bindings[j].first))
                throw ArgumentError("substitution positions \"" + u + "\" and \"" +
                                    bindings[j].first + "\" are prefix-comparable");
    }
    Tree::LabelMap m;
    for (const auto& [v, s] : t.labels()) {
        bool replaced = false;
        for (const auto& [u, tu] : bindings)
            if (is_prefix_of(u, v)) {
                replaced = true;
                break;
            }
        if (!replaced) m[v] = s;
    }
    for (const auto& [u, tu] : bindings)
        for (const auto& [v, s] : tu.labels()) m[u + v] = s;
    return Tree(std::move(m));
}

/// Convolution of n ≥ 1 trees: domain is the union of the input domains,
/// absent tracks padded with "_".
inline Tree convolve(const std::vector<Tree>& trees) {
    if (trees.empty()) throw ArgumentError("convolution of zero trees");
    Tree::LabelMap m;
    for (const auto& t : trees)
        for (const auto& [u, s] : t.labels()) m[u];  // collect the union domain
    for (auto& [u, s] : m) {
        std::vector<std::string> parts;
        parts.reserve(trees.size());
        for (const auto& t : trees) parts.push_back(t.contains(u) ? t.label(u) : kPadSymbol);
        s = make_product_symbol(parts);
    }
    return Tree(std::move(m));
}

inline std::size_t convolution_arity(const Tree& t) {
    if (t.empty()) return 0;  // arity not recoverable from the empty tree
    return split_product_symbol(t.labels().begin()->second).size();
}

/// Extracts track i of a convolution. Rejects trees that are not valid
/// convolutions (all-pad node or a track support that is not prefix-closed).
inline Tree deconvolve(const Tree& t, std::size_t track) {
    Tree::LabelMap m;
    std::size_t arity = 0;
    for (const auto& [u, s] : t.labels()) {
        auto parts = split_product_symbol(s);
        if (arity == 0)
            arity = parts.size();
        else if (parts.size() != arity)
            throw FormatError("mixed arities in convolution at node \"" + u + "\"");
        if (std::all_of(parts.begin(), parts.end(),
                        [](const std::string& p) { return p == kPadSymbol; }))
            throw FormatError("all-pad label at node \"" + u + "\"");
        if (track >= parts.size()) throw ArityError("track index out of range");
        if (parts[track] != kPadSymbol) m[u] = parts[track];
    }
    for (const auto& [u, s] : m)
        if (!u.empty() && m.count(u.substr(0, u.size() - 1)) == 0)
            throw FormatError("track " + std::to_string(track) +
                              " support not prefix-closed at node \"" + u + "\"");
    return Tree(std::move(m));
}

inline std::vector<Tree> deconvolve_all(const Tree& t, std::size_t arity) {
    std::vector<Tree> out;
    out.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) out.push_back(deconvolve(t, i));
    return out;
}

// --- text format ------------------------------------------------------------
//
// One line per node, "bitstring:symbol", nodes in canonical order.
// The empty tree serializes as the single line "<empty>".

inline std::string to_text(const Tree& t) {
    if (t.empty()) return "<empty>\n";
    std::string out;
    for (const auto& [u, s] : t.labels()) {
        out += u;
        out += ':';
        out += s;
        out += '\n';
    }
    return out;
}

inline Tree tree_from_text(const std::string& text) {
    Tree::LabelMap m;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool saw_empty = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == "<empty>") {
            saw_empty = true;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw FormatError("line " + std::to_string(lineno) + ": missing ':'");
        NodeWord u = line.substr(0, colon);
        Symbol s = line.substr(colon + 1);
        if (!is_node_word(u))
            throw FormatError("line " + std::to_string(lineno) + ": bad node word \"" + u + "\"");
        if (s.empty()) throw FormatError("line " + std::to_string(lineno) + ": empty symbol");
        if (m.count(u)) throw FormatError("line " + std::to_string(lineno) + ": duplicate node");
        m[u] = s;
    }
    if (saw_empty && !m.empty()) throw FormatError("\"<empty>\" mixed with node lines");
    // Re-validate so the error names the offending position.
    for (const auto& [u, s] : m)
        if (!u.empty() && m.count(u.substr(0, u.size() - 1)) == 0)
            throw FormatError("domain not prefix-closed at node \"" + u + "\"");
    return Tree(std::move(m));
}

}  // namespace treeord
