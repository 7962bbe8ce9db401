#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "treeord/errors.hpp"
#include "treeord/tree.hpp"

namespace treeord {

using StateId = int;

/// Deterministic bottom-up tree automaton. The transition table is total on
/// alphabet × states × states; the start state is the value of the empty
/// tree. Automata are immutable after construction.
class TreeAutomaton {
   public:
    TreeAutomaton() = default;

    TreeAutomaton(std::vector<Symbol> alphabet, int num_states, StateId start,
                  std::vector<StateId> delta, std::vector<char> accepting)
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          start_(start),
          delta_(std::move(delta)),
          accepting_(std::move(accepting)) {
        if (num_states_ <= 0) throw ArgumentError("automaton needs at least one state");
        if (start_ < 0 || start_ >= num_states_) throw ArgumentError("start state out of range");
        if (delta_.size() != alphabet_.size() * static_cast<std::size_t>(num_states_) * num_states_)
            throw ArgumentError("transition table is not total");
        if (accepting_.size() != static_cast<std::size_t>(num_states_))
            throw ArgumentError("accepting vector size mismatch");
        for (StateId q : delta_)
            if (q < 0 || q >= num_states_) throw ArgumentError("transition target out of range");
        for (std::size_t i = 0; i + 1 < alphabet_.size(); ++i)
            if (!(alphabet_[i] < alphabet_[i + 1]))
                throw ArgumentError("alphabet must be sorted and duplicate-free");
    }

    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    int num_states() const { return num_states_; }
    StateId start() const { return start_; }
    bool is_accepting(StateId q) const { return accepting_[q] != 0; }
    const std::vector<char>& accepting() const { return accepting_; }
    const std::vector<StateId>& delta() const { return delta_; }

    int symbol_index(const Symbol& s) const {
        auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), s);
        if (it == alphabet_.end() || *it != s) return -1;
        return static_cast<int>(it - alphabet_.begin());
    }

    StateId step(int sym, StateId q0, StateId q1) const {
        return delta_[(static_cast<std::size_t>(sym) * num_states_ + q0) * num_states_ + q1];
    }

   private:
    std::vector<Symbol> alphabet_;
    int num_states_ = 0;
    StateId start_ = 0;
    std::vector<StateId> delta_;
    std::vector<char> accepting_;
};

/// Partial map from boundary nodes to states, used by boundary-valued runs.
using BoundaryAssignment = std::map<NodeWord, StateId, CanonicalLess>;

namespace detail {
inline StateId run_below(const TreeAutomaton& a, const Tree& t, const NodeWord& u,
                         const BoundaryAssignment& rho) {
    auto lbl = t.labels().find(u);
    if (lbl != t.labels().end()) {
        int sym = a.symbol_index(lbl->second);
        if (sym < 0) throw ArgumentError("symbol \"" + lbl->second + "\" not in automaton alphabet");
        StateId q0 = run_below(a, t, u + '0', rho);
        StateId q1 = run_below(a, t, u + '1', rho);
        return a.step(sym, q0, q1);
    }
    auto as = rho.find(u);
    if (as != rho.end()) return as->second;
    return a.start();
}
}  // namespace detail

/// The state A(t,u,ρ): δ at internal nodes, ρ(u) at assigned boundary
/// nodes, the start state at unassigned boundary nodes.
inline StateId run(const TreeAutomaton& a, const Tree& t, const NodeWord& u = "",
                   const BoundaryAssignment& rho = {}) {
    NodeSet boundary = t.domain().boundary();
    if (!t.contains(u) && boundary.count(u) == 0)
        throw DomainError("run position \"" + u + "\" outside dom(t) ∪ ∂dom(t)");
    for (const auto& [v, q] : rho) {
        if (boundary.count(v) == 0)
            throw DomainError("boundary assignment at \"" + v + "\" which is not in ∂dom(t)");
        if (q < 0 || q >= a.num_states()) throw ArgumentError("boundary state out of range");
    }
    return detail::run_below(a, t, u, rho);
}

inline StateId value(const TreeAutomaton& a, const Tree& t) {
    return detail::run_below(a, t, "", {});
}

inline bool accepts(const TreeAutomaton& a, const Tree& t) {
    return a.is_accepting(value(a, t));
}

// --- text format ------------------------------------------------------------
//
//   alphabet: s1 s2 ...
//   states: n
//   start: i
//   <symbol> <q0> <q1> -> <q>     (one line per transition)
//   accept: i j k
//
// Transitions are written in (symbol, q0, q1) order, so the format
// round-trips bit-exactly.

inline std::string to_text(const TreeAutomaton& a) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& s : a.alphabet()) out << ' ' << s;
    out << "\nstates: " << a.num_states() << "\nstart: " << a.start() << '\n';
    for (std::size_t sym = 0; sym < a.alphabet().size(); ++sym)
        for (StateId q0 = 0; q0 < a.num_states(); ++q0)
            for (StateId q1 = 0; q1 < a.num_states(); ++q1)
                out << a.alphabet()[sym] << ' ' << q0 << ' ' << q1 << " -> "
                    << a.step(static_cast<int>(sym), q0, q1) << '\n';
    out << "accept:";
    for (StateId q = 0; q < a.num_states(); ++q)
        if (a.is_accepting(q)) out << ' ' << q;
    out << '\n';
    return out.str();
}

inline TreeAutomaton tree_automaton_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Symbol> alphabet;
    int num_states = -1;
    StateId start = -1;
    std::vector<StateId> delta;
    std::vector<char> accepting;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> FormatError {
        return FormatError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "alphabet:") {
            Symbol s;
            while (ls >> s) alphabet.push_back(s);
            if (alphabet.empty()) throw fail("empty alphabet");
            if (!std::is_sorted(alphabet.begin(), alphabet.end())) throw fail("alphabet not sorted");
            delta.assign(alphabet.size() * 0, 0);
        } else if (head == "states:") {
            if (!(ls >> num_states) || num_states <= 0) throw fail("bad state count");
            delta.assign(alphabet.size() * static_cast<std::size_t>(num_states) * num_states, -1);
            accepting.assign(num_states, 0);
        } else if (head == "start:") {
            if (!(ls >> start)) throw fail("bad start state");
        } else if (head == "accept:") {
            StateId q;
            while (ls >> q) {
                if (q < 0 || q >= num_states) throw fail("accept state out of range");
                accepting[q] = 1;
            }
        } else {
            if (num_states < 0) throw fail("transition before states: header");
            StateId q0, q1, q;
            std::string arrow;
            if (!(ls >> q0 >> q1 >> arrow >> q) || arrow != "->") throw fail("bad transition");
            auto it = std::lower_bound(alphabet.begin(), alphabet.end(), head);
            if (it == alphabet.end() || *it != head) throw fail("unknown symbol \"" + head + "\"");
            std::size_t sym = static_cast<std::size_t>(it - alphabet.begin());
            if (q0 < 0 || q0 >= num_states || q1 < 0 || q1 >= num_states || q < 0 ||
                q >= num_states)
                throw fail("transition state out of range");
            delta[(sym * num_states + q0) * num_states + q1] = q;
        }
    }
    if (num_states < 0) throw FormatError("missing states: header");
    if (start < 0) throw FormatError("missing start: header");
    for (StateId q : delta)
        if (q < 0) throw FormatError("transition table not total");
    return TreeAutomaton(std::move(alphabet), num_states, start, std::move(delta),
                         std::move(accepting));
}

}  // namespace treeord
