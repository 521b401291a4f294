#pragma once

// Transition derivation for E terms and bounded exploration of the
// tau-reachability state graph.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evo/process.hpp"

namespace evo {

struct Label {
  enum class Kind { In, Out, Tau, LocState, UpdOffer };
  Kind kind;
  std::string name;  // In/Out/LocState/UpdOffer
  ProcPtr arg;       // LocState: current state; UpdOffer: pattern
};

inline int compare(const Label& a, const Label& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.arg && b.arg) return compare(a.arg, b.arg);
  return 0;
}

inline std::string print(const Label& l) {
  switch (l.kind) {
    case Label::Kind::In: return l.name;
    case Label::Kind::Out: return "^" + l.name;
    case Label::Kind::Tau: return "tau";
    case Label::Kind::LocState: return l.name + "[" + print(l.arg) + "]";
    case Label::Kind::UpdOffer: return l.name + "{" + print(l.arg) + "}";
  }
  return {};
}

using Transition = std::pair<Label, ProcPtr>;

struct PlaceholderLeak : std::logic_error {
  explicit PlaceholderLeak(const std::string& term)
      : std::logic_error("placeholder leaked into successor: " + term) {}
};

namespace detail {

inline Label prefix_label(const Prefix& pi) {
  switch (pi.kind) {
    case Prefix::Kind::In: return {Label::Kind::In, pi.name, nullptr};
    case Prefix::Kind::Out: return {Label::Kind::Out, pi.name, nullptr};
    case Prefix::Kind::Upd: return {Label::Kind::UpdOffer, pi.name, pi.pattern};
  }
  return {Label::Kind::Tau, "", nullptr};
}

inline ProcPtr replace_child(const ProcPtr& p, size_t i, ProcPtr c) {
  std::vector<ProcPtr> kids = p->children;
  kids[i] = std::move(c);
  return par(std::move(kids));
}

inline void derive(const ProcPtr& p, std::vector<Transition>& out) {
  switch (p->tag) {
    case PTag::Nil:
    case PTag::Star:
    case PTag::Hole:
      return;
    case PTag::Sum:
      for (auto& [pi, cont] : p->branches) out.emplace_back(prefix_label(pi), cont);
      return;
    case PTag::Repl: {
      auto& [pi, cont] = p->branches[0];
      out.emplace_back(prefix_label(pi), par({cont, p}));
      return;
    }
    case PTag::Located: {
      // (Comp)
      out.emplace_back(Label{Label::Kind::LocState, p->name, p->children[0]}, star());
      // (Loc): transparency, all labels propagate
      std::vector<Transition> inner;
      derive(p->children[0], inner);
      for (auto& [l, q] : inner) out.emplace_back(l, located(p->name, q));
      return;
    }
    case PTag::Par: {
      std::vector<std::vector<Transition>> per(p->children.size());
      for (size_t i = 0; i < p->children.size(); ++i) derive(p->children[i], per[i]);
      // (Act1)/(Act2)
      for (size_t i = 0; i < per.size(); ++i)
        for (auto& [l, q] : per[i]) out.emplace_back(l, replace_child(p, i, q));
      // (Tau1)/(Tau2) and (Tau3)/(Tau4)
      for (size_t i = 0; i < per.size(); ++i) {
        for (size_t j = 0; j < per.size(); ++j) {
          if (i == j) continue;
          for (auto& [li, qi] : per[i]) {
            for (auto& [lj, qj] : per[j]) {
              if (li.kind == Label::Kind::In && lj.kind == Label::Kind::Out &&
                  li.name == lj.name) {
                ProcPtr t = replace_child(replace_child(p, i, qi), j, qj);
                out.emplace_back(Label{Label::Kind::Tau, "", nullptr}, t);
              }
              if (li.kind == Label::Kind::LocState && lj.kind == Label::Kind::UpdOffer &&
                  li.name == lj.name) {
                ProcPtr filled = fill(lj.arg, li.arg);
                ProcPtr t = replace_child(replace_child(p, i, subst_star(qi, filled)), j, qj);
                out.emplace_back(Label{Label::Kind::Tau, "", nullptr}, t);
              }
            }
          }
        }
      }
      return;
    }
  }
}

}  // namespace detail

// All transitions derivable by the Fig.-1 style rules, canonicalized and
// de-duplicated.  Throws PlaceholderLeak if a tau/in/out successor still
// contains the placeholder.
inline std::vector<Transition> transitions(const ProcPtr& p) {
  std::vector<Transition> raw;
  detail::derive(p, raw);
  std::vector<Transition> out;
  for (auto& [l, q] : raw) {
    ProcPtr cq = canonicalize(q);
    if (l.kind != Label::Kind::LocState && contains_star(cq)) throw PlaceholderLeak(print(cq));
    bool dup = false;
    for (auto& [l2, q2] : out)
      if (compare(l, l2) == 0 && equal(cq, q2)) { dup = true; break; }
    if (!dup) out.emplace_back(l, cq);
  }
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    if (int c = compare(a.first, b.first)) return c < 0;
    return compare(a.second, b.second) < 0;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Barbs

enum class Polarity { In, Out };
using Barb = std::pair<Polarity, std::string>;

inline std::string print(const Barb& b) {
  return (b.first == Polarity::Out ? "^" : "") + b.second;
}

inline std::set<Barb> barbs_of(const std::vector<Transition>& ts) {
  std::set<Barb> bs;
  for (auto& [l, q] : ts) {
    if (l.kind == Label::Kind::In) bs.emplace(Polarity::In, l.name);
    if (l.kind == Label::Kind::Out) bs.emplace(Polarity::Out, l.name);
  }
  return bs;
}

inline std::set<Barb> barbs(const ProcPtr& p) { return barbs_of(transitions(p)); }

// ---------------------------------------------------------------------------
// Explicit-state tau graph

enum class BoundsHit { None, MaxStates, MaxDepth };

struct StateGraph {
  std::vector<ProcPtr> states;          // canonical terms, BFS order
  std::vector<std::string> state_text;
  std::vector<std::set<Barb>> state_barbs;
  std::vector<std::vector<int>> succ;   // tau successors
  std::set<std::pair<int, int>> edges;
  std::vector<bool> expanded;           // successors fully recorded
  int root = 0;
  bool complete = true;
  BoundsHit bounds_hit = BoundsHit::None;

  size_t size() const { return states.size(); }
};

constexpr size_t kDefaultMaxStates = 100000;
constexpr size_t kUnbounded = ~size_t{0};

inline StateGraph explore(const ProcPtr& p, size_t max_states = kDefaultMaxStates,
                          size_t max_depth = kUnbounded) {
  StateGraph g;
  std::map<ProcPtr, int, ProcLess> index;
  std::deque<std::pair<int, size_t>> frontier;  // (state, depth)

  auto add_state = [&](const ProcPtr& term) -> int {
    auto it = index.find(term);
    if (it != index.end()) return it->second;
    if (g.states.size() >= max_states) return -1;
    int id = (int)g.states.size();
    g.states.push_back(term);
    g.state_text.push_back(print(term));
    g.state_barbs.emplace_back();
    g.succ.emplace_back();
    g.expanded.push_back(false);
    index.emplace(term, id);
    return id;
  };

  ProcPtr root = canonicalize(p);
  g.root = add_state(root);
  frontier.emplace_back(g.root, 0);

  size_t next = 0;
  while (next < frontier.size()) {
    auto [s, depth] = frontier[next++];
    std::vector<Transition> ts = transitions(g.states[s]);
    g.state_barbs[s] = barbs_of(ts);
    std::vector<ProcPtr> targets;
    for (auto& [l, q] : ts)
      if (l.kind == Label::Kind::Tau) targets.push_back(q);
    if (depth >= max_depth && !targets.empty()) {
      g.complete = false;
      if (g.bounds_hit == BoundsHit::None) g.bounds_hit = BoundsHit::MaxDepth;
      continue;  // expanded stays false
    }
    bool ok = true;
    for (auto& t : targets) {
      bool fresh = index.find(t) == index.end();
      int id = add_state(t);
      if (id < 0) {
        ok = false;
        g.complete = false;
        g.bounds_hit = BoundsHit::MaxStates;
        continue;
      }
      if (fresh) frontier.emplace_back(id, depth + 1);
      if (g.edges.insert({s, id}).second) g.succ[s].push_back(id);
    }
    g.expanded[s] = ok;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exports

inline std::string to_dot(const StateGraph& g) {
  std::ostringstream os;
  os << "digraph lts {\n";
  for (size_t i = 0; i < g.size(); ++i) {
    os << "  s" << i << " [label=\"" << i << ": " << g.state_text[i];
    if (!g.state_barbs[i].empty()) {
      os << "\\n{";
      bool first = true;
      for (auto& b : g.state_barbs[i]) {
        if (!first) os << ",";
        first = false;
        os << print(b);
      }
      os << "}";
    }
    os << "\"";
    if ((int)i == g.root) os << " shape=doubleoctagon";
    os << "];\n";
  }
  for (auto& [a, b] : g.edges) os << "  s" << a << " -> s" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace evo
