#pragma once

// Correct composition, trace automata, weak trace language inclusion, the
// implementation relation P ∝ H, and semantic well-formedness.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evo/choreo.hpp"
#include "evo/orch.hpp"
#include "evo/projection.hpp"
#include "evo/verify.hpp"

namespace evo {

struct StateBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr size_t kSystemStateCap = 200000;

// ---------------------------------------------------------------------------
// Exhaustive exploration of the closed-system LTS.  The base language uses
// Kleene star only, so this terminates; the cap guards against surprises.

struct SysGraph {
  std::vector<System> states;
  std::vector<std::string> text;
  // transitions: (source, label, target)
  std::vector<std::vector<std::pair<SysLabel, int>>> succ;
  int root = 0;
};

inline SysGraph explore_system(const System& root, size_t cap = kSystemStateCap) {
  SysGraph g;
  std::map<std::string, int> index;
  std::deque<int> todo;
  auto add = [&](const System& s) {
    std::string key = print(s);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (g.states.size() >= cap)
      throw StateBound("system state space exceeds cap of " + std::to_string(cap));
    int id = (int)g.states.size();
    g.states.push_back(s);
    g.text.push_back(key);
    g.succ.emplace_back();
    index.emplace(std::move(key), id);
    todo.push_back(id);
    return id;
  };
  g.root = add(root);
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (auto& [l, t] : closed_system_transitions(g.states[s])) {
      int id = add(t);
      g.succ[s].emplace_back(l, id);
    }
  }
  return g;
}

struct ChGraph {
  std::vector<ChPtr> states;
  std::vector<std::string> text;
  std::vector<std::vector<std::pair<ChLabel, int>>> succ;
  int root = 0;
};

inline ChGraph explore_choreo(const ChPtr& root, size_t cap = kSystemStateCap) {
  ChGraph g;
  std::map<std::string, int> index;
  std::deque<int> todo;
  auto add = [&](const ChPtr& h) {
    std::string key = print(h);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (g.states.size() >= cap)
      throw StateBound("choreography state space exceeds cap of " + std::to_string(cap));
    int id = (int)g.states.size();
    g.states.push_back(h);
    g.text.push_back(key);
    g.succ.emplace_back();
    index.emplace(std::move(key), id);
    todo.push_back(id);
    return id;
  };
  g.root = add(root);
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (auto& [l, t] : choreo_transitions(g.states[s])) {
      int id = add(t);
      g.succ[s].emplace_back(l, id);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Correct composition P↓: from every reachable state, a tick-enabled state
// stays reachable.

inline Verdict check_correct_composition(const System& p) {
  validate_system(p);
  SysGraph g = explore_system(p);
  size_t n = g.states.size();
  // the tick ends a run, so both reachability and co-reachability range over
  // non-tick edges only
  std::vector<bool> can_tick(n, false);
  for (size_t s = 0; s < n; ++s)
    for (auto& [l, t] : g.succ[s])
      if (l.kind == SysLabel::Kind::Tick) can_tick[s] = true;
  std::vector<bool> reach(n, false);
  {
    std::deque<int> q{g.root};
    reach[g.root] = true;
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (auto& [l, t] : g.succ[s])
        if (l.kind != SysLabel::Kind::Tick && !reach[t]) {
          reach[t] = true;
          q.push_back(t);
        }
    }
  }
  // backward closure of tick-enabled states
  std::vector<std::vector<int>> pred(n);
  for (size_t s = 0; s < n; ++s)
    for (auto& [l, t] : g.succ[s])
      if (l.kind != SysLabel::Kind::Tick) pred[t].push_back((int)s);
  std::vector<bool> good = can_tick;
  std::deque<int> q;
  for (size_t s = 0; s < n; ++s)
    if (good[s]) q.push_back((int)s);
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    for (int s : pred[t])
      if (!good[s]) {
        good[s] = true;
        q.push_back(s);
      }
  }
  Verdict v;
  for (size_t s = 0; s < n; ++s) {
    if (!reach[s]) continue;
    if (!good[s]) {
      v.status = Status::Violated;
      std::vector<bool> target(n, false);
      target[s] = true;
      // reuse shortest path over a tau-free adjacency view
      std::vector<int> predpath(n, -1);
      std::vector<bool> seen(n, false);
      std::deque<int> bfs{g.root};
      seen[g.root] = true;
      while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop_front();
        if ((size_t)x == s) break;
        for (auto& [l, t] : g.succ[x])
          if (l.kind != SysLabel::Kind::Tick && !seen[t]) {
            seen[t] = true;
            predpath[t] = x;
            bfs.push_back(t);
          }
      }
      std::vector<int> path;
      for (int x = (int)s; x != -1; x = predpath[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      v.witness = path;
      v.reason = "stuck state: " + g.text[s];
      return v;
    }
  }
  v.status = Status::Holds;
  v.reason = "every reachable state can still complete";
  return v;
}

// ---------------------------------------------------------------------------
// Trace automata over completed-interaction words terminated by the tick.
// Words are sequences of "a:r->s" symbols; acceptance is reaching the
// dedicated accept state through the final tick symbol.

struct TraceAutomaton {
  // NFA; state 0..n-1, transitions on symbol strings, tick moves into the
  // implicit accept state (id = n).
  int initial = 0;
  int accept = -1;
  std::vector<std::map<std::string, std::set<int>>> delta;
  std::set<std::string> alphabet;  // completed-interaction symbols
};

inline TraceAutomaton automaton_of(const SysGraph& g) {
  TraceAutomaton a;
  size_t n = g.states.size();
  a.delta.resize(n + 1);
  a.initial = g.root;
  a.accept = (int)n;
  for (size_t s = 0; s < n; ++s) {
    for (auto& [l, t] : g.succ[s]) {
      if (sys_internal(l)) {
        a.delta[s][""].insert(t);  // epsilon
      } else if (l.kind == SysLabel::Kind::Completed) {
        std::string sym = print(l);
        a.delta[s][sym].insert(t);
        a.alphabet.insert(sym);
      } else if (l.kind == SysLabel::Kind::Tick) {
        a.delta[s]["√"].insert(a.accept);
      } else if (l.kind == SysLabel::Kind::Upd) {
        // updates are internal for trace comparison of plain systems
        a.delta[s][""].insert(t);
      }
    }
  }
  return a;
}

inline TraceAutomaton automaton_of(const ChGraph& g) {
  TraceAutomaton a;
  size_t n = g.states.size();
  a.delta.resize(n + 1);
  a.initial = g.root;
  a.accept = (int)n;
  for (size_t s = 0; s < n; ++s) {
    for (auto& [l, t] : g.succ[s]) {
      if (l.kind == ChLabel::Kind::Interaction) {
        std::string sym = print(l);
        a.delta[s][sym].insert(t);
        a.alphabet.insert(sym);
      } else if (l.kind == ChLabel::Kind::Tick) {
        a.delta[s]["√"].insert(a.accept);
      } else {
        a.delta[s][""].insert(t);  // update labels: internal here
      }
    }
  }
  return a;
}

namespace detail {

inline std::set<int> eps_closure(const TraceAutomaton& a, std::set<int> s) {
  std::deque<int> q(s.begin(), s.end());
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    auto it = a.delta[x].find("");
    if (it == a.delta[x].end()) continue;
    for (int t : it->second)
      if (s.insert(t).second) q.push_back(t);
  }
  return s;
}

inline std::set<int> step(const TraceAutomaton& a, const std::set<int>& s,
                          const std::string& sym) {
  std::set<int> t;
  for (int x : s) {
    auto it = a.delta[x].find(sym);
    if (it == a.delta[x].end()) continue;
    t.insert(it->second.begin(), it->second.end());
  }
  return eps_closure(a, std::move(t));
}

}  // namespace detail

// L(lhs) ⊆ L(rhs)?  Product of lhs with the determinized rhs; a reachable
// pair where lhs accepts and rhs does not yields the counterexample word.
inline std::optional<std::vector<std::string>> trace_inclusion_counterexample(
    const TraceAutomaton& lhs, const TraceAutomaton& rhs) {
  std::set<std::string> alphabet = lhs.alphabet;
  alphabet.insert(rhs.alphabet.begin(), rhs.alphabet.end());
  alphabet.insert("√");

  using Pair = std::pair<std::set<int>, std::set<int>>;
  std::map<Pair, std::vector<std::string>> seen;
  std::deque<Pair> q;
  Pair start{detail::eps_closure(lhs, {lhs.initial}), detail::eps_closure(rhs, {rhs.initial})};
  seen.emplace(start, std::vector<std::string>{});
  q.push_back(start);
  while (!q.empty()) {
    Pair cur = q.front();
    q.pop_front();
    const std::vector<std::string>& word = seen[cur];
    if (cur.first.count(lhs.accept) && !cur.second.count(rhs.accept)) {
      std::vector<std::string> w = word;  // word already includes the tick
      return w;
    }
    for (const auto& sym : alphabet) {
      std::set<int> l2 = detail::step(lhs, cur.first, sym);
      if (l2.empty()) continue;  // lhs cannot extend: no counterexample this way
      std::set<int> r2 = detail::step(rhs, cur.second, sym);
      Pair next{std::move(l2), std::move(r2)};
      if (seen.count(next)) continue;
      std::vector<std::string> w = word;
      w.push_back(sym);
      seen.emplace(next, std::move(w));
      q.push_back(next);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Implementation relation and well-formedness

inline Verdict check_implements(const System& p, const ChPtr& h) {
  Verdict cc = check_correct_composition(p);
  if (cc.status != Status::Holds) {
    cc.reason = "not a correct composition: " + cc.reason;
    return cc;
  }
  SysGraph sg = explore_system(p);
  ChGraph hg = explore_choreo(h);
  auto ce = trace_inclusion_counterexample(automaton_of(sg), automaton_of(hg));
  Verdict v;
  if (ce) {
    v.status = Status::Violated;
    std::string w;
    for (auto& sym : *ce) {
      if (!w.empty()) w += " ";
      w += sym;
    }
    v.reason = "conversation not admitted by the choreography: " + w;
    v.witness = std::vector<int>{};  // trace-level witness, kept in reason
    return v;
  }
  v.status = Status::Holds;
  v.reason = "correct composition with included conversation language";
  return v;
}

inline std::string implements_counterexample_word(const System& p, const ChPtr& h) {
  SysGraph sg = explore_system(p);
  ChGraph hg = explore_choreo(h);
  auto ce = trace_inclusion_counterexample(automaton_of(sg), automaton_of(hg));
  if (!ce) return {};
  std::string w;
  for (auto& sym : *ce) {
    if (!w.empty()) w += " ";
    w += sym;
  }
  return w;
}

// Well-formedness: the projected system implements the choreography.
inline Verdict check_well_formed(const ChPtr& h) {
  return check_implements(project_system(h), h);
}

// ---------------------------------------------------------------------------
// Well-definedness of updatable choreographies

struct UpdatableReport {
  bool valid = true;
  std::vector<std::string> violations;
};

namespace detail {

inline void validate_walk(const ChPtr& h, std::map<std::string, std::vector<std::string>>& types,
                          UpdatableReport& rep) {
  switch (h->tag) {
    case HTag::Scope: {
      auto it = types.find(h->scope);
      if (it == types.end()) {
        types.emplace(h->scope, h->type);
      } else if (it->second != h->type) {
        rep.valid = false;
        rep.violations.push_back("scope " + h->scope + " occurs with two different types");
      }
      validate_walk(h->body, types, rep);
      break;
    }
    case HTag::Upd:
      validate_walk(h->body, types, rep);
      break;
    default:
      for (auto& k : h->kids) validate_walk(k, types, rep);
  }
}

inline void collect_scope_names(const ChPtr& h, std::set<std::string>& out) {
  if (h->tag == HTag::Scope) out.insert(h->scope);
  for (auto& k : h->kids) collect_scope_names(k, out);
  if (h->body) collect_scope_names(h->body, out);
}

inline void collect_updates(const ChPtr& h, std::vector<ChPtr>& out) {
  if (h->tag == HTag::Upd) out.push_back(h);
  for (auto& k : h->kids) collect_updates(k, out);
  if (h->body) collect_updates(h->body, out);
}

inline void parallel_scope_check(const ChPtr& h, UpdatableReport& rep) {
  if (h->tag == HTag::Par) {
    std::set<std::string> l, r;
    collect_scope_names(h->kids[0], l);
    collect_scope_names(h->kids[1], r);
    for (auto& x : l)
      if (r.count(x)) {
        rep.valid = false;
        rep.violations.push_back("scope " + x + " occurs on both sides of a parallel");
      }
  }
  for (auto& k : h->kids) parallel_scope_check(k, rep);
  if (h->body) parallel_scope_check(h->body, rep);
}

}  // namespace detail

// Checks type consistency of scopes, role coverage of update bodies, the
// requirement that updated scopes exist, and the syntactic single-active-
// scope discipline.
inline UpdatableReport validate_updatable(const ChPtr& h) {
  UpdatableReport rep;
  std::map<std::string, std::vector<std::string>> types;
  detail::validate_walk(h, types, rep);

  std::vector<ChPtr> updates;
  detail::collect_updates(h, updates);
  for (auto& u : updates) {
    auto it = types.find(u->scope);
    if (it == types.end()) {
      rep.valid = false;
      rep.violations.push_back("update targets scope " + u->scope +
                               " but no such scope occurs");
      continue;
    }
    for (auto& r : roles_of(u->body))
      if (std::find(it->second.begin(), it->second.end(), r) == it->second.end()) {
        rep.valid = false;
        rep.violations.push_back("update body for " + u->scope + " mentions role " + r +
                                 " outside type(" + u->scope + ")");
      }
  }
  detail::parallel_scope_check(h, rep);
  return rep;
}

}  // namespace evo
