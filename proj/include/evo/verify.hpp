#pragma once

// Decision procedures over explored state graphs: bounded adaptation,
// eventual adaptation, and the fixpoint model checker for the logic.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "evo/logic.hpp"
#include "evo/lts.hpp"

namespace evo {

enum class Status { Holds, Violated, Unknown };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Violated: return "violated";
    case Status::Unknown: return "unknown";
  }
  return {};
}

struct Verdict {
  Status status = Status::Unknown;
  std::optional<std::vector<int>> witness;  // path of state ids
  std::string reason;
};

namespace detail {

inline bool is_error_state(const StateGraph& g, int s, const Barb& e) {
  return g.state_barbs[s].count(e) > 0;
}

// Shortest path root -> any target along tau edges; empty if unreachable.
inline std::vector<int> shortest_path(const StateGraph& g, int from,
                                      const std::vector<bool>& target) {
  std::vector<int> pred(g.size(), -1);
  std::vector<bool> seen(g.size(), false);
  std::deque<int> q{from};
  seen[from] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (target[s]) {
      std::vector<int> path;
      for (int x = s; x != -1; x = pred[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int t : g.succ[s])
      if (!seen[t]) {
        seen[t] = true;
        pred[t] = s;
        q.push_back(t);
      }
  }
  return {};
}

inline std::vector<bool> reachable_from_root(const StateGraph& g) {
  std::vector<bool> seen(g.size(), false);
  std::deque<int> q{g.root};
  seen[g.root] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t : g.succ[s])
      if (!seen[t]) {
        seen[t] = true;
        q.push_back(t);
      }
  }
  return seen;
}

// Within the subgraph of error states: longest run of consecutive error
// states starting at s.  `kInf` when s reaches an all-error cycle.
constexpr int kInfRun = -1;

inline int error_run_dfs(const StateGraph& g, int s, const std::vector<bool>& err,
                         std::vector<int>& memo, std::vector<int>& onstack) {
  if (memo[s] != -2) return memo[s];
  if (onstack[s]) return kInfRun;
  onstack[s] = 1;
  int best = 1;
  for (int t : g.succ[s]) {
    if (!err[t]) continue;
    int r = error_run_dfs(g, t, err, memo, onstack);
    if (r == kInfRun) { best = kInfRun; break; }
    best = std::max(best, 1 + r);
  }
  onstack[s] = 0;
  memo[s] = best;
  return best;
}

// Extract a run of `len` consecutive error states starting at s (cycles may
// be unrolled).
inline std::vector<int> extract_error_run(const StateGraph& g, int s,
                                          const std::vector<bool>& err,
                                          const std::vector<int>& memo, int len) {
  std::vector<int> run{s};
  int cur = s;
  while ((int)run.size() < len) {
    int next = -1;
    for (int t : g.succ[cur]) {
      if (!err[t]) continue;
      if (memo[t] == kInfRun || memo[t] >= len - (int)run.size()) { next = t; break; }
    }
    if (next == -1) break;
    run.push_back(next);
    cur = next;
  }
  return run;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bounded adaptation: no computation traverses more than k consecutive
// error states; a violation is k+1 in a row (all-error cycles count as
// unbounded).

inline Verdict check_ba(const StateGraph& g, const Barb& e, int k) {
  std::vector<bool> reach = detail::reachable_from_root(g);
  std::vector<bool> err(g.size(), false);
  for (size_t s = 0; s < g.size(); ++s)
    err[s] = reach[s] && detail::is_error_state(g, (int)s, e);

  std::vector<int> memo(g.size(), -2), onstack(g.size(), 0);
  int worst = 0;
  int worst_state = -1;
  for (size_t s = 0; s < g.size(); ++s) {
    if (!err[s]) continue;
    int r = detail::error_run_dfs(g, (int)s, err, memo, onstack);
    if (r == detail::kInfRun) { worst = detail::kInfRun; worst_state = (int)s; break; }
    if (r > worst) { worst = r; worst_state = (int)s; }
  }

  Verdict v;
  if (worst == detail::kInfRun || worst >= k + 1) {
    v.status = Status::Violated;
    v.witness = detail::extract_error_run(g, worst_state, err, memo, k + 1);
    v.reason = "run of " + std::to_string(k + 1) + " consecutive error states";
    return v;
  }
  if (!g.complete) {
    v.status = Status::Unknown;
    v.reason = "exploration bounds hit; no violation inside explored graph";
    return v;
  }
  v.status = Status::Holds;
  v.reason = "longest error run has " + std::to_string(worst) + " state(s)";
  return v;
}

// ---------------------------------------------------------------------------
// Eventual adaptation: every computation entering an error state later
// reaches a correct state.  On finite graphs a violation is a reachable
// all-error cycle or a deadlocked error state.

inline Verdict check_ea(const StateGraph& g, const Barb& e) {
  std::vector<bool> reach = detail::reachable_from_root(g);
  std::vector<bool> err(g.size(), false);
  for (size_t s = 0; s < g.size(); ++s)
    err[s] = reach[s] && detail::is_error_state(g, (int)s, e);

  // deadlocked error state (must be fully expanded to know it is terminal)
  std::vector<bool> bad(g.size(), false);
  for (size_t s = 0; s < g.size(); ++s)
    if (err[s] && g.expanded[s] && g.succ[s].empty()) bad[s] = true;

  // state on an all-error cycle
  std::vector<int> memo(g.size(), -2), onstack(g.size(), 0);
  for (size_t s = 0; s < g.size(); ++s) {
    if (!err[s]) continue;
    if (detail::error_run_dfs(g, (int)s, err, memo, onstack) == detail::kInfRun)
      bad[s] = true;
  }

  std::vector<int> path = detail::shortest_path(g, g.root, bad);
  Verdict v;
  if (!path.empty()) {
    v.status = Status::Violated;
    int end = path.back();
    if (g.succ[end].empty()) {
      v.reason = "deadlocked error state";
    } else {
      // extend the witness into the all-error cycle until a state repeats
      v.reason = "all-error cycle";
      std::vector<bool> seen(g.size(), false);
      int cur = end;
      seen[cur] = true;
      for (size_t guard = 0; guard <= g.size(); ++guard) {
        int next = -1;
        for (int t : g.succ[cur])
          if (err[t] && memo[t] == detail::kInfRun) { next = t; break; }
        if (next == -1) break;
        path.push_back(next);
        cur = next;
        if (seen[cur]) break;  // cycle closed
        seen[cur] = true;
      }
    }
    v.witness = path;
    return v;
  }
  if (!g.complete) {
    v.status = Status::Unknown;
    v.reason = "exploration bounds hit; no witness inside explored graph";
    return v;
  }
  v.status = Status::Holds;
  v.reason = "no reachable all-error cycle or deadlocked error state";
  return v;
}

// ---------------------------------------------------------------------------
// Model checker: each connective as a set operation over the explored state
// set; <> is Pred over tau edges, ev is reflexive-transitive Pred*.

inline std::vector<bool> sat_states(const StateGraph& g, const FormPtr& f) {
  size_t n = g.size();
  switch (f->tag) {
    case FTag::True: return std::vector<bool>(n, true);
    case FTag::Atom: {
      std::vector<bool> s(n, false);
      Barb b{f->pol, f->name};
      for (size_t i = 0; i < n; ++i) s[i] = g.state_barbs[i].count(b) > 0;
      return s;
    }
    case FTag::Or: {
      auto a = sat_states(g, f->lhs), b = sat_states(g, f->rhs);
      for (size_t i = 0; i < n; ++i) a[i] = a[i] || b[i];
      return a;
    }
    case FTag::And: {
      auto a = sat_states(g, f->lhs), b = sat_states(g, f->rhs);
      for (size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
      return a;
    }
    case FTag::Not: {
      auto a = sat_states(g, f->lhs);
      for (size_t i = 0; i < n; ++i) a[i] = !a[i];
      return a;
    }
    case FTag::Next: {
      auto a = sat_states(g, f->lhs);
      std::vector<bool> s(n, false);
      for (size_t i = 0; i < n; ++i)
        for (int t : g.succ[i])
          if (a[t]) { s[i] = true; break; }
      return s;
    }
    case FTag::Ev: {
      auto target = sat_states(g, f->lhs);
      // backward closure: Pred* includes the state itself
      std::vector<bool> s = target;
      std::deque<int> q;
      for (size_t i = 0; i < n; ++i)
        if (s[i]) q.push_back((int)i);
      // predecessor lists
      std::vector<std::vector<int>> pred(n);
      for (auto& [a, b] : g.edges) pred[b].push_back(a);
      while (!q.empty()) {
        int t = q.front();
        q.pop_front();
        for (int p : pred[t])
          if (!s[p]) {
            s[p] = true;
            q.push_back(p);
          }
      }
      return s;
    }
  }
  return std::vector<bool>(n, false);
}

struct ModelCheckResult {
  std::vector<int> sat;  // state ids
  Verdict root_verdict;
};

inline ModelCheckResult model_check(const StateGraph& g, const FormPtr& f) {
  ModelCheckResult r;
  std::vector<bool> sat = sat_states(g, f);
  for (size_t i = 0; i < g.size(); ++i)
    if (sat[i]) r.sat.push_back((int)i);
  bool root_sat = sat[g.root];

  if (g.complete) {
    r.root_verdict.status = root_sat ? Status::Holds : Status::Violated;
    r.root_verdict.reason = root_sat ? "root in satisfaction set" : "root not in satisfaction set";
  } else if (is_monotone(f) && root_sat) {
    // a positive witness for a negation-free formula is stable under
    // extensions of the explored graph
    r.root_verdict.status = Status::Holds;
    r.root_verdict.reason = "monotone formula witnessed inside explored graph";
  } else if (f->tag == FTag::Not && is_monotone(f->lhs) && !root_sat) {
    r.root_verdict.status = Status::Violated;
    r.root_verdict.reason = "negated monotone body witnessed inside explored graph";
  } else {
    r.root_verdict.status = Status::Unknown;
    r.root_verdict.reason = "verdict depends on unexplored structure";
  }

  if (r.root_verdict.status == Status::Violated) {
    // best-effort counterexample: for not ev phi, the path to a phi state
    std::vector<int> w{g.root};
    if (f->tag == FTag::Not && f->lhs->tag == FTag::Ev) {
      std::vector<bool> target = sat_states(g, f->lhs->lhs);
      std::vector<int> path = detail::shortest_path(g, g.root, target);
      if (!path.empty()) w = path;
    }
    r.root_verdict.witness = w;
  }
  return r;
}

}  // namespace evo
