#pragma once

// Shared test utilities: seeded random term generators and independently
// coded brute-force oracles the main algorithms are checked against.

#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "evo/choreo.hpp"
#include "evo/logic.hpp"
#include "evo/lts.hpp"
#include "evo/process.hpp"

namespace testing {

using namespace evo;

struct Rng {
  std::mt19937 eng;
  explicit Rng(unsigned seed) : eng(seed) {}
  int pick(int n) { return (int)(eng() % (unsigned)n); }
  bool coin(int pct) { return pick(100) < pct; }
};

// ---------------------------------------------------------------------------
// Random E processes and patterns

inline std::string gen_name(Rng& rng) {
  static const char* names[] = {"a", "b", "c", "d", "e"};
  return names[rng.pick(5)];
}

inline Prefix gen_prefix(Rng& rng, int depth);
inline ProcPtr gen_process(Rng& rng, int depth, bool pattern = false);

inline Prefix gen_prefix(Rng& rng, int depth) {
  switch (rng.pick(depth > 0 ? 3 : 2)) {
    case 0: return in_pre(gen_name(rng));
    case 1: return out_pre(gen_name(rng));
    default: return upd_pre(gen_name(rng), gen_process(rng, depth - 1, true));
  }
}

inline ProcPtr gen_process(Rng& rng, int depth, bool pattern) {
  if (depth <= 0) {
    if (pattern && rng.coin(40)) return hole();
    return rng.coin(50) ? nil() : sum({{gen_prefix(rng, 0), nil()}});
  }
  switch (rng.pick(pattern ? 6 : 5)) {
    case 0: return nil();
    case 1: {  // sum of 1-2 branches
      std::vector<std::pair<Prefix, ProcPtr>> br;
      int n = 1 + rng.pick(2);
      for (int i = 0; i < n; ++i)
        br.emplace_back(gen_prefix(rng, depth - 1), gen_process(rng, depth - 1, pattern));
      return sum(std::move(br));
    }
    case 2:
      return par({gen_process(rng, depth - 1, pattern), gen_process(rng, depth - 1, pattern)});
    case 3: return located(gen_name(rng), gen_process(rng, depth - 1, pattern));
    case 4:
      return rng.coin(30) ? repl(gen_prefix(rng, depth - 1), gen_process(rng, depth - 1, pattern))
                          : sum({{gen_prefix(rng, depth - 1), gen_process(rng, depth - 1, pattern)}});
    default: return hole();
  }
}

// ---------------------------------------------------------------------------
// Random formulas

inline FormPtr gen_formula(Rng& rng, int depth) {
  if (depth <= 0) {
    switch (rng.pick(3)) {
      case 0: return f_true();
      case 1: return f_atom(Polarity::In, gen_name(rng));
      default: return f_atom(Polarity::Out, gen_name(rng));
    }
  }
  switch (rng.pick(6)) {
    case 0: return f_or(gen_formula(rng, depth - 1), gen_formula(rng, depth - 1));
    case 1: return f_and(gen_formula(rng, depth - 1), gen_formula(rng, depth - 1));
    case 2: return f_not(gen_formula(rng, depth - 1));
    case 3: return f_next(gen_formula(rng, depth - 1));
    case 4: return f_ev(gen_formula(rng, depth - 1));
    default: return gen_formula(rng, 0);
  }
}

// ---------------------------------------------------------------------------
// Random base-language choreographies (<= 4 roles, <= 6 operation names)

inline ChPtr gen_choreo(Rng& rng, int depth) {
  static const char* roles[] = {"r1", "r2", "r3", "r4"};
  static const char* ops[] = {"a", "b", "c", "d", "e", "f"};
  auto interaction = [&] {
    int from = rng.pick(4);
    int to = rng.pick(3);
    if (to >= from) ++to;
    return h_act(ops[rng.pick(6)], roles[from], roles[to]);
  };
  if (depth <= 0) return rng.coin(15) ? h_one() : interaction();
  switch (rng.pick(6)) {
    case 0: return h_seq(gen_choreo(rng, depth - 1), gen_choreo(rng, depth - 1));
    case 1: return h_choice(gen_choreo(rng, depth - 1), gen_choreo(rng, depth - 1));
    case 2: return h_par(gen_choreo(rng, depth - 1), gen_choreo(rng, depth - 1));
    case 3: return h_star(gen_choreo(rng, depth - 1));
    default: return interaction();
  }
}

// ---------------------------------------------------------------------------
// Oracle: BA via product construction over (state, consecutive-error-run)
// pairs — independent of the DFS-with-memo in the checker.

inline bool oracle_ba_violated(const StateGraph& g, const Barb& e, int k) {
  std::vector<bool> err(g.size());
  for (size_t s = 0; s < g.size(); ++s) err[s] = g.state_barbs[s].count(e) > 0;
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> q;
  int r0 = err[g.root] ? 1 : 0;
  q.push_back({g.root, r0});
  seen.insert({g.root, r0});
  while (!q.empty()) {
    auto [s, run] = q.front();
    q.pop_front();
    if (run >= k + 1) return true;
    for (int t : g.succ[s]) {
      int r = err[t] ? run + 1 : 0;
      if (r > k + 1) r = k + 1;
      if (seen.insert({t, r}).second) q.push_back({t, r});
    }
  }
  return false;
}

// Oracle: EA via boolean reachability matrices (Warshall closure) on the
// error-state subgraph.

inline bool oracle_ea_violated(const StateGraph& g, const Barb& e) {
  size_t n = g.size();
  std::vector<bool> err(n);
  for (size_t s = 0; s < n; ++s) err[s] = g.state_barbs[s].count(e) > 0;
  // reachability from root (any edges)
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (auto& [a, b] : g.edges) m[a][b] = true;
  std::vector<std::vector<bool>> closure = m;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (closure[i][k])
        for (size_t j = 0; j < n; ++j)
          if (closure[k][j]) closure[i][j] = true;
  auto reachable = [&](size_t s) { return s == (size_t)g.root || closure[g.root][s]; };
  // deadlocked error state
  for (size_t s = 0; s < n; ++s)
    if (err[s] && reachable(s) && g.succ[s].empty()) return true;
  // error-only cycle: closure within the error subgraph
  std::vector<std::vector<bool>> em(n, std::vector<bool>(n, false));
  for (auto& [a, b] : g.edges)
    if (err[a] && err[b]) em[a][b] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (em[i][k])
        for (size_t j = 0; j < n; ++j)
          if (em[k][j]) em[i][j] = true;
  for (size_t s = 0; s < n; ++s)
    if (err[s] && reachable(s) && em[s][s]) return true;
  return false;
}

// Oracle: formula satisfaction by naive recursion with matrix-based Pred and
// Pred* (Warshall closure), independent of the worklist evaluator.

inline std::vector<bool> oracle_sat(const StateGraph& g, const FormPtr& f) {
  size_t n = g.size();
  switch (f->tag) {
    case FTag::True: return std::vector<bool>(n, true);
    case FTag::Atom: {
      std::vector<bool> s(n);
      for (size_t i = 0; i < n; ++i)
        s[i] = g.state_barbs[i].count(Barb{f->pol, f->name}) > 0;
      return s;
    }
    case FTag::Or: {
      auto a = oracle_sat(g, f->lhs), b = oracle_sat(g, f->rhs);
      for (size_t i = 0; i < n; ++i) a[i] = a[i] || b[i];
      return a;
    }
    case FTag::And: {
      auto a = oracle_sat(g, f->lhs), b = oracle_sat(g, f->rhs);
      for (size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
      return a;
    }
    case FTag::Not: {
      auto a = oracle_sat(g, f->lhs);
      for (size_t i = 0; i < n; ++i) a[i] = !a[i];
      return a;
    }
    case FTag::Next: {
      auto a = oracle_sat(g, f->lhs);
      std::vector<bool> s(n, false);
      for (auto& [x, y] : g.edges)
        if (a[y]) s[x] = true;
      return s;
    }
    case FTag::Ev: {
      auto a = oracle_sat(g, f->lhs);
      std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
      for (size_t i = 0; i < n; ++i) m[i][i] = true;  // reflexive
      for (auto& [x, y] : g.edges) m[x][y] = true;
      for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
          if (m[i][k])
            for (size_t j = 0; j < n; ++j)
              if (m[k][j]) m[i][j] = true;
      std::vector<bool> s(n, false);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (m[i][j] && a[j]) { s[i] = true; break; }
      return s;
    }
  }
  return std::vector<bool>(n, false);
}

// Non-canonicalizing exploration keyed by printed raw terms; used to check
// that canonical folding preserves the reachable term set.
inline std::set<std::string> naive_reachable_canonical(const ProcPtr& p, size_t cap,
                                                       bool& complete) {
  std::set<std::string> canon;
  std::set<std::string> seen;
  std::deque<ProcPtr> q{p};
  seen.insert(print(p));
  complete = true;
  while (!q.empty()) {
    ProcPtr cur = q.front();
    q.pop_front();
    canon.insert(print(canonicalize(cur)));
    // raw derivation, successors kept un-canonicalized
    std::vector<Transition> raw;
    evo::detail::derive(cur, raw);
    for (auto& [l, t] : raw) {
      if (l.kind != Label::Kind::Tau) continue;
      if (seen.size() >= cap) { complete = false; break; }
      if (seen.insert(print(t)).second) q.push_back(t);
    }
  }
  return canon;
}

}  // namespace testing
