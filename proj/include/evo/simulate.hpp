#pragma once

// Script-driven replay of updatable choreographies and systems.  External
// updates are environment moves: they replace scope bodies directly, after
// validation against the scope's role set.

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "evo/choreo.hpp"
#include "evo/implement.hpp"
#include "evo/orch.hpp"
#include "evo/projection.hpp"

namespace evo {

struct NoSuchTransition : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidUpdate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Directive {
  enum class Kind { Step, Update, Auto };
  Kind kind;
  int index = 0;       // Step: 1-based transition index
  int count = -1;      // Auto: number of steps, -1 = run to quiescence
  std::string scope;   // Update
  ChPtr update_body;   // Update: new choreography for the scope
};

struct SimEvent {
  std::string label;  // empty for the initial state
  std::string state;
};

struct RunLog {
  std::vector<SimEvent> events;
};

// ---------------------------------------------------------------------------
// Choreography-level simulation

inline RunLog simulate_choreo(const ChPtr& start, const std::vector<Directive>& script,
                              size_t auto_cap = 10000) {
  RunLog log;
  ChPtr cur = start;
  log.events.push_back({"", print(cur)});
  auto take = [&](size_t idx1) {
    auto ts = choreo_transitions(cur);
    if (idx1 < 1 || idx1 > ts.size())
      throw NoSuchTransition("step " + std::to_string(idx1) + " of " +
                             std::to_string(ts.size()) + " enabled transitions");
    cur = ts[idx1 - 1].second;
    log.events.push_back({print(ts[idx1 - 1].first), print(cur)});
  };
  for (auto& d : script) {
    switch (d.kind) {
      case Directive::Kind::Step:
        take((size_t)d.index);
        break;
      case Directive::Kind::Auto: {
        size_t n = d.count < 0 ? auto_cap : (size_t)d.count;
        for (size_t i = 0; i < n; ++i) {
          if (choreo_transitions(cur).empty()) break;
          take(1);
        }
        break;
      }
      case Directive::Kind::Update: {
        std::vector<std::string> type = scope_type(cur, d.scope);
        if (type.empty())
          throw InvalidUpdate("no scope " + d.scope + " present in the current state");
        for (auto& r : roles_of(d.update_body))
          if (std::find(type.begin(), type.end(), r) == type.end())
            throw InvalidUpdate("update body mentions role " + r + " outside type(" +
                                d.scope + ")");
        cur = substitute_scope(cur, d.scope, d.update_body);
        log.events.push_back({d.scope + "{ext: " + print(d.update_body) + "}", print(cur)});
        break;
      }
    }
  }
  return log;
}

// ---------------------------------------------------------------------------
// System-level simulation.  External updates are projected onto every role
// that currently holds the scope.

namespace detail {
inline std::vector<std::string> scope_holders(const System& p, const std::string& x) {
  std::vector<std::string> holders;
  for (auto& [r, c] : p.roles)
    if (contains_scope(c, x, -1)) holders.push_back(r);
  return holders;
}
}  // namespace detail

inline System apply_external_update(const System& p, const std::string& x, const ChPtr& body) {
  std::vector<std::string> holders = detail::scope_holders(p, x);
  if (holders.empty()) throw InvalidUpdate("no scope " + x + " present in the system");
  for (auto& r : roles_of(body))
    if (std::find(holders.begin(), holders.end(), r) == holders.end())
      throw InvalidUpdate("update body mentions role " + r + " outside the roles holding " + x);
  System q = p;
  for (auto& [r, c] : q.roles)
    if (detail::contains_scope(c, x, -1)) c = detail::rewrite_scope(c, x, uproject(body, r));
  return q;
}

inline RunLog simulate_system(const System& start, const std::vector<Directive>& script,
                              size_t auto_cap = 10000) {
  RunLog log;
  System cur = start;
  validate_system(cur);
  log.events.push_back({"", print(cur)});
  auto take = [&](size_t idx1) {
    auto ts = closed_system_transitions(cur);
    if (idx1 < 1 || idx1 > ts.size())
      throw NoSuchTransition("step " + std::to_string(idx1) + " of " +
                             std::to_string(ts.size()) + " enabled transitions");
    cur = ts[idx1 - 1].second;
    log.events.push_back({print(ts[idx1 - 1].first), print(cur)});
  };
  for (auto& d : script) {
    switch (d.kind) {
      case Directive::Kind::Step:
        take((size_t)d.index);
        break;
      case Directive::Kind::Auto: {
        size_t n = d.count < 0 ? auto_cap : (size_t)d.count;
        for (size_t i = 0; i < n; ++i) {
          if (closed_system_transitions(cur).empty()) break;
          take(1);
        }
        break;
      }
      case Directive::Kind::Update: {
        cur = apply_external_update(cur, d.scope, d.update_body);
        log.events.push_back({d.scope + "{ext}", print(cur)});
        break;
      }
    }
  }
  return log;
}

}  // namespace evo
