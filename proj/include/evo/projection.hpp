#pragma once

// Projection of choreographies onto role orchestrations: a homomorphism
// over all operators, with the interaction clause and the scope/update
// clauses for the dynamic-update extension.

#include <algorithm>
#include <string>
#include <vector>

#include "evo/choreo.hpp"
#include "evo/orch.hpp"

namespace evo {

namespace detail {
inline bool find_scope_type(const ChPtr& h, const std::string& x, std::vector<std::string>& out) {
  if (h->tag == HTag::Scope) {
    if (h->scope == x) {
      out = h->type;
      return true;
    }
    return find_scope_type(h->body, x, out);
  }
  for (auto& k : h->kids)
    if (find_scope_type(k, x, out)) return true;
  if (h->tag == HTag::Upd) return find_scope_type(h->body, x, out);
  return false;
}
}  // namespace detail

// type(X) as recorded by the scopes of a term; empty when no scope X occurs.
inline std::vector<std::string> scope_type(const ChPtr& h, const std::string& x) {
  std::vector<std::string> t;
  detail::find_scope_type(h, x, t);
  return t;
}

// Projection relative to a root term; update clauses need the root to
// resolve type(X).
inline OrPtr project_in(const ChPtr& root, const ChPtr& h, const std::string& r) {
  switch (h->tag) {
    case HTag::Zero: return c_zero();
    case HTag::One: return c_one();
    case HTag::Interaction:
      if (r == h->from) return c_send(h->name, h->to);
      if (r == h->to) return c_recv(h->name);
      return c_one();
    case HTag::Seq: return c_seq(project_in(root, h->kids[0], r), project_in(root, h->kids[1], r));
    case HTag::Choice:
      return c_choice(project_in(root, h->kids[0], r), project_in(root, h->kids[1], r));
    case HTag::Par: return c_par(project_in(root, h->kids[0], r), project_in(root, h->kids[1], r));
    case HTag::Star: return c_star(project_in(root, h->kids[0], r));
    case HTag::Scope: {
      bool in_type = std::find(h->type.begin(), h->type.end(), r) != h->type.end();
      if (!in_type) return c_one();
      return c_scope(h->scope, project_in(root, h->body, r));
    }
    case HTag::Upd: {
      if (r != h->role) return c_one();
      std::vector<std::string> type = scope_type(root, h->scope);
      std::vector<OrPtr> bodies;
      bodies.reserve(type.size());
      for (auto& t : type) bodies.push_back(project_in(root, h->body, t));
      return c_update(h->scope, type, std::move(bodies));
    }
  }
  return c_zero();
}

// Base and extended projection share the homomorphic clauses.
inline OrPtr project(const ChPtr& h, const std::string& r) { return project_in(h, h, r); }
inline OrPtr uproject(const ChPtr& h, const std::string& r) { return project_in(h, h, r); }

// Project onto every role (sorted), yielding the candidate implementation.
inline System project_system(const ChPtr& h) {
  System p;
  for (const auto& r : roles_of(h)) p.roles.emplace_back(r, uproject(h, r));
  return p;
}

}  // namespace evo
