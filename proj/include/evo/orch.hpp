#pragma once

// Orchestrations (one role's local behaviour) and systems (parallel
// composition of located orchestrations), with the base semantics, the
// scope/update extension, and system-level synchronization.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evo/choreo.hpp"  // ChPtr for update payload printing only

namespace evo {

struct Orch;
using OrPtr = std::shared_ptr<const Orch>;

enum class CTag { Zero, One, Tau, Recv, Send, Seq, Choice, Par, Star, Scope, Update };

struct Orch {
  CTag tag = CTag::Zero;
  std::string name;                  // Recv/Send: operation
  std::string to;                    // Send: destination role
  std::vector<OrPtr> kids;           // Seq/Choice/Par: 2, Star: 1
  std::string scope;                 // Scope/Update: X
  bool active = false;               // Scope flag (A)
  OrPtr body;                        // Scope
  std::vector<std::string> uroles;   // Update: role list
  std::vector<OrPtr> ubodies;        // Update: per-role bodies
};

inline OrPtr c_zero() {
  static const OrPtr z = std::make_shared<Orch>(Orch{CTag::Zero});
  return z;
}
inline OrPtr c_one() {
  static const OrPtr o = std::make_shared<Orch>(Orch{CTag::One});
  return o;
}
inline OrPtr c_tau() {
  static const OrPtr t = std::make_shared<Orch>(Orch{CTag::Tau});
  return t;
}
inline OrPtr c_recv(std::string a) {
  auto c = std::make_shared<Orch>();
  c->tag = CTag::Recv;
  c->name = std::move(a);
  return c;
}
inline OrPtr c_send(std::string a, std::string to) {
  auto c = std::make_shared<Orch>();
  c->tag = CTag::Send;
  c->name = std::move(a);
  c->to = std::move(to);
  return c;
}
inline OrPtr c_bin(CTag tag, OrPtr a, OrPtr b) {
  auto c = std::make_shared<Orch>();
  c->tag = tag;
  c->kids = {std::move(a), std::move(b)};
  return c;
}
inline OrPtr c_seq(OrPtr a, OrPtr b) { return c_bin(CTag::Seq, std::move(a), std::move(b)); }
inline OrPtr c_choice(OrPtr a, OrPtr b) { return c_bin(CTag::Choice, std::move(a), std::move(b)); }
inline OrPtr c_par(OrPtr a, OrPtr b) { return c_bin(CTag::Par, std::move(a), std::move(b)); }
inline OrPtr c_star(OrPtr a) {
  auto c = std::make_shared<Orch>();
  c->tag = CTag::Star;
  c->kids = {std::move(a)};
  return c;
}
inline OrPtr c_scope(std::string x, OrPtr body, bool active = false) {
  auto c = std::make_shared<Orch>();
  c->tag = CTag::Scope;
  c->scope = std::move(x);
  c->body = std::move(body);
  c->active = active;
  return c;
}
inline OrPtr c_update(std::string x, std::vector<std::string> roles, std::vector<OrPtr> bodies) {
  auto c = std::make_shared<Orch>();
  c->tag = CTag::Update;
  c->scope = std::move(x);
  c->uroles = std::move(roles);
  c->ubodies = std::move(bodies);
  return c;
}

inline int compare(const OrPtr& a, const OrPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (int c = a->to.compare(b->to)) return c < 0 ? -1 : 1;
  if (int c = a->scope.compare(b->scope)) return c < 0 ? -1 : 1;
  if (a->active != b->active) return a->active < b->active ? -1 : 1;
  if (a->uroles != b->uroles) return a->uroles < b->uroles ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i])) return c;
  bool ab = (bool)a->body, bb = (bool)b->body;
  if (ab != bb) return ab < bb ? -1 : 1;
  if (ab)
    if (int c = compare(a->body, b->body)) return c;
  if (a->ubodies.size() != b->ubodies.size())
    return a->ubodies.size() < b->ubodies.size() ? -1 : 1;
  for (size_t i = 0; i < a->ubodies.size(); ++i)
    if (int c = compare(a->ubodies[i], b->ubodies[i])) return c;
  return 0;
}
inline bool equal(const OrPtr& a, const OrPtr& b) { return compare(a, b) == 0; }

// levels: 0 = par, 1 = choice, 2 = seq, 3 = atom/star
namespace detail {
inline std::string print_orch(const OrPtr& c, int level) {
  switch (c->tag) {
    case CTag::Zero: return "0";
    case CTag::One: return "1";
    case CTag::Tau: return "tau";
    case CTag::Recv: return c->name + "?";
    case CTag::Send: return c->name + "!" + c->to;
    case CTag::Seq: {
      // left-associative: the right operand needs parens if it is a Seq
      std::string s = print_orch(c->kids[0], 2) + " ; " + print_orch(c->kids[1], 3);
      return level >= 3 ? "(" + s + ")" : s;
    }
    case CTag::Choice: {
      std::string s = print_orch(c->kids[0], 1) + " + " + print_orch(c->kids[1], 2);
      return level >= 2 ? "(" + s + ")" : s;
    }
    case CTag::Par: {
      std::string s = print_orch(c->kids[0], 0) + " | " + print_orch(c->kids[1], 1);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case CTag::Star: return print_orch(c->kids[0], 3) + "*";
    case CTag::Scope: {
      std::string s = c->scope + "[" + print_orch(c->body, 0) + "]";
      if (c->active) s += "@A";
      return s;
    }
    case CTag::Update: {
      std::string s = c->scope + "{(";
      for (size_t i = 0; i < c->uroles.size(); ++i) {
        if (i) s += ",";
        s += c->uroles[i];
      }
      s += "): ";
      for (size_t i = 0; i < c->ubodies.size(); ++i) {
        if (i) s += ", ";
        s += print_orch(c->ubodies[i], 0);
      }
      return s + "}";
    }
  }
  return {};
}
}  // namespace detail

inline std::string print(const OrPtr& c) { return detail::print_orch(c, 0); }

// ---------------------------------------------------------------------------
// Unit-1 simplification (modulo which projections are compared with
// hand-written terms): 1;C = C;1 = C and C|1 = 1|C = C.  Choices are left
// untouched, they are behaviourally significant.

inline OrPtr simplify_units(const OrPtr& c) {
  switch (c->tag) {
    case CTag::Seq: {
      OrPtr a = simplify_units(c->kids[0]);
      OrPtr b = simplify_units(c->kids[1]);
      if (a->tag == CTag::One) return b;
      if (b->tag == CTag::One) return a;
      return c_seq(a, b);
    }
    case CTag::Par: {
      OrPtr a = simplify_units(c->kids[0]);
      OrPtr b = simplify_units(c->kids[1]);
      if (a->tag == CTag::One) return b;
      if (b->tag == CTag::One) return a;
      return c_par(a, b);
    }
    case CTag::Choice: return c_choice(simplify_units(c->kids[0]), simplify_units(c->kids[1]));
    case CTag::Star: return c_star(simplify_units(c->kids[0]));
    case CTag::Scope: return c_scope(c->scope, simplify_units(c->body), c->active);
    case CTag::Update: {
      std::vector<OrPtr> bodies;
      for (auto& b : c->ubodies) bodies.push_back(simplify_units(b));
      return c_update(c->scope, c->uroles, std::move(bodies));
    }
    default: return c;
  }
}

// Same laws on choreographies.
inline ChPtr simplify_units(const ChPtr& h) {
  switch (h->tag) {
    case HTag::Seq: {
      ChPtr a = simplify_units(h->kids[0]);
      ChPtr b = simplify_units(h->kids[1]);
      if (a->tag == HTag::One) return b;
      if (b->tag == HTag::One) return a;
      return h_seq(a, b);
    }
    case HTag::Par: {
      ChPtr a = simplify_units(h->kids[0]);
      ChPtr b = simplify_units(h->kids[1]);
      if (a->tag == HTag::One) return b;
      if (b->tag == HTag::One) return a;
      return h_par(a, b);
    }
    case HTag::Choice: return h_choice(simplify_units(h->kids[0]), simplify_units(h->kids[1]));
    case HTag::Star: return h_star(simplify_units(h->kids[0]));
    case HTag::Scope: return h_scope(h->scope, h->type, simplify_units(h->body));
    case HTag::Upd: return h_upd(h->scope, h->role, simplify_units(h->body));
    default: return h;
  }
}

// ---------------------------------------------------------------------------
// Orchestration-level labels

struct OLabel {
  enum class Kind { Tau, Tick, Recv, Send, Start, End, UpdOffer };
  Kind kind;
  std::string name;                 // Recv/Send: operation
  std::string to;                   // Send: destination
  std::string scope;                // Start/End/UpdOffer
  std::vector<std::string> uroles;  // UpdOffer
  std::vector<OrPtr> ubodies;       // UpdOffer
};

inline int compare(const OLabel& a, const OLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (int c = a.to.compare(b.to)) return c < 0 ? -1 : 1;
  if (int c = a.scope.compare(b.scope)) return c < 0 ? -1 : 1;
  if (a.uroles != b.uroles) return a.uroles < b.uroles ? -1 : 1;
  if (a.ubodies.size() != b.ubodies.size())
    return a.ubodies.size() < b.ubodies.size() ? -1 : 1;
  for (size_t i = 0; i < a.ubodies.size(); ++i)
    if (int c = compare(a.ubodies[i], b.ubodies[i])) return c;
  return 0;
}

inline std::string print(const OLabel& l) {
  switch (l.kind) {
    case OLabel::Kind::Tau: return "tau";
    case OLabel::Kind::Tick: return "√";
    case OLabel::Kind::Recv: return l.name;
    case OLabel::Kind::Send: return "^" + l.name + "_" + l.to;
    case OLabel::Kind::Start: return "start(" + l.scope + ")";
    case OLabel::Kind::End: return "end(" + l.scope + ")";
    case OLabel::Kind::UpdOffer: return "upd(" + l.scope + ")";
  }
  return {};
}

using OrTransition = std::pair<OLabel, OrPtr>;

// Semantics per the orchestration rules, extended with scope start/end and
// update offers, which behave as ordinary non-tick labels with respect to
// the compositional rules.
inline std::vector<OrTransition> orch_transitions(const OrPtr& c) {
  std::vector<OrTransition> out;
  auto tick = [] { return OLabel{OLabel::Kind::Tick, "", "", "", {}, {}}; };
  switch (c->tag) {
    case CTag::Zero: break;
    case CTag::One:
      out.emplace_back(tick(), c_zero());
      break;
    case CTag::Tau:
      out.emplace_back(OLabel{OLabel::Kind::Tau, "", "", "", {}, {}}, c_one());
      break;
    case CTag::Recv:
      out.emplace_back(OLabel{OLabel::Kind::Recv, c->name, "", "", {}, {}}, c_one());
      break;
    case CTag::Send:
      out.emplace_back(OLabel{OLabel::Kind::Send, c->name, c->to, "", {}, {}}, c_one());
      break;
    case CTag::Update:
      out.emplace_back(OLabel{OLabel::Kind::UpdOffer, "", "", c->scope, c->uroles, c->ubodies},
                       c_one());
      break;
    case CTag::Choice:
      for (int side = 0; side < 2; ++side)
        for (auto& [l, k] : orch_transitions(c->kids[side])) out.emplace_back(l, k);
      break;
    case CTag::Seq:
      for (auto& [l, k] : orch_transitions(c->kids[0])) {
        if (l.kind == OLabel::Kind::Tick) {
          for (auto& [l2, k2] : orch_transitions(c->kids[1])) out.emplace_back(l2, k2);
        } else {
          out.emplace_back(l, c_seq(k, c->kids[1]));
        }
      }
      break;
    case CTag::Par: {
      auto lt = orch_transitions(c->kids[0]);
      auto rt = orch_transitions(c->kids[1]);
      for (auto& [l, k] : lt)
        if (l.kind != OLabel::Kind::Tick) out.emplace_back(l, c_par(k, c->kids[1]));
      for (auto& [l, k] : rt)
        if (l.kind != OLabel::Kind::Tick) out.emplace_back(l, c_par(c->kids[0], k));
      for (auto& [l, k] : lt) {
        if (l.kind != OLabel::Kind::Tick) continue;
        for (auto& [l2, k2] : rt)
          if (l2.kind == OLabel::Kind::Tick) out.emplace_back(tick(), c_par(k, k2));
      }
      break;
    }
    case CTag::Star: {
      out.emplace_back(tick(), c_zero());
      for (auto& [l, k] : orch_transitions(c->kids[0]))
        if (l.kind != OLabel::Kind::Tick) out.emplace_back(l, c_seq(k, c));
      break;
    }
    case CTag::Scope: {
      if (!c->active) {
        out.emplace_back(OLabel{OLabel::Kind::Start, "", "", c->scope, {}, {}},
                         c_scope(c->scope, c->body, true));
      } else {
        for (auto& [l, k] : orch_transitions(c->body)) {
          if (l.kind == OLabel::Kind::Tick)
            out.emplace_back(OLabel{OLabel::Kind::End, "", "", c->scope, {}, {}}, c_one());
          else
            out.emplace_back(l, c_scope(c->scope, k, true));
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const OrTransition& a, const OrTransition& b) {
    if (int c2 = compare(a.first, b.first)) return c2 < 0;
    return compare(a.second, b.second) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const OrTransition& a, const OrTransition& b) {
                          return compare(a.first, b.first) == 0 && equal(a.second, b.second);
                        }),
            out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Systems

struct System {
  std::vector<std::pair<std::string, OrPtr>> roles;  // pairwise-distinct names
};

inline int compare(const System& a, const System& b) {
  if (a.roles.size() != b.roles.size()) return a.roles.size() < b.roles.size() ? -1 : 1;
  for (size_t i = 0; i < a.roles.size(); ++i) {
    if (int c = a.roles[i].first.compare(b.roles[i].first)) return c < 0 ? -1 : 1;
    if (int c = compare(a.roles[i].second, b.roles[i].second)) return c;
  }
  return 0;
}
inline bool equal(const System& a, const System& b) { return compare(a, b) == 0; }

inline std::string print(const System& p) {
  std::string s;
  for (size_t i = 0; i < p.roles.size(); ++i) {
    if (i) s += " || ";
    s += "[" + print(p.roles[i].second) + "]@" + p.roles[i].first;
  }
  return s;
}

inline System simplify_units(const System& p) {
  System q;
  for (auto& [r, c] : p.roles) q.roles.emplace_back(r, simplify_units(c));
  return q;
}

struct DuplicateRole : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SelfAddressedOutput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RoleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline bool sends_to(const OrPtr& c, const std::string& r) {
  if (c->tag == CTag::Send && c->to == r) return true;
  for (auto& k : c->kids)
    if (sends_to(k, r)) return true;
  if (c->body && sends_to(c->body, r)) return true;
  for (auto& b : c->ubodies)
    if (sends_to(b, r)) return true;
  return false;
}
}  // namespace detail

inline void validate_system(const System& p) {
  std::set<std::string> seen;
  for (auto& [r, c] : p.roles) {
    if (!seen.insert(r).second) throw DuplicateRole("role " + r + " occurs twice");
    if (detail::sends_to(c, r))
      throw SelfAddressedOutput("output addressed to enclosing role " + r);
  }
}

// ---------------------------------------------------------------------------
// System-level labels

struct SysLabel {
  enum class Kind { Tau, Tick, Completed, PendingIn, PendingOut, ScopeStart, ScopeEnd, Upd };
  Kind kind;
  std::string name;        // Completed/PendingIn/PendingOut: operation
  std::string from, to;    // Completed/PendingOut; PendingIn uses `to` as the receiving role
  std::string scope, role; // ScopeStart/ScopeEnd/Upd (role = updating role)
};

inline int compare(const SysLabel& a, const SysLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (int c = a.from.compare(b.from)) return c < 0 ? -1 : 1;
  if (int c = a.to.compare(b.to)) return c < 0 ? -1 : 1;
  if (int c = a.scope.compare(b.scope)) return c < 0 ? -1 : 1;
  if (int c = a.role.compare(b.role)) return c < 0 ? -1 : 1;
  return 0;
}

inline std::string print(const SysLabel& l) {
  switch (l.kind) {
    case SysLabel::Kind::Tau: return "tau";
    case SysLabel::Kind::Tick: return "√";
    case SysLabel::Kind::Completed: return l.name + ":" + l.from + "->" + l.to;
    case SysLabel::Kind::PendingIn: return l.name + "@" + l.to;
    case SysLabel::Kind::PendingOut: return "^" + l.name + ":" + l.from + "->" + l.to;
    case SysLabel::Kind::ScopeStart: return "start(" + l.scope + ")";
    case SysLabel::Kind::ScopeEnd: return "end(" + l.scope + ")";
    case SysLabel::Kind::Upd: return "upd(" + l.scope + "@" + l.role + ")";
  }
  return {};
}

// Internal (unobservable) labels of a closed system.
inline bool sys_internal(const SysLabel& l) {
  return l.kind == SysLabel::Kind::Tau || l.kind == SysLabel::Kind::ScopeStart ||
         l.kind == SysLabel::Kind::ScopeEnd;
}

using SysTransition = std::pair<SysLabel, System>;

namespace detail {

inline bool contains_scope(const OrPtr& c, const std::string& x, int want_active /*-1 any*/) {
  if (c->tag == CTag::Scope) {
    if (c->scope == x && (want_active < 0 || (int)c->active == want_active)) return true;
    return contains_scope(c->body, x, want_active);
  }
  for (auto& k : c->kids)
    if (contains_scope(k, x, want_active)) return true;
  if (c->body && contains_scope(c->body, x, want_active)) return true;
  // bodies carried by an update offer are opaque until applied
  return false;
}

// Replace the body of every scope named x (any flag, flag preserved), not
// inside update operators.
inline OrPtr rewrite_scope(const OrPtr& c, const std::string& x, const OrPtr& body) {
  switch (c->tag) {
    case CTag::Scope: {
      if (c->scope == x) return c_scope(c->scope, body, c->active);
      return c_scope(c->scope, rewrite_scope(c->body, x, body), c->active);
    }
    case CTag::Seq:
    case CTag::Choice:
    case CTag::Par:
      return c_bin(c->tag, rewrite_scope(c->kids[0], x, body), rewrite_scope(c->kids[1], x, body));
    case CTag::Star: return c_star(rewrite_scope(c->kids[0], x, body));
    default: return c;  // Update operators shield their payloads
  }
}

}  // namespace detail

// All system transitions, pending labels included.  Scope start/end and
// updates follow the distributed-synchronization reading: every role that
// holds the scope takes part atomically.
inline std::vector<SysTransition> system_transitions(const System& p) {
  std::vector<SysTransition> out;
  size_t n = p.roles.size();
  std::vector<std::vector<OrTransition>> per(n);
  for (size_t i = 0; i < n; ++i) per[i] = orch_transitions(p.roles[i].second);

  auto with = [&](size_t i, OrPtr c) {
    System q = p;
    q.roles[i].second = std::move(c);
    return q;
  };

  // interleaved local moves and pending halves
  for (size_t i = 0; i < n; ++i) {
    const std::string& r = p.roles[i].first;
    for (auto& [l, k] : per[i]) {
      switch (l.kind) {
        case OLabel::Kind::Tau:
          out.emplace_back(SysLabel{SysLabel::Kind::Tau}, with(i, k));
          break;
        case OLabel::Kind::Recv:
          out.emplace_back(SysLabel{SysLabel::Kind::PendingIn, l.name, "", r}, with(i, k));
          break;
        case OLabel::Kind::Send:
          out.emplace_back(SysLabel{SysLabel::Kind::PendingOut, l.name, r, l.to}, with(i, k));
          break;
        default: break;  // Tick/Start/End/UpdOffer handled below
      }
    }
  }

  // completed interactions: output at i towards role j, matching input at j
  for (size_t i = 0; i < n; ++i) {
    for (auto& [lo, ko] : per[i]) {
      if (lo.kind != OLabel::Kind::Send) continue;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || p.roles[j].first != lo.to) continue;
        for (auto& [li, ki] : per[j]) {
          if (li.kind != OLabel::Kind::Recv || li.name != lo.name) continue;
          System q = p;
          q.roles[i].second = ko;
          q.roles[j].second = ki;
          out.emplace_back(
              SysLabel{SysLabel::Kind::Completed, lo.name, p.roles[i].first, lo.to}, q);
        }
      }
    }
  }

  // global tick: all roles tick
  {
    std::vector<OrPtr> ticked(n);
    bool all = true;
    for (size_t i = 0; i < n && all; ++i) {
      all = false;
      for (auto& [l, k] : per[i])
        if (l.kind == OLabel::Kind::Tick) {
          ticked[i] = k;
          all = true;
          break;
        }
    }
    if (all && n > 0) {
      System q = p;
      for (size_t i = 0; i < n; ++i) q.roles[i].second = ticked[i];
      out.emplace_back(SysLabel{SysLabel::Kind::Tick}, q);
    }
  }

  // scope start/end synchronization
  std::set<std::string> scopes;
  for (size_t i = 0; i < n; ++i)
    for (auto& [l, k] : per[i])
      if (l.kind == OLabel::Kind::Start || l.kind == OLabel::Kind::End) scopes.insert(l.scope);
  for (const auto& x : scopes) {
    for (auto kind : {OLabel::Kind::Start, OLabel::Kind::End}) {
      int want_active = kind == OLabel::Kind::Start ? 0 : 1;
      std::vector<OrPtr> next(n);
      bool ok = false, blocked = false;
      for (size_t i = 0; i < n; ++i) {
        if (!detail::contains_scope(p.roles[i].second, x, want_active)) continue;
        bool found = false;
        for (auto& [l, k] : per[i])
          if (l.kind == kind && l.scope == x) {
            next[i] = k;
            found = true;
            break;
          }
        if (!found) { blocked = true; break; }
        ok = true;
      }
      if (ok && !blocked) {
        System q = p;
        for (size_t i = 0; i < n; ++i)
          if (next[i]) q.roles[i].second = next[i];
        out.emplace_back(
            SysLabel{kind == OLabel::Kind::Start ? SysLabel::Kind::ScopeStart
                                                 : SysLabel::Kind::ScopeEnd,
                     "", "", "", x, ""},
            q);
      }
    }
  }

  // distributed update: one role fires its update operator, every holder of
  // the scope gets the body for its role, flags preserved
  for (size_t i = 0; i < n; ++i) {
    for (auto& [l, k] : per[i]) {
      if (l.kind != OLabel::Kind::UpdOffer) continue;
      std::vector<size_t> holders;
      for (size_t j = 0; j < n; ++j)
        if (detail::contains_scope(p.roles[j].second, l.scope, -1)) holders.push_back(j);
      if (holders.empty()) continue;  // no scope to update: blocked
      for (size_t j : holders) {
        auto it = std::find(l.uroles.begin(), l.uroles.end(), p.roles[j].first);
        if (it == l.uroles.end())
          throw RoleMismatch("role " + p.roles[j].first + " holds scope " + l.scope +
                             " but is not covered by the update");
      }
      System q = p;
      q.roles[i].second = k;  // offer consumed first
      for (size_t j = 0; j < n; ++j) {
        auto it = std::find(l.uroles.begin(), l.uroles.end(), p.roles[j].first);
        if (it == l.uroles.end()) continue;
        size_t idx = (size_t)(it - l.uroles.begin());
        if (idx < l.ubodies.size())
          q.roles[j].second = detail::rewrite_scope(q.roles[j].second, l.scope, l.ubodies[idx]);
      }
      out.emplace_back(SysLabel{SysLabel::Kind::Upd, "", "", "", l.scope, p.roles[i].first}, q);
    }
  }

  std::sort(out.begin(), out.end(), [](const SysTransition& a, const SysTransition& b) {
    if (int c = compare(a.first, b.first)) return c < 0;
    return compare(a.second, b.second) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SysTransition& a, const SysTransition& b) {
                          return compare(a.first, b.first) == 0 && equal(a.second, b.second);
                        }),
            out.end());
  return out;
}

// Closed-system view: only internal moves, completed interactions, updates
// and the global tick.
inline std::vector<SysTransition> closed_system_transitions(const System& p) {
  std::vector<SysTransition> out;
  for (auto& t : system_transitions(p))
    if (t.first.kind != SysLabel::Kind::PendingIn && t.first.kind != SysLabel::Kind::PendingOut)
      out.push_back(t);
  return out;
}

}  // namespace evo
