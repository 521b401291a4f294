#pragma once

// Choreographies: interactions among roles composed by ; + | *, the two
// auxiliary terms 1 and 0, and the scope/update constructs for dynamic
// updates.  Includes the small-step semantics (base rules plus the update
// rules), connectedness analysis helpers, and scope substitution.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace evo {

struct Choreo;
using ChPtr = std::shared_ptr<const Choreo>;

enum class HTag { Zero, One, Interaction, Seq, Choice, Par, Star, Scope, Upd };

struct Choreo {
  HTag tag = HTag::Zero;
  std::string name;               // Interaction: operation
  std::string from, to;           // Interaction
  std::vector<ChPtr> kids;        // Seq/Choice/Par: 2, Star: 1
  std::string scope;              // Scope/Upd: X
  std::vector<std::string> type;  // Scope: role set T (sorted)
  std::string role;               // Upd: updating role
  ChPtr body;                     // Scope/Upd
};

inline ChPtr h_zero() {
  static const ChPtr z = std::make_shared<Choreo>(Choreo{HTag::Zero});
  return z;
}
inline ChPtr h_one() {
  static const ChPtr o = std::make_shared<Choreo>(Choreo{HTag::One});
  return o;
}
inline ChPtr h_act(std::string name, std::string from, std::string to) {
  auto h = std::make_shared<Choreo>();
  h->tag = HTag::Interaction;
  h->name = std::move(name);
  h->from = std::move(from);
  h->to = std::move(to);
  return h;
}
inline ChPtr h_bin(HTag tag, ChPtr a, ChPtr b) {
  auto h = std::make_shared<Choreo>();
  h->tag = tag;
  h->kids = {std::move(a), std::move(b)};
  return h;
}
inline ChPtr h_seq(ChPtr a, ChPtr b) { return h_bin(HTag::Seq, std::move(a), std::move(b)); }
inline ChPtr h_choice(ChPtr a, ChPtr b) { return h_bin(HTag::Choice, std::move(a), std::move(b)); }
inline ChPtr h_par(ChPtr a, ChPtr b) { return h_bin(HTag::Par, std::move(a), std::move(b)); }
inline ChPtr h_star(ChPtr a) {
  auto h = std::make_shared<Choreo>();
  h->tag = HTag::Star;
  h->kids = {std::move(a)};
  return h;
}
inline ChPtr h_scope(std::string x, std::vector<std::string> type, ChPtr body) {
  auto h = std::make_shared<Choreo>();
  h->tag = HTag::Scope;
  h->scope = std::move(x);
  std::sort(type.begin(), type.end());
  type.erase(std::unique(type.begin(), type.end()), type.end());
  h->type = std::move(type);
  h->body = std::move(body);
  return h;
}
inline ChPtr h_upd(std::string x, std::string role, ChPtr body) {
  auto h = std::make_shared<Choreo>();
  h->tag = HTag::Upd;
  h->scope = std::move(x);
  h->role = std::move(role);
  h->body = std::move(body);
  return h;
}

inline int compare(const ChPtr& a, const ChPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (int c = a->from.compare(b->from)) return c < 0 ? -1 : 1;
  if (int c = a->to.compare(b->to)) return c < 0 ? -1 : 1;
  if (int c = a->scope.compare(b->scope)) return c < 0 ? -1 : 1;
  if (int c = a->role.compare(b->role)) return c < 0 ? -1 : 1;
  if (a->type != b->type) return a->type < b->type ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i])) return c;
  bool ab = (bool)a->body, bb = (bool)b->body;
  if (ab != bb) return ab < bb ? -1 : 1;
  if (ab)
    if (int c = compare(a->body, b->body)) return c;
  return 0;
}
inline bool equal(const ChPtr& a, const ChPtr& b) { return compare(a, b) == 0; }

struct ChLess {
  bool operator()(const ChPtr& a, const ChPtr& b) const { return compare(a, b) < 0; }
};

// Precedence: * postfix tightest, then ;, then +, then |.
// levels: 0 = par, 1 = choice, 2 = seq, 3 = atom/star
namespace detail {
inline std::string print_choreo(const ChPtr& h, int level) {
  switch (h->tag) {
    case HTag::Zero: return "0";
    case HTag::One: return "1";
    case HTag::Interaction: return h->name + ":" + h->from + "->" + h->to;
    case HTag::Seq: {
      // left-associative: the right operand needs parens if it is a Seq
      std::string s = print_choreo(h->kids[0], 2) + " ; " + print_choreo(h->kids[1], 3);
      return level >= 3 ? "(" + s + ")" : s;
    }
    case HTag::Choice: {
      std::string s = print_choreo(h->kids[0], 1) + " + " + print_choreo(h->kids[1], 2);
      return level >= 2 ? "(" + s + ")" : s;
    }
    case HTag::Par: {
      std::string s = print_choreo(h->kids[0], 0) + " | " + print_choreo(h->kids[1], 1);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case HTag::Star: {
      std::string inner = print_choreo(h->kids[0], 3);
      return inner + "*";
    }
    case HTag::Scope: {
      std::string s = h->scope + ":{";
      for (size_t i = 0; i < h->type.size(); ++i) {
        if (i) s += ",";
        s += h->type[i];
      }
      s += "}[" + print_choreo(h->body, 0) + "]";
      return s;
    }
    case HTag::Upd:
      return h->scope + "{" + h->role + ": " + print_choreo(h->body, 0) + "}";
  }
  return {};
}
}  // namespace detail

inline std::string print(const ChPtr& h) { return detail::print_choreo(h, 0); }

// ---------------------------------------------------------------------------
// Labels

struct ChLabel {
  enum class Kind { Interaction, Tick, Upd };
  Kind kind;
  std::string name, from, to;  // Interaction
  std::string scope, role;     // Upd
  ChPtr body;                  // Upd
};

inline int compare(const ChLabel& a, const ChLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (int c = a.from.compare(b.from)) return c < 0 ? -1 : 1;
  if (int c = a.to.compare(b.to)) return c < 0 ? -1 : 1;
  if (int c = a.scope.compare(b.scope)) return c < 0 ? -1 : 1;
  if (int c = a.role.compare(b.role)) return c < 0 ? -1 : 1;
  if (a.body && b.body) return compare(a.body, b.body);
  return 0;
}

inline std::string print(const ChLabel& l) {
  switch (l.kind) {
    case ChLabel::Kind::Interaction: return l.name + ":" + l.from + "->" + l.to;
    case ChLabel::Kind::Tick: return "√";
    case ChLabel::Kind::Upd: return l.scope + "{" + l.role + ": " + print(l.body) + "}";
  }
  return {};
}

inline ChLabel l_tick() { return {ChLabel::Kind::Tick, "", "", "", "", "", nullptr}; }
inline ChLabel l_act(std::string n, std::string f, std::string t) {
  return {ChLabel::Kind::Interaction, std::move(n), std::move(f), std::move(t), "", "", nullptr};
}
inline ChLabel l_upd(std::string x, std::string r, ChPtr h) {
  return {ChLabel::Kind::Upd, "", "", "", std::move(x), std::move(r), std::move(h)};
}

// ---------------------------------------------------------------------------
// Scope substitution H[H'/X]: replace the bodies of all scopes named X
// occurring in H, but not inside update prefixes.

inline ChPtr substitute_scope(const ChPtr& h, const std::string& x, const ChPtr& h_new) {
  switch (h->tag) {
    case HTag::Zero:
    case HTag::One:
    case HTag::Interaction:
    case HTag::Upd:  // update prefixes shield their bodies
      return h;
    case HTag::Seq:
    case HTag::Choice:
    case HTag::Par:
      return h_bin(h->tag, substitute_scope(h->kids[0], x, h_new),
                   substitute_scope(h->kids[1], x, h_new));
    case HTag::Star: return h_star(substitute_scope(h->kids[0], x, h_new));
    case HTag::Scope: {
      if (h->scope == x) {
        auto s = std::make_shared<Choreo>(*h);
        s->body = h_new;
        return s;
      }
      auto s = std::make_shared<Choreo>(*h);
      s->body = substitute_scope(h->body, x, h_new);
      return s;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Semantics: base rules plus the update rules (CommUpd, SeqUpd, ParUpd,
// StarUpd, ScopeUpd, ScopeComm, Scope).

using ChTransition = std::pair<ChLabel, ChPtr>;

inline std::vector<ChTransition> choreo_transitions(const ChPtr& h) {
  std::vector<ChTransition> out;
  switch (h->tag) {
    case HTag::Zero: break;
    case HTag::One:
      out.emplace_back(l_tick(), h_zero());
      break;
    case HTag::Interaction:
      out.emplace_back(l_act(h->name, h->from, h->to), h_one());
      break;
    case HTag::Upd:
      out.emplace_back(l_upd(h->scope, h->role, h->body), h_one());
      break;
    case HTag::Choice:
      for (int side = 0; side < 2; ++side)
        for (auto& [l, k] : choreo_transitions(h->kids[side])) out.emplace_back(l, k);
      break;
    case HTag::Seq: {
      for (auto& [l, k] : choreo_transitions(h->kids[0])) {
        if (l.kind == ChLabel::Kind::Tick) {
          for (auto& [l2, k2] : choreo_transitions(h->kids[1])) out.emplace_back(l2, k2);
        } else if (l.kind == ChLabel::Kind::Upd) {
          out.emplace_back(l, h_seq(k, substitute_scope(h->kids[1], l.scope, l.body)));
        } else {
          out.emplace_back(l, h_seq(k, h->kids[1]));
        }
      }
      break;
    }
    case HTag::Par: {
      auto lt = choreo_transitions(h->kids[0]);
      auto rt = choreo_transitions(h->kids[1]);
      for (auto& [l, k] : lt) {
        if (l.kind == ChLabel::Kind::Tick) continue;
        if (l.kind == ChLabel::Kind::Upd)
          out.emplace_back(l, h_par(k, substitute_scope(h->kids[1], l.scope, l.body)));
        else
          out.emplace_back(l, h_par(k, h->kids[1]));
      }
      for (auto& [l, k] : rt) {
        if (l.kind == ChLabel::Kind::Tick) continue;
        if (l.kind == ChLabel::Kind::Upd)
          out.emplace_back(l, h_par(substitute_scope(h->kids[0], l.scope, l.body), k));
        else
          out.emplace_back(l, h_par(h->kids[0], k));
      }
      for (auto& [l, k] : lt) {
        if (l.kind != ChLabel::Kind::Tick) continue;
        for (auto& [l2, k2] : rt)
          if (l2.kind == ChLabel::Kind::Tick) out.emplace_back(l_tick(), h_par(k, k2));
      }
      break;
    }
    case HTag::Star: {
      out.emplace_back(l_tick(), h_zero());
      for (auto& [l, k] : choreo_transitions(h->kids[0])) {
        if (l.kind == ChLabel::Kind::Tick) continue;
        if (l.kind == ChLabel::Kind::Upd)
          out.emplace_back(l, h_seq(k, h_star(substitute_scope(h->kids[0], l.scope, l.body))));
        else
          out.emplace_back(l, h_seq(k, h));
      }
      break;
    }
    case HTag::Scope: {
      for (auto& [l, k] : choreo_transitions(h->body)) {
        if (l.kind == ChLabel::Kind::Upd && l.scope == h->scope) {
          // (ScopeUpd): the scope adopts the new body, in-progress body dropped
          auto s = std::make_shared<Choreo>(*h);
          s->body = l.body;
          out.emplace_back(l, ChPtr(s));
        } else {
          // (ScopeComm)/(Scope)
          auto s = std::make_shared<Choreo>(*h);
          s->body = k;
          out.emplace_back(l, ChPtr(s));
        }
      }
      break;
    }
  }
  // dedup, deterministic order
  std::sort(out.begin(), out.end(), [](const ChTransition& a, const ChTransition& b) {
    if (int c = compare(a.first, b.first)) return c < 0;
    return compare(a.second, b.second) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ChTransition& a, const ChTransition& b) {
                          return compare(a.first, b.first) == 0 && equal(a.second, b.second);
                        }),
            out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

inline void collect_roles(const ChPtr& h, std::set<std::string>& out) {
  switch (h->tag) {
    case HTag::Interaction:
      out.insert(h->from);
      out.insert(h->to);
      break;
    case HTag::Scope:
      collect_roles(h->body, out);
      break;
    case HTag::Upd:
      collect_roles(h->body, out);
      break;
    default:
      for (auto& k : h->kids) collect_roles(k, out);
  }
}

inline std::set<std::string> roles_of(const ChPtr& h) {
  std::set<std::string> r;
  collect_roles(h, r);
  return r;
}

inline void collect_ops(const ChPtr& h, std::set<std::string>& out) {
  if (h->tag == HTag::Interaction) out.insert(h->name);
  for (auto& k : h->kids) collect_ops(k, out);
  if (h->body) collect_ops(h->body, out);
}

inline bool has_scopes_or_updates(const ChPtr& h) {
  if (h->tag == HTag::Scope || h->tag == HTag::Upd) return true;
  for (auto& k : h->kids)
    if (has_scopes_or_updates(k)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Connectedness analysis (base language).

struct Interaction {
  std::string name, from, to;
  auto operator<=>(const Interaction&) const = default;
};

namespace detail {

inline bool nullable(const ChPtr& h) {
  switch (h->tag) {
    case HTag::One:
    case HTag::Star: return true;
    case HTag::Zero:
    case HTag::Interaction:
    case HTag::Upd: return false;
    case HTag::Seq:
    case HTag::Par: return nullable(h->kids[0]) && nullable(h->kids[1]);
    case HTag::Choice: return nullable(h->kids[0]) || nullable(h->kids[1]);
    case HTag::Scope: return nullable(h->body);
  }
  return false;
}

inline std::set<Interaction> initials(const ChPtr& h) {
  switch (h->tag) {
    case HTag::Interaction: return {{h->name, h->from, h->to}};
    case HTag::Seq: {
      auto s = initials(h->kids[0]);
      if (nullable(h->kids[0])) {
        auto t = initials(h->kids[1]);
        s.insert(t.begin(), t.end());
      }
      return s;
    }
    case HTag::Choice:
    case HTag::Par: {
      auto s = initials(h->kids[0]);
      auto t = initials(h->kids[1]);
      s.insert(t.begin(), t.end());
      return s;
    }
    case HTag::Star: return initials(h->kids[0]);
    case HTag::Scope: return initials(h->body);
    default: return {};
  }
}

inline std::set<Interaction> finals(const ChPtr& h) {
  switch (h->tag) {
    case HTag::Interaction: return {{h->name, h->from, h->to}};
    case HTag::Seq: {
      auto s = finals(h->kids[1]);
      if (nullable(h->kids[1])) {
        auto t = finals(h->kids[0]);
        s.insert(t.begin(), t.end());
      }
      return s;
    }
    case HTag::Choice:
    case HTag::Par: {
      auto s = finals(h->kids[0]);
      auto t = finals(h->kids[1]);
      s.insert(t.begin(), t.end());
      return s;
    }
    case HTag::Star: return finals(h->kids[0]);
    case HTag::Scope: return finals(h->body);
    default: return {};
  }
}

}  // namespace detail

struct UnsupportedConstruct : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConnectednessReport {
  bool seq = true;
  bool choice = true;
  bool interference = true;
  std::vector<std::string> witnesses;
  bool all() const { return seq && choice && interference; }
};

// The three sufficient syntactic conditions:
//  (a) sequence: every interaction that can occur first in H2 of H1;H2 has
//      its sender occurring in every interaction that can occur last in H1
//  (b) unique point of choice: all initial interactions of both branches of
//      + share one sender, and both branches have equal role sets
//  (c) no operation interference: operation names of the operands of | are
//      disjoint
namespace detail {

inline void count_ops(const ChPtr& h, std::map<std::string, int>& out) {
  if (h->tag == HTag::Interaction) out[h->name]++;
  for (auto& k : h->kids) count_ops(k, out);
}

}  // namespace detail

inline ConnectednessReport check_connectedness(const ChPtr& h) {
  if (has_scopes_or_updates(h))
    throw UnsupportedConstruct("connectedness is defined for the base language only");
  ConnectednessReport rep;
  std::map<std::string, int> total_ops;
  detail::count_ops(h, total_ops);
  std::vector<ChPtr> stack{h};
  while (!stack.empty()) {
    ChPtr cur = stack.back();
    stack.pop_back();
    for (auto& k : cur->kids) stack.push_back(k);
    switch (cur->tag) {
      case HTag::Seq: {
        auto last1 = detail::finals(cur->kids[0]);
        auto first2 = detail::initials(cur->kids[1]);
        for (auto& i2 : first2)
          for (auto& i1 : last1)
            if (i2.from != i1.from && i2.from != i1.to) {
              rep.seq = false;
              rep.witnesses.push_back("sequence: initiator " + i2.from + " of " + i2.name +
                                      " not in preceding interaction " + i1.name);
            }
        break;
      }
      case HTag::Star: {
        // iteration behaves like body ; body*, so the sequence condition
        // must also hold from the body's last interactions to its first ones
        auto last = detail::finals(cur->kids[0]);
        auto first = detail::initials(cur->kids[0]);
        for (auto& i2 : first)
          for (auto& i1 : last)
            if (i2.from != i1.from && i2.from != i1.to) {
              rep.seq = false;
              rep.witnesses.push_back("iteration: initiator " + i2.from + " of " + i2.name +
                                      " not in preceding interaction " + i1.name);
            }
        // an operation used both under the star and elsewhere lets roles
        // disagree on when the loop ends
        std::map<std::string, int> body_ops;
        detail::count_ops(cur->kids[0], body_ops);
        for (auto& [n, c] : body_ops)
          if (total_ops[n] > c) {
            rep.interference = false;
            rep.witnesses.push_back("iteration: operation " + n +
                                    " also used outside the loop body");
          }
        break;
      }
      case HTag::Choice: {
        auto i1 = detail::initials(cur->kids[0]);
        auto i2 = detail::initials(cur->kids[1]);
        std::set<std::string> senders;
        for (auto& i : i1) senders.insert(i.from);
        for (auto& i : i2) senders.insert(i.from);
        if (senders.size() > 1) {
          rep.choice = false;
          rep.witnesses.push_back("choice: branches start from multiple senders");
        }
        if (roles_of(cur->kids[0]) != roles_of(cur->kids[1])) {
          rep.choice = false;
          rep.witnesses.push_back("choice: branches involve different role sets");
        }
        break;
      }
      case HTag::Par: {
        std::set<std::string> o1, o2;
        collect_ops(cur->kids[0], o1);
        collect_ops(cur->kids[1], o2);
        for (auto& n : o1)
          if (o2.count(n)) {
            rep.interference = false;
            rep.witnesses.push_back("parallel: operation " + n + " used on both sides");
          }
        break;
      }
      default: break;
    }
  }
  return rep;
}

}  // namespace evo
