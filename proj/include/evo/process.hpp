#pragma once

// E-calculus terms: adaptable processes with located state and update
// prefixes, plus the pattern language with holes.

#include <algorithm>
#include <cassert>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace evo {

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

enum class PTag {
  Nil,      // 0
  Located,  // a[P]
  Par,      // P | Q  (n-ary)
  Repl,     // !pi.P
  Sum,      // pi1.P1 + ... + pin.Pn
  Star,     // transient placeholder, never user-facing
  Hole      // @, patterns only
};

struct Prefix {
  enum class Kind { In, Out, Upd };
  Kind kind;
  std::string name;
  ProcPtr pattern;  // Upd only; may contain holes
};

struct Process {
  PTag tag = PTag::Nil;
  std::string name;                                  // Located
  std::vector<ProcPtr> children;                     // Par
  std::vector<std::pair<Prefix, ProcPtr>> branches;  // Sum; Repl uses branches[0]
};

inline ProcPtr nil() {
  static const ProcPtr n = std::make_shared<Process>();
  return n;
}

inline ProcPtr star() {
  static const ProcPtr s = std::make_shared<Process>(Process{PTag::Star});
  return s;
}

inline ProcPtr hole() {
  static const ProcPtr h = std::make_shared<Process>(Process{PTag::Hole});
  return h;
}

inline ProcPtr located(std::string a, ProcPtr p) {
  auto n = std::make_shared<Process>();
  n->tag = PTag::Located;
  n->name = std::move(a);
  n->children.push_back(std::move(p));
  return n;
}

inline ProcPtr par(std::vector<ProcPtr> kids) {
  auto n = std::make_shared<Process>();
  n->tag = PTag::Par;
  n->children = std::move(kids);
  return n;
}

inline ProcPtr repl(Prefix pi, ProcPtr p) {
  auto n = std::make_shared<Process>();
  n->tag = PTag::Repl;
  n->branches.emplace_back(std::move(pi), std::move(p));
  return n;
}

inline ProcPtr sum(std::vector<std::pair<Prefix, ProcPtr>> branches) {
  if (branches.empty()) return nil();
  auto n = std::make_shared<Process>();
  n->tag = PTag::Sum;
  n->branches = std::move(branches);
  return n;
}

inline Prefix in_pre(std::string a) { return {Prefix::Kind::In, std::move(a), nullptr}; }
inline Prefix out_pre(std::string a) { return {Prefix::Kind::Out, std::move(a), nullptr}; }
inline Prefix upd_pre(std::string a, ProcPtr pat) {
  return {Prefix::Kind::Upd, std::move(a), std::move(pat)};
}

// ---------------------------------------------------------------------------
// Total deterministic order: lexicographic on (tag, name, children).

int compare(const ProcPtr& a, const ProcPtr& b);

inline int compare(const Prefix& a, const Prefix& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  if (a.kind == Prefix::Kind::Upd) return compare(a.pattern, b.pattern);
  return 0;
}

inline int compare(const ProcPtr& a, const ProcPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (int c = compare(a->children[i], b->children[i])) return c;
  if (a->branches.size() != b->branches.size())
    return a->branches.size() < b->branches.size() ? -1 : 1;
  for (size_t i = 0; i < a->branches.size(); ++i) {
    if (int c = compare(a->branches[i].first, b->branches[i].first)) return c;
    if (int c = compare(a->branches[i].second, b->branches[i].second)) return c;
  }
  return 0;
}

inline bool equal(const ProcPtr& a, const ProcPtr& b) { return compare(a, b) == 0; }

struct ProcLess {
  bool operator()(const ProcPtr& a, const ProcPtr& b) const { return compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Pretty printing in the concrete syntax.  Precedence: prefix '.' binds
// tightest, then '!', then '+', then '|'.

std::string print(const ProcPtr& p);

namespace detail {

inline std::string print_prefix(const Prefix& pi) {
  switch (pi.kind) {
    case Prefix::Kind::In: return pi.name;
    case Prefix::Kind::Out: return "^" + pi.name;
    case Prefix::Kind::Upd: return pi.name + "{" + print(pi.pattern) + "}";
  }
  return {};
}

// levels: 0 = par context, 1 = sum context, 2 = atom
inline std::string print_at(const ProcPtr& p, int level) {
  switch (p->tag) {
    case PTag::Nil: return "0";
    case PTag::Star: return "*";
    case PTag::Hole: return "@";
    case PTag::Located:
      return p->name + "[" + print_at(p->children[0], 0) + "]";
    case PTag::Repl: {
      std::string s = "!" + print_prefix(p->branches[0].first) + "." +
                      print_at(p->branches[0].second, 2);
      return level >= 2 ? "(" + s + ")" : s;
    }
    case PTag::Sum: {
      std::string s;
      for (size_t i = 0; i < p->branches.size(); ++i) {
        if (i) s += " + ";
        s += print_prefix(p->branches[i].first) + "." +
             print_at(p->branches[i].second, 2);
      }
      bool paren = level >= 1 && p->branches.size() > 1;
      return paren ? "(" + s + ")" : s;
    }
    case PTag::Par: {
      if (p->children.empty()) return "0";
      std::string s;
      for (size_t i = 0; i < p->children.size(); ++i) {
        if (i) s += " | ";
        s += print_at(p->children[i], 1);
      }
      return level >= 1 ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace detail

inline std::string print(const ProcPtr& p) { return detail::print_at(p, 0); }

// ---------------------------------------------------------------------------
// fill: replace every hole of U that is not inside an update-prefix pattern
// by Q.  Holes under input/output prefix continuations are filled too; only
// the braces of a nested a{U'} delimit a fresh hole scope.

inline ProcPtr fill(const ProcPtr& pattern, const ProcPtr& filler) {
  switch (pattern->tag) {
    case PTag::Hole: return filler;
    case PTag::Nil:
    case PTag::Star: return pattern;
    case PTag::Located: return located(pattern->name, fill(pattern->children[0], filler));
    case PTag::Par: {
      std::vector<ProcPtr> kids;
      kids.reserve(pattern->children.size());
      for (auto& c : pattern->children) kids.push_back(fill(c, filler));
      return par(std::move(kids));
    }
    case PTag::Repl:
    case PTag::Sum: {
      std::vector<std::pair<Prefix, ProcPtr>> br;
      br.reserve(pattern->branches.size());
      for (auto& [pi, cont] : pattern->branches)
        br.emplace_back(pi, fill(cont, filler));  // pattern of pi untouched
      if (pattern->tag == PTag::Repl) return repl(br[0].first, br[0].second);
      return sum(std::move(br));
    }
  }
  return pattern;
}

// Replace the (unique) placeholder left by rule (Comp).
inline ProcPtr subst_star(const ProcPtr& p, const ProcPtr& repl_term) {
  switch (p->tag) {
    case PTag::Star: return repl_term;
    case PTag::Nil:
    case PTag::Hole: return p;
    case PTag::Located: return located(p->name, subst_star(p->children[0], repl_term));
    case PTag::Par: {
      std::vector<ProcPtr> kids;
      kids.reserve(p->children.size());
      for (auto& c : p->children) kids.push_back(subst_star(c, repl_term));
      return par(std::move(kids));
    }
    case PTag::Repl:
    case PTag::Sum: {
      std::vector<std::pair<Prefix, ProcPtr>> br;
      br.reserve(p->branches.size());
      for (auto& [pi, cont] : p->branches) br.emplace_back(pi, subst_star(cont, repl_term));
      if (p->tag == PTag::Repl) return repl(br[0].first, br[0].second);
      return sum(std::move(br));
    }
  }
  return p;
}

inline bool contains_star(const ProcPtr& p) {
  if (p->tag == PTag::Star) return true;
  for (auto& c : p->children)
    if (contains_star(c)) return true;
  for (auto& [pi, cont] : p->branches) {
    if (pi.kind == Prefix::Kind::Upd && contains_star(pi.pattern)) return true;
    if (contains_star(cont)) return true;
  }
  return false;
}

// Holes belonging to the current pattern scope, i.e. not hidden inside a
// nested update prefix.
inline int count_scope_holes(const ProcPtr& p) {
  if (p->tag == PTag::Hole) return 1;
  int n = 0;
  for (auto& c : p->children) n += count_scope_holes(c);
  for (auto& [pi, cont] : p->branches) n += count_scope_holes(cont);
  return n;
}

// ---------------------------------------------------------------------------
// Canonicalization: flatten Par/Sum, drop Nil units, sort children.  Does
// not unfold replication.

inline ProcPtr canonicalize(const ProcPtr& p) {
  switch (p->tag) {
    case PTag::Nil:
    case PTag::Star:
    case PTag::Hole: return p;
    case PTag::Located: return located(p->name, canonicalize(p->children[0]));
    case PTag::Par: {
      std::vector<ProcPtr> flat;
      for (auto& c : p->children) {
        ProcPtr cc = canonicalize(c);
        if (cc->tag == PTag::Nil) continue;
        if (cc->tag == PTag::Par)
          flat.insert(flat.end(), cc->children.begin(), cc->children.end());
        else
          flat.push_back(cc);
      }
      if (flat.empty()) return nil();
      if (flat.size() == 1) return flat[0];
      std::sort(flat.begin(), flat.end(), ProcLess{});
      return par(std::move(flat));
    }
    case PTag::Repl: {
      Prefix pi = p->branches[0].first;
      if (pi.kind == Prefix::Kind::Upd) pi.pattern = canonicalize(pi.pattern);
      return repl(std::move(pi), canonicalize(p->branches[0].second));
    }
    case PTag::Sum: {
      std::vector<std::pair<Prefix, ProcPtr>> flat;
      for (auto& [pi0, cont] : p->branches) {
        Prefix pi = pi0;
        if (pi.kind == Prefix::Kind::Upd) pi.pattern = canonicalize(pi.pattern);
        flat.emplace_back(std::move(pi), canonicalize(cont));
      }
      if (flat.empty()) return nil();
      std::sort(flat.begin(), flat.end(), [](auto& a, auto& b) {
        if (int c = compare(a.first, b.first)) return c < 0;
        return compare(a.second, b.second) < 0;
      });
      return sum(std::move(flat));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Variant classification (update-pattern disciplines E1/E2/E3 and the
// conservative static-topology check).

struct VariantClass {
  bool e1 = true;
  bool e2 = true;
  bool e3 = true;
  bool static_ok = true;
};

namespace detail {

// True iff every scope hole of p sits under Located/Par nodes only.
inline bool holes_unguarded(const ProcPtr& p) {
  switch (p->tag) {
    case PTag::Hole:
    case PTag::Nil:
    case PTag::Star: return true;
    case PTag::Located: return holes_unguarded(p->children[0]);
    case PTag::Par:
      for (auto& c : p->children)
        if (!holes_unguarded(c)) return false;
      return true;
    case PTag::Repl:
    case PTag::Sum:
      // any scope hole below a prefix is guarded
      for (auto& [pi, cont] : p->branches)
        if (count_scope_holes(cont) > 0) return false;
      return true;
  }
  return true;
}

inline bool contains_located(const ProcPtr& p) {
  if (p->tag == PTag::Located) return true;
  for (auto& c : p->children)
    if (contains_located(c)) return true;
  for (auto& [pi, cont] : p->branches) {
    if (pi.kind == Prefix::Kind::Upd && contains_located(pi.pattern)) return true;
    if (contains_located(cont)) return true;
  }
  return false;
}

// E3 body check below the optional re-created location: the single hole is
// reachable through Par only, and parallel siblings carry no location.
// `allow_loc` permits further a[...] nesting (full E3 allows relocation).
inline bool e3_body(const ProcPtr& p, bool allow_loc, bool loc_free_rest) {
  switch (p->tag) {
    case PTag::Hole: return true;
    case PTag::Located:
      return allow_loc && e3_body(p->children[0], allow_loc, loc_free_rest);
    case PTag::Par: {
      int with_hole = -1;
      for (size_t i = 0; i < p->children.size(); ++i)
        if (count_scope_holes(p->children[i]) > 0) with_hole = (int)i;
      if (with_hole < 0) return false;
      for (size_t i = 0; i < p->children.size(); ++i) {
        if ((int)i == with_hole) continue;
        if (loc_free_rest && contains_located(p->children[i])) return false;
      }
      return e3_body(p->children[with_hole], allow_loc, loc_free_rest);
    }
    default: return false;
  }
}

}  // namespace detail

// Classify one update pattern.  `target` is the name of the update prefix
// the pattern belongs to; it decides whether the pattern re-creates the
// location it consumed (required by the static check).
inline VariantClass classify_pattern(const ProcPtr& u, const std::string& target = "") {
  VariantClass v;
  v.e1 = true;
  v.e2 = detail::holes_unguarded(u);
  v.e3 = count_scope_holes(u) == 1 && v.e2 && detail::e3_body(u, true, false);
  // Conservative static check: the pattern must re-create exactly the
  // consumed location around the preserved state, adding only location-free
  // behaviour in parallel.
  v.static_ok = false;
  if (v.e3 && u->tag == PTag::Located && u->name == target)
    v.static_ok = detail::e3_body(u->children[0], false, true);
  return v;
}

namespace detail {

inline void classify_walk(const ProcPtr& p, VariantClass& acc) {
  for (auto& c : p->children) classify_walk(c, acc);
  for (auto& [pi, cont] : p->branches) {
    if (pi.kind == Prefix::Kind::Upd) {
      VariantClass v = classify_pattern(pi.pattern, pi.name);
      acc.e1 = acc.e1 && v.e1;
      acc.e2 = acc.e2 && v.e2;
      acc.e3 = acc.e3 && v.e3;
      acc.static_ok = acc.static_ok && v.static_ok;
      classify_walk(pi.pattern, acc);
    }
    classify_walk(cont, acc);
  }
}

}  // namespace detail

// Meet over every update-prefix body occurring anywhere in P.
inline VariantClass classify_process(const ProcPtr& p) {
  VariantClass acc;  // empty meet: all flags true
  detail::classify_walk(p, acc);
  return acc;
}

}  // namespace evo
