#pragma once

// Temporal logic over adaptable processes: atomic barb predicates, boolean
// connectives, next (<>) and eventuality (ev), with the monotone /
// restricted-monotone classification and the standard formula schemas.

#include <memory>
#include <stdexcept>
#include <string>

#include "evo/lts.hpp"

namespace evo {

struct Formula;
using FormPtr = std::shared_ptr<const Formula>;

enum class FTag { True, Atom, Or, And, Not, Next, Ev };

struct Formula {
  FTag tag;
  Polarity pol = Polarity::In;  // Atom
  std::string name;             // Atom
  FormPtr lhs, rhs;
};

inline FormPtr f_true() {
  static const FormPtr t = std::make_shared<Formula>(Formula{FTag::True});
  return t;
}
inline FormPtr f_atom(Polarity pol, std::string name) {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Atom;
  f->pol = pol;
  f->name = std::move(name);
  return f;
}
inline FormPtr f_bin(FTag tag, FormPtr a, FormPtr b) {
  auto f = std::make_shared<Formula>();
  f->tag = tag;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
inline FormPtr f_or(FormPtr a, FormPtr b) { return f_bin(FTag::Or, std::move(a), std::move(b)); }
inline FormPtr f_and(FormPtr a, FormPtr b) { return f_bin(FTag::And, std::move(a), std::move(b)); }
inline FormPtr f_un(FTag tag, FormPtr a) {
  auto f = std::make_shared<Formula>();
  f->tag = tag;
  f->lhs = std::move(a);
  return f;
}
inline FormPtr f_not(FormPtr a) { return f_un(FTag::Not, std::move(a)); }
inline FormPtr f_next(FormPtr a) { return f_un(FTag::Next, std::move(a)); }
inline FormPtr f_ev(FormPtr a) { return f_un(FTag::Ev, std::move(a)); }

inline int compare(const FormPtr& a, const FormPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  if (a->pol != b->pol) return a->pol < b->pol ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  bool al = (bool)a->lhs, bl = (bool)b->lhs;
  if (al != bl) return al < bl ? -1 : 1;
  if (al)
    if (int c = compare(a->lhs, b->lhs)) return c;
  bool ar = (bool)a->rhs, br = (bool)b->rhs;
  if (ar != br) return ar < br ? -1 : 1;
  if (ar)
    if (int c = compare(a->rhs, b->rhs)) return c;
  return 0;
}

inline bool equal(const FormPtr& a, const FormPtr& b) { return compare(a, b) == 0; }

// levels: 0 = or, 1 = and, 2 = unary/atom
namespace detail {
inline std::string print_formula(const FormPtr& f, int level) {
  switch (f->tag) {
    case FTag::True: return "tt";
    case FTag::Atom: return (f->pol == Polarity::Out ? "^" : "") + f->name;
    case FTag::Or: {
      // left-associative: the right operand needs parens if it is an Or
      std::string s = print_formula(f->lhs, 0) + " or " + print_formula(f->rhs, 1);
      return level >= 1 ? "(" + s + ")" : s;
    }
    case FTag::And: {
      std::string s = print_formula(f->lhs, 1) + " and " + print_formula(f->rhs, 2);
      return level >= 2 ? "(" + s + ")" : s;
    }
    case FTag::Not: return "not " + print_formula(f->lhs, 2);
    case FTag::Next: return "<> " + print_formula(f->lhs, 2);
    case FTag::Ev: return "ev " + print_formula(f->lhs, 2);
  }
  return {};
}
}  // namespace detail

inline std::string print(const FormPtr& f) { return detail::print_formula(f, 0); }

// ---------------------------------------------------------------------------
// Classification

enum class FormulaClass { General, Monotone, Restricted, RestrictedNegation };

inline bool is_monotone(const FormPtr& f) {
  switch (f->tag) {
    case FTag::Not: return false;
    case FTag::True:
    case FTag::Atom: return true;
    default:
      if (f->lhs && !is_monotone(f->lhs)) return false;
      if (f->rhs && !is_monotone(f->rhs)) return false;
      return true;
  }
}

inline bool is_restricted(const FormPtr& f) {
  if (!is_monotone(f)) return false;
  switch (f->tag) {
    case FTag::True:
    case FTag::Atom: return true;
    case FTag::And: {
      bool atom_side = f->lhs->tag == FTag::Atom || f->lhs->tag == FTag::True ||
                       f->rhs->tag == FTag::Atom || f->rhs->tag == FTag::True;
      return atom_side && is_restricted(f->lhs) && is_restricted(f->rhs);
    }
    case FTag::Or: return is_restricted(f->lhs) && is_restricted(f->rhs);
    case FTag::Next:
    case FTag::Ev: return is_restricted(f->lhs);
    case FTag::Not: return false;
  }
  return false;
}

inline FormulaClass classify_formula(const FormPtr& f) {
  if (is_restricted(f)) return FormulaClass::Restricted;
  if (f->tag == FTag::Not && is_restricted(f->lhs)) return FormulaClass::RestrictedNegation;
  if (is_monotone(f)) return FormulaClass::Monotone;
  return FormulaClass::General;
}

inline std::string to_string(FormulaClass c) {
  switch (c) {
    case FormulaClass::General: return "general";
    case FormulaClass::Monotone: return "monotone";
    case FormulaClass::Restricted: return "restricted";
    case FormulaClass::RestrictedNegation: return "restricted_negation";
  }
  return {};
}

// Member of the restricted logic: restricted or its outer negation.
inline bool in_restricted_logic(const FormPtr& f) {
  FormulaClass c = classify_formula(f);
  return c == FormulaClass::Restricted || c == FormulaClass::RestrictedNegation;
}

// ---------------------------------------------------------------------------
// Schemas.  <>+ phi is <> ev phi.

struct BadArity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline FormPtr f_evplus(FormPtr a) { return f_next(f_ev(std::move(a))); }

// CB_k(e): no k consecutive occurrences of barb e.
inline FormPtr schema_cb(const Barb& e, int k) {
  if (k < 1) throw BadArity("CB_k requires k >= 1");
  FormPtr body = f_atom(e.first, e.second);
  for (int i = 1; i < k; ++i) body = f_and(f_atom(e.first, e.second), f_next(body));
  return f_not(f_ev(body));
}

// MC(e): once solved, errors do not reappear.
inline FormPtr schema_mc(const Barb& e) {
  FormPtr at = f_atom(e.first, e.second);
  return f_not(f_ev(f_and(at, f_evplus(f_and(f_not(at), f_evplus(at))))));
}

// MC^r(ok, e): the restricted-logic variant using a designated ok barb.
inline FormPtr schema_mcr(const Barb& ok, const Barb& e) {
  FormPtr ae = f_atom(e.first, e.second);
  FormPtr aok = f_atom(ok.first, ok.second);
  return f_not(f_ev(f_and(ae, f_evplus(f_and(aok, f_ev(ae))))));
}

// MC^r_k(ok, e): at most k error phases; ok appears k times.
inline FormPtr schema_mcrk(const Barb& ok, const Barb& e, int k) {
  if (k < 1) throw BadArity("MC^r_k requires k >= 1");
  FormPtr ae = f_atom(e.first, e.second);
  FormPtr aok = f_atom(ok.first, ok.second);
  FormPtr body = f_and(aok, f_ev(ae));
  for (int i = 1; i < k; ++i) body = f_and(aok, f_ev(f_and(ae, f_evplus(body))));
  return f_not(f_ev(f_and(ae, f_evplus(body))));
}

}  // namespace evo
