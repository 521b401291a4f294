#pragma once

// Hand-rolled recursive-descent parsers for the four term languages:
// processes/patterns, logic formulae, choreographies, orchestrations and
// systems.  Round-trip with the printers is covered by property tests.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "evo/choreo.hpp"
#include "evo/logic.hpp"
#include "evo/orch.hpp"
#include "evo/process.hpp"

namespace evo {

struct ParseError : std::runtime_error {
  size_t pos;
  std::string kind;  // syntax, hole_outside_pattern, reserved_symbol,
                     // duplicate_role, self_addressed_output
  ParseError(std::string k, size_t p, const std::string& msg)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"),
        pos(p),
        kind(std::move(k)) {}
};

namespace detail {

struct Lexer {
  std::string src;
  size_t i = 0;
  std::string tok;  // current token text; empty at end
  size_t tok_pos = 0;

  explicit Lexer(std::string s) : src(std::move(s)) { advance(); }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("syntax", tok_pos,
                     "expected " + expected + ", got '" + (tok.empty() ? "<end>" : tok) + "'");
  }

  void advance() {
    while (i < src.size() && std::isspace((unsigned char)src[i])) ++i;
    tok_pos = i;
    tok.clear();
    if (i >= src.size()) return;
    char c = src[i];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum((unsigned char)src[j]) || src[j] == '_')) ++j;
      tok = src.substr(i, j - i);
      i = j;
      return;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      tok = "->";
      i += 2;
      return;
    }
    if (c == '|' && i + 1 < src.size() && src[i + 1] == '|') {
      tok = "||";
      i += 2;
      return;
    }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '>') {
      tok = "<>";
      i += 2;
      return;
    }
    tok = std::string(1, c);
    ++i;
  }

  bool at(const std::string& t) const { return tok == t; }
  bool eat(const std::string& t) {
    if (tok != t) return false;
    advance();
    return true;
  }
  void expect(const std::string& t) {
    if (!eat(t)) fail("'" + t + "'");
  }
  bool is_ident() const {
    return !tok.empty() && (std::isalpha((unsigned char)tok[0]) || tok[0] == '_');
  }
  std::string ident(const std::string& what) {
    if (!is_ident()) fail(what);
    std::string s = tok;
    advance();
    return s;
  }
  void expect_end() {
    if (!tok.empty()) fail("end of input");
  }
};

// ---------------------------------------------------------------------------
// E processes and patterns

struct EParser {
  Lexer& lx;
  bool pattern_mode;

  ProcPtr parse() {
    ProcPtr p = par_level();
    lx.expect_end();
    return p;
  }

  ProcPtr par_level() {
    std::vector<ProcPtr> kids{sum_level()};
    while (lx.eat("|")) kids.push_back(sum_level());
    if (kids.size() == 1) return kids[0];
    return par(std::move(kids));
  }

  ProcPtr sum_level() {
    bool was_prefix = false;
    ProcPtr first = atom(&was_prefix);
    if (!lx.at("+")) return first;
    if (!was_prefix)
      throw ParseError("syntax", lx.tok_pos, "'+' joins prefixed terms only");
    std::vector<std::pair<Prefix, ProcPtr>> branches = first->branches;
    while (lx.eat("+")) {
      bool pre = false;
      ProcPtr next = atom(&pre);
      if (!pre || next->tag != PTag::Sum || next->branches.size() != 1)
        throw ParseError("syntax", lx.tok_pos, "'+' joins prefixed terms only");
      branches.push_back(next->branches[0]);
    }
    return sum(std::move(branches));
  }

  // A tight term: 0, a[P], (P), !pi.T, pi.T, @.
  ProcPtr atom(bool* was_prefix = nullptr) {
    if (was_prefix) *was_prefix = false;
    if (lx.eat("0")) return nil();
    if (lx.at("*"))
      throw ParseError("reserved_symbol", lx.tok_pos,
                       "'*' is the reserved runtime placeholder");
    if (lx.at("@")) {
      if (!pattern_mode)
        throw ParseError("hole_outside_pattern", lx.tok_pos,
                         "holes are only allowed inside update patterns");
      lx.advance();
      return hole();
    }
    if (lx.eat("(")) {
      ProcPtr p = par_level();
      lx.expect(")");
      return p;
    }
    if (lx.eat("!")) {
      Prefix pi = prefix();
      lx.expect(".");
      return repl(std::move(pi), atom());
    }
    if (lx.at("^") || lx.is_ident()) {
      // located process or prefix
      if (lx.is_ident()) {
        std::string name = lx.tok;
        size_t save_i = lx.i, save_pos = lx.tok_pos;
        lx.advance();
        if (lx.eat("[")) {
          ProcPtr body = par_level();
          lx.expect("]");
          return located(name, body);
        }
        // rewind to re-parse as a prefix
        lx.i = save_pos;
        lx.advance();
        (void)save_i;
      }
      Prefix pi = prefix();
      lx.expect(".");
      if (was_prefix) *was_prefix = true;
      return sum({{std::move(pi), atom()}});
    }
    lx.fail("a process term");
  }

  Prefix prefix() {
    if (lx.eat("^")) return out_pre(lx.ident("a name after '^'"));
    std::string name = lx.ident("an action name");
    if (lx.eat("{")) {
      EParser sub{lx, true};
      ProcPtr pat = sub.par_level();
      lx.expect("}");
      return upd_pre(std::move(name), std::move(pat));
    }
    return in_pre(std::move(name));
  }
};

// ---------------------------------------------------------------------------
// Logic formulae

struct FParser {
  Lexer& lx;

  FormPtr parse() {
    FormPtr f = or_level();
    lx.expect_end();
    return f;
  }

  FormPtr or_level() {
    FormPtr f = and_level();
    while (lx.eat("or")) f = f_or(f, and_level());
    return f;
  }

  FormPtr and_level() {
    FormPtr f = unary();
    while (lx.eat("and")) f = f_and(f, unary());
    return f;
  }

  FormPtr unary() {
    if (lx.eat("not")) return f_not(unary());
    if (lx.eat("<>")) return f_next(unary());
    if (lx.eat("ev")) return f_ev(unary());
    if (lx.eat("tt")) return f_true();
    if (lx.eat("^")) return f_atom(Polarity::Out, lx.ident("a name after '^'"));
    if (lx.eat("(")) {
      FormPtr f = or_level();
      lx.expect(")");
      return f;
    }
    if (lx.is_ident()) return f_atom(Polarity::In, lx.ident("a name"));
    lx.fail("a formula");
  }
};

// ---------------------------------------------------------------------------
// Choreographies

struct HParser {
  Lexer& lx;

  ChPtr parse() {
    ChPtr h = par_level();
    lx.expect_end();
    return h;
  }

  ChPtr par_level() {
    ChPtr h = choice_level();
    while (lx.eat("|")) h = h_par(h, choice_level());
    return h;
  }

  ChPtr choice_level() {
    ChPtr h = seq_level();
    while (lx.eat("+")) h = h_choice(h, seq_level());
    return h;
  }

  ChPtr seq_level() {
    ChPtr h = star_level();
    while (lx.eat(";")) h = h_seq(h, star_level());
    return h;
  }

  ChPtr star_level() {
    ChPtr h = atom();
    while (lx.eat("*")) h = h_star(h);
    return h;
  }

  ChPtr atom() {
    if (lx.eat("0")) return h_zero();
    if (lx.eat("1")) return h_one();
    if (lx.eat("(")) {
      ChPtr h = par_level();
      lx.expect(")");
      return h;
    }
    if (!lx.is_ident()) lx.fail("a choreography term");
    std::string name = lx.tok;
    size_t name_pos = lx.tok_pos;
    lx.advance();
    if (lx.eat(":")) {
      if (lx.eat("{")) {
        // scope: X:{r,s}[H]
        require_scope_name(name, name_pos);
        std::vector<std::string> roles{lx.ident("a role")};
        while (lx.eat(",")) roles.push_back(lx.ident("a role"));
        lx.expect("}");
        lx.expect("[");
        ChPtr body = par_level();
        lx.expect("]");
        return h_scope(name, std::move(roles), body);
      }
      std::string from = lx.ident("a sender role");
      lx.expect("->");
      std::string to = lx.ident("a receiver role");
      if (from == to)
        throw ParseError("syntax", name_pos, "interaction roles must be distinct");
      return h_act(name, from, to);
    }
    if (lx.eat("{")) {
      // update: X{r: H}
      require_scope_name(name, name_pos);
      std::string role = lx.ident("the updating role");
      lx.expect(":");
      ChPtr body = par_level();
      lx.expect("}");
      return h_upd(name, role, body);
    }
    throw ParseError("syntax", name_pos, "expected ':' or '{' after '" + name + "'");
  }

  static void require_scope_name(const std::string& name, size_t pos) {
    if (name.empty() || !std::isupper((unsigned char)name[0]))
      throw ParseError("syntax", pos, "scope names start with an uppercase letter");
  }
};

// ---------------------------------------------------------------------------
// Orchestrations and systems

struct CParser {
  Lexer& lx;

  OrPtr parse() {
    OrPtr c = par_level();
    lx.expect_end();
    return c;
  }

  OrPtr par_level() {
    OrPtr c = choice_level();
    while (lx.eat("|")) c = c_par(c, choice_level());
    return c;
  }

  OrPtr choice_level() {
    OrPtr c = seq_level();
    while (lx.eat("+")) c = c_choice(c, seq_level());
    return c;
  }

  OrPtr seq_level() {
    OrPtr c = star_level();
    while (lx.eat(";")) c = c_seq(c, star_level());
    return c;
  }

  OrPtr star_level() {
    OrPtr c = atom();
    while (lx.eat("*")) c = c_star(c);
    return c;
  }

  OrPtr atom() {
    if (lx.eat("0")) return c_zero();
    if (lx.eat("1")) return c_one();
    if (lx.eat("tau")) return c_tau();
    if (lx.eat("(")) {
      OrPtr c = par_level();
      lx.expect(")");
      return c;
    }
    if (!lx.is_ident()) lx.fail("an orchestration term");
    std::string name = lx.tok;
    size_t name_pos = lx.tok_pos;
    lx.advance();
    if (lx.eat("?")) return c_recv(name);
    if (lx.eat("!")) return c_send(name, lx.ident("a destination role"));
    if (lx.eat("[")) {
      HParser::require_scope_name(name, name_pos);
      OrPtr body = par_level();
      lx.expect("]");
      bool active = false;
      if (lx.at("@")) {
        // "@A" marks an already-started scope
        size_t save = lx.tok_pos;
        lx.advance();
        if (lx.eat("A")) {
          active = true;
        } else {
          lx.i = save;
          lx.advance();
        }
      }
      return c_scope(name, body, active);
    }
    if (lx.eat("{")) {
      HParser::require_scope_name(name, name_pos);
      lx.expect("(");
      std::vector<std::string> roles{lx.ident("a role")};
      while (lx.eat(",")) roles.push_back(lx.ident("a role"));
      lx.expect(")");
      lx.expect(":");
      std::vector<OrPtr> bodies{par_level()};
      while (lx.eat(",")) bodies.push_back(par_level());
      lx.expect("}");
      if (bodies.size() != roles.size())
        throw ParseError("syntax", name_pos, "update needs one body per role");
      return c_update(name, std::move(roles), std::move(bodies));
    }
    throw ParseError("syntax", name_pos,
                     "expected '?', '!', '[' or '{' after '" + name + "'");
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Entry points

inline ProcPtr parse_process(const std::string& text) {
  detail::Lexer lx(text);
  detail::EParser p{lx, false};
  return p.parse();
}

inline ProcPtr parse_pattern(const std::string& text) {
  detail::Lexer lx(text);
  detail::EParser p{lx, true};
  return p.parse();
}

inline FormPtr parse_formula(const std::string& text) {
  detail::Lexer lx(text);
  detail::FParser p{lx};
  return p.parse();
}

inline ChPtr parse_choreography(const std::string& text) {
  detail::Lexer lx(text);
  detail::HParser p{lx};
  return p.parse();
}

inline OrPtr parse_orchestration(const std::string& text) {
  detail::Lexer lx(text);
  detail::CParser p{lx};
  return p.parse();
}

inline System parse_system(const std::string& text) {
  detail::Lexer lx(text);
  System sys;
  do {
    lx.expect("[");
    detail::CParser cp{lx};
    OrPtr c = cp.par_level();
    lx.expect("]");
    lx.expect("@");
    sys.roles.emplace_back(lx.ident("a role"), c);
  } while (lx.eat("||"));
  lx.expect_end();
  try {
    validate_system(sys);
  } catch (const DuplicateRole& e) {
    throw ParseError("duplicate_role", 0, e.what());
  } catch (const SelfAddressedOutput& e) {
    throw ParseError("self_addressed_output", 0, e.what());
  }
  return sys;
}

}  // namespace evo
