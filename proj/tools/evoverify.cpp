// evoverify: command-line front end for the verification library.
// Exit codes: 0 holds/valid, 1 violated/invalid, 2 unknown, 3 usage/parse.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evo/implement.hpp"
#include "evo/logic.hpp"
#include "evo/lts.hpp"
#include "evo/parse.hpp"
#include "evo/projection.hpp"
#include "evo/simulate.hpp"
#include "evo/verify.hpp"

using nlohmann::json;
using namespace evo;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t default_max_states() {
  if (const char* s = std::getenv("EVOVERIFY_MAX_STATES")) {
    long v = std::atol(s);
    if (v > 0) return (size_t)v;
  }
  return 100000;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Violated: return "violated";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

int status_exit(Status s) {
  switch (s) {
    case Status::Holds: return 0;
    case Status::Violated: return 1;
    case Status::Unknown: return 2;
  }
  return 2;
}

// Shared verdict rendering: text or JSON, exit code from the status.
int emit_verdict(const std::string& property, const Verdict& v, const StateGraph* g,
                 const std::string& format) {
  if (format == "json") {
    json j;
    j["property"] = property;
    j["status"] = status_name(v.status);
    j["witness"] = v.witness ? json(*v.witness) : json(json::value_t::array);
    j["states_explored"] = g ? g->size() : 0;
    j["complete"] = g ? g->complete : true;
    if (!v.reason.empty()) j["reason"] = v.reason;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << property << ": " << status_name(v.status) << "\n";
    if (!v.reason.empty()) std::cout << "  " << v.reason << "\n";
    if (v.witness && !v.witness->empty()) {
      std::cout << "  witness states:";
      for (int s : *v.witness) std::cout << " " << s;
      std::cout << "\n";
      if (g)
        for (int s : *v.witness) std::cout << "    " << s << ": " << g->state_text[s] << "\n";
    }
    if (g)
      std::cout << "  states explored: " << g->size()
                << (g->complete ? " (complete)" : " (incomplete)") << "\n";
  }
  return status_exit(v.status);
}

Barb parse_barb(const std::string& s) {
  if (s.empty()) throw Usage("empty barb");
  if (s[0] == '^') return {Polarity::Out, s.substr(1)};
  return {Polarity::In, s};
}

json graph_json(const StateGraph& g) {
  json j;
  j["states"] = json::array();
  for (size_t i = 0; i < g.size(); ++i) {
    json barbs = json::array();
    for (auto& b : g.state_barbs[i])
      barbs.push_back(print(b));
    j["states"].push_back({{"id", (int)i}, {"term", g.state_text[i]}, {"barbs", barbs}});
  }
  j["edges"] = json::array();
  for (auto& [a, b] : g.edges) j["edges"].push_back({a, b});
  j["root"] = g.root;
  j["complete"] = g.complete;
  return j;
}

std::vector<Directive> load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path);
  std::vector<Directive> script;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string cmd;
    if (!(ls >> cmd) || cmd[0] == '#') continue;
    Directive d{};
    if (cmd == "step") {
      d.kind = Directive::Kind::Step;
      if (!(ls >> d.index)) throw Usage("script line " + std::to_string(lineno) + ": step needs an index");
    } else if (cmd == "auto") {
      d.kind = Directive::Kind::Auto;
      if (!(ls >> d.count)) d.count = -1;
    } else if (cmd == "update") {
      d.kind = Directive::Kind::Update;
      std::string a, b;
      if (!(ls >> d.scope >> a)) throw Usage("script line " + std::to_string(lineno) + ": update needs a scope and a term file");
      // optional role token before the file, accepted for readability
      if (ls >> b) a = b;
      d.update_body = parse_choreography(slurp(a));
    } else {
      throw Usage("script line " + std::to_string(lineno) + ": unknown directive " + cmd);
    }
    script.push_back(d);
  }
  return script;
}

int run(int argc, char** argv) {
  CLI::App app{"verification toolkit for adaptable processes and updatable choreographies"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a term and print its canonical form");
  std::string parse_file, parse_kind = "process";
  cmd_parse->add_option("file", parse_file)->required();
  cmd_parse->add_option("--kind", parse_kind, "term language")
      ->check(CLI::IsMember({"process", "pattern", "formula", "choreography", "orchestration", "system"}));

  // lts
  auto* cmd_lts = app.add_subcommand("lts", "explore the reduction graph of a process");
  std::string lts_file;
  size_t lts_max = default_max_states();
  bool lts_dot = false, lts_json = false;
  cmd_lts->add_option("file", lts_file)->required();
  cmd_lts->add_option("--max-states", lts_max);
  cmd_lts->add_flag("--dot", lts_dot);
  cmd_lts->add_flag("--json", lts_json);

  // check ba / ea
  auto* cmd_check = app.add_subcommand("check", "adaptation properties");
  cmd_check->require_subcommand(1);
  std::string ck_file, ck_error;
  size_t ck_k = 1, ck_max = default_max_states();
  auto* cmd_ba = cmd_check->add_subcommand("ba", "bounded adaptation");
  cmd_ba->add_option("file", ck_file)->required();
  cmd_ba->add_option("--error", ck_error)->required();
  cmd_ba->add_option("--k", ck_k)->required();
  cmd_ba->add_option("--max-states", ck_max);
  auto* cmd_ea = cmd_check->add_subcommand("ea", "eventual adaptation");
  cmd_ea->add_option("file", ck_file)->required();
  cmd_ea->add_option("--error", ck_error)->required();
  cmd_ea->add_option("--max-states", ck_max);

  // mc
  auto* cmd_mc = app.add_subcommand("mc", "model-check a formula over the reduction graph");
  std::string mc_file, mc_formula;
  bool mc_classify = false;
  size_t mc_max = default_max_states();
  cmd_mc->add_option("file", mc_file)->required();
  cmd_mc->add_option("--formula", mc_formula, "formula file or inline text")->required();
  cmd_mc->add_flag("--classify", mc_classify);
  cmd_mc->add_option("--max-states", mc_max);

  // choreo
  auto* cmd_ch = app.add_subcommand("choreo", "choreography operations");
  cmd_ch->require_subcommand(1);
  std::string ch_file, ch_role;
  auto* cmd_proj = cmd_ch->add_subcommand("project", "project onto roles");
  cmd_proj->add_option("file", ch_file)->required();
  cmd_proj->add_option("--role", ch_role);
  auto* cmd_wf = cmd_ch->add_subcommand("wf", "semantic well-formedness");
  cmd_wf->add_option("file", ch_file)->required();
  auto* cmd_conn = cmd_ch->add_subcommand("connected", "syntactic connectedness");
  cmd_conn->add_option("file", ch_file)->required();

  // orch
  auto* cmd_or = app.add_subcommand("orch", "system operations");
  cmd_or->require_subcommand(1);
  std::string or_sys, or_chor;
  auto* cmd_cc = cmd_or->add_subcommand("correct", "correct composition");
  cmd_cc->add_option("file", or_sys)->required();
  auto* cmd_impl = cmd_or->add_subcommand("implements", "implementation relation");
  cmd_impl->add_option("system", or_sys)->required();
  cmd_impl->add_option("choreography", or_chor)->required();

  // upd
  auto* cmd_upd = app.add_subcommand("upd", "dynamic updates");
  cmd_upd->require_subcommand(1);
  std::string upd_file, upd_script;
  auto* cmd_val = cmd_upd->add_subcommand("validate", "well-definedness of scopes and updates");
  cmd_val->add_option("file", upd_file)->required();
  auto* cmd_sim = cmd_upd->add_subcommand("simulate", "script-driven replay");
  cmd_sim->add_option("file", upd_file)->required();
  cmd_sim->add_option("--script", upd_script)->required();

  CLI11_PARSE(app, argc, argv);

  if (*cmd_parse) {
    std::string text = slurp(parse_file);
    std::string out;
    if (parse_kind == "process") out = print(parse_process(text));
    else if (parse_kind == "pattern") out = print(parse_pattern(text));
    else if (parse_kind == "formula") out = print(parse_formula(text));
    else if (parse_kind == "choreography") out = print(parse_choreography(text));
    else if (parse_kind == "orchestration") out = print(parse_orchestration(text));
    else out = print(parse_system(text));
    if (format == "json")
      std::cout << json{{"kind", parse_kind}, {"term", out}}.dump(2) << "\n";
    else
      std::cout << out << "\n";
    return 0;
  }

  if (*cmd_lts) {
    StateGraph g = explore(parse_process(slurp(lts_file)), lts_max);
    if (lts_dot) {
      std::cout << to_dot(g);
    } else if (lts_json || format == "json") {
      std::cout << graph_json(g).dump(2) << "\n";
    } else {
      for (size_t i = 0; i < g.size(); ++i) {
        std::cout << i << ": " << g.state_text[i];
        if (!g.state_barbs[i].empty()) {
          std::cout << "  {";
          bool first = true;
          for (auto& b : g.state_barbs[i]) {
            if (!first) std::cout << ",";
            first = false;
            std::cout << print(b);
          }
          std::cout << "}";
        }
        std::cout << "\n";
      }
      for (auto& [a, b] : g.edges) std::cout << a << " -> " << b << "\n";
      std::cout << "root " << g.root << (g.complete ? " complete" : " incomplete") << "\n";
    }
    return g.complete ? 0 : 2;
  }

  if (*cmd_ba || *cmd_ea) {
    StateGraph g = explore(parse_process(slurp(ck_file)), ck_max);
    Barb e = parse_barb(ck_error);
    if (*cmd_ba) {
      Verdict v = check_ba(g, e, ck_k);
      return emit_verdict("ba(" + ck_error + ",k=" + std::to_string(ck_k) + ")", v, &g, format);
    }
    Verdict v = check_ea(g, e);
    return emit_verdict("ea(" + ck_error + ")", v, &g, format);
  }

  if (*cmd_mc) {
    std::string ftext = mc_formula;
    {
      std::ifstream in(mc_formula);
      if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        ftext = ss.str();
      }
    }
    FormPtr f = parse_formula(ftext);
    StateGraph g = explore(parse_process(slurp(mc_file)), mc_max);
    ModelCheckResult r = model_check(g, f);
    if (mc_classify) {
      const char* names[] = {"general", "monotone", "restricted", "restricted_negation"};
      std::string cls = names[(int)classify_formula(f)];
      if (format == "json")
        std::cout << json{{"classification", cls},
                          {"in_restricted_logic", in_restricted_logic(f)}}.dump(2)
                  << "\n";
      else
        std::cout << "classification: " << cls
                  << (in_restricted_logic(f) ? " (in the restricted logic)" : "") << "\n";
    }
    if (format == "json") {
      json j;
      j["property"] = "mc(" + print(f) + ")";
      j["status"] = status_name(r.root_verdict.status);
      j["witness"] = r.root_verdict.witness ? json(*r.root_verdict.witness)
                                            : json(json::value_t::array);
      j["sat"] = r.sat;
      j["states_explored"] = g.size();
      j["complete"] = g.complete;
      std::cout << j.dump(2) << "\n";
      return status_exit(r.root_verdict.status);
    }
    std::cout << "sat:";
    for (int s : r.sat) std::cout << " " << s;
    std::cout << "\n";
    return emit_verdict("mc(" + print(f) + ")", r.root_verdict, &g, format);
  }

  if (*cmd_proj) {
    ChPtr h = parse_choreography(slurp(ch_file));
    if (!ch_role.empty()) {
      OrPtr c = simplify_units(uproject(h, ch_role));
      if (format == "json")
        std::cout << json{{"role", ch_role}, {"orchestration", print(c)}}.dump(2) << "\n";
      else
        std::cout << print(c) << "\n";
      return 0;
    }
    System p = simplify_units(project_system(h));
    if (format == "json") {
      json j = json::array();
      for (auto& [r, c] : p.roles) j.push_back({{"role", r}, {"orchestration", print(c)}});
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << print(p) << "\n";
    }
    return 0;
  }

  if (*cmd_wf) {
    ChPtr h = parse_choreography(slurp(ch_file));
    Verdict v = check_well_formed(h);
    return emit_verdict("well-formed", v, nullptr, format);
  }

  if (*cmd_conn) {
    ChPtr h = parse_choreography(slurp(ch_file));
    ConnectednessReport rep = check_connectedness(h);
    if (format == "json") {
      std::cout << json{{"sequence", rep.seq},
                        {"choice", rep.choice},
                        {"interference", rep.interference},
                        {"connected", rep.all()},
                        {"witnesses", rep.witnesses}}.dump(2)
                << "\n";
    } else {
      std::cout << "sequence: " << (rep.seq ? "ok" : "violated") << "\n"
                << "choice: " << (rep.choice ? "ok" : "violated") << "\n"
                << "interference: " << (rep.interference ? "ok" : "violated") << "\n";
      for (auto& w : rep.witnesses) std::cout << "  " << w << "\n";
    }
    return rep.all() ? 0 : 1;
  }

  if (*cmd_cc) {
    System p = parse_system(slurp(or_sys));
    Verdict v = check_correct_composition(p);
    return emit_verdict("correct-composition", v, nullptr, format);
  }

  if (*cmd_impl) {
    System p = parse_system(slurp(or_sys));
    ChPtr h = parse_choreography(slurp(or_chor));
    Verdict v = check_implements(p, h);
    return emit_verdict("implements", v, nullptr, format);
  }

  if (*cmd_val) {
    ChPtr h = parse_choreography(slurp(upd_file));
    UpdatableReport rep = validate_updatable(h);
    if (format == "json") {
      std::cout << json{{"valid", rep.valid}, {"violations", rep.violations}}.dump(2) << "\n";
    } else {
      std::cout << (rep.valid ? "valid" : "invalid") << "\n";
      for (auto& v : rep.violations) std::cout << "  " << v << "\n";
    }
    return rep.valid ? 0 : 1;
  }

  if (*cmd_sim) {
    std::string text = slurp(upd_file);
    std::vector<Directive> script = load_script(upd_script);
    size_t first = text.find_first_not_of(" \t\r\n");
    RunLog log;
    if (first != std::string::npos && text[first] == '[')
      log = simulate_system(parse_system(text), script);
    else
      log = simulate_choreo(parse_choreography(text), script);
    if (format == "json") {
      json j = json::array();
      for (auto& e : log.events) j.push_back({{"label", e.label}, {"state", e.state}});
      std::cout << j.dump(2) << "\n";
    } else {
      for (auto& e : log.events) {
        if (!e.label.empty()) std::cout << "--[" << e.label << "]--> ";
        std::cout << e.state << "\n";
      }
    }
    return 0;
  }

  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error [" << e.kind << "]: " << e.what() << "\n";
    return 3;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
