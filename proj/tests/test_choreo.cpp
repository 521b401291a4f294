#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "evo/implement.hpp"
#include "evo/parse.hpp"
#include "evo/projection.hpp"
#include "helpers.hpp"

using namespace evo;

namespace {

const char* kBSB =
    "Request:Buyer->Seller ; (Offer:Seller->Buyer | PayDescr:Seller->Bank) ; "
    "Payment:Buyer->Bank ; (Confirm:Bank->Seller | Receipt:Bank->Buyer)";

bool has_ch_transition(const ChPtr& h, const std::string& label) {
  for (auto& [l, t] : choreo_transitions(h))
    if (print(l) == label) return true;
  return false;
}

}  // namespace

TEST_CASE("base semantics") {
  auto one = choreo_transitions(parse_choreography("1"));
  REQUIRE(one.size() == 1);
  CHECK(print(one[0].first) == "√");
  CHECK(print(one[0].second) == "0");

  CHECK(choreo_transitions(parse_choreography("0")).empty());

  auto star = choreo_transitions(parse_choreography("(a:r->s)*"));
  CHECK(std::any_of(star.begin(), star.end(), [](const ChTransition& t) {
    return t.first.kind == ChLabel::Kind::Tick && t.second->tag == HTag::Zero;
  }));
  CHECK(has_ch_transition(parse_choreography("(a:r->s)*"), "a:r->s"));

  // sequence passes control on the tick of the first operand
  CHECK(has_ch_transition(parse_choreography("1 ; a:r->s"), "a:r->s"));
  // parallel tick requires both sides
  auto par = choreo_transitions(parse_choreography("1 | a:r->s"));
  CHECK(std::none_of(par.begin(), par.end(), [](const ChTransition& t) {
    return t.first.kind == ChLabel::Kind::Tick;
  }));
}

TEST_CASE("BSB starts with the request") {
  auto ts = choreo_transitions(parse_choreography(kBSB));
  REQUIRE(ts.size() == 1);
  CHECK(print(ts[0].first) == "Request:Buyer->Seller");
}

TEST_CASE("connectedness examples") {
  auto bad = check_connectedness(parse_choreography("a:r->s ; b:t->u"));
  CHECK_FALSE(bad.seq);

  auto good = check_connectedness(parse_choreography("a:r->s ; b:s->u"));
  CHECK(good.seq);
  CHECK(good.choice);
  CHECK(good.interference);

  // the purchase scenario shows the conditions are sufficient, not necessary:
  // Payment's initiator Buyer is absent from the parallel PayDescr branch,
  // yet the choreography is semantically well-formed
  CHECK_FALSE(check_connectedness(parse_choreography(kBSB)).seq);

  auto two_senders = check_connectedness(parse_choreography("a:r->s + b:s->r"));
  CHECK_FALSE(two_senders.choice);

  auto clash = check_connectedness(parse_choreography("a:r->s | a:t->u"));
  CHECK_FALSE(clash.interference);

  CHECK_THROWS_AS(check_connectedness(parse_choreography("X:{r,s}[a:r->s]")),
                  UnsupportedConstruct);
}

TEST_CASE("projection clauses") {
  ChPtr act = parse_choreography("a:r->s");
  CHECK(print(project(act, "r")) == "a!s");
  CHECK(print(project(act, "s")) == "a?");
  CHECK(print(project(act, "t")) == "1");
  CHECK(print(project(parse_choreography("1"), "r")) == "1");

  ChPtr bsb = parse_choreography(kBSB);
  CHECK(print(simplify_units(project(bsb, "Buyer"))) ==
        "Request!Seller ; Offer? ; Payment!Bank ; Receipt?");
  CHECK(print(simplify_units(project(bsb, "Seller"))) ==
        "Request? ; (Offer!Buyer | PayDescr!Bank) ; Confirm?");
  CHECK(print(simplify_units(project(bsb, "Bank"))) ==
        "PayDescr? ; Payment? ; (Confirm!Seller | Receipt!Buyer)");
}

TEST_CASE("projection is unit for absent roles") {
  testing::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    ChPtr h = testing::gen_choreo(rng, 3);
    if (roles_of(h).count("r4")) continue;
    OrPtr c = simplify_units(project(h, "r4"));
    // a role not occurring projects to a term built from units only
    std::string s = print(c);
    CHECK(s.find('!') == std::string::npos);
    CHECK(s.find('?') == std::string::npos);
  }
}

TEST_CASE("well-formedness verdicts") {
  CHECK(check_well_formed(parse_choreography(kBSB)).status == Status::Holds);
  CHECK(check_well_formed(parse_choreography("a:r->s")).status == Status::Holds);

  auto bad = check_well_formed(parse_choreography("a:r->s ; b:t->u"));
  CHECK(bad.status == Status::Violated);
  CHECK(bad.reason.find("b:t->u a:r->s √") != std::string::npos);
}

TEST_CASE("reachable term set of the base language is finite") {
  testing::Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    ChPtr h = testing::gen_choreo(rng, 3);
    CHECK_NOTHROW(explore_choreo(h));  // StateBound would throw
  }
}

TEST_CASE("connectedness is sound for well-formedness (sampled)") {
  testing::Rng rng(63);
  int connected = 0;
  for (int i = 0; i < 300; ++i) {
    ChPtr h = testing::gen_choreo(rng, 3);
    if (!check_connectedness(h).all()) continue;
    ++connected;
    CHECK(check_well_formed(h).status == Status::Holds);
  }
  CHECK(connected > 10);
}
