#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evo/logic.hpp"
#include "evo/parse.hpp"
#include "helpers.hpp"

using namespace evo;

static const Barb kErr{Polarity::Out, "e"};
static const Barb kOk{Polarity::In, "ok"};

TEST_CASE("schema shapes") {
  CHECK(print(schema_cb(kErr, 1)) == "not ev ^e");
  CHECK(print(schema_cb(kErr, 2)) == "not ev (^e and <> ^e)");
  CHECK(print(schema_cb(kErr, 3)) == "not ev (^e and <> (^e and <> ^e))");
  CHECK(print(schema_mc(kErr)) == "not ev (^e and <> ev (not ^e and <> ev ^e))");
  CHECK(print(schema_mcr(kOk, kErr)) == "not ev (^e and <> ev (ok and ev ^e))");
  CHECK(print(schema_mcrk(kOk, kErr, 1)) == "not ev (^e and <> ev (ok and ev ^e))");
  CHECK(print(schema_mcrk(kOk, kErr, 2)) ==
        "not ev (^e and <> ev (ok and ev (^e and <> ev (ok and ev ^e))))");
  CHECK_THROWS_AS(schema_cb(kErr, 0), BadArity);
  CHECK_THROWS_AS(schema_mcrk(kOk, kErr, 0), BadArity);
}

TEST_CASE("classification examples") {
  CHECK(classify_formula(parse_formula("e and <> e")) == FormulaClass::Restricted);
  CHECK(classify_formula(parse_formula("(<> a) and (<> b)")) == FormulaClass::Monotone);
  CHECK(classify_formula(parse_formula("not ev e")) == FormulaClass::RestrictedNegation);
  CHECK(classify_formula(parse_formula("ev (a and not b)")) == FormulaClass::General);
  CHECK(classify_formula(parse_formula("tt")) == FormulaClass::Restricted);
}

TEST_CASE("schemas classify as documented") {
  for (int k = 1; k <= 4; ++k) {
    CHECK(in_restricted_logic(schema_cb(kErr, k)));
    CHECK(classify_formula(schema_cb(kErr, k)) == FormulaClass::RestrictedNegation);
  }
  // MC contains an inner negation: outside the restricted logic
  CHECK(classify_formula(schema_mc(kErr)) == FormulaClass::General);
  CHECK_FALSE(in_restricted_logic(schema_mc(kErr)));
  CHECK(in_restricted_logic(schema_mcr(kOk, kErr)));
  for (int k = 1; k <= 3; ++k) CHECK(in_restricted_logic(schema_mcrk(kOk, kErr, k)));
}

TEST_CASE("monotone iff negation-free") {
  testing::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    FormPtr f = testing::gen_formula(rng, 3);
    bool has_not = print(f).find("not") != std::string::npos;
    CHECK(is_monotone(f) == !has_not);
  }
}

TEST_CASE("restricted implies monotone") {
  testing::Rng rng(32);
  for (int i = 0; i < 500; ++i) {
    FormPtr f = testing::gen_formula(rng, 3);
    if (classify_formula(f) == FormulaClass::Restricted) CHECK(is_monotone(f));
  }
}
