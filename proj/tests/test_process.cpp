#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "hda/errors.hpp"
#include "hda/process.hpp"

using namespace hda;

namespace {
const SyncAlgebra& alg() {
  static SyncAlgebra a = SyncAlgebra::ccs({"a", "coa", "b", "cob", "tau"});
  return a;
}
}  // namespace

TEST_CASE("grammar examples") {
  auto t = parse("a.b.nil + b.a.nil", alg());
  REQUIRE(t->kind() == ProcKind::Sum);
  CHECK(t->left()->kind() == ProcKind::Prefix);
  CHECK(t->left()->name() == "a");
  CHECK(t->left()->left()->name() == "b");

  auto r = parse("rec x (a.x || b.nil)", alg());
  REQUIRE(r->kind() == ProcKind::Rec);
  CHECK(r->name() == "x");
  REQUIRE(r->left()->kind() == ProcKind::Par);
  CHECK(r->left()->left()->left()->kind() == ProcKind::Var);

  // prefix binds tightest, || tighter than +
  auto p = parse("a.nil || b.nil + coa.nil", alg());
  CHECK(p->kind() == ProcKind::Sum);
  CHECK(p->left()->kind() == ProcKind::Par);
}

TEST_CASE("formatting is minimal and deterministic") {
  CHECK(format(ProcTerm::nil()) == "nil");
  CHECK(format(ProcTerm::par(ProcTerm::prefix("a", ProcTerm::nil()),
                             ProcTerm::prefix("b", ProcTerm::nil()))) == "a.nil || b.nil");
  CHECK(format(ProcTerm::restrict(
            "a", ProcTerm::par(ProcTerm::prefix("a", ProcTerm::nil()),
                               ProcTerm::prefix("coa", ProcTerm::nil())))) ==
        "nu a (a.nil || coa.nil)");
  // right-nested sums need parentheses, left-nested do not
  auto l = parse("a.nil + b.nil + coa.nil", alg());
  CHECK(format(l) == "a.nil + b.nil + coa.nil");
  auto r = ProcTerm::sum(ProcTerm::prefix("a", ProcTerm::nil()),
                         ProcTerm::sum(ProcTerm::prefix("b", ProcTerm::nil()),
                                       ProcTerm::prefix("coa", ProcTerm::nil())));
  CHECK(format(r) == "a.nil + (b.nil + coa.nil)");
  CHECK(equal(parse(format(r), alg()), r));
}

TEST_CASE("parse errors carry positions and causes") {
  CHECK_THROWS_AS(parse("a.b.", alg()), UserError);
  CHECK_THROWS_AS(parse("zz.nil", alg()), UserError);         // unknown action
  CHECK_THROWS_AS(parse("a.x", alg()), UserError);            // unbound variable
  CHECK_THROWS_AS(parse("rec x (x + a.nil)", alg()), UserError);  // unguarded
  CHECK_THROWS_AS(parse("a.nil)", alg()), UserError);         // trailing input
  CHECK_NOTHROW(parse("rec x (a.(x + b.nil))", alg()));       // guarded under one prefix
}

TEST_CASE("round-trip over random terms") {
  std::mt19937 rng(20240811);
  testgen::TermGen gen(rng, {"a", "coa", "b", "cob", "tau"});
  for (int i = 0; i < 300; ++i) {
    ProcPtr t = gen.gen(1 + i % 14);
    ProcPtr back = parse(format(t), alg());
    CAPTURE(format(t));
    CHECK(equal(t, back));
  }
}

TEST_CASE("substitution respects shadowing") {
  auto body = parse("rec x (a.x)", alg());
  auto outer = ProcTerm::prefix("b", ProcTerm::var("x"));
  auto result = substitute(ProcTerm::par(outer, body), "x", ProcTerm::nil());
  CHECK(format(result) == "b.nil || rec x (a.x)");
}
