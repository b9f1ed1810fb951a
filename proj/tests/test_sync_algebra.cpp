#include <doctest.h>

#include "hda/errors.hpp"
#include "hda/io.hpp"
#include "hda/sync_algebra.hpp"

using namespace hda;

TEST_CASE("builtin tables validate and match the defining entries") {
  auto triv = SyncAlgebra::trivial({"a", "b"});
  auto ccs = SyncAlgebra::ccs({"a", "coa", "tau"});
  auto tcsp = SyncAlgebra::tcsp({"a", "tau"});

  CHECK(triv.validate().ok);
  CHECK(ccs.validate().ok);
  CHECK(tcsp.validate().ok);

  // trivial: nothing synchronizes, everything may run asynchronously
  CHECK(triv.sync_actions("a", "b").is_bot());
  CHECK(triv.sync(Label::action("a"), Label::idle()) == Label::action("a"));

  // CCS: complements synchronize to tau, tau does not synchronize further
  CHECK(ccs.sync_actions("a", "coa") == Label::action("tau"));
  CHECK(ccs.sync_actions("coa", "a") == Label::action("tau"));
  CHECK(ccs.sync_actions("tau", "tau").is_bot());
  CHECK(ccs.sync_actions("a", "a").is_bot());
  CHECK(ccs.asynchronous("a"));
  CHECK(ccs.asynchronous("tau"));

  // TCSP: matching names synchronize, only tau is asynchronous-capable
  CHECK(tcsp.sync_actions("a", "a") == Label::action("a"));
  CHECK(tcsp.sync_actions("tau", "tau").is_bot());
  CHECK_FALSE(tcsp.asynchronous("a"));
  CHECK(tcsp.asynchronous("tau"));

  // bot absorbs in every algebra
  for (const SyncAlgebra* alg : {&triv, &ccs, &tcsp}) {
    CHECK(alg->sync(Label::action("a"), Label::bot()).is_bot());
    CHECK(alg->sync(Label::idle(), Label::idle()).is_idle());
  }
}

TEST_CASE("validated algebras are commutative and associative, idle only at (0,0)") {
  for (auto alg : {SyncAlgebra::trivial({"a", "b", "c"}),
                   SyncAlgebra::ccs({"a", "coa", "b", "cob", "tau"}),
                   SyncAlgebra::tcsp({"a", "b", "tau"})}) {
    REQUIRE(alg.validate().ok);
    std::vector<Label> labels{Label::idle(), Label::bot()};
    for (const auto& a : alg.alphabet()) labels.push_back(Label::action(a));
    for (const auto& x : labels)
      for (const auto& y : labels) {
        CHECK(alg.sync(x, y) == alg.sync(y, x));
        CHECK((alg.sync(x, y).is_idle() == (x.is_idle() && y.is_idle())));
        for (const auto& z : labels)
          CHECK(alg.sync(alg.sync(x, y), z) == alg.sync(x, alg.sync(y, z)));
      }
  }
}

TEST_CASE("axiom violations are reported with witnesses") {
  // sync(a,0) = b contradicts sync(a,0) in {a, bot}
  auto bad = SyncAlgebra::from_entries(
      {"a", "b"}, {{"a", "0", "b"}, {"b", "0", "b"}});
  auto rep = bad.validate();
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "async-or-bot") found = true;
  CHECK(found);
}

TEST_CASE("tables with unknown labels are malformed") {
  auto bad = SyncAlgebra::from_entries({"a"}, {{"a", "0", "a"}, {"a", "zz", "bot"}});
  auto rep = bad.validate();
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "malformed-table") found = true;
  CHECK(found);
}

TEST_CASE("missing sync(a,0) entries are reported, other gaps default to bot") {
  auto alg = SyncAlgebra::from_entries({"a", "b"}, {{"a", "0", "a"}});
  auto rep = alg.validate();
  CHECK_FALSE(rep.ok);  // missing (b, 0)
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "malformed-table" && v.witness.find("(b,0)") != std::string::npos) found = true;
  CHECK(found);
  CHECK(alg.sync_actions("a", "b").is_bot());
}

TEST_CASE("ccs builtin wants a complement-closed alphabet, tcsp wants tau") {
  CHECK_THROWS_AS(SyncAlgebra::ccs({"a", "tau"}), UserError);
  CHECK_THROWS_AS(SyncAlgebra::ccs({"a", "coa"}), UserError);
  CHECK_THROWS_AS(SyncAlgebra::tcsp({"a", "b"}), UserError);
}

TEST_CASE("algebra JSON round-trips through the reserved spellings") {
  auto ccs = SyncAlgebra::ccs({"a", "coa", "tau"});
  auto back = algebra_from_json(algebra_to_json(ccs));
  REQUIRE(back.validate().ok);
  CHECK(back.sync_actions("a", "coa") == Label::action("tau"));
  CHECK(back.asynchronous("a"));

  auto tcsp = SyncAlgebra::tcsp({"a", "tau"});
  auto back2 = algebra_from_json(algebra_to_json(tcsp));
  REQUIRE(back2.validate().ok);
  CHECK_FALSE(back2.asynchronous("a"));
  CHECK(back2.sync_actions("a", "a") == Label::action("a"));
}
