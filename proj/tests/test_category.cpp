#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace sqk;

namespace {

FiniteCategory terminal() { return FiniteCategory::Builder().add_object("X").add_implicit_identities().build(); }

// X -f-> Y -g-> Z -h-> W with every composite named explicitly.
FiniteCategory::Builder chain4() {
  FiniteCategory::Builder b;
  for (auto o : {"X", "Y", "Z", "W"}) b.add_object(o);
  b.add_morphism("f", "X", "Y").add_morphism("g", "Y", "Z").add_morphism("h", "Z", "W");
  b.add_morphism("gf", "X", "Z").add_morphism("hg", "Y", "W").add_morphism("hgf", "X", "W");
  b.add_morphism("bad", "X", "W");
  b.set_composite("f", "g", "gf").set_composite("g", "h", "hg");
  b.set_composite("f", "hg", "hgf");
  b.add_implicit_identities();
  return b;
}

}  // namespace

TEST_CASE("terminal category validates") {
  const FiniteCategory c = terminal();
  const auto r = validate_category(c);
  CHECK(r.ok);
  CHECK(r.violations.empty());
  CHECK(c.compose(c.id(0), c.id(0)) == c.id(0));
}

TEST_CASE("missing unit entry is a missing composite") {
  FiniteCategory::Builder b;
  b.add_object("X").add_object("Y").add_morphism("f", "X", "Y");
  b.add_morphism("id_X", "X", "X").add_morphism("id_Y", "Y", "Y");
  b.set_identity("X", "id_X").set_identity("Y", "id_Y");
  b.set_composite("id_X", "id_X", "id_X").set_composite("id_Y", "id_Y", "id_Y");
  b.set_composite("f", "id_Y", "f");
  const auto r = validate_category(b.build());
  REQUIRE_FALSE(r.ok);
  CHECK(r.has_rule("missing-composite"));
  bool names_pair = false;
  for (const auto& v : r.violations)
    if (v.rule == "missing-composite" && v.ids == std::vector<std::string>{"id_X", "f"}) names_pair = true;
  CHECK(names_pair);
}

TEST_CASE("associativity defect reports the witness triple") {
  FiniteCategory::Builder b = chain4();
  b.set_composite("gf", "h", "bad");
  const auto r = validate_category(b.build());
  REQUIRE(r.has_rule("associativity"));
  bool witness = false;
  for (const auto& v : r.violations)
    if (v.rule == "associativity" && v.ids == std::vector<std::string>{"f", "g", "h"}) witness = true;
  CHECK(witness);

  FiniteCategory::Builder good = chain4();
  good.set_composite("gf", "h", "hgf");
  CHECK(validate_category(good.build()).ok);
}

TEST_CASE("ill-typed identity and composite") {
  FiniteCategory::Builder b;
  b.add_object("X").add_object("Y").add_morphism("f", "X", "Y").add_morphism("e", "X", "X");
  b.add_morphism("id_Y", "Y", "Y").set_identity("X", "f").set_identity("Y", "id_Y");
  b.set_composite("e", "e", "f");
  const auto r = validate_category(b.build());
  CHECK(r.has_rule("identity-ill-typed"));
  CHECK(r.has_rule("composite-ill-typed"));
}

TEST_CASE("builder rejects duplicate and unknown ids") {
  FiniteCategory::Builder dup;
  dup.add_object("X").add_object("X");
  CHECK_THROWS_MATCHES(dup.build(), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == "duplicate-id";
                       }));
  FiniteCategory::Builder unk;
  unk.add_object("X").add_morphism("f", "X", "Q");
  CHECK_THROWS_MATCHES(unk.build(), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == "unknown-id";
                       }));
}

TEST_CASE("one-object squares category validates") {
  const SquaresCategory p = point_category();
  const auto r = validate_squares_category(p);
  CHECK(r.ok);
  CHECK(p.square_count() == 1);
}

TEST_CASE("gallery constructors pass validation") {
  CHECK(validate_squares_category(two_object_category()).ok);
  for (int n = 1; n <= 3; ++n) CHECK(validate_squares_category(finset_category(n)).ok);
  for (int n = 1; n <= 3; ++n) CHECK(validate_squares_category(grid_interval_category(n)).ok);
  for (int d = 1; d <= 2; ++d) CHECK(validate_squares_category(vect_f2_category(d)).ok);
}

TEST_CASE("deleting the identity square on 0 >-> 1 is reported") {
  const SquaresCategory f2 = finset_category(2);
  const Square victim = f2.horizontal_identity(f2.mcat().morphism("inj_0_1"));
  std::vector<Square> kept;
  for (const Square& s : f2.distinguished())
    if (!(s == victim)) kept.push_back(s);
  const SquaresCategory broken(f2.ecat(), f2.mcat(), kept, std::string("0"));
  const auto r = validate_squares_category(broken);
  REQUIRE_FALSE(r.ok);
  bool names = false;
  for (const auto& v : r.violations)
    if (v.rule == "missing-identity-square")
      for (const auto& id : v.ids) names |= id == "inj_0_1";
  CHECK(names);
}

TEST_CASE("empty category is rejected with no-basepoint") {
  const FiniteCategory empty = FiniteCategory::Builder().build();
  const SquaresCategory sq(empty, empty, {}, std::nullopt);
  const auto r = validate_squares_category(sq);
  CHECK(r.has_rule("no-basepoint"));
}

TEST_CASE("mismatched object sets are rejected") {
  const FiniteCategory a = FiniteCategory::Builder().add_object("O").add_implicit_identities().build();
  const FiniteCategory b =
      FiniteCategory::Builder().add_object("O").add_object("P").add_implicit_identities().build();
  const SquaresCategory sq(a, b, {}, std::string("O"));
  CHECK(validate_squares_category(sq).has_rule("object-mismatch"));
}

TEST_CASE("is_distinguished on finite sets") {
  const SquaresCategory f2 = finset_category(2);
  for (Index m = 0; m < f2.mcat().morphism_count(); ++m) CHECK(is_distinguished(f2, f2.horizontal_identity(m)));
  for (Index e = 0; e < f2.ecat().morphism_count(); ++e) CHECK(is_distinguished(f2, f2.vertical_identity(e)));

  // {} >-> {1}, {} ->> {2}, {2} >-> {1,2}, {1} ->> {1,2}; the right leg sends 1 to 1, the bottom 2 to 2
  CHECK(is_distinguished(f2, f2.make_square("inj_0_1", "inj_0_1", "inj_1_2_1", "inj_1_2_2")));
  // bottom lands on the same element: union misses a point
  CHECK_FALSE(is_distinguished(f2, f2.make_square("inj_0_1", "inj_0_1", "inj_1_2_1", "inj_1_2_1")));
  CHECK_THROWS_MATCHES(is_distinguished(f2, f2.make_square("inj_0_1", "inj_0_1", "id_2", "inj_1_2_1")), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == "ill-formed-square"; }));
}

TEST_CASE("restricted coproducts in finite sets") {
  const SquaresCategory f2 = finset_category(2);
  const FiniteCategory& E = f2.ecat();

  const auto singletons = restricted_coproduct(f2, E.morphism("inj_0_1"), E.morphism("inj_0_1"));
  REQUIRE(singletons);
  CHECK(E.object_name(singletons->apex) == "2");
  CHECK(E.morphism_name(singletons->leg_b) == "inj_1_2_1");
  CHECK(E.morphism_name(singletons->leg_c) == "inj_1_2_2");

  const auto base = restricted_coproduct(f2, E.id(f2.base()), E.id(f2.base()));
  REQUIRE(base);
  CHECK(base->apex == f2.base());

  CHECK_FALSE(restricted_coproduct(f2, E.morphism("inj_1_2_1"), E.morphism("inj_1_2_1")));
  CHECK_THROWS_AS(restricted_coproduct(f2, E.morphism("inj_0_1"), E.morphism("inj_1_2_1")), Error);
}

TEST_CASE("validated categories are closed under pasting (random pairs)") {
  std::mt19937_64 rng(7);
  for (const SquaresCategory& sq : {finset_category(3), grid_interval_category(2), vect_f2_category(2)}) {
    REQUIRE(validate_squares_category(sq).ok);
    std::uniform_int_distribution<std::size_t> pick(0, sq.square_count() - 1);
    int checked = 0;
    for (int trial = 0; trial < 20000 && checked < 500; ++trial) {
      const Square& a = sq.square(pick(rng));
      const auto right = sq.with_left(a.right);
      const auto below = sq.with_top(a.bottom);
      if (!right.empty()) {
        const Square& b = sq.square(right[pick(rng) % right.size()]);
        CHECK(is_distinguished(sq, *sq.paste_horizontal(a, b)));
        ++checked;
      }
      if (!below.empty()) {
        const Square& b = sq.square(below[pick(rng) % below.size()]);
        CHECK(is_distinguished(sq, *sq.paste_vertical(a, b)));
        ++checked;
      }
    }
    CHECK(checked >= 100);
  }
}

TEST_CASE("basepoint is initial: exactly one morphism out of O to each object") {
  for (const SquaresCategory& sq : {finset_category(3), grid_interval_category(3), vect_f2_category(2)}) {
    for (Index x = 0; x < sq.object_count(); ++x) {
      CHECK(sq.ecat().hom(sq.base(), x).size() == 1);
      CHECK(sq.mcat().hom(sq.base(), x).size() == 1);
    }
  }
}
