#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace sqk;

namespace {

bool code_is(const Error& e, const char* code) { return e.code() == code; }

// Sides of a square of `sq` re-expressed in the ambient category.
Square in_ambient(const SquaresCategory& sq, const FiniteCategory& ambient, const Square& s) {
  const auto ids = sq.square_ids(s);
  return {ambient.morphism(ids[0]), ambient.morphism(ids[1]), ambient.morphism(ids[2]), ambient.morphism(ids[3])};
}

GeneratingData regenerate(const SquaresCategory& sq, const FiniteCategory& ambient) {
  GeneratingData g{ambient, {}, *sq.basepoint_name()};
  for (const Square& s : sq.distinguished()) g.gens.push_back(in_ambient(sq, ambient, s));
  return g;
}

std::set<std::string> morphism_names(const FiniteCategory& c) {
  std::set<std::string> out;
  for (const auto& m : c.morphisms()) out.insert(m.id);
  return out;
}

bool subset(const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("empty generators leave the basepoint non-initial") {
  FiniteCategory::Builder b;
  b.add_object("O").add_object("A").add_morphism("u", "O", "A").add_implicit_identities();
  const GeneratingData g{b.build(), {}, "O"};
  CHECK_THROWS_MATCHES(generate_from_squares(g), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, "basepoint-not-initial");
                       }));
}

TEST_CASE("two generators rebuild finset(1)") {
  const SquaresCategory f1 = finset_category(1);
  const FiniteCategory& amb = f1.ecat();
  const Index i = amb.morphism("inj_0_1");
  const GeneratingData g{amb, {{i, amb.morphism("id_0"), amb.morphism("id_1"), i}, {amb.morphism("id_0"), i, i, amb.morphism("id_1")}}, "0"};
  const SquaresCategory out = generate_from_squares(g);
  CHECK(out == f1);
  CHECK(validate_squares_category(out).ok);
}

TEST_CASE("noncommuting and ill-formed generators are rejected") {
  const SquaresCategory f2 = finset_category(2);
  const FiniteCategory& amb = f2.ecat();
  const Square fine{amb.morphism("inj_0_1"), amb.morphism("inj_0_1"), amb.morphism("inj_1_2_1"), amb.morphism("inj_1_2_2")};
  // `fine` commutes (all maps out of the empty set agree); `noncommuting` does not
  const Square noncommuting{amb.morphism("inj_1_2_1"), amb.morphism("id_1"), amb.morphism("id_2"), amb.morphism("inj_1_2_2")};
  GeneratingData g{amb, {fine, noncommuting}, "0"};
  CHECK_THROWS_MATCHES(generate_from_squares(g), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, "noncommuting-generator");
                       }));
  const Square mismatched{amb.morphism("inj_0_1"), amb.morphism("id_1"), amb.morphism("id_1"), amb.morphism("inj_0_1")};
  g.gens = {mismatched};
  CHECK_THROWS_MATCHES(generate_from_squares(g), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return code_is(e, "ill-formed-square");
                       }));
}

TEST_CASE("closure of all finset(2) squares is idempotent") {
  const SquaresCategory f2 = finset_category(2);
  const SquaresCategory once = generate_from_squares(regenerate(f2, f2.ecat()));
  CHECK(once == f2);
  const SquaresCategory twice = generate_from_squares(regenerate(once, f2.ecat()));
  CHECK(twice == once);
}

TEST_CASE("closure is idempotent and monotone on random generating sets") {
  const SquaresCategory f2 = finset_category(2);
  const FiniteCategory& amb = f2.ecat();
  // squares making 0 initial in both generated categories
  std::vector<Square> anchor;
  for (const char* m : {"inj_0_1", "inj_0_2"}) {
    anchor.push_back(f2.horizontal_identity(f2.mcat().morphism(m)));
    anchor.push_back(f2.vertical_identity(f2.ecat().morphism(m)));
  }
  std::vector<Square> pool(f2.distinguished().begin(), f2.distinguished().end());
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::size_t> cut(0, pool.size());
    std::size_t small = cut(rng), large = cut(rng);
    if (small > large) std::swap(small, large);
    GeneratingData g1{amb, {}, "0"}, g2{amb, {}, "0"};
    for (const Square& s : anchor) {
      g1.gens.push_back(in_ambient(f2, amb, s));
      g2.gens.push_back(in_ambient(f2, amb, s));
    }
    for (std::size_t i = 0; i < large; ++i) {
      if (i < small) g1.gens.push_back(in_ambient(f2, amb, pool[i]));
      g2.gens.push_back(in_ambient(f2, amb, pool[i]));
    }
    const SquaresCategory c1 = generate_from_squares(g1);
    const SquaresCategory c2 = generate_from_squares(g2);
    REQUIRE(validate_squares_category(c1).ok);
    REQUIRE(validate_squares_category(c2).ok);
    CHECK(generate_from_squares(regenerate(c1, amb)) == c1);
    CHECK(generate_from_squares(regenerate(c2, amb)) == c2);
    CHECK(subset(oracle::named_squares(c1), oracle::named_squares(c2)));
    CHECK(subset(morphism_names(c1.ecat()), morphism_names(c2.ecat())));
    CHECK(subset(morphism_names(c1.mcat()), morphism_names(c2.mcat())));
    // generators survive
    for (const Square& s : g1.gens) {
      const auto& C = amb;
      CHECK(c1.contains(c1.make_square(C.morphism_name(s.top), C.morphism_name(s.left), C.morphism_name(s.right),
                                       C.morphism_name(s.bottom))));
    }
  }
}

namespace {

// Brute-force (*) over all objects X and all pairs of distinguished squares.
std::set<std::pair<std::string, std::string>> star_failures(const SquaresCategory& sq) {
  std::set<std::pair<std::string, std::string>> out;
  const Index O = sq.base();
  const auto& M = sq.mcat();
  const auto& E = sq.ecat();
  for (Index a = 0; a < sq.object_count(); ++a)
    for (Index b = 0; b < sq.object_count(); ++b) {
      bool found = false;
      for (Index x = 0; x < sq.object_count() && !found; ++x) {
        bool first = false, second = false;
        for (const Square& s : sq.distinguished()) {
          if (M.src(s.top) != O || E.dst(s.right) != x) continue;
          if (M.dst(s.top) == a && E.dst(s.left) == b) first = true;
          if (M.dst(s.top) == b && E.dst(s.left) == a) second = true;
        }
        found = first && second;
      }
      if (!found) out.emplace(sq.object_name(a), sq.object_name(b));
    }
  return out;
}

void check_witnesses(const SquaresCategory& sq, const StarReport& r) {
  const auto& M = sq.mcat();
  const auto& E = sq.ecat();
  for (const StarEntry& e : r.entries) {
    if (!e.witness) continue;
    const StarWitness& w = *e.witness;
    CHECK(sq.contains(w.first));
    CHECK(sq.contains(w.second));
    CHECK(M.src(w.first.top) == sq.base());
    CHECK(M.dst(w.first.top) == e.a);
    CHECK(E.dst(w.first.left) == e.b);
    CHECK(M.dst(w.first.bottom) == w.x);
    CHECK(M.dst(w.second.top) == e.b);
    CHECK(E.dst(w.second.left) == e.a);
    CHECK(M.dst(w.second.bottom) == w.x);
  }
}

}  // namespace

TEST_CASE("condition (*) on the one-object category") {
  const SquaresCategory p = point_category();
  const StarReport r = check_star_condition(p);
  CHECK(r.holds);
  REQUIRE(r.entries.size() == 1);
  REQUIRE(r.entries[0].witness);
  CHECK(r.entries[0].witness->x == p.base());
  CHECK(r.entries[0].witness->first == p.total_identity(p.base()));
  CHECK(r.entries[0].witness->second == p.total_identity(p.base()));
}

TEST_CASE("condition (*) fails for finset(2) at (2, 2)") {
  const SquaresCategory f2 = finset_category(2);
  const StarReport r = check_star_condition(f2);
  CHECK_FALSE(r.holds);
  std::set<std::pair<std::string, std::string>> failures(r.failures.begin(), r.failures.end());
  CHECK(failures.contains({"2", "2"}));
  CHECK(failures == star_failures(f2));
  check_witnesses(f2, r);
}

TEST_CASE("condition (*) in vect(2): (v1, v1) has witness X = v2") {
  const SquaresCategory v = vect_f2_category(2);
  const StarReport r = check_star_condition(v);
  const Index v1 = v.object("v1");
  bool seen = false;
  for (const StarEntry& e : r.entries)
    if (e.a == v1 && e.b == v1) {
      REQUIRE(e.witness);
      CHECK(v.object_name(e.witness->x) == "v2");
      seen = true;
    }
  CHECK(seen);
  check_witnesses(v, r);
  // pairs whose dimensions sum past the bound have nowhere to go
  std::set<std::pair<std::string, std::string>> failures(r.failures.begin(), r.failures.end());
  CHECK(failures == star_failures(v));
  CHECK(failures == std::set<std::pair<std::string, std::string>>{{"v1", "v2"}, {"v2", "v1"}, {"v2", "v2"}});
}

TEST_CASE("condition (*) agrees with brute force on the gallery") {
  for (const SquaresCategory& sq : {two_object_category(), finset_category(1), finset_category(3),
                                    grid_interval_category(1), grid_interval_category(2), vect_f2_category(1)}) {
    const StarReport r = check_star_condition(sq);
    std::set<std::pair<std::string, std::string>> failures(r.failures.begin(), r.failures.end());
    CHECK(failures == star_failures(sq));
    CHECK(r.holds == failures.empty());
    CHECK(r.entries.size() == sq.object_count() * sq.object_count());
    check_witnesses(sq, r);
  }
}
