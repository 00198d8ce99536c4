#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/error.hpp"
#include "sqk/squares.hpp"

namespace sqk {

/// Commutative squares of one ambient category, all four sides indexing
/// morphisms of `ambient`.
struct GeneratingData {
  FiniteCategory ambient;
  std::vector<Square> gens;
  std::string basepoint;
};

namespace detail {

/// Smallest set of morphisms containing `seed` and all identities that is
/// closed under composition in `cat`.
inline std::vector<bool> composition_closure(const FiniteCategory& cat, const std::vector<Index>& seed) {
  std::vector<bool> in(cat.morphism_count(), false);
  std::deque<Index> work;
  auto add = [&](Index m) {
    if (!in[m]) {
      in[m] = true;
      work.push_back(m);
    }
  };
  for (Index o = 0; o < cat.object_count(); ++o) add(cat.id(o));
  for (Index m : seed) add(m);
  while (!work.empty()) {
    const Index f = work.front();
    work.pop_front();
    for (Index g : cat.out(cat.dst(f)))
      if (in[g]) add(*cat.compose(f, g));
    for (Index o = 0; o < cat.object_count(); ++o)
      for (Index g : cat.hom(o, cat.src(f)))
        if (in[g]) add(*cat.compose(g, f));
  }
  return in;
}

/// Least superset of `seed` closed under horizontal and vertical pasting.
inline std::vector<Square> pasting_closure(const FiniteCategory& ecat, const FiniteCategory& mcat,
                                           std::vector<Square> seed) {
  std::vector<Square> all;
  std::unordered_set<Square, SquareHash> seen;
  std::vector<std::vector<std::size_t>> by_left(ecat.morphism_count()), by_right(ecat.morphism_count()),
      by_top(mcat.morphism_count()), by_bottom(mcat.morphism_count());
  std::deque<std::size_t> work;
  auto add = [&](const Square& s) {
    if (!seen.insert(s).second) return;
    const std::size_t i = all.size();
    all.push_back(s);
    by_left[s.left].push_back(i);
    by_right[s.right].push_back(i);
    by_top[s.top].push_back(i);
    by_bottom[s.bottom].push_back(i);
    work.push_back(i);
  };
  for (const Square& s : seed) add(s);

  std::vector<Square> found;
  while (!work.empty()) {
    const Square s = all[work.front()];
    work.pop_front();
    found.clear();
    for (std::size_t j : by_left[s.right]) {
      const Square& t = all[j];
      found.push_back({*mcat.compose(s.top, t.top), s.left, t.right, *mcat.compose(s.bottom, t.bottom)});
    }
    for (std::size_t j : by_right[s.left]) {
      const Square& t = all[j];
      found.push_back({*mcat.compose(t.top, s.top), t.left, s.right, *mcat.compose(t.bottom, s.bottom)});
    }
    for (std::size_t j : by_top[s.bottom]) {
      const Square& t = all[j];
      found.push_back({s.top, *ecat.compose(s.left, t.left), *ecat.compose(s.right, t.right), t.bottom});
    }
    for (std::size_t j : by_bottom[s.top]) {
      const Square& t = all[j];
      found.push_back({t.top, *ecat.compose(t.left, s.left), *ecat.compose(t.right, s.right), s.bottom});
    }
    for (const Square& p : found) add(p);
  }
  return all;
}

}  // namespace detail

/// Squares category generated by commutative squares of an ambient category:
/// M is generated by the horizontal sides, E by the vertical sides, and the
/// distinguished squares are the pasting closure of the generators and the
/// identity squares.
inline SquaresCategory generate_from_squares(const GeneratingData& g) {
  const FiniteCategory& C = g.ambient;
  const ValidationReport ambient_report = validate_category(C);
  if (!ambient_report.ok)
    throw Error("invalid-ambient", "ambient category fails " + ambient_report.violations.front().rule);
  const Index base = C.object(g.basepoint);

  std::vector<Index> horizontal, vertical;
  for (const Square& s : g.gens) {
    if (C.src(s.top) != C.src(s.left) || C.dst(s.top) != C.src(s.right) ||
        C.src(s.bottom) != C.dst(s.left) || C.dst(s.bottom) != C.dst(s.right))
      throw Error("ill-formed-square", "generator corners do not match");
    if (C.compose(s.top, s.right) != C.compose(s.left, s.bottom))
      throw Error("noncommuting-generator",
                  "generator (" + C.morphism_name(s.top) + ", " + C.morphism_name(s.left) + ", " +
                      C.morphism_name(s.right) + ", " + C.morphism_name(s.bottom) + ") does not commute");
    horizontal.push_back(s.top);
    horizontal.push_back(s.bottom);
    vertical.push_back(s.left);
    vertical.push_back(s.right);
  }

  const std::vector<bool> in_m = detail::composition_closure(C, horizontal);
  const std::vector<bool> in_e = detail::composition_closure(C, vertical);
  FiniteCategory mcat = C.subcategory(in_m);
  FiniteCategory ecat = C.subcategory(in_e);

  for (const auto& [tag, cat] : {std::pair<const char*, const FiniteCategory*>{"M", &mcat},
                                 std::pair<const char*, const FiniteCategory*>{"E", &ecat}}) {
    for (Index x = 0; x < cat->object_count(); ++x)
      if (cat->hom(base, x).size() != 1)
        throw Error("basepoint-not-initial", std::string("basepoint is not initial in generated ") + tag +
                                                 " (object '" + cat->object_name(x) + "')");
  }

  auto to_sub = [](const FiniteCategory& sub, const FiniteCategory& amb, Index m) {
    return sub.morphism(amb.morphism_name(m));
  };
  std::vector<Square> seed;
  for (const Square& s : g.gens)
    seed.push_back({to_sub(mcat, C, s.top), to_sub(ecat, C, s.left), to_sub(ecat, C, s.right),
                    to_sub(mcat, C, s.bottom)});
  for (Index f = 0; f < mcat.morphism_count(); ++f)
    seed.push_back({f, ecat.id(mcat.src(f)), ecat.id(mcat.dst(f)), f});
  for (Index e = 0; e < ecat.morphism_count(); ++e)
    seed.push_back({mcat.id(ecat.src(e)), e, e, mcat.id(ecat.dst(e))});

  std::vector<Square> squares = detail::pasting_closure(ecat, mcat, std::move(seed));
  return SquaresCategory(std::move(ecat), std::move(mcat), std::move(squares), g.basepoint);
}

/// Witness for one ordered pair (A, B) in condition (*): an object X with
///   first  = (O >-> A, O ->> B, B >-> X, A ->> X)  and
///   second = (O >-> B, O ->> A, A >-> X, B ->> X)  both distinguished.
struct StarWitness {
  Index x = kNoIndex;
  Square first;
  Square second;
};

struct StarEntry {
  Index a = kNoIndex;
  Index b = kNoIndex;
  std::optional<StarWitness> witness;
};

struct StarReport {
  bool holds = true;
  std::vector<StarEntry> entries;                        // every ordered pair, canonical order
  std::vector<std::pair<std::string, std::string>> failures;  // pairs without witness
};

/// Exhaustive search for condition (*). Ties broken by smallest X, then
/// smallest squares in canonical order.
inline StarReport check_star_condition(const SquaresCategory& sq) {
  const Index base = sq.base();
  const FiniteCategory& M = sq.mcat();
  const FiniteCategory& E = sq.ecat();
  const std::size_t n = sq.object_count();

  // squares with top-left O, keyed by (top-right, bottom-left), sorted by square
  std::vector<std::vector<Square>> from_base(n * n);
  for (const Square& s : sq.distinguished()) {
    if (M.src(s.top) != base) continue;
    from_base[static_cast<std::size_t>(M.dst(s.top)) * n + E.dst(s.left)].push_back(s);
  }

  StarReport report;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      StarEntry entry{a, b, std::nullopt};
      const auto& firsts = from_base[static_cast<std::size_t>(a) * n + b];
      const auto& seconds = from_base[static_cast<std::size_t>(b) * n + a];
      for (Index x = 0; x < n && !entry.witness; ++x) {
        const Square* s1 = nullptr;
        const Square* s2 = nullptr;
        for (const Square& s : firsts)
          if (M.dst(s.bottom) == x) {
            s1 = &s;
            break;
          }
        for (const Square& s : seconds)
          if (M.dst(s.bottom) == x) {
            s2 = &s;
            break;
          }
        if (s1 && s2) entry.witness = StarWitness{x, *s1, *s2};
      }
      if (!entry.witness) {
        report.holds = false;
        report.failures.emplace_back(sq.object_name(a), sq.object_name(b));
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace sqk
