#pragma once

// Finite squares categories used as fixtures: skeletal finite sets and
// injections, unions of closed intervals on an integer grid, and vector spaces
// over the field with two elements.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/error.hpp"
#include "sqk/squares.hpp"

namespace sqk {

/// Injection {1..domain} -> {1..codomain}; `map[i]` is the image of i+1.
struct SkeletalInjection {
  int domain = 0;
  int codomain = 0;
  std::vector<int> map;

  bool is_identity() const {
    if (domain != codomain) return false;
    for (int i = 0; i < domain; ++i)
      if (map[i] != i + 1) return false;
    return true;
  }

  std::string name() const {
    if (is_identity()) return identity_name(std::to_string(domain));
    std::string s = "inj_" + std::to_string(domain) + "_" + std::to_string(codomain);
    for (int v : map) s += "_" + std::to_string(v);
    return s;
  }

  /// Bitmask of the image (bit v-1 set for v in the image).
  std::uint32_t image() const {
    std::uint32_t m = 0;
    for (int v : map) m |= 1u << (v - 1);
    return m;
  }

  /// `*this` first, then `next`.
  SkeletalInjection then(const SkeletalInjection& next) const {
    SkeletalInjection r{domain, next.codomain, {}};
    for (int v : map) r.map.push_back(next.map[v - 1]);
    return r;
  }

  bool operator==(const SkeletalInjection&) const = default;

  static std::vector<SkeletalInjection> all(int a, int b) {
    std::vector<SkeletalInjection> out;
    std::vector<int> cur;
    std::vector<bool> used(b + 1, false);
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == a) {
        out.push_back({a, b, cur});
        return;
      }
      for (int v = 1; v <= b; ++v) {
        if (used[v]) continue;
        used[v] = true;
        cur.push_back(v);
        self(self);
        cur.pop_back();
        used[v] = false;
      }
    };
    rec(rec);
    return out;
  }
};

namespace detail {

inline void check_bound(const char* what, int value, int lo, int bound) {
  if (value < lo || value > bound)
    throw Error("bound-exceeded", std::string(what) + " = " + std::to_string(value) +
                                      " outside [" + std::to_string(lo) + ", " +
                                      std::to_string(bound) + "]");
}

}  // namespace detail

/// Skeletal finite sets {0..n} with injections in both E and M. A square is
/// distinguished when it commutes and, inside D, the images of B and C meet
/// exactly in the image of A and cover D.
inline SquaresCategory finset_category(int n, int bound = 4) {
  detail::check_bound("n", n, 1, bound);
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, SkeletalInjection>> morphs;
  for (int b = 0; b <= n; ++b) {
    objects.push_back(std::to_string(b));
    for (int a = 0; a <= b; ++a)
      for (auto& f : SkeletalInjection::all(a, b))
        if (!f.is_identity()) morphs.emplace_back(f.name(), f);
  }
  auto identity_value = [](int a) {
    SkeletalInjection f{a, a, {}};
    for (int i = 1; i <= a; ++i) f.map.push_back(i);
    return f;
  };
  std::vector<std::pair<std::string, SkeletalInjection>> with_ids = std::move(morphs);
  for (int a = 0; a <= n; ++a) with_ids.emplace_back(identity_name(std::to_string(a)), identity_value(a));

  FiniteCategory::Builder b;
  for (const auto& o : objects) {
    b.add_object(o);
    b.set_identity(o, identity_name(o));
  }
  for (const auto& [name, f] : with_ids) b.add_morphism(name, std::to_string(f.domain), std::to_string(f.codomain));
  for (const auto& [fname, f] : with_ids)
    for (const auto& [gname, g] : with_ids)
      if (f.codomain == g.domain) b.set_composite(fname, gname, f.then(g).name());
  FiniteCategory cat = b.build();

  std::vector<SkeletalInjection> value(cat.morphism_count());
  for (const auto& [name, f] : with_ids) value[cat.morphism(name)] = f;

  std::vector<Square> squares;
  for (Index top = 0; top < cat.morphism_count(); ++top) {
    const Index a = cat.src(top), bb = cat.dst(top);
    for (Index left : cat.out(a)) {
      const Index c = cat.dst(left);
      for (Index right : cat.out(bb)) {
        const Index d = cat.dst(right);
        for (Index bottom : cat.hom(c, d)) {
          const auto& vt = value[top];
          const auto& vl = value[left];
          const auto& vr = value[right];
          const auto& vb = value[bottom];
          if (vt.then(vr) != vl.then(vb)) continue;
          const std::uint32_t full = (1u << vr.codomain) - 1;
          if ((vr.image() | vb.image()) != full) continue;
          if ((vr.image() & vb.image()) != vt.then(vr).image()) continue;
          squares.push_back({top, left, right, bottom});
        }
      }
    }
  }
  return SquaresCategory(cat, cat, std::move(squares), std::string("0"));
}

/// A finite union of closed intervals with integer endpoints in [0, N],
/// stored in normal form (maximal pieces, sorted). Degenerate pieces [k, k]
/// are grid points.
struct GridUnion {
  int bound = 0;
  std::vector<std::pair<int, int>> pieces;

  /// Cells of the grid: 2k is the point k, 2k+1 the open segment (k, k+1).
  static GridUnion from_cells(int bound, std::uint32_t cells) {
    GridUnion u{bound, {}};
    int i = 0;
    const int n = 2 * bound + 1;
    while (i < n) {
      if (!(cells >> i & 1u)) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < n && (cells >> (j + 1) & 1u)) ++j;
      u.pieces.emplace_back(i / 2, j / 2);
      i = j + 1;
    }
    return u;
  }

  std::uint32_t cells() const {
    std::uint32_t m = 0;
    for (auto [a, b] : pieces)
      for (int c = 2 * a; c <= 2 * b; ++c) m |= 1u << c;
    return m;
  }

  static bool closed(int bound, std::uint32_t cells) {
    for (int k = 0; k < bound; ++k)
      if ((cells >> (2 * k + 1) & 1u) && (!(cells >> (2 * k) & 1u) || !(cells >> (2 * k + 2) & 1u)))
        return false;
    return true;
  }

  std::string name() const {
    if (pieces.empty()) return "empty";
    std::string s;
    for (auto [a, b] : pieces) {
      if (!s.empty()) s += "_";
      s += a == b ? "p" + std::to_string(a) : "i" + std::to_string(a) + "t" + std::to_string(b);
    }
    return s;
  }
};

/// Unions of closed grid intervals in [0, N] ordered by inclusion (both E and
/// M). A square is distinguished iff A = B ∩ C and D = B ∪ C as point sets.
inline SquaresCategory grid_interval_category(int n, int bound = 4) {
  detail::check_bound("N", n, 1, bound);
  std::vector<std::uint32_t> cells;
  for (std::uint32_t m = 0; m < (1u << (2 * n + 1)); ++m)
    if (GridUnion::closed(n, m)) cells.push_back(m);
  auto name = [&](std::uint32_t m) { return GridUnion::from_cells(n, m).name(); };
  auto inclusion = [&](std::uint32_t x, std::uint32_t y) {
    return x == y ? identity_name(name(x)) : "inc_" + name(x) + "__" + name(y);
  };

  FiniteCategory::Builder b;
  for (auto x : cells) {
    b.add_object(name(x));
    b.set_identity(name(x), identity_name(name(x)));
  }
  for (auto x : cells)
    for (auto y : cells)
      if ((x & y) == x) b.add_morphism(inclusion(x, y), name(x), name(y));
  for (auto x : cells)
    for (auto y : cells)
      for (auto z : cells)
        if ((x & y) == x && (y & z) == y) b.set_composite(inclusion(x, y), inclusion(y, z), inclusion(x, z));
  FiniteCategory cat = b.build();

  std::vector<Square> squares;
  for (auto x : cells)
    for (auto y : cells) {
      const std::uint32_t meet = x & y, join = x | y;
      squares.push_back({cat.morphism(inclusion(meet, x)), cat.morphism(inclusion(meet, y)),
                         cat.morphism(inclusion(x, join)), cat.morphism(inclusion(y, join))});
    }
  return SquaresCategory(cat, cat, std::move(squares), std::string("empty"));
}

/// Linear map F2^domain -> F2^codomain. Entry (r, c) is bit r*domain + c.
struct F2LinearMap {
  int domain = 0;
  int codomain = 0;
  std::uint32_t bits = 0;

  bool entry(int r, int c) const { return bits >> (r * domain + c) & 1u; }

  std::uint32_t apply(std::uint32_t v) const {
    std::uint32_t out = 0;
    for (int r = 0; r < codomain; ++r) {
      int s = 0;
      for (int c = 0; c < domain; ++c) s ^= entry(r, c) & (v >> c & 1u);
      out |= static_cast<std::uint32_t>(s) << r;
    }
    return out;
  }

  /// `*this` first, then `next`.
  F2LinearMap then(const F2LinearMap& next) const {
    F2LinearMap r{domain, next.codomain, 0};
    for (int c = 0; c < domain; ++c) {
      std::uint32_t col = next.apply(apply(1u << c));
      for (int row = 0; row < next.codomain; ++row)
        if (col >> row & 1u) r.bits |= 1u << (row * domain + c);
    }
    return r;
  }

  /// Columns as vectors in F2^codomain.
  std::vector<std::uint32_t> columns() const {
    std::vector<std::uint32_t> cols;
    for (int c = 0; c < domain; ++c) cols.push_back(apply(1u << c));
    return cols;
  }

  int rank() const { return f2_rank(columns()); }

  static F2LinearMap identity(int n) {
    F2LinearMap f{n, n, 0};
    for (int i = 0; i < n; ++i) f.bits |= 1u << (i * n + i);
    return f;
  }

  bool is_identity() const { return domain == codomain && *this == identity(domain); }

  std::string name() const {
    if (is_identity()) return identity_name("v" + std::to_string(domain));
    std::string s = "lin_" + std::to_string(domain) + "_" + std::to_string(codomain);
    if (domain * codomain > 0) {
      s += "_";
      for (int r = 0; r < codomain; ++r)
        for (int c = 0; c < domain; ++c) s += entry(r, c) ? '1' : '0';
    }
    return s;
  }

  static int f2_rank(std::vector<std::uint32_t> vectors) {
    int rank = 0;
    for (int bit = 0; bit < 32; ++bit) {
      auto pivot = std::find_if(vectors.begin() + rank, vectors.end(),
                                [&](std::uint32_t v) { return v >> bit & 1u; });
      if (pivot == vectors.end()) continue;
      std::iter_swap(vectors.begin() + rank, pivot);
      for (std::size_t i = 0; i < vectors.size(); ++i)
        if (i != static_cast<std::size_t>(rank) && (vectors[i] >> bit & 1u)) vectors[i] ^= vectors[rank];
      ++rank;
    }
    return rank;
  }

  static std::vector<F2LinearMap> all(int a, int b) {
    std::vector<F2LinearMap> out;
    for (std::uint32_t m = 0; m < (1u << (a * b)); ++m) out.push_back({a, b, m});
    return out;
  }

  auto operator<=>(const F2LinearMap&) const = default;
};

/// Vector spaces F2^0..F2^d. E = all linear maps, M = injective ones. A
/// commuting square is distinguished iff B ⊔_A C -> D is an isomorphism.
inline SquaresCategory vect_f2_category(int d, int bound = 2) {
  detail::check_bound("d", d, 1, bound);
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, F2LinearMap>> all_maps, injective;
  for (int a = 0; a <= d; ++a) {
    objects.push_back("v" + std::to_string(a));
    for (int b = 0; b <= d; ++b)
      for (const auto& f : F2LinearMap::all(a, b)) {
        if (f.is_identity()) continue;
        all_maps.emplace_back(f.name(), f);
        if (f.rank() == a) injective.emplace_back(f.name(), f);
      }
  }
  auto build = [&](std::vector<std::pair<std::string, F2LinearMap>> maps) {
    for (int a = 0; a <= d; ++a) maps.emplace_back(identity_name("v" + std::to_string(a)), F2LinearMap::identity(a));
    FiniteCategory::Builder b;
    for (const auto& o : objects) {
      b.add_object(o);
      b.set_identity(o, identity_name(o));
    }
    for (const auto& [name, f] : maps)
      b.add_morphism(name, "v" + std::to_string(f.domain), "v" + std::to_string(f.codomain));
    for (const auto& [fname, f] : maps)
      for (const auto& [gname, g] : maps)
        if (f.codomain == g.domain) b.set_composite(fname, gname, f.then(g).name());
    FiniteCategory cat = b.build();
    std::vector<F2LinearMap> value(cat.morphism_count());
    for (const auto& [name, f] : maps) value[cat.morphism(name)] = f;
    return std::pair{cat, value};
  };
  auto [ecat, evalue] = build(all_maps);
  auto [mcat, mvalue] = build(injective);

  std::vector<Square> squares;
  for (Index top = 0; top < mcat.morphism_count(); ++top) {
    const Index a = mcat.src(top), b = mcat.dst(top);
    for (Index left : ecat.out(a)) {
      const Index c = ecat.dst(left);
      for (Index right : ecat.out(b)) {
        const Index dd = ecat.dst(right);
        for (Index bottom : mcat.hom(c, dd)) {
          const auto& vt = mvalue[top];
          const auto& vb = mvalue[bottom];
          const auto& vl = evalue[left];
          const auto& vr = evalue[right];
          if (vt.then(vr) != vl.then(vb)) continue;
          // Pushout has dimension dim B + dim C - dim A since `top` is injective.
          if (vr.codomain != vt.codomain + vb.domain - vt.domain) continue;
          auto cols = vr.columns();
          auto more = vb.columns();
          cols.insert(cols.end(), more.begin(), more.end());
          if (F2LinearMap::f2_rank(cols) != vr.codomain) continue;
          squares.push_back({top, left, right, bottom});
        }
      }
    }
  }
  return SquaresCategory(ecat, mcat, std::move(squares), std::string("v0"));
}

namespace detail {

inline std::vector<Square> mandatory_squares(const FiniteCategory& ecat, const FiniteCategory& mcat) {
  std::vector<Square> out;
  for (Index f = 0; f < mcat.morphism_count(); ++f)
    out.push_back({f, ecat.id(mcat.src(f)), ecat.id(mcat.dst(f)), f});
  for (Index g = 0; g < ecat.morphism_count(); ++g)
    out.push_back({mcat.id(ecat.src(g)), g, g, mcat.id(ecat.dst(g))});
  return out;
}

}  // namespace detail

/// One object O, identities only.
inline SquaresCategory point_category() {
  FiniteCategory cat = FiniteCategory::Builder().add_object("O").add_implicit_identities().build();
  return SquaresCategory(cat, cat, detail::mandatory_squares(cat, cat), std::string("O"));
}

/// Objects O and A, a single morphism u: O -> A in each of E and M, and only
/// the identity squares.
inline SquaresCategory two_object_category() {
  FiniteCategory cat = FiniteCategory::Builder()
                           .add_object("O")
                           .add_object("A")
                           .add_morphism("u", "O", "A")
                           .add_implicit_identities()
                           .build();
  return SquaresCategory(cat, cat, detail::mandatory_squares(cat, cat), std::string("O"));
}

}  // namespace sqk
