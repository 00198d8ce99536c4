#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/error.hpp"

namespace sqk {

/// Boundary of a square: `top`/`bottom` index morphisms of M (horizontal),
/// `left`/`right` index morphisms of E (vertical).
///
///     A --top--> B
///     |          |
///   left       right
///     v          v
///     C -bottom-> D
struct Square {
  Index top = kNoIndex;
  Index left = kNoIndex;
  Index right = kNoIndex;
  Index bottom = kNoIndex;

  auto operator<=>(const Square&) const = default;
};

struct SquareHash {
  std::size_t operator()(const Square& s) const noexcept {
    std::size_t h = s.top;
    h = h * 0x9E3779B97F4A7C15ULL + s.left;
    h = h * 0x9E3779B97F4A7C15ULL + s.right;
    h = h * 0x9E3779B97F4A7C15ULL + s.bottom;
    return h ^ (h >> 29);
  }
};

/// Finite squares category: E and M on one object set, a set of distinguished
/// squares, and a basepoint. Construction only range-checks indices; use
/// `validate_squares_category` for the axioms.
class SquaresCategory {
 public:
  SquaresCategory() = default;

  SquaresCategory(FiniteCategory ecat, FiniteCategory mcat, std::vector<Square> squares,
                  std::optional<std::string> basepoint)
      : ecat_(std::move(ecat)),
        mcat_(std::move(mcat)),
        squares_(std::move(squares)),
        basepoint_name_(std::move(basepoint)) {
    for (const Square& s : squares_) {
      if (s.top >= mcat_.morphism_count() || s.bottom >= mcat_.morphism_count() ||
          s.left >= ecat_.morphism_count() || s.right >= ecat_.morphism_count())
        throw Error("unknown-id", "square references a morphism out of range");
    }
    std::sort(squares_.begin(), squares_.end());
    squares_.erase(std::unique(squares_.begin(), squares_.end()), squares_.end());

    same_objects_ = std::ranges::equal(ecat_.objects(), mcat_.objects());
    if (basepoint_name_) basepoint_ = mcat_.find_object(*basepoint_name_);

    index_.reserve(squares_.size());
    by_left_.assign(ecat_.morphism_count(), {});
    by_right_.assign(ecat_.morphism_count(), {});
    by_top_.assign(mcat_.morphism_count(), {});
    by_bottom_.assign(mcat_.morphism_count(), {});
    for (std::size_t i = 0; i < squares_.size(); ++i) {
      const Square& s = squares_[i];
      index_.emplace(s, i);
      by_left_[s.left].push_back(i);
      by_right_[s.right].push_back(i);
      by_top_[s.top].push_back(i);
      by_bottom_[s.bottom].push_back(i);
    }
  }

  const FiniteCategory& ecat() const { return ecat_; }
  const FiniteCategory& mcat() const { return mcat_; }

  std::size_t object_count() const { return mcat_.object_count(); }
  std::span<const std::string> objects() const { return mcat_.objects(); }
  const std::string& object_name(Index obj) const { return mcat_.object_name(obj); }
  Index object(std::string_view name) const { return mcat_.object(name); }
  bool same_objects() const { return same_objects_; }

  /// Declared basepoint name (may not name an object).
  const std::optional<std::string>& basepoint_name() const { return basepoint_name_; }
  /// Basepoint as an object index, if it names an object.
  std::optional<Index> basepoint() const { return basepoint_; }
  Index base() const {
    if (!basepoint_) throw Error("no-basepoint", "category has no basepoint");
    return *basepoint_;
  }

  std::span<const Square> distinguished() const { return squares_; }
  std::size_t square_count() const { return squares_.size(); }
  const Square& square(std::size_t i) const { return squares_[i]; }

  bool contains(const Square& s) const { return index_.contains(s); }
  std::optional<std::size_t> find(const Square& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const std::size_t> with_left(Index e) const { return by_left_[e]; }
  std::span<const std::size_t> with_right(Index e) const { return by_right_[e]; }
  std::span<const std::size_t> with_top(Index m) const { return by_top_[m]; }
  std::span<const std::size_t> with_bottom(Index m) const { return by_bottom_[m]; }

  // Corners, as object indices of M.
  Index top_left(const Square& s) const { return mcat_.src(s.top); }
  Index top_right(const Square& s) const { return mcat_.dst(s.top); }
  Index bottom_left(const Square& s) const { return mcat_.src(s.bottom); }
  Index bottom_right(const Square& s) const { return mcat_.dst(s.bottom); }

  bool corners_match(const Square& s) const {
    if (same_objects_)
      return mcat_.src(s.top) == ecat_.src(s.left) && mcat_.dst(s.top) == ecat_.src(s.right) &&
             mcat_.src(s.bottom) == ecat_.dst(s.left) && mcat_.dst(s.bottom) == ecat_.dst(s.right);
    const auto m_obj = [&](Index o) -> const std::string& { return mcat_.object_name(o); };
    const auto e_obj = [&](Index o) -> const std::string& { return ecat_.object_name(o); };
    return m_obj(mcat_.src(s.top)) == e_obj(ecat_.src(s.left)) &&
           m_obj(mcat_.dst(s.top)) == e_obj(ecat_.src(s.right)) &&
           m_obj(mcat_.src(s.bottom)) == e_obj(ecat_.dst(s.left)) &&
           m_obj(mcat_.dst(s.bottom)) == e_obj(ecat_.dst(s.right));
  }

  /// Builds a square from morphism ids (top/bottom in M, left/right in E).
  Square make_square(std::string_view top, std::string_view left, std::string_view right,
                     std::string_view bottom) const {
    return {mcat_.morphism(top), ecat_.morphism(left), ecat_.morphism(right),
            mcat_.morphism(bottom)};
  }

  std::vector<std::string> square_ids(const Square& s) const {
    return {mcat_.morphism_name(s.top), ecat_.morphism_name(s.left),
            ecat_.morphism_name(s.right), mcat_.morphism_name(s.bottom)};
  }

  // Mandatory squares. Require a valid category.
  Square horizontal_identity(Index f) const {
    return {f, ecat_.id(mcat_.src(f)), ecat_.id(mcat_.dst(f)), f};
  }
  Square vertical_identity(Index g) const {
    return {mcat_.id(ecat_.src(g)), g, g, mcat_.id(ecat_.dst(g))};
  }
  Square total_identity(Index obj) const {
    return {mcat_.id(obj), ecat_.id(obj), ecat_.id(obj), mcat_.id(obj)};
  }
  bool is_total_identity(const Square& s) const {
    return mcat_.is_identity(s.top) && mcat_.is_identity(s.bottom) &&
           ecat_.is_identity(s.left) && ecat_.is_identity(s.right);
  }

  /// `a` to the left of `b` (requires a.right == b.left).
  std::optional<Square> paste_horizontal(const Square& a, const Square& b) const {
    if (a.right != b.left) return std::nullopt;
    auto top = mcat_.compose(a.top, b.top);
    auto bottom = mcat_.compose(a.bottom, b.bottom);
    if (!top || !bottom) return std::nullopt;
    return Square{*top, a.left, b.right, *bottom};
  }
  /// `a` above `b` (requires a.bottom == b.top).
  std::optional<Square> paste_vertical(const Square& a, const Square& b) const {
    if (a.bottom != b.top) return std::nullopt;
    auto left = ecat_.compose(a.left, b.left);
    auto right = ecat_.compose(a.right, b.right);
    if (!left || !right) return std::nullopt;
    return Square{a.top, *left, *right, b.bottom};
  }

  bool operator==(const SquaresCategory& o) const {
    return ecat_ == o.ecat_ && mcat_ == o.mcat_ && squares_ == o.squares_ &&
           basepoint_name_ == o.basepoint_name_;
  }

 private:
  FiniteCategory ecat_;
  FiniteCategory mcat_;
  std::vector<Square> squares_;
  std::optional<std::string> basepoint_name_;
  std::optional<Index> basepoint_;
  bool same_objects_ = false;
  std::unordered_map<Square, std::size_t, SquareHash> index_;
  std::vector<std::vector<std::size_t>> by_left_, by_right_, by_top_, by_bottom_;
};

namespace detail {

inline void prefix_violations(ValidationReport& into, const ValidationReport& from,
                              const std::string& tag) {
  for (const auto& v : from.violations) into.add(v.rule, v.ids, tag + ": " + v.note);
}

}  // namespace detail

/// Checks, in order: both categories, shared objects, basepoint presence,
/// corner matching, initiality of the basepoint, identity squares, and
/// closure under horizontal and vertical pasting.
inline ValidationReport validate_squares_category(const SquaresCategory& sq) {
  ValidationReport report;
  const FiniteCategory& E = sq.ecat();
  const FiniteCategory& M = sq.mcat();

  const ValidationReport e_report = validate_category(E);
  const ValidationReport m_report = validate_category(M);
  detail::prefix_violations(report, e_report, "E");
  detail::prefix_violations(report, m_report, "M");

  if (!sq.same_objects()) {
    std::vector<std::string> diff;
    std::ranges::set_symmetric_difference(E.objects(), M.objects(), std::back_inserter(diff));
    report.add("object-mismatch", diff, "E and M have different objects");
    return report;
  }

  if (sq.object_count() == 0 || !sq.basepoint()) {
    report.add("no-basepoint", {sq.basepoint_name().value_or("")},
               sq.object_count() == 0 ? "empty object set" : "basepoint is not an object");
    return report;
  }

  bool corners_ok = true;
  for (const Square& s : sq.distinguished()) {
    if (!sq.corners_match(s)) {
      corners_ok = false;
      report.add("ill-formed-square", sq.square_ids(s), "corners do not match");
    }
  }

  const Index base = *sq.basepoint();
  for (const auto& [tag, cat] : {std::pair<const char*, const FiniteCategory*>{"E", &E},
                                 std::pair<const char*, const FiniteCategory*>{"M", &M}}) {
    for (Index x = 0; x < cat->object_count(); ++x) {
      const std::size_t n = cat->hom(base, x).size();
      if (n != 1)
        report.add("basepoint-not-initial", {tag, cat->object_name(x)},
                   std::string(tag) + ": " + std::to_string(n) + " morphisms from the basepoint");
    }
  }

  if (!corners_ok) return report;

  auto has_identity = [](const FiniteCategory& c, Index obj) {
    auto i = c.identity(obj);
    return i && c.src(*i) == obj && c.dst(*i) == obj;
  };
  for (Index f = 0; f < M.morphism_count(); ++f) {
    if (!has_identity(E, M.src(f)) || !has_identity(E, M.dst(f))) continue;
    if (!sq.contains(sq.horizontal_identity(f)))
      report.add("missing-identity-square", {M.morphism_name(f)},
                 "horizontal identity square on M-morphism is not distinguished");
  }
  for (Index g = 0; g < E.morphism_count(); ++g) {
    if (!has_identity(M, E.src(g)) || !has_identity(M, E.dst(g))) continue;
    if (!sq.contains(sq.vertical_identity(g)))
      report.add("missing-identity-square", {E.morphism_name(g)},
                 "vertical identity square on E-morphism is not distinguished");
  }

  for (const Square& a : sq.distinguished()) {
    for (std::size_t j : sq.with_left(a.right)) {
      auto p = sq.paste_horizontal(a, sq.square(j));
      if (p && !sq.contains(*p)) {
        auto ids = sq.square_ids(a);
        auto rhs = sq.square_ids(sq.square(j));
        ids.insert(ids.end(), rhs.begin(), rhs.end());
        report.add("pasting-closure", ids, "horizontal paste is not distinguished");
      }
    }
    for (std::size_t j : sq.with_top(a.bottom)) {
      auto p = sq.paste_vertical(a, sq.square(j));
      if (p && !sq.contains(*p)) {
        auto ids = sq.square_ids(a);
        auto rhs = sq.square_ids(sq.square(j));
        ids.insert(ids.end(), rhs.begin(), rhs.end());
        report.add("pasting-closure", ids, "vertical paste is not distinguished");
      }
    }
  }
  return report;
}

inline bool is_distinguished(const SquaresCategory& sq, const Square& s) {
  if (s.top >= sq.mcat().morphism_count() || s.bottom >= sq.mcat().morphism_count() ||
      s.left >= sq.ecat().morphism_count() || s.right >= sq.ecat().morphism_count() ||
      !sq.corners_match(s))
    throw Error("ill-formed-square", "square corners do not match");
  return sq.contains(s);
}

/// Cocone `B -> apex <- C` under a span `B <- A -> C`, legs in E.
struct Cocone {
  Index apex = kNoIndex;
  Index leg_b = kNoIndex;
  Index leg_c = kNoIndex;

  bool operator==(const Cocone&) const = default;
};

namespace detail {

/// Is the commuting square (to_b, to_c; leg_b, leg_c) a pullback in `cat`?
/// Exhaustive test of the universal property.
inline bool is_pullback(const FiniteCategory& cat, Index to_b, Index to_c, Index leg_b,
                        Index leg_c) {
  const Index a = cat.src(to_b), b = cat.dst(to_b), c = cat.dst(to_c);
  for (Index w = 0; w < cat.object_count(); ++w) {
    for (Index p : cat.hom(w, b)) {
      for (Index q : cat.hom(w, c)) {
        if (cat.compose(p, leg_b) != cat.compose(q, leg_c)) continue;
        int factorizations = 0;
        for (Index u : cat.hom(w, a))
          if (cat.compose(u, to_b) == p && cat.compose(u, to_c) == q) ++factorizations;
        if (factorizations != 1) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Restricted coproduct of the span `B <-to_b- A -to_c-> C` in E: the initial
/// cocone among those whose completed square commutes and is a pullback.
/// Returns the first initial cocone in canonical order, or nothing.
inline std::optional<Cocone> restricted_coproduct(const SquaresCategory& sq, Index to_b,
                                                  Index to_c) {
  const FiniteCategory& E = sq.ecat();
  if (E.src(to_b) != E.src(to_c))
    throw Error("ill-formed-span", "span legs must share their source");
  const Index b = E.dst(to_b), c = E.dst(to_c);

  std::vector<Cocone> cocones;
  for (Index d = 0; d < E.object_count(); ++d)
    for (Index lb : E.hom(b, d))
      for (Index lc : E.hom(c, d))
        if (E.compose(to_b, lb) == E.compose(to_c, lc) &&
            detail::is_pullback(E, to_b, to_c, lb, lc))
          cocones.push_back({d, lb, lc});

  for (const Cocone& k : cocones) {
    const bool initial = std::ranges::all_of(cocones, [&](const Cocone& other) {
      int maps = 0;
      for (Index u : E.hom(k.apex, other.apex))
        if (E.compose(k.leg_b, u) == other.leg_b && E.compose(k.leg_c, u) == other.leg_c) ++maps;
      return maps == 1;
    });
    if (initial) return k;
  }
  return std::nullopt;
}

}  // namespace sqk
