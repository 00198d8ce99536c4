#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqk/error.hpp"

namespace sqk {

using Index = std::uint32_t;
inline constexpr Index kNoIndex = static_cast<Index>(-1);

struct Morphism {
  std::string id;
  Index src = kNoIndex;
  Index dst = kNoIndex;
};

struct Violation {
  std::string rule;
  std::vector<std::string> ids;
  std::string note;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string rule, std::vector<std::string> ids, std::string note) {
    violations.push_back({std::move(rule), std::move(ids), std::move(note)});
    ok = false;
  }
  bool has_rule(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
  }
};

/// A finite category given by explicit tables.
///
/// Objects and morphisms are kept sorted by identifier, so an `Index` is also
/// the position in the canonical order. The identity and composition tables
/// may be incomplete or wrong; `validate_category` reports such defects.
/// `compose(f, g)` means "f first, then g".
class FiniteCategory {
 public:
  class Builder;

  FiniteCategory() = default;

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  std::span<const std::string> objects() const { return objects_; }
  std::span<const Morphism> morphisms() const { return morphisms_; }

  const std::string& object_name(Index obj) const { return objects_[obj]; }
  const std::string& morphism_name(Index m) const { return morphisms_[m].id; }
  Index src(Index m) const { return morphisms_[m].src; }
  Index dst(Index m) const { return morphisms_[m].dst; }

  std::optional<Index> find_object(std::string_view name) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), name);
    if (it == objects_.end() || *it != name) return std::nullopt;
    return static_cast<Index>(it - objects_.begin());
  }

  std::optional<Index> find_morphism(std::string_view id) const {
    auto it = std::lower_bound(
        morphisms_.begin(), morphisms_.end(), id,
        [](const Morphism& m, std::string_view key) { return m.id < key; });
    if (it == morphisms_.end() || it->id != id) return std::nullopt;
    return static_cast<Index>(it - morphisms_.begin());
  }

  Index object(std::string_view name) const {
    if (auto o = find_object(name)) return *o;
    throw Error("unknown-id", "unknown object '" + std::string(name) + "'");
  }
  Index morphism(std::string_view id) const {
    if (auto m = find_morphism(id)) return *m;
    throw Error("unknown-id", "unknown morphism '" + std::string(id) + "'");
  }

  /// Declared identity of `obj`, if any (not necessarily well typed).
  std::optional<Index> identity(Index obj) const {
    Index m = identities_[obj];
    if (m == kNoIndex) return std::nullopt;
    return m;
  }

  /// Identity of `obj`; throws if the table has none.
  Index id(Index obj) const {
    Index m = identities_[obj];
    if (m == kNoIndex)
      throw Error("missing-identity", "object '" + objects_[obj] + "' has no identity");
    return m;
  }

  bool is_identity(Index m) const {
    return identities_[morphisms_[m].src] == m && morphisms_[m].src == morphisms_[m].dst;
  }

  std::optional<Index> compose(Index first, Index second) const {
    Index r = table_[static_cast<std::size_t>(first) * morphisms_.size() + second];
    if (r == kNoIndex) return std::nullopt;
    return r;
  }

  /// Morphisms out of `obj`, ascending.
  std::span<const Index> out(Index obj) const { return out_[obj]; }
  /// Morphisms `a -> b`, ascending.
  std::span<const Index> hom(Index a, Index b) const {
    return homs_[static_cast<std::size_t>(a) * objects_.size() + b];
  }

  /// Every declared composition entry as (first, second, result), ordered by
  /// (first, second).
  std::vector<std::array<Index, 3>> composition_entries() const {
    std::vector<std::array<Index, 3>> out;
    const std::size_t n = morphisms_.size();
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g)
        if (Index r = table_[f * n + g]; r != kNoIndex)
          out.push_back({static_cast<Index>(f), static_cast<Index>(g), r});
    return out;
  }

  /// Same objects, only the morphisms with `keep[m]`; identity and composition
  /// entries are restricted to kept morphisms.
  FiniteCategory subcategory(const std::vector<bool>& keep) const;

  bool operator==(const FiniteCategory& other) const {
    if (objects_ != other.objects_ || morphisms_.size() != other.morphisms_.size()) return false;
    for (std::size_t i = 0; i < morphisms_.size(); ++i) {
      const auto& a = morphisms_[i];
      const auto& b = other.morphisms_[i];
      if (a.id != b.id || a.src != b.src || a.dst != b.dst) return false;
    }
    return identities_ == other.identities_ && table_ == other.table_;
  }

 private:
  void index_();

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<Index> identities_;  // per object, kNoIndex if undeclared
  std::vector<Index> table_;       // morphism_count^2, kNoIndex if undeclared
  std::vector<std::vector<Index>> out_;
  std::vector<std::vector<Index>> homs_;
};

/// Collects names, then sorts everything into canonical order on `build()`.
class FiniteCategory::Builder {
 public:
  Builder& add_object(std::string name) {
    objects_.push_back(std::move(name));
    return *this;
  }
  Builder& add_morphism(std::string id, std::string src, std::string dst) {
    morphisms_.push_back({std::move(id), std::move(src), std::move(dst)});
    return *this;
  }
  Builder& set_identity(std::string obj, std::string morphism) {
    identities_.emplace_back(std::move(obj), std::move(morphism));
    return *this;
  }
  /// `result = second . first`
  Builder& set_composite(std::string first, std::string second, std::string result) {
    composites_.push_back({std::move(first), std::move(second), std::move(result)});
    return *this;
  }
  /// Adds `id_<obj>` for every object together with its unit-law entries for
  /// every morphism that has no explicit entry yet.
  Builder& add_implicit_identities() {
    implicit_identities_ = true;
    return *this;
  }

  FiniteCategory build() const;

 private:
  struct NamedMorphism {
    std::string id, src, dst;
  };
  std::vector<std::string> objects_;
  std::vector<NamedMorphism> morphisms_;
  std::vector<std::pair<std::string, std::string>> identities_;
  std::vector<std::array<std::string, 3>> composites_;
  bool implicit_identities_ = false;
};

inline std::string identity_name(std::string_view obj) { return "id_" + std::string(obj); }

inline void FiniteCategory::index_() {
  const std::size_t no = objects_.size();
  out_.assign(no, {});
  homs_.assign(no * no, {});
  for (Index m = 0; m < morphisms_.size(); ++m) {
    out_[morphisms_[m].src].push_back(m);
    homs_[static_cast<std::size_t>(morphisms_[m].src) * no + morphisms_[m].dst].push_back(m);
  }
}

inline FiniteCategory FiniteCategory::Builder::build() const {
  FiniteCategory c;
  c.objects_ = objects_;
  std::sort(c.objects_.begin(), c.objects_.end());
  if (auto dup = std::adjacent_find(c.objects_.begin(), c.objects_.end()); dup != c.objects_.end())
    throw Error("duplicate-id", "object '" + *dup + "' declared twice");

  std::vector<NamedMorphism> named = morphisms_;
  if (implicit_identities_)
    for (const auto& o : objects_) named.push_back({identity_name(o), o, o});
  std::sort(named.begin(), named.end(),
            [](const NamedMorphism& a, const NamedMorphism& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < named.size(); ++i)
    if (named[i].id == named[i - 1].id)
      throw Error("duplicate-id", "morphism '" + named[i].id + "' declared twice");
  for (const auto& m : named)
    c.morphisms_.push_back({m.id, c.object(m.src), c.object(m.dst)});

  const std::size_t nm = c.morphisms_.size();
  c.identities_.assign(c.objects_.size(), kNoIndex);
  c.table_.assign(nm * nm, kNoIndex);
  c.index_();

  auto set_identity = [&](Index obj, Index m) {
    if (c.identities_[obj] != kNoIndex)
      throw Error("duplicate-id", "identity of '" + c.objects_[obj] + "' declared twice");
    c.identities_[obj] = m;
  };
  for (const auto& [obj, m] : identities_) set_identity(c.object(obj), c.morphism(m));
  if (implicit_identities_)
    for (const auto& o : objects_) set_identity(c.object(o), c.morphism(identity_name(o)));

  for (const auto& [first, second, result] : composites_) {
    Index f = c.morphism(first), g = c.morphism(second), h = c.morphism(result);
    Index& slot = c.table_[static_cast<std::size_t>(f) * nm + g];
    if (slot != kNoIndex)
      throw Error("duplicate-id", "composite " + second + " . " + first + " declared twice");
    slot = h;
  }
  if (implicit_identities_) {
    for (Index f = 0; f < nm; ++f) {
      Index before = c.identities_[c.morphisms_[f].src];
      Index after = c.identities_[c.morphisms_[f].dst];
      Index& left = c.table_[static_cast<std::size_t>(before) * nm + f];
      if (left == kNoIndex) left = f;
      Index& right = c.table_[static_cast<std::size_t>(f) * nm + after];
      if (right == kNoIndex) right = f;
    }
  }
  return c;
}

inline FiniteCategory FiniteCategory::subcategory(const std::vector<bool>& keep) const {
  FiniteCategory c;
  c.objects_ = objects_;
  std::vector<Index> remap(morphisms_.size(), kNoIndex);
  for (Index m = 0; m < morphisms_.size(); ++m) {
    if (!keep[m]) continue;
    remap[m] = static_cast<Index>(c.morphisms_.size());
    c.morphisms_.push_back(morphisms_[m]);
  }
  const std::size_t nm = c.morphisms_.size();
  c.identities_.assign(objects_.size(), kNoIndex);
  for (Index o = 0; o < objects_.size(); ++o)
    if (identities_[o] != kNoIndex) c.identities_[o] = remap[identities_[o]];
  c.table_.assign(nm * nm, kNoIndex);
  const std::size_t n = morphisms_.size();
  for (std::size_t f = 0; f < n; ++f) {
    if (remap[f] == kNoIndex) continue;
    for (std::size_t g = 0; g < n; ++g) {
      Index r = table_[f * n + g];
      if (remap[g] == kNoIndex || r == kNoIndex || remap[r] == kNoIndex) continue;
      c.table_[static_cast<std::size_t>(remap[f]) * nm + remap[g]] = remap[r];
    }
  }
  c.index_();
  return c;
}

/// Checks every category axiom exhaustively. Nothing is thrown; each defect
/// becomes a violation carrying the offending ids.
inline ValidationReport validate_category(const FiniteCategory& cat) {
  ValidationReport report;
  const auto name = [&](Index m) { return cat.morphism_name(m); };
  const std::size_t nm = cat.morphism_count();

  for (Index o = 0; o < cat.object_count(); ++o) {
    auto i = cat.identity(o);
    if (!i) {
      report.add("missing-identity", {cat.object_name(o)}, "object has no identity");
    } else if (cat.src(*i) != o || cat.dst(*i) != o) {
      report.add("identity-ill-typed", {cat.object_name(o), name(*i)},
                 "identity is not an endomorphism of its object");
    }
  }

  for (Index f = 0; f < nm; ++f) {
    for (Index g = 0; g < nm; ++g) {
      auto h = cat.compose(f, g);
      const bool composable = cat.dst(f) == cat.src(g);
      if (!composable) {
        if (h)
          report.add("composite-on-noncomposable", {name(f), name(g), name(*h)},
                     "composite declared for a non-composable pair");
        continue;
      }
      if (!h) {
        report.add("missing-composite", {name(f), name(g)},
                   "no composite " + name(g) + " . " + name(f));
      } else if (cat.src(*h) != cat.src(f) || cat.dst(*h) != cat.dst(g)) {
        report.add("composite-ill-typed", {name(f), name(g), name(*h)},
                   "composite has the wrong source or target");
      }
    }
  }

  for (Index f = 0; f < nm; ++f) {
    auto before = cat.identity(cat.src(f));
    auto after = cat.identity(cat.dst(f));
    if (before && cat.src(*before) == cat.src(f) && cat.dst(*before) == cat.src(f)) {
      if (auto h = cat.compose(*before, f); h && *h != f)
        report.add("unit-law", {name(*before), name(f)}, "f . id != f");
    }
    if (after && cat.src(*after) == cat.dst(f) && cat.dst(*after) == cat.dst(f)) {
      if (auto h = cat.compose(f, *after); h && *h != f)
        report.add("unit-law", {name(f), name(*after)}, "id . f != f");
    }
  }

  for (Index f = 0; f < nm; ++f) {
    for (Index g : cat.out(cat.dst(f))) {
      auto fg = cat.compose(f, g);
      if (!fg) continue;
      for (Index h : cat.out(cat.dst(g))) {
        auto gh = cat.compose(g, h);
        if (!gh) continue;
        auto left = cat.compose(*fg, h);
        auto right = cat.compose(f, *gh);
        if (left && right && *left != *right)
          report.add("associativity", {name(f), name(g), name(h)},
                     "(h . g) . f != h . (g . f)");
      }
    }
  }
  return report;
}

}  // namespace sqk
