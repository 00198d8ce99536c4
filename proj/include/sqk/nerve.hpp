#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/error.hpp"
#include "sqk/squares.hpp"

namespace sqk {

struct EnumerationCaps {
  std::size_t max_edges = 1'000'000;
  std::size_t max_grids = 10'000'000;
  std::size_t max_chains = 10'000'000;
};

/// A_0 >-> A_1 >-> ... >-> A_n in M. For n == 0 only `start` is meaningful.
struct Chain {
  Index start = kNoIndex;
  std::vector<Index> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Chain&) const = default;
};

/// Componentwise E-morphisms `components[i]: source_i ->> target_i` such that
/// every square over a generating arrow of the chain is distinguished.
struct VerticalTransformation {
  Chain source;
  Chain target;
  std::vector<Index> components;

  bool operator==(const VerticalTransformation&) const = default;
};

namespace detail {

inline void check_cap(std::size_t count, std::size_t cap, const char* what) {
  if (count > cap)
    throw Error("cap-exceeded", std::string(what) + " exceed the enumeration cap of " + std::to_string(cap));
}

}  // namespace detail

/// All length-n composable chains in M, in canonical (lexicographic) order.
inline std::vector<Chain> enumerate_tn_objects(const SquaresCategory& sq, std::size_t n,
                                               const EnumerationCaps& caps = {}) {
  const FiniteCategory& M = sq.mcat();
  std::vector<Chain> out;
  if (n == 0) {
    for (Index o = 0; o < sq.object_count(); ++o) out.push_back({o, {}});
    detail::check_cap(out.size(), caps.max_chains, "chains");
    return out;
  }
  Chain cur;
  auto extend = [&](auto&& self, Index at) -> void {
    if (cur.arrows.size() == n) {
      out.push_back(cur);
      detail::check_cap(out.size(), caps.max_chains, "chains");
      return;
    }
    for (Index f : M.out(at)) {
      cur.arrows.push_back(f);
      self(self, M.dst(f));
      cur.arrows.pop_back();
    }
  };
  for (Index f = 0; f < M.morphism_count(); ++f) {
    cur.start = M.src(f);
    cur.arrows = {f};
    extend(extend, M.dst(f));
  }
  return out;
}

/// All vertical distinguished transformations between length-n chains. For
/// n >= 1 these are rows of n horizontally adjacent distinguished squares.
inline std::vector<VerticalTransformation> enumerate_tn_morphisms(const SquaresCategory& sq, std::size_t n,
                                                                  const EnumerationCaps& caps = {}) {
  const FiniteCategory& E = sq.ecat();
  std::vector<VerticalTransformation> out;
  if (n == 0) {
    for (Index e = 0; e < E.morphism_count(); ++e) {
      out.push_back({{E.src(e), {}}, {E.dst(e), {}}, {e}});
      detail::check_cap(out.size(), caps.max_chains, "transformations");
    }
    return out;
  }
  std::vector<std::size_t> row;
  auto extend = [&](auto&& self) -> void {
    if (row.size() == n) {
      VerticalTransformation t;
      const Square& first = sq.square(row.front());
      t.source.start = sq.top_left(first);
      t.target.start = sq.bottom_left(first);
      t.components.push_back(first.left);
      for (std::size_t i : row) {
        const Square& s = sq.square(i);
        t.source.arrows.push_back(s.top);
        t.target.arrows.push_back(s.bottom);
        t.components.push_back(s.right);
      }
      out.push_back(std::move(t));
      detail::check_cap(out.size(), caps.max_chains, "transformations");
      return;
    }
    for (std::size_t j : sq.with_left(sq.square(row.back()).right)) {
      row.push_back(j);
      self(self);
      row.pop_back();
    }
  };
  for (std::size_t i = 0; i < sq.square_count(); ++i) {
    row = {i};
    extend(extend);
  }
  return out;
}

/// 2-skeleton of the diagonal of the bisimplicial nerve.
///
/// Vertices are objects. Each edge is a distinguished square other than a
/// total identity, running from its top-left to its bottom-right corner. Each
/// 2-cell is a nondegenerate 3x3 grid of distinguished squares
///
///     s11 | s12
///     ----+----
///     s21 | s22
///
/// with faces d2 = s11, d0 = s22 and d1 = the pasted outer square. A face
/// equal to a total identity square is degenerate and stored as `kNoFace`.
struct CW2 {
  static constexpr std::uint32_t kNoFace = static_cast<std::uint32_t>(-1);

  struct Edge {
    Square square;
    Index source = kNoIndex;
    Index target = kNoIndex;
  };
  struct Cell {
    std::array<std::uint32_t, 4> grid{};  // s11, s12, s21, s22 as distinguished-square indices
    std::uint32_t d2 = kNoFace;
    std::uint32_t d0 = kNoFace;
    std::uint32_t d1 = kNoFace;
    std::array<Index, 3> vertices{};  // top-left, center, bottom-right
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<Cell> cells;
  std::size_t candidate_grids = 0;  // all grids seen, degenerate ones included
};

/// Grid is s_0 or s_1 of its outer square.
inline bool is_degenerate_grid(const SquaresCategory& sq, const Square& s11, const Square& s12,
                               const Square& s21, const Square& s22, const Square& outer) {
  const FiniteCategory& M = sq.mcat();
  if (s11 == sq.total_identity(M.src(outer.top)) && s12 == sq.horizontal_identity(outer.top) &&
      s21 == sq.vertical_identity(outer.left) && s22 == outer)
    return true;
  return s11 == outer && s12 == sq.vertical_identity(outer.right) &&
         s21 == sq.horizontal_identity(outer.bottom) && s22 == sq.total_identity(M.dst(outer.bottom));
}

/// Builds the diagonal 2-skeleton. Grids are enumerated row-first: a top row
/// (s11, s12), then s21 under s11, then s22 under s12 to the right of s21.
inline CW2 diagonal_2_skeleton(const SquaresCategory& sq, const EnumerationCaps& caps = {}) {
  CW2 cw;
  for (const auto& o : sq.objects()) cw.vertices.push_back(o);

  if (sq.square_count() >= CW2::kNoFace) throw Error("cap-exceeded", "too many distinguished squares");
  std::vector<std::uint32_t> edge_of(sq.square_count(), CW2::kNoFace);
  for (std::size_t i = 0; i < sq.square_count(); ++i) {
    const Square& s = sq.square(i);
    if (sq.is_total_identity(s)) continue;
    edge_of[i] = static_cast<std::uint32_t>(cw.edges.size());
    cw.edges.push_back({s, sq.top_left(s), sq.bottom_right(s)});
    detail::check_cap(cw.edges.size(), caps.max_edges, "edges");
  }

  for (std::size_t i11 = 0; i11 < sq.square_count(); ++i11) {
    const Square& s11 = sq.square(i11);
    for (std::size_t i12 : sq.with_left(s11.right)) {
      const Square& s12 = sq.square(i12);
      for (std::size_t i21 : sq.with_top(s11.bottom)) {
        const Square& s21 = sq.square(i21);
        for (std::size_t i22 : sq.with_top(s12.bottom)) {
          const Square& s22 = sq.square(i22);
          if (s22.left != s21.right) continue;
          detail::check_cap(++cw.candidate_grids, caps.max_grids, "grids");

          auto upper = sq.paste_horizontal(s11, s12);
          auto lower = sq.paste_horizontal(s21, s22);
          if (!upper || !lower) throw Error("invalid-category", "grid rows do not paste");
          auto outer = sq.paste_vertical(*upper, *lower);
          if (!outer) throw Error("invalid-category", "grid columns do not paste");
          if (is_degenerate_grid(sq, s11, s12, s21, s22, *outer)) continue;
          auto outer_index = sq.find(*outer);
          if (!outer_index) throw Error("invalid-category", "pasted grid is not distinguished");

          CW2::Cell cell;
          cell.grid = {static_cast<std::uint32_t>(i11), static_cast<std::uint32_t>(i12),
                       static_cast<std::uint32_t>(i21), static_cast<std::uint32_t>(i22)};
          cell.d2 = edge_of[i11];
          cell.d0 = edge_of[i22];
          cell.d1 = edge_of[*outer_index];
          cell.vertices = {sq.top_left(s11), sq.bottom_right(s11), sq.bottom_right(s22)};
          cw.cells.push_back(cell);
        }
      }
    }
  }
  return cw;
}

}  // namespace sqk
