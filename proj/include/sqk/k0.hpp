#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/integer_matrix.hpp"
#include "sqk/squares.hpp"

namespace sqk {

/// Columns of the relation matrix: every object except the basepoint, in
/// canonical order.
inline std::vector<Index> presentation_columns(const SquaresCategory& sq) {
  std::vector<Index> cols;
  for (Index o = 0; o < sq.object_count(); ++o)
    if (o != sq.base()) cols.push_back(o);
  return cols;
}

/// One row per distinguished square: +1 at A and D, -1 at B and C, summed
/// when corners coincide. The basepoint column is dropped ([O] = 0).
inline IntegerMatrix theorem_presentation_matrix(const SquaresCategory& sq) {
  const Index base = sq.base();
  std::vector<std::size_t> column(sq.object_count(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (Index o = 0; o < sq.object_count(); ++o)
    if (o != base) column[o] = next++;

  IntegerMatrix m(sq.square_count(), next);
  for (std::size_t r = 0; r < sq.square_count(); ++r) {
    const Square& s = sq.square(r);
    auto bump = [&](Index obj, int by) {
      if (obj != base) m(r, column[obj]) += by;
    };
    bump(sq.top_left(s), +1);
    bump(sq.bottom_right(s), +1);
    bump(sq.top_right(s), -1);
    bump(sq.bottom_left(s), -1);
  }
  return m;
}

/// Z{ob C} / ([O] = 0, [A] + [D] = [B] + [C]) as abelian invariants.
inline AbelianInvariants k0_invariants(const SquaresCategory& sq) {
  return cokernel_invariants_dense(theorem_presentation_matrix(sq));
}

/// True iff `values` (one per presentation column) vanishes on every relation
/// row, i.e. the valuation factors through K_0.
inline bool is_valuation(const IntegerMatrix& relations, std::span<const Integer> values) {
  if (values.size() != relations.cols()) throw Error("dimension-mismatch", "valuation length");
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    Integer sum = 0;
    for (std::size_t c = 0; c < relations.cols(); ++c) sum += relations(r, c) * values[c];
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace sqk
