#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <deque>
#include <string>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/error.hpp"
#include "sqk/integer_matrix.hpp"
#include "sqk/nerve.hpp"

namespace sqk {

struct Letter {
  std::uint32_t generator : 31 = 0;
  std::uint32_t inverse : 1 = 0;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Finite presentation; relators are stored back to back.
class GroupPresentation {
 public:
  std::vector<std::string> generators;

  std::size_t relator_count() const { return offsets_.size() - 1; }
  std::span<const Letter> relator(std::size_t i) const {
    return {letters_.data() + offsets_[i], letters_.data() + offsets_[i + 1]};
  }
  std::vector<Word> relators() const {
    std::vector<Word> out;
    for (std::size_t i = 0; i < relator_count(); ++i) out.emplace_back(relator(i).begin(), relator(i).end());
    return out;
  }
  void add_relator(std::span<const Letter> w) {
    letters_.insert(letters_.end(), w.begin(), w.end());
    offsets_.push_back(letters_.size());
  }

  bool operator==(const GroupPresentation&) const = default;

 private:
  std::vector<Letter> letters_;
  std::vector<std::size_t> offsets_{0};
};

/// Cancels adjacent x x^-1 pairs.
inline Word free_reduce(std::span<const Letter> w) {
  Word out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().generator == l.generator && out.back().inverse != l.inverse)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

enum class TreeOrder { canonical, reversed };

/// Edge-path presentation of pi_1 at `base`: a breadth-first spanning tree is
/// collapsed, every other nondegenerate edge becomes a generator, and every
/// 2-cell contributes the word d2 . d0 . d1^-1 (freely reduced, empty words
/// dropped). `order` controls the edge scan order of the tree search.
inline GroupPresentation pi1_presentation(const CW2& cw, Index base, TreeOrder order = TreeOrder::canonical) {
  const std::size_t nv = cw.vertices.size();
  if (base >= nv) throw Error("unknown-id", "basepoint is not a vertex");

  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t e = 0; e < cw.edges.size(); ++e) {
    incident[cw.edges[e].source].push_back(e);
    if (cw.edges[e].target != cw.edges[e].source) incident[cw.edges[e].target].push_back(e);
  }
  if (order == TreeOrder::reversed)
    for (auto& list : incident) std::reverse(list.begin(), list.end());

  std::vector<bool> visited(nv, false), tree(cw.edges.size(), false);
  std::deque<Index> queue{base};
  visited[base] = true;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (std::size_t e : incident[v]) {
      const Index w = cw.edges[e].source == v ? cw.edges[e].target : cw.edges[e].source;
      if (visited[w]) continue;
      visited[w] = true;
      tree[e] = true;
      queue.push_back(w);
    }
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (!visited[v]) throw Error("disconnected", "vertex '" + cw.vertices[v] + "' is unreachable from the basepoint");

  GroupPresentation p;
  constexpr std::size_t kTrivial = static_cast<std::size_t>(-1);
  std::vector<std::size_t> letter(cw.edges.size(), kTrivial);
  for (std::size_t e = 0; e < cw.edges.size(); ++e) {
    if (tree[e]) continue;
    letter[e] = p.generators.size();
    p.generators.push_back("e" + std::to_string(e));
  }

  for (const CW2::Cell& c : cw.cells) {
    Word w;
    auto push = [&](std::uint32_t face, bool inverse) {
      if (face == CW2::kNoFace || letter[face] == kTrivial) return;
      w.push_back({static_cast<std::uint32_t>(letter[face]), inverse});
    };
    push(c.d2, false);
    push(c.d0, false);
    push(c.d1, true);
    w = free_reduce(w);
    if (!w.empty()) p.add_relator(w);
  }
  return p;
}

/// Exponent sums of one relator, sorted by generator, zeros dropped.
inline SparseVector exponent_row(std::span<const Letter> w) {
  std::vector<std::pair<std::uint32_t, long long>> sums;
  for (const Letter& l : w) sums.emplace_back(l.generator, l.inverse ? -1 : 1);
  std::sort(sums.begin(), sums.end());
  SparseVector row;
  for (std::size_t i = 0; i < sums.size();) {
    long long v = 0;
    const std::uint32_t g = sums[i].first;
    for (; i < sums.size() && sums[i].first == g; ++i) v += sums[i].second;
    if (v != 0) row.emplace_back(g, Integer(v));
  }
  return row;
}

/// Relator exponent-sum matrix: one row per relator, one column per generator.
inline IntegerMatrix exponent_matrix(const GroupPresentation& p) {
  IntegerMatrix m(p.relator_count(), p.generators.size());
  for (std::size_t r = 0; r < p.relator_count(); ++r)
    for (const auto& [g, v] : exponent_row(p.relator(r))) m(r, g) = v;
  return m;
}

/// Abelian invariants of the presented group.
inline AbelianInvariants abelianize(const GroupPresentation& p) {
  LatticeQuotient q(p.generators.size());
  for (std::size_t r = 0; r < p.relator_count(); ++r) q.add_row(exponent_row(p.relator(r)));
  return q.invariants();
}

}  // namespace sqk
