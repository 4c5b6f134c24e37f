#pragma once

#include <vector>

#include "afc/bitvec.hpp"
#include "afc/errors.hpp"
#include "afc/fpset.hpp"

namespace afc {

// G subset of A x B, stored as one bitmap over the elements of B per element
// of A (indexed by position in the sorted element lists).
class PairGraph {
 public:
  PairGraph(FpSet left, FpSet right)
      : left_(std::move(left)),
        right_(std::move(right)),
        left_elems_(left_.elements()),
        right_elems_(right_.elements()),
        adj_(left_elems_.size(), BitVec(right_elems_.size())) {}

  static PairGraph full(const FpSet& a, const FpSet& b) {
    PairGraph g(a, b);
    for (auto& row : g.adj_)
      for (u64 j = 0; j < g.right_elems_.size(); ++j) row.set(j);
    g.edge_count_ = static_cast<u128>(g.left_elems_.size()) * g.right_elems_.size();
    return g;
  }

  const FpSet& left() const { return left_; }
  const FpSet& right() const { return right_; }
  const std::vector<u64>& left_elements() const { return left_elems_; }
  const std::vector<u64>& right_elements() const { return right_elems_; }
  u128 edge_count() const { return edge_count_; }

  // Indices into the sorted element lists.
  void add_edge_by_index(size_t li, size_t rj) {
    if (!adj_[li].test(rj)) {
      adj_[li].set(rj);
      ++edge_count_;
    }
  }

  void add_edge(u64 a, u64 b) {
    auto li = index_of(left_elems_, a);
    auto rj = index_of(right_elems_, b);
    require(li >= 0, "edge_endpoint", "left endpoint not in ground set");
    require(rj >= 0, "edge_endpoint", "right endpoint not in ground set");
    add_edge_by_index(static_cast<size_t>(li), static_cast<size_t>(rj));
  }

  bool has_edge(u64 a, u64 b) const {
    auto li = index_of(left_elems_, a);
    auto rj = index_of(right_elems_, b);
    if (li < 0 || rj < 0) return false;
    return adj_[static_cast<size_t>(li)].test(static_cast<u64>(rj));
  }

  const BitVec& row(size_t li) const { return adj_[li]; }

  template <typename F>
  void for_each_edge(F f) const {
    for (size_t li = 0; li < adj_.size(); ++li)
      adj_[li].for_each_set([&](u64 rj) { f(left_elems_[li], right_elems_[rj]); });
  }

 private:
  static std::ptrdiff_t index_of(const std::vector<u64>& sorted, u64 v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return -1;
    return it - sorted.begin();
  }

  FpSet left_;
  FpSet right_;
  std::vector<u64> left_elems_;
  std::vector<u64> right_elems_;
  std::vector<BitVec> adj_;
  u128 edge_count_ = 0;
};

// {a + b : (a,b) in G}. Empty G yields the empty set (plumbing extension of
// the nonempty-sets convention).
inline FpSet partial_sumset(const PairGraph& g) {
  const u64 p = g.left().modulus();
  BitVec out(p);
  g.for_each_edge([&](u64 a, u64 b) { out.set(addmod(a, b, p)); });
  return FpSet(g.left().prime(), std::move(out));
}

}  // namespace afc
