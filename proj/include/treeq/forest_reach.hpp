#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treeq/tree.hpp"

namespace treeq {

using VertexId = int32_t;
inline constexpr VertexId kNoVertex = -1;

/// Edge of a reachability forest, parent first.
using ForestEdge = std::pair<VertexId, VertexId>;

// Reachability forest with first/last/next pointers: enumerate the exits
// below any vertex with constant delay, repair pointers along the ancestry of
// changed edges only. Exits must be leaves; children keep insertion order and
// the degree bound is enforced.
class ReachForest {
 public:
  ReachForest(int32_t num_vertices, int32_t degree_bound);

  void set_exit(VertexId v);
  bool is_exit(VertexId v) const { return is_exit_[v]; }
  int32_t size() const { return static_cast<int32_t>(parent_.size()); }
  int32_t degree_bound() const { return degree_bound_; }

  VertexId parent(VertexId v) const { return parent_[v]; }
  std::vector<VertexId> children(VertexId v) const;  // in order (test helper)
  bool has_edge(VertexId parent, VertexId child) const {
    return parent_[child] == parent && parent != kNoVertex;
  }

  /// Builds first/last/next from scratch.
  void build_index();

  /// Batched edge insertion (+E') or deletion (-E'); repairs the index.
  void insert_edges(std::span<const ForestEdge> edges);
  void remove_edges(std::span<const ForestEdge> edges);

  VertexId first(VertexId v) const { return first_[v]; }
  VertexId last(VertexId v) const { return last_[v]; }
  VertexId next(VertexId v) const { return next_[v]; }

  class ReachIterator {
   public:
    bool done() const { return cur_ == kNoVertex; }
    VertexId operator*() const { return cur_; }
    ReachIterator& operator++() {
      cur_ = cur_ == stop_ ? kNoVertex : f_->next(cur_);
      return *this;
    }

   private:
    friend class ReachForest;
    const ReachForest* f_ = nullptr;
    VertexId cur_ = kNoVertex, stop_ = kNoVertex;
  };

  /// Exits reachable from v, in preorder; constant delay and memory.
  ReachIterator reach(VertexId v) const;

  // instrumentation: vertices processed by the last update (ancestry work)
  int64_t last_touched() const { return last_touched_; }
  int64_t total_touched() const { return total_touched_; }

  /// Ancestry of an edge set: all vertices with a path to an edge's parent
  /// endpoint. Exposed for the update-cost contract and its tests.
  std::vector<VertexId> ancestry(std::span<const ForestEdge> edges) const;

 private:
  void link(VertexId v, VertexId w);
  void unlink(VertexId v, VertexId w);
  void repair(std::span<const ForestEdge> edges, bool inserting);
  void process_vertex(VertexId v);

  int32_t degree_bound_ = 0;
  std::vector<VertexId> parent_;
  std::vector<VertexId> child_head_, child_tail_;  // intrusive child list
  std::vector<VertexId> sib_prev_, sib_next_;
  std::vector<int32_t> child_count_;
  std::vector<uint8_t> is_exit_;
  std::vector<VertexId> first_, last_, next_;
  bool indexed_ = false;

  mutable std::vector<uint32_t> stamp_;
  mutable uint32_t epoch_ = 0;
  std::vector<int32_t> pending_;
  int64_t last_touched_ = 0, total_touched_ = 0;
};

}  // namespace treeq
