#include "treeq/forest_reach.hpp"

#include <algorithm>
#include <queue>

namespace treeq {

ReachForest::ReachForest(int32_t num_vertices, int32_t degree_bound)
    : degree_bound_(degree_bound),
      parent_(num_vertices, kNoVertex),
      child_head_(num_vertices, kNoVertex),
      child_tail_(num_vertices, kNoVertex),
      sib_prev_(num_vertices, kNoVertex),
      sib_next_(num_vertices, kNoVertex),
      child_count_(num_vertices, 0),
      is_exit_(num_vertices, 0),
      first_(num_vertices, kNoVertex),
      last_(num_vertices, kNoVertex),
      next_(num_vertices, kNoVertex),
      stamp_(num_vertices, 0),
      pending_(num_vertices, 0) {}

void ReachForest::set_exit(VertexId v) {
  if (child_count_[v] > 0) throw Error("forest: an exit must be a leaf");
  is_exit_[v] = 1;
}

std::vector<VertexId> ReachForest::children(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId w = child_head_[v]; w != kNoVertex; w = sib_next_[w]) out.push_back(w);
  return out;
}

void ReachForest::link(VertexId v, VertexId w) {
  parent_[w] = v;
  sib_prev_[w] = child_tail_[v];
  sib_next_[w] = kNoVertex;
  if (child_tail_[v] != kNoVertex)
    sib_next_[child_tail_[v]] = w;
  else
    child_head_[v] = w;
  child_tail_[v] = w;
  ++child_count_[v];
}

void ReachForest::unlink(VertexId v, VertexId w) {
  if (sib_prev_[w] != kNoVertex)
    sib_next_[sib_prev_[w]] = sib_next_[w];
  else
    child_head_[v] = sib_next_[w];
  if (sib_next_[w] != kNoVertex)
    sib_prev_[sib_next_[w]] = sib_prev_[w];
  else
    child_tail_[v] = sib_prev_[w];
  parent_[w] = kNoVertex;
  sib_prev_[w] = sib_next_[w] = kNoVertex;
  --child_count_[v];
}

void ReachForest::process_vertex(VertexId v) {
  ++last_touched_;
  if (is_exit_[v]) {
    first_[v] = last_[v] = v;
    return;
  }
  VertexId f = kNoVertex, l = kNoVertex, open = kNoVertex;
  for (VertexId w = child_head_[v]; w != kNoVertex; w = sib_next_[w]) {
    ++last_touched_;
    if (first_[w] == kNoVertex) continue;
    if (f == kNoVertex) f = first_[w];
    if (open != kNoVertex) next_[open] = first_[w];
    open = last_[w];
    l = last_[w];
  }
  first_[v] = f;
  last_[v] = l;
}

void ReachForest::build_index() {
  last_touched_ = 0;
  std::vector<VertexId> order;
  order.reserve(size());
  std::vector<int32_t> pending(child_count_);
  for (VertexId v = 0; v < size(); ++v)
    if (pending[v] == 0) order.push_back(v);
  for (size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    process_vertex(v);
    if (parent_[v] != kNoVertex && --pending[parent_[v]] == 0) order.push_back(parent_[v]);
  }
  if (static_cast<int32_t>(order.size()) != size()) throw Error("forest: cycle detected");
  for (VertexId v = 0; v < size(); ++v)
    if (parent_[v] == kNoVertex && last_[v] != kNoVertex) next_[last_[v]] = kNoVertex;
  total_touched_ += last_touched_;
  indexed_ = true;
}

std::vector<VertexId> ReachForest::ancestry(std::span<const ForestEdge> edges) const {
  std::vector<VertexId> out;
  ++epoch_;
  for (auto [v, w] : edges) {
    (void)w;
    for (VertexId u = v; u != kNoVertex; u = parent_[u]) {
      if (stamp_[u] == epoch_) break;
      stamp_[u] = epoch_;
      out.push_back(u);
    }
  }
  return out;
}

void ReachForest::repair(std::span<const ForestEdge> edges, bool inserting) {
  last_touched_ = 0;
  std::vector<VertexId>区域;
  std::vector<VertexId> area = ancestry(edges);
  // Kahn over the marked ancestry: process a vertex once its marked children
  // are done. The marked set is ancestor-closed, so parents follow children.
  for (VertexId v : area) pending_[v] = 0;
  for (VertexId v : area)
    if (parent_[v] != kNoVertex && stamp_[parent_[v]] == epoch_) ++pending_[parent_[v]];
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> queue;
  for (VertexId v : area)
    if (pending_[v] == 0) queue.push(v);
  int64_t processed = 0;
  while (!queue.empty()) {
    VertexId v = queue.top();
    queue.pop();
    ++processed;
    process_vertex(v);
    VertexId p = parent_[v];
    if (p == kNoVertex) {
      if (last_[v] != kNoVertex) next_[last_[v]] = kNoVertex;
    } else if (stamp_[p] == epoch_ && --pending_[p] == 0) {
      queue.push(p);
    }
  }
  if (processed != static_cast<int64_t>(area.size()))
    throw Error("forest: cycle detected during repair");
  if (!inserting) {
    // Detached subtrees became their own trees; terminate their exit chains.
    for (auto [v, w] : edges) {
      (void)v;
      if (parent_[w] == kNoVertex && last_[w] != kNoVertex) next_[last_[w]] = kNoVertex;
    }
  }
  total_touched_ += last_touched_;
}

void ReachForest::insert_edges(std::span<const ForestEdge> edges) {
  for (auto [v, w] : edges) {
    if (v < 0 || v >= size() || w < 0 || w >= size() || v == w)
      throw Error("forest: bad edge endpoints");
    if (parent_[w] != kNoVertex) throw Error("forest: vertex would get a second parent");
    if (is_exit_[v]) throw Error("forest: an exit cannot gain a child");
    if (child_count_[v] >= degree_bound_) throw Error("forest: degree bound exceeded");
    int32_t steps = 0;
    for (VertexId u = v; u != kNoVertex; u = parent_[u]) {
      if (u == w) throw Error("forest: edge would close a cycle");
      if (++steps > size()) throw Error("forest: cycle detected");
    }
    link(v, w);
  }
  if (indexed_) repair(edges, /*inserting=*/true);
}

void ReachForest::remove_edges(std::span<const ForestEdge> edges) {
  for (auto [v, w] : edges) {
    if (v < 0 || v >= size() || w < 0 || w >= size() || parent_[w] != v)
      throw Error("forest: removing a missing edge");
    unlink(v, w);
  }
  if (indexed_) repair(edges, /*inserting=*/false);
}

ReachForest::ReachIterator ReachForest::reach(VertexId v) const {
  if (v < 0 || v >= size()) throw Error("forest: unknown vertex");
  ReachIterator it;
  it.f_ = this;
  it.cur_ = first_[v];
  it.stop_ = last_[v];
  return it;
}

}  // namespace treeq
