#include "treeq/enum_index.hpp"

#include <algorithm>

namespace treeq {

ShortcutFn compute_shortcuts(const HybridCircuit& c) {
  ShortcutFn f;
  f.delta.resize(c.size());
  for (GateId g = 0; g < c.size(); ++g) {
    if (c.type(g) == GateType::kBoxTimes)
      f.delta[g] = f.delta[c.inputs(g)[0]];  // set input is first
    else
      f.delta[g] = g;
  }
  return f;
}

namespace {

uint8_t eval_gate(const HybridCircuit& c, const Valuation& nu, const std::vector<uint8_t>& omega,
                  GateId g) {
  auto ins = c.inputs(g);
  switch (c.type(g)) {
    case GateType::kBvar:
      return nu[g];
    case GateType::kSvar:
      return 1;
    case GateType::kNot:
      return !omega[ins[0]];
    case GateType::kAnd:
    case GateType::kTimes:
    case GateType::kBoxTimes: {
      uint8_t v = 1;
      for (GateId i : ins) v &= omega[i];
      return v;
    }
    case GateType::kOr:
    case GateType::kUnion: {
      uint8_t v = 0;
      for (GateId i : ins) v |= omega[i];
      return v;
    }
  }
  return 0;
}

}  // namespace

PartialEval build_partial_eval(const HybridCircuit& c, const Valuation& nu) {
  PartialEval pe;
  pe.omega.resize(c.size());
  for (GateId g = 0; g < c.size(); ++g) pe.omega[g] = eval_gate(c, nu, pe.omega, g);
  pe.stamp_.assign(c.size(), 0);
  return pe;
}

PartialEvalUpdate update_partial_eval(const HybridCircuit& c, Valuation& nu, PartialEval& pe,
                                      GateId bvar_gate) {
  if (bvar_gate < 0 || bvar_gate >= c.size() || c.type(bvar_gate) != GateType::kBvar)
    throw Error("update: not a Boolean variable gate");
  nu[bvar_gate] ^= 1;
  PartialEvalUpdate out;
  // Recompute omega on the whole dependent cone, in ascending gate id
  // (= topological) order; the touched count is exactly the cone size.
  ++pe.epoch_;
  auto push = [&](GateId g) {
    if (pe.stamp_[g] == pe.epoch_) return;
    pe.stamp_[g] = pe.epoch_;
    pe.heap_.push_back(g);
    std::push_heap(pe.heap_.begin(), pe.heap_.end(), std::greater<>());
  };
  push(bvar_gate);
  while (!pe.heap_.empty()) {
    std::pop_heap(pe.heap_.begin(), pe.heap_.end(), std::greater<>());
    GateId g = pe.heap_.back();
    pe.heap_.pop_back();
    ++out.touched;
    for (GateId h : c.consumers(g)) push(h);
    uint8_t v = eval_gate(c, nu, pe.omega, g);
    if (v == pe.omega[g]) continue;
    pe.omega[g] = v;
    out.changed.push_back(g);
  }
  return out;
}

Switchboard build_switchboard(const HybridCircuit& c, const ShortcutFn& delta,
                              const PartialEval& pe) {
  Switchboard sb;
  sb.panel_id.assign(c.size(), -1);
  for (GateId g = 0; g < c.size(); ++g) {
    GateType t = c.type(g);
    if (t == GateType::kUnion || t == GateType::kTimes || t == GateType::kSvar) {
      sb.panel_id[g] = static_cast<int32_t>(sb.vertex_gate.size());
      sb.vertex_gate.push_back(g);
      sb.vertex_is_exit.push_back(t != GateType::kUnion);
    }
  }
  // Group the wires into union gates by (shortcut target, head); each group
  // becomes one edge with the wire sources as witnesses.
  struct Wire {
    int32_t tail, head;
    GateId source;
  };
  std::vector<Wire> wires;
  for (GateId g = 0; g < c.size(); ++g) {
    if (c.type(g) != GateType::kUnion) continue;
    for (GateId src : c.inputs(g))
      wires.push_back({sb.panel_id[delta(src)], sb.panel_id[g], src});
  }
  std::sort(wires.begin(), wires.end(), [](const Wire& a, const Wire& b) {
    return std::tie(a.head, a.tail, a.source) < std::tie(b.head, b.tail, b.source);
  });
  sb.witness_off.push_back(0);
  for (size_t i = 0; i < wires.size();) {
    size_t j = i;
    while (j < wires.size() && wires[j].tail == wires[i].tail && wires[j].head == wires[i].head)
      ++j;
    sb.edge_tail.push_back(wires[i].tail);
    sb.edge_head.push_back(wires[i].head);
    for (size_t k = i; k < j; ++k) sb.witness.push_back(wires[k].source);
    sb.witness_off.push_back(static_cast<uint32_t>(sb.witness.size()));
    i = j;
  }
  sb.num_edges = static_cast<int32_t>(sb.edge_tail.size());

  const int32_t nv = sb.num_vertices();
  sb.head_off.assign(nv + 1, 0);
  for (int32_t e = 0; e < sb.num_edges; ++e) ++sb.head_off[sb.edge_head[e] + 1];
  for (int32_t v = 0; v < nv; ++v) sb.head_off[v + 1] += sb.head_off[v];
  sb.head_edges.resize(sb.num_edges);
  {
    std::vector<uint32_t> pos(sb.head_off.begin(), sb.head_off.end() - 1);
    for (int32_t e = 0; e < sb.num_edges; ++e) sb.head_edges[pos[sb.edge_head[e]]++] = e;
  }
  for (int32_t v = 0; v < nv; ++v)
    sb.degree_bound = std::max(sb.degree_bound,
                               static_cast<int32_t>(sb.head_off[v + 1] - sb.head_off[v]));

  sb.source_off.assign(c.size() + 1, 0);
  for (int32_t e = 0; e < sb.num_edges; ++e)
    for (uint32_t w = sb.witness_off[e]; w < sb.witness_off[e + 1]; ++w)
      ++sb.source_off[sb.witness[w] + 1];
  for (GateId g = 0; g < c.size(); ++g) sb.source_off[g + 1] += sb.source_off[g];
  sb.source_edges.resize(sb.witness.size());
  {
    std::vector<uint32_t> pos(sb.source_off.begin(), sb.source_off.end() - 1);
    for (int32_t e = 0; e < sb.num_edges; ++e)
      for (uint32_t w = sb.witness_off[e]; w < sb.witness_off[e + 1]; ++w)
        sb.source_edges[pos[sb.witness[w]]++] = e;
  }

  sb.beta.assign(sb.num_edges, 0);
  for (int32_t e = 0; e < sb.num_edges; ++e) {
    uint8_t live = 0;
    for (uint32_t w = sb.witness_off[e]; w < sb.witness_off[e + 1]; ++w)
      live |= pe.omega[sb.witness[w]];
    sb.beta[e] = live;
  }
  sb.edge_stamp_.assign(sb.num_edges, 0);
  return sb;
}

EdgeDiff update_switchboard(const HybridCircuit& c, const ShortcutFn& delta,
                            const PartialEval& pe, Switchboard& sb,
                            std::span<const GateId> changed) {
  (void)c;
  (void)delta;
  EdgeDiff diff;
  ++sb.epoch_;
  std::vector<int32_t> dirty;
  for (GateId g : changed)
    for (uint32_t k = sb.source_off[g]; k < sb.source_off[g + 1]; ++k) {
      int32_t e = sb.source_edges[k];
      if (sb.edge_stamp_[e] == sb.epoch_) continue;
      sb.edge_stamp_[e] = sb.epoch_;
      dirty.push_back(e);
    }
  for (int32_t e : dirty) {
    uint8_t live = 0;
    for (uint32_t w = sb.witness_off[e]; w < sb.witness_off[e + 1]; ++w)
      live |= pe.omega[sb.witness[w]];
    if (live == sb.beta[e]) continue;
    sb.beta[e] = live;
    auto& bucket = live ? diff.added : diff.removed;
    bucket.emplace_back(sb.edge_head[e], sb.edge_tail[e]);
  }
  std::sort(diff.added.begin(), diff.added.end());
  std::sort(diff.removed.begin(), diff.removed.end());
  return diff;
}

}  // namespace treeq
