#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treeq/circuit.hpp"

namespace treeq {

/// Shortcut past gated-product chains: delta[g] is the unique set-valued
/// non-gated gate below g's chain; identity elsewhere. Valuation-independent.
struct ShortcutFn {
  std::vector<GateId> delta;
  GateId operator()(GateId g) const { return delta[g]; }
};

ShortcutFn compute_shortcuts(const HybridCircuit& c);

/// omega: Boolean gates carry their value, set-valued gates their emptiness
/// flag (1 = captures at least one assignment) under the current valuation.
struct PartialEval {
  std::vector<uint8_t> omega;

  // scratch for incremental updates
  std::vector<GateId> heap_;
  std::vector<uint32_t> stamp_;
  uint32_t epoch_ = 0;
};

PartialEval build_partial_eval(const HybridCircuit& c, const Valuation& nu);

struct PartialEvalUpdate {
  std::vector<GateId> changed;  // gates whose omega flipped, ascending
  int64_t touched = 0;          // gates recomputed
};

/// Toggles nu on a Boolean variable gate and repairs omega on its cone.
PartialEvalUpdate update_partial_eval(const HybridCircuit& c, Valuation& nu, PartialEval& pe,
                                      GateId bvar_gate);

// Panel + wiring. Panel vertices are the union/product/svar gates; for every
// wire (g', g) into a union gate there is a panel edge (delta(g'), g), live
// when some witnessing wire source is nonempty under nu.
struct Switchboard {
  std::vector<int32_t> panel_id;    // gate -> vertex, -1 off panel
  std::vector<GateId> vertex_gate;  // vertex -> gate
  std::vector<uint8_t> vertex_is_exit;

  int32_t num_edges = 0;
  std::vector<int32_t> edge_tail, edge_head;  // vertices
  std::vector<uint32_t> head_off;             // vertex -> edges headed here
  std::vector<int32_t> head_edges;
  std::vector<uint32_t> witness_off;  // edge -> witnessing wire sources
  std::vector<GateId> witness;
  std::vector<uint32_t> source_off;  // gate -> edges it witnesses
  std::vector<int32_t> source_edges;
  std::vector<uint8_t> beta;
  int32_t degree_bound = 0;  // max edges per head

  int32_t num_vertices() const { return static_cast<int32_t>(vertex_gate.size()); }

  // scratch for updates
  std::vector<uint32_t> edge_stamp_;
  uint32_t epoch_ = 0;
};

Switchboard build_switchboard(const HybridCircuit& c, const ShortcutFn& delta,
                              const PartialEval& pe);

struct EdgeDiff {
  // forest edges as (parent vertex, child vertex), canonically ordered
  std::vector<std::pair<int32_t, int32_t>> added, removed;
};

/// Recomputes the wiring on edges whose witnesses changed; returns the diff.
EdgeDiff update_switchboard(const HybridCircuit& c, const ShortcutFn& delta,
                            const PartialEval& pe, Switchboard& sb,
                            std::span<const GateId> changed);

}  // namespace treeq
