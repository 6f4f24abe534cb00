#pragma once

#include <cstdint>
#include <vector>

#include "treeq/automaton.hpp"
#include "treeq/balance.hpp"
#include "treeq/circuit.hpp"

namespace treeq {

struct CompileOptions {
  bool homogenize = true;
  int64_t func_cap = 50000;
  int32_t max_z = 12;  // letter loops are 2^|Z| per read cluster
};

struct CompiledProvenance {
  HybridCircuit circuit;
  int32_t num_upd = 0;
  std::vector<GateId> bvar_gate;  // [node * num_upd + j], kNoGate when unread
  int64_t gates_before_homogenize = 0;

  GateId bvar_for(NodeId n, int32_t upd) const { return bvar_gate[n * num_upd + upd]; }
};

// Provenance circuit of `a` on `t` built directly over a cluster decomposition:
// per cluster and reachable-and-useful lifted value one union gate, wired
// through pair products below and letter-test chains at the read clusters.
// The result is an upwards-deterministic d-DNNF by construction.
CompiledProvenance compile_provenance(const LabeledTree& t, const TreeAutomaton& a,
                                      const VarSet& z, const ClusterTree& ct,
                                      const CompileOptions& opts = {});

}  // namespace treeq
