#pragma once

#include <memory>

#include "treeq/balance.hpp"
#include "treeq/compile.hpp"
#include "treeq/enum_index.hpp"
#include "treeq/enumerate.hpp"
#include "treeq/forest_reach.hpp"

namespace treeq {

struct EngineOptions {
  bool balance = true;
  int64_t func_cap = 50000;
};

struct UpdateReport {
  int64_t touched_gates = 0;
  int64_t touched_forest = 0;
};

// End-to-end assembly: balanced cluster decomposition, homogenized provenance
// circuit, shortcut/partial-evaluation/switchboard indexes and the live-wiring
// reachability forest, maintained under relabelings.
class Engine {
 public:
  Engine(LabeledTree t, TreeAutomaton a, VarSet z, EngineOptions opts = {});
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const LabeledTree& tree() const { return tree_; }
  const VarSet& vars() const { return vars_; }
  const HybridCircuit& circuit() const { return comp_.circuit; }
  const ClusterTree& cluster_tree() const { return ct_; }
  uint64_t generation() const { return generation_; }

  /// Toggles one label; updates every index and invalidates open enumerations.
  UpdateReport relabel(const Relabeling& r);

  EnumIndexView index_view() const;
  Enumeration answers() const { return open_enumeration(index_view()); }
  /// Drains answers() into a sorted set (testing convenience).
  std::vector<Assignment> all_answers(int64_t limit = -1) const;

 private:
  LabeledTree tree_;
  TreeAutomaton aut_;
  VarSet vars_;
  EngineOptions opts_;
  ClusterTree ct_;
  CompiledProvenance comp_;
  ShortcutFn delta_;
  Valuation nu_;
  PartialEval pe_;
  Switchboard sb_;
  std::unique_ptr<ReachForest> forest_;
  std::vector<int32_t> upd_of_label_;  // tree label -> updatable var ordinal
  uint64_t generation_ = 0;
};

}  // namespace treeq
