#pragma once

#include <random>
#include <string>

#include "treeq/engine.hpp"

namespace treeq {

/// One slot per component a shipped semiring needs: counters live in `n`,
/// numeric parts in `d`.
struct AggValue {
  uint64_t n = 0;
  double d = 0.0;

  friend bool operator==(const AggValue&, const AggValue&) = default;
};

// Commutative semiring over AggValue. Shipped: "count" (N, +, *),
// "tropical" (min, +) and "pair-count-sum" for counts with sums.
class Semiring {
 public:
  static const Semiring& by_name(std::string_view name);
  static const Semiring& count();
  static const Semiring& tropical();
  static const Semiring& pair_count_sum();

  const std::string& name() const { return name_; }
  AggValue zero() const { return zero_; }
  AggValue one() const { return one_; }
  AggValue plus(AggValue a, AggValue b) const { return plus_(a, b); }
  AggValue times(AggValue a, AggValue b) const { return times_(a, b); }
  /// Weight-file entry -> K.
  AggValue from_weight(double w) const { return from_weight_(w); }
  /// Equality with 1e-9 relative tolerance on numeric components.
  bool eq(AggValue a, AggValue b) const;
  std::string to_string(AggValue v) const;
  AggValue sample(std::mt19937& rng) const { return sample_(rng); }

 private:
  using Binary = AggValue (*)(AggValue, AggValue);
  Semiring(std::string name, AggValue zero, AggValue one, Binary plus, Binary times,
           AggValue (*from_weight)(double), AggValue (*sample)(std::mt19937&), bool numeric);

  std::string name_;
  AggValue zero_, one_;
  Binary plus_, times_;
  AggValue (*from_weight_)(double);
  AggValue (*sample_)(std::mt19937&);
  bool numeric_;
};

// K-valued evaluation of the (unhomogenized) provenance circuit: maintains
// the aggregate of the query output under relabelings and weight changes.
class AggregateEngine {
 public:
  AggregateEngine(LabeledTree t, TreeAutomaton a, VarSet z, const Semiring& k,
                  std::vector<AggValue> node_weights, EngineOptions opts = {});
  AggregateEngine(const AggregateEngine&) = delete;
  AggregateEngine& operator=(const AggregateEngine&) = delete;

  const Semiring& semiring() const { return *k_; }
  const LabeledTree& tree() const { return tree_; }
  const HybridCircuit& circuit() const { return comp_.circuit; }

  AggValue value() const;
  UpdateReport relabel(const Relabeling& r);
  UpdateReport set_weight(NodeId n, AggValue w);

  /// Full bottom-up recomputation (the incremental-vs-scratch oracle).
  AggValue recompute_scratch() const;

 private:
  AggValue eval_gate(GateId g) const;
  int64_t propagate(std::vector<GateId> seeds);

  LabeledTree tree_;
  TreeAutomaton aut_;
  VarSet vars_;
  const Semiring* k_;
  std::vector<AggValue> rho_;
  ClusterTree ct_;
  CompiledProvenance comp_;
  Valuation nu_;
  std::vector<AggValue> val_;
  std::vector<std::vector<GateId>> svars_of_node_;
  std::vector<int32_t> upd_of_label_;
  std::vector<GateId> heap_;
  std::vector<uint32_t> stamp_;
  uint32_t epoch_ = 0;
};

/// Running average of a per-node quantity over the selected nodes of a unary
/// query, maintained through the pair semiring.
class AverageTracker {
 public:
  AverageTracker(LabeledTree t, TreeAutomaton a, VarSet z, std::vector<double> chi,
                 EngineOptions opts = {});

  double average() const;  // error on an empty selection
  uint64_t selected_count() const;
  UpdateReport relabel(const Relabeling& r) { return agg_.relabel(r); }
  UpdateReport set_value(NodeId n, double chi);

 private:
  AggregateEngine agg_;
};

struct GroupResult {
  std::vector<NodeId> key;
  AggValue value;
};

// Two-structure group-by evaluation: groups come from an enumeration engine
// for the projected query; each group's aggregate is read off a parameterized
// aggregate engine after relabeling the parameter labels onto the key.
class GroupByEngine {
 public:
  GroupByEngine(const LabeledTree& t, const TreeAutomaton& group_query, const VarSet& group_vars,
                const TreeAutomaton& projection, const VarSet& projection_vars,
                std::vector<std::string> param_labels, const Semiring& k,
                std::vector<AggValue> node_weights, EngineOptions opts = {});

  bool next(GroupResult& out);
  /// Index-update work spent switching to the last group.
  int64_t last_group_touched() const { return last_group_touched_; }

 private:
  std::vector<std::string> param_labels_;
  std::vector<int32_t> param_label_idx_;
  std::vector<NodeId> current_;
  Engine proj_;
  AggregateEngine agg_;
  Enumeration enum_;
  int64_t last_group_touched_ = 0;
};

// Parameterized enumeration: the query reads its parameters off dedicated
// labels; the user moves them with set_parameters and re-enumerates.
class ParamEngine {
 public:
  ParamEngine(const LabeledTree& t, const TreeAutomaton& a, const VarSet& z,
              std::vector<std::string> param_labels, EngineOptions opts = {});

  UpdateReport set_parameters(std::span<const NodeId> b);
  Enumeration answers() const { return engine_->answers(); }
  std::vector<Assignment> all_answers() const { return engine_->all_answers(); }
  const Engine& engine() const { return *engine_; }

 private:
  std::vector<std::string> param_labels_;
  std::vector<int32_t> param_label_idx_;
  std::vector<NodeId> current_;
  std::unique_ptr<Engine> engine_;
};

/// Tree with extra (initially empty) labels appended to the alphabet.
LabeledTree with_extra_labels(const LabeledTree& t, std::span<const std::string> labels);

/// One-shot aggregate of the query output under the given weights.
AggValue aggregate_value(const LabeledTree& t, const TreeAutomaton& a, const VarSet& z,
                         const Semiring& k, std::vector<AggValue> node_weights,
                         EngineOptions opts = {});

}  // namespace treeq
