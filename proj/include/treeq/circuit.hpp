#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treeq/automaton.hpp"

namespace treeq {

using GateId = int32_t;
inline constexpr GateId kNoGate = -1;

enum class GateType : uint8_t {
  kSvar = 0,      // set-valued variable <X_i : n>
  kBvar = 1,      // Boolean variable <l : n>
  kUnion = 2,     // set union, any fan-in
  kTimes = 3,     // relational product, fan-in 0 or 2
  kBoxTimes = 4,  // set gated by a Boolean: inputs [set, bool]
  kAnd = 5,
  kOr = 6,
  kNot = 7,
};

inline bool is_set_type(GateType t) {
  return t == GateType::kSvar || t == GateType::kUnion || t == GateType::kTimes ||
         t == GateType::kBoxTimes;
}

// Immutable hybrid circuit. Gate ids are topologically ordered (inputs come
// before consumers); wires are stored in both directions.
class HybridCircuit {
 public:
  int32_t size() const { return static_cast<int32_t>(type_.size()); }
  GateType type(GateId g) const { return type_[g]; }
  bool is_set_valued(GateId g) const { return is_set_type(type_[g]); }

  std::span<const GateId> inputs(GateId g) const {
    return {in_.data() + in_off_[g], in_off_[g + 1] - in_off_[g]};
  }
  std::span<const GateId> consumers(GateId g) const {
    return {out_.data() + out_off_[g], out_off_[g + 1] - out_off_[g]};
  }
  int32_t fan_in(GateId g) const { return static_cast<int32_t>(in_off_[g + 1] - in_off_[g]); }
  int32_t max_fan_in() const { return max_fan_in_; }

  GateId output() const { return output_; }
  GateId secondary_output() const { return secondary_; }
  bool has_secondary() const { return secondary_ != kNoGate; }

  // svar/bvar labels
  int32_t label_ordinal(GateId g) const { return aux_[g]; }
  std::pair<int32_t, NodeId> svar_label(GateId g) const { return svar_labels_[aux_[g]]; }
  std::pair<int32_t, NodeId> bvar_label(GateId g) const { return bvar_labels_[aux_[g]]; }
  std::pair<int32_t, NodeId> svar_label_at(int32_t ordinal) const { return svar_labels_[ordinal]; }
  int32_t num_svars() const { return static_cast<int32_t>(svar_labels_.size()); }
  int32_t num_bvars() const { return static_cast<int32_t>(bvar_labels_.size()); }
  const std::vector<GateId>& svar_gates() const { return svar_gates_; }
  const std::vector<GateId>& bvar_gates() const { return bvar_gates_; }

  void validate() const;

 private:
  friend class CircuitBuilder;
  std::vector<GateType> type_;
  std::vector<uint32_t> in_off_, out_off_;
  std::vector<GateId> in_, out_;
  std::vector<int32_t> aux_;
  std::vector<std::pair<int32_t, NodeId>> svar_labels_, bvar_labels_;
  std::vector<GateId> svar_gates_, bvar_gates_;
  GateId output_ = kNoGate;
  GateId secondary_ = kNoGate;
  int32_t max_fan_in_ = 0;
};

class CircuitBuilder {
 public:
  GateId svar(int32_t var, NodeId node);
  GateId bvar(int32_t label, NodeId node);
  GateId not_gate(GateId b);
  GateId times0() { return gate(GateType::kTimes, {}); }
  GateId times(GateId a, GateId b) { return gate(GateType::kTimes, {a, b}); }
  GateId boxtimes(GateId set, GateId boolean) {
    return gate(GateType::kBoxTimes, {set, boolean});
  }
  GateId union_gate(std::span<const GateId> inputs) { return gate(GateType::kUnion, inputs); }
  GateId and_gate(std::span<const GateId> inputs) { return gate(GateType::kAnd, inputs); }
  GateId or_gate(std::span<const GateId> inputs) { return gate(GateType::kOr, inputs); }
  GateId union_gate(std::initializer_list<GateId> in) { return gate(GateType::kUnion, in); }
  GateId and_gate(std::initializer_list<GateId> in) { return gate(GateType::kAnd, in); }
  GateId or_gate(std::initializer_list<GateId> in) { return gate(GateType::kOr, in); }
  GateId gate(GateType t, std::initializer_list<GateId> inputs) {
    return gate(t, std::span<const GateId>(inputs.begin(), inputs.size()));
  }
  GateId gate(GateType t, std::span<const GateId> inputs);

  int32_t size() const { return static_cast<int32_t>(type_.size()); }
  GateType type(GateId g) const { return type_[g]; }
  int32_t fan_in(GateId g) const;
  std::pair<int32_t, NodeId> var_label(GateId g) const { return {var_[g], node_[g]}; }

  // Drops gates with no path to an output unless `prune` is off, renumbers,
  // and freezes wire arrays. `remap_out[builder id]` = frozen id or kNoGate.
  HybridCircuit freeze(GateId output, GateId secondary = kNoGate, bool prune = true,
                       std::vector<GateId>* remap_out = nullptr) const;

 private:
  std::vector<GateType> type_;
  std::vector<GateId> a_, b_;     // inline inputs; n-ary gates spill to pool_
  std::vector<int32_t> var_;      // svar/bvar: variable / label index
  std::vector<NodeId> node_;
  std::vector<GateId> pool_;
  static constexpr GateId kPooled = -2;
};

/// Total valuation of the Boolean variables, indexed by gate id.
using Valuation = std::vector<uint8_t>;

Valuation valuation_from_labels(const HybridCircuit& c, const LabeledTree& t, const VarSet& z);

/// Assignments as bitmasks over svar ordinals (guarded to few svars).
using AssignmentMask = uint32_t;
using AssignmentSet = std::vector<AssignmentMask>;  // sorted

/// Exponential reference semantics of nu(C) at gate `g`.
AssignmentSet brute_force_semantics(const HybridCircuit& c, const Valuation& nu, GateId g);
/// Same, for all gates at once (Boolean gates get {} or {{}} encodings).
std::vector<AssignmentSet> brute_force_semantics_all(const HybridCircuit& c, const Valuation& nu);
/// Boolean value of a Boolean gate under nu.
bool eval_boolean(const HybridCircuit& c, const Valuation& nu, GateId g);

Assignment mask_to_assignment(const HybridCircuit& c, AssignmentMask m);

enum class CheckMode { kCertified, kBruteForce };

struct StructCheckOptions {
  int32_t max_bvars = 8;        // brute-force valuation guard
  int32_t max_svars = 10;       // brute-force set guard
  int32_t max_delta_gates = 20000;  // per-gate reachability guard
};

struct StructReport {
  bool decomposable = false;
  bool deterministic = false;
  bool upwards_deterministic = false;
  bool certified = false;     // true when the flags come from construction
  bool homogenized = false;   // no set-valued x-gate with zero inputs
  int32_t max_fan_in = 0;
  int64_t dependency_size = -1;  // -1 when over the gate guard
  std::vector<int64_t> per_gate_delta;
};

StructReport check_structure(const HybridCircuit& c, CheckMode mode,
                             const StructCheckOptions& opts = {});

/// |Delta(g)|: gates reachable from g, g included.
int64_t delta_of(const HybridCircuit& c, GateId g);

struct ProvenanceCircuit {
  HybridCircuit circuit;
  // svar labels are <enum var : original node>, bvar labels <upd var : original node>
};

/// Provenance of a lifted automaton on an expanded tree: one union per state
/// per node wired by the transition tables, pair products at internal nodes.
ProvenanceCircuit build_provenance(const EufAutomaton& a, const EufTree& t);

/// Rewrites the circuit so no set-valued gate captures the empty assignment;
/// the empty assignment moves to a Boolean secondary output.
HybridCircuit homogenize(const HybridCircuit& c);

std::string dump_circuit(const HybridCircuit& c);

}  // namespace treeq
