#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "treeq/automaton.hpp"
#include "treeq/tree.hpp"

namespace treeq {

// Cluster kinds. Every cluster stands for a connected fragment of the input
// tree with at most one missing subtree (the "hole"); its value under the
// lifted automaton is a state (no hole), a letter (single unread node), or a
// state transformation (one hole).
enum class ClusterKind : uint8_t {
  kReadLeaf = 0,      // original leaf n; value = init(letter at n)
  kReadInternal = 1,  // original internal node n; value = the letter at n
  kJoinHoleSecond = 2,  // children (read-internal m, state of first child); hole at second
  kJoinHoleFirst = 3,   // children (read-internal m, state of second child); hole at first
  kApply = 4,           // children (transformation, state filling its hole)
  kCompose = 5,         // children (upper transformation, lower transformation)
};

const char* cluster_kind_name(ClusterKind k);

struct ClusterTree {
  LabeledTree tree;  // labeled with the cluster kind of each node
  std::vector<ClusterKind> kind;
  std::vector<NodeId> orig;       // read clusters: the original node; else kNoNode
  std::vector<NodeId> embedding;  // original node -> its read cluster

  int32_t size() const { return tree.size(); }
};

/// Log-height decomposition: splits along balanced separator edges so every
/// recursion at least halves the fragment.
ClusterTree balance_tree(const LabeledTree& t);
/// Degenerate decomposition following the input shape (height ~ 2 h(T)).
ClusterTree chain_tree(const LabeledTree& t);

/// Labeled view of a cluster tree: kind labels everywhere, plus the original
/// node's labels at its read cluster. Alphabet = kinds then tree labels.
LabeledTree cluster_labeling(const ClusterTree& ct, const LabeledTree& t);

// Value algebra of the lifted automaton: interned states/letters/state
// transformations with the merge operations of the cluster kinds.
class LiftedAutomaton {
 public:
  using ValueId = int32_t;
  static constexpr ValueId kNoValue = -1;

  LiftedAutomaton(const TreeAutomaton& base, const VarSet& z, int64_t func_cap = 50000);

  const TreeAutomaton& base() const { return base_; }
  const VarSet& vars() const { return z_; }

  ValueId state_value(StateId q) { return q; }
  ValueId letter_value(uint32_t mask) { return base_.num_states + static_cast<ValueId>(mask); }
  ValueId read_leaf(uint32_t mask) { return base_.init[mask]; }
  ValueId merge(ClusterKind k, ValueId a, ValueId b);

  bool is_state(ValueId v) const { return v < base_.num_states; }
  bool is_letter(ValueId v) const {
    return v >= base_.num_states && v < base_.num_states + (1 << z_.z_size());
  }
  bool is_func(ValueId v) const { return v >= func_base_; }
  StateId as_state(ValueId v) const { return v; }
  uint32_t as_letter(ValueId v) const { return static_cast<uint32_t>(v - base_.num_states); }
  std::span<const StateId> func_table(ValueId v) const;
  bool is_accepting(ValueId v) const { return is_state(v) && base_.is_final(v); }

  int32_t value_count() const { return func_base_ + static_cast<int32_t>(funcs_.size()); }
  int64_t func_count() const { return static_cast<int64_t>(funcs_.size()); }

  /// Materializes every value reachable on any cluster tree (cap-guarded).
  void close();

  /// Evaluates a cluster tree under a per-original-node letter annotation.
  ValueId eval(const ClusterTree& ct, std::span<const uint32_t> annotation);
  bool accepts(const ClusterTree& ct, std::span<const uint32_t> annotation) {
    return is_accepting(eval(ct, annotation));
  }

  // Dense automaton over the cluster-tree letter space, for small instances:
  // letters are the four merge kinds followed by (read-leaf, mask) and
  // (read-internal, mask) pairs. Requires close().
  TreeAutomaton to_tree_automaton() const;
  Letter dense_letter(const ClusterTree& ct, NodeId v, std::span<const uint32_t> annotation) const;

 private:
  ValueId intern_func(const std::vector<StateId>& table);

  TreeAutomaton base_;
  VarSet z_;
  int64_t func_cap_;
  int32_t func_base_;
  std::vector<std::vector<StateId>> funcs_;
  std::unordered_map<uint64_t, std::vector<ValueId>> func_lookup_;  // hash -> candidate ids
  std::unordered_map<uint64_t, ValueId> merge_memo_;
  bool closed_ = false;
};

/// Lifts `a` so that running on any cluster tree of T agrees with running `a`
/// on T, for every annotation. Errors when |Q|^|Q| exceeds the cap.
LiftedAutomaton lift_balanced(const TreeAutomaton& a, const VarSet& z, int64_t func_cap = 50000);

}  // namespace treeq
