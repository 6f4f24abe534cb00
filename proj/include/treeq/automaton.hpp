#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treeq/tree.hpp"

namespace treeq {

using StateId = int32_t;
using Letter = int32_t;
inline constexpr StateId kNoState = -1;

/// Free query variables (enumerable) and one updatable variable per tree label.
/// The combined variable order is enum vars first, then upd vars; letters of
/// the derived alphabet are bitmasks in that order.
struct VarSet {
  std::vector<std::string> enum_vars;
  std::vector<std::string> upd_vars;

  int32_t enum_count() const { return static_cast<int32_t>(enum_vars.size()); }
  int32_t upd_count() const { return static_cast<int32_t>(upd_vars.size()); }
  int32_t z_size() const { return enum_count() + upd_count(); }
  int32_t num_letters() const { return 1 << z_size(); }
  bool is_enum(int32_t z) const { return z < enum_count(); }
  const std::string& var_name(int32_t z) const {
    return is_enum(z) ? enum_vars[z] : upd_vars[z - enum_count()];
  }
  int32_t z_index(std::string_view name) const;
};

// Bottom-up deterministic tree automaton with total init/transition tables.
struct TreeAutomaton {
  int32_t num_states = 0;
  int32_t num_letters = 0;
  std::vector<uint8_t> finals;   // by state
  std::vector<StateId> init;     // by letter
  std::vector<StateId> trans;    // ((q1 * nQ) + q2) * nL + letter

  StateId trans_at(StateId q1, StateId q2, Letter l) const {
    return trans[(static_cast<size_t>(q1) * num_states + q2) * num_letters + l];
  }
  bool is_final(StateId q) const { return finals[q] != 0; }
  void validate() const;
};

TreeAutomaton build_automaton(int32_t num_states, std::span<const StateId> finals,
                              int32_t num_letters,
                              const std::function<StateId(Letter)>& init,
                              const std::function<StateId(StateId, StateId, Letter)>& trans);

struct RunResult {
  std::vector<StateId> states;  // per node
  bool accept = false;
};

/// Bottom-up run; `letter_of[n]` is the single letter read at node n.
RunResult run(const TreeAutomaton& a, const LabeledTree& t, std::span<const Letter> letter_of);
/// Run over a 2^Z automaton where each node's letter is its label mask. The
/// tree alphabet must list exactly the variables of `z` (any order).
RunResult run(const TreeAutomaton& a, const LabeledTree& t, const VarSet& z);

/// An answer: set of <X_i : n> singletons, sorted by (variable, node).
struct Assignment {
  std::vector<std::pair<int32_t, NodeId>> singletons;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.singletons == b.singletons;
  }
  friend auto operator<=>(const Assignment& a, const Assignment& b) {
    return a.singletons <=> b.singletons;
  }
};

struct AnnotatedOutput {
  Assignment enum_part;
  LabelingAssignment upd_part;

  friend bool operator==(const AnnotatedOutput&, const AnnotatedOutput&) = default;
};

/// Exhaustive oracle: tries every Z-annotation of `t` and keeps the accepted
/// ones, split into enumerable and updatable parts. Guarded to small inputs.
std::vector<AnnotatedOutput> brute_force_output(const TreeAutomaton& a, const LabeledTree& t,
                                                const VarSet& z);
/// Oracle restricted to the labeling carried by `t` (upd part fixed): the set
/// of answers at the current labeling, sorted.
std::vector<Assignment> answers_for_labeling(const TreeAutomaton& a, const LabeledTree& t,
                                             const VarSet& z);

enum class Site : uint8_t { kEnu = 0, kUpd = 1, kFix = 2 };

/// Expansion of a tree so that every variable of Z is read as one Boolean bit
/// at a dedicated leaf; all internal nodes carry the fixed site.
struct EufTree {
  LabeledTree tree;  // alphabet {"enu","upd","fix"}, one site label per node
  std::vector<Site> site;
  std::vector<int32_t> var_of;    // z index read at this node, or -1
  std::vector<NodeId> orig_of;    // original node this leaf stands for, or -1
  std::vector<NodeId> var_leaf_;  // [orig * z_size + z] -> leaf
  int32_t z_size = 0;
  int32_t enum_count = 0;

  NodeId leaf_for(NodeId orig, int32_t z) const { return var_leaf_[orig * z_size + z]; }
  int32_t size() const { return tree.size(); }
};

EufTree expand_tobool(const LabeledTree& t, const VarSet& z);

// Automaton over pairs (site, bit); letters are site*2+bit. States are the
// base states, pairs of base states, bit sequences of length <= |Z|, and a
// reject sink for combinations the expansion never produces.
struct EufAutomaton {
  TreeAutomaton aut;
  int32_t base_states = 0;
  int32_t z_size = 0;

  static Letter letter(Site s, int bit) { return static_cast<int>(s) * 2 + bit; }
  StateId base_state(StateId q) const { return q; }
  StateId pair_state(StateId q1, StateId q2) const {
    return base_states + q1 * base_states + q2;
  }
  StateId seq_state(int len, uint32_t bits) const {
    return base_states + base_states * base_states + ((1 << len) - 1) + static_cast<int>(bits);
  }
  StateId sink() const { return aut.num_states - 1; }
  /// Base + pair + sequence states (the construction's three families).
  int64_t family_state_count() const {
    return base_states + int64_t{base_states} * base_states + ((int64_t{1} << (z_size + 1)) - 1);
  }
};

EufAutomaton lift_tobool(const TreeAutomaton& a, const VarSet& z);

/// Runs the lifted automaton on an expanded tree under the Z-annotation
/// `annotation[n]` (a variable mask per original node).
RunResult run_euf(const EufAutomaton& a, const EufTree& t, std::span<const uint32_t> annotation);

struct CatalogEntry {
  TreeAutomaton automaton;
  VarSet vars;
};

/// Hand-built query automata: "example1", "select-l", "exists-l", "ancestor",
/// "ancestor-param", "ancestor-proj".
CatalogEntry example_automata(std::string_view name);
std::vector<std::string> catalog_names();

TreeAutomaton parse_automaton(const std::string& text, VarSet* vars_out);
std::string serialize_automaton(const TreeAutomaton& a, const VarSet& z);

}  // namespace treeq
