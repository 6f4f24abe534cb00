#pragma once

#include <cstdint>
#include <vector>

#include "treeq/circuit.hpp"
#include "treeq/enum_index.hpp"
#include "treeq/forest_reach.hpp"

namespace treeq {

class StaleEnumeration : public Error {
 public:
  StaleEnumeration() : Error("enumeration state is stale; reopen after the update") {}
};

/// Read-only view over the preprocessing structures one enumeration needs.
struct EnumIndexView {
  const HybridCircuit* circuit = nullptr;
  const ShortcutFn* delta = nullptr;
  const PartialEval* omega = nullptr;
  const Switchboard* switchboard = nullptr;
  const ReachForest* forest = nullptr;
  const uint64_t* generation = nullptr;  // bumped by every update
};

struct EnumStats {
  int64_t outputs = 0;
  int64_t max_visits_per_output = 0;  // gate visits between consecutive yields
  int64_t max_stack_depth = 0;
  int64_t total_visits = 0;
};

/// Exits of a union gate under the current valuation: product or svar gates
/// with a live union-path, enumerated through the forest index.
class ExitIterator {
 public:
  bool done() const { return it_.done(); }
  GateId operator*() const { return view_->switchboard->vertex_gate[*it_]; }
  ExitIterator& operator++() {
    ++it_;
    return *this;
  }

 private:
  friend ExitIterator exits_of(const EnumIndexView&, GateId);
  const EnumIndexView* view_ = nullptr;
  ReachForest::ReachIterator it_;
};

ExitIterator exits_of(const EnumIndexView& view, GateId union_gate);

// Resumable enumeration of the assignments captured under the current
// valuation. Yields the empty assignment first when the secondary output is
// set; any update invalidates the state.
class Enumeration {
 public:
  Enumeration() = default;
  explicit Enumeration(const EnumIndexView& view);

  /// Produces the next assignment; false when exhausted.
  bool next(Assignment& out);
  const EnumStats& stats() const { return stats_; }

 private:
  enum class Kind : uint8_t { kSvar, kTimes, kUnion };
  struct Frame {
    GateId gate;
    Kind kind;
    uint8_t phase;         // svar: emitted; times: 0=left,1=right
    int32_t parent;        // frame index, -1 for root
    int32_t child_begin;   // stack size where the active child subtree starts
    VertexId exit_cur, exit_stop;
  };

  void push_frame(GateId g, int32_t parent);
  bool step();  // runs until a yield (true) or exhaustion (false)
  void visit() { ++visits_; }

  EnumIndexView view_;
  uint64_t generation_ = 0;
  std::vector<Frame> stack_;
  std::vector<std::pair<int32_t, NodeId>> current_;  // singletons along the stack
  bool opened_ = false, empty_pending_ = false, exhausted_ = true;
  int64_t visits_ = 0;
  EnumStats stats_;
};

Enumeration open_enumeration(const EnumIndexView& view);

}  // namespace treeq
