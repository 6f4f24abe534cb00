#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treeq {

using NodeId = int32_t;
inline constexpr NodeId kNoNode = -1;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A single relabeling update: toggles `label` on `node`.
struct Relabeling {
  NodeId node = kNoNode;
  int32_t label = -1;  // index into the tree alphabet
};

/// A labeling written as a set of <label : node> singletons, kept sorted.
struct LabelingAssignment {
  std::vector<std::pair<int32_t, NodeId>> singletons;

  friend bool operator==(const LabelingAssignment& a, const LabelingAssignment& b) {
    return a.singletons == b.singletons;
  }
  friend auto operator<=>(const LabelingAssignment& a, const LabelingAssignment& b) {
    return a.singletons <=> b.singletons;
  }
};

// Binary full ordered rooted tree with a set of labels per node.
// Node ids are dense integers 0..n-1 in preorder. The alphabet is capped at
// 64 labels so a labeling fits in one mask per node.
class LabeledTree {
 public:
  LabeledTree() = default;

  int32_t size() const { return static_cast<int32_t>(first_child_.size()); }
  NodeId root() const { return root_; }
  bool is_leaf(NodeId n) const { return first_child_[n] == kNoNode; }
  NodeId first_child(NodeId n) const { return first_child_[n]; }
  NodeId second_child(NodeId n) const { return second_child_[n]; }
  NodeId parent(NodeId n) const { return parent_[n]; }
  int32_t height() const;
  int64_t subtree_size(NodeId n) const;

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int32_t num_labels() const { return static_cast<int32_t>(alphabet_.size()); }
  int32_t label_index(std::string_view name) const;

  uint64_t label_mask(NodeId n) const { return labels_[n]; }
  bool has_label(NodeId n, int32_t label) const { return (labels_[n] >> label) & 1; }
  void toggle_label(NodeId n, int32_t label) { labels_[n] ^= (uint64_t{1} << label); }
  void set_label_mask(NodeId n, uint64_t mask) { labels_[n] = mask; }

  int64_t external_id(NodeId n) const { return ext_id_[n]; }
  NodeId node_by_external(int64_t ext) const;

  void check_node(NodeId n) const {
    if (n < 0 || n >= size()) throw Error("unknown node id " + std::to_string(n));
  }
  void check_label(int32_t l) const {
    if (l < 0 || l >= num_labels()) throw Error("label index out of range");
  }

 private:
  friend class TreeBuilder;
  NodeId root_ = kNoNode;
  std::vector<NodeId> first_child_, second_child_, parent_;
  std::vector<uint64_t> labels_;
  std::vector<int64_t> ext_id_;
  std::vector<std::string> alphabet_;
  std::unordered_map<int64_t, NodeId> by_ext_;
};

// Assembles a tree from leaves/internal nodes, then freeze() renumbers
// everything into preorder and validates fullness.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::vector<std::string> alphabet);

  NodeId leaf(int64_t ext_id = -1);
  NodeId internal(NodeId first, NodeId second, int64_t ext_id = -1);
  void set_labels(NodeId n, uint64_t mask) { labels_[n] = mask; }
  void add_label(NodeId n, int32_t label) { labels_[n] |= uint64_t{1} << label; }
  int32_t label_index(std::string_view name) const;
  int32_t size() const { return static_cast<int32_t>(first_.size()); }

  // Renumbers into preorder; `order_out`, if given, receives the map from
  // builder id to preorder id (kNoNode for unreachable nodes).
  LabeledTree freeze(NodeId root, std::vector<NodeId>* order_out = nullptr);

 private:
  std::vector<std::string> alphabet_;
  std::vector<NodeId> first_, second_;
  std::vector<uint64_t> labels_;
  std::vector<int64_t> ext_;
};

LabeledTree apply_relabel(const LabeledTree& t, const Relabeling& r);
void apply_relabel_in_place(LabeledTree& t, const Relabeling& r);

LabelingAssignment labeling_to_assignment(const LabeledTree& t);
// Inverse direction: same tree shape, labeling replaced by the assignment.
LabeledTree assignment_to_labeling(const LabeledTree& shape, const LabelingAssignment& a);

LabeledTree parse_tree(const std::string& text);
std::string serialize_tree(const LabeledTree& t);

LabeledTree make_single_leaf(std::vector<std::string> alphabet);
LabeledTree make_complete_tree(int32_t depth, std::vector<std::string> alphabet);
// Spine of `spine_len` internal nodes, each with one leaf child; 2*spine_len+1 nodes.
LabeledTree make_caterpillar(int64_t spine_len, std::vector<std::string> alphabet);
LabeledTree make_random_full_tree(int32_t num_nodes, std::vector<std::string> alphabet,
                                  std::mt19937& rng);

}  // namespace treeq
