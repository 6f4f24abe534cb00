#include "treeq/tree.hpp"

#include <algorithm>
#include <json.hpp>

namespace treeq {

using json = nlohmann::ordered_json;

int32_t LabeledTree::height() const {
  if (size() == 0) return -1;
  std::vector<int32_t> depth(size(), 0);
  int32_t h = 0;
  for (NodeId n = 0; n < size(); ++n) {  // preorder: parents first
    if (n != root_) depth[n] = depth[parent_[n]] + 1;
    h = std::max(h, depth[n]);
  }
  return h;
}

int64_t LabeledTree::subtree_size(NodeId n) const {
  int64_t count = 0;
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++count;
    if (!is_leaf(v)) {
      stack.push_back(first_child_[v]);
      stack.push_back(second_child_[v]);
    }
  }
  return count;
}

int32_t LabeledTree::label_index(std::string_view name) const {
  for (int32_t i = 0; i < num_labels(); ++i)
    if (alphabet_[i] == name) return i;
  return -1;
}

NodeId LabeledTree::node_by_external(int64_t ext) const {
  auto it = by_ext_.find(ext);
  return it == by_ext_.end() ? kNoNode : it->second;
}

TreeBuilder::TreeBuilder(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  if (alphabet_.size() > 64) throw Error("alphabet larger than 64 labels");
}

NodeId TreeBuilder::leaf(int64_t ext_id) {
  NodeId n = size();
  first_.push_back(kNoNode);
  second_.push_back(kNoNode);
  labels_.push_back(0);
  ext_.push_back(ext_id);
  return n;
}

NodeId TreeBuilder::internal(NodeId first, NodeId second, int64_t ext_id) {
  NodeId n = size();
  first_.push_back(first);
  second_.push_back(second);
  labels_.push_back(0);
  ext_.push_back(ext_id);
  return n;
}

int32_t TreeBuilder::label_index(std::string_view name) const {
  for (size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == name) return static_cast<int32_t>(i);
  throw Error("label not in alphabet: " + std::string(name));
}

LabeledTree TreeBuilder::freeze(NodeId root, std::vector<NodeId>* order_out) {
  LabeledTree t;
  t.alphabet_ = alphabet_;
  int32_t n = size();
  std::vector<NodeId> order(n, kNoNode);  // old id -> preorder id
  std::vector<NodeId> stack{root};
  NodeId next_id = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v < 0 || v >= n) throw Error("builder: node id out of range");
    if (order[v] != kNoNode) throw Error("builder: node reachable twice");
    order[v] = next_id++;
    if ((first_[v] == kNoNode) != (second_[v] == kNoNode))
      throw Error("builder: node with exactly one child");
    if (first_[v] != kNoNode) {
      stack.push_back(second_[v]);
      stack.push_back(first_[v]);
    }
  }
  int32_t reached = next_id;
  t.first_child_.assign(reached, kNoNode);
  t.second_child_.assign(reached, kNoNode);
  t.parent_.assign(reached, kNoNode);
  t.labels_.assign(reached, 0);
  t.ext_id_.assign(reached, -1);
  for (NodeId v = 0; v < n; ++v) {
    if (order[v] == kNoNode) continue;
    NodeId id = order[v];
    t.labels_[id] = labels_[v];
    t.ext_id_[id] = ext_[v] >= 0 ? ext_[v] : id;
    if (first_[v] != kNoNode) {
      t.first_child_[id] = order[first_[v]];
      t.second_child_[id] = order[second_[v]];
      t.parent_[order[first_[v]]] = id;
      t.parent_[order[second_[v]]] = id;
    }
  }
  t.root_ = order[root];
  for (NodeId v = 0; v < reached; ++v) {
    if (!t.by_ext_.emplace(t.ext_id_[v], v).second)
      throw Error("duplicate node id " + std::to_string(t.ext_id_[v]));
  }
  if (order_out) *order_out = std::move(order);
  return t;
}

LabeledTree apply_relabel(const LabeledTree& t, const Relabeling& r) {
  LabeledTree out = t;
  apply_relabel_in_place(out, r);
  return out;
}

void apply_relabel_in_place(LabeledTree& t, const Relabeling& r) {
  t.check_node(r.node);
  t.check_label(r.label);
  t.toggle_label(r.node, r.label);
}

LabelingAssignment labeling_to_assignment(const LabeledTree& t) {
  LabelingAssignment a;
  for (int32_t l = 0; l < t.num_labels(); ++l)
    for (NodeId n = 0; n < t.size(); ++n)
      if (t.has_label(n, l)) a.singletons.emplace_back(l, n);
  std::sort(a.singletons.begin(), a.singletons.end());
  return a;
}

LabeledTree assignment_to_labeling(const LabeledTree& shape, const LabelingAssignment& a) {
  LabeledTree out = shape;
  for (NodeId n = 0; n < out.size(); ++n) out.set_label_mask(n, 0);
  for (auto [l, n] : a.singletons) {
    out.check_node(n);
    out.check_label(l);
    if (out.has_label(n, l)) throw Error("labeling assignment has a repeated singleton");
    out.toggle_label(n, l);
  }
  return out;
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw Error(std::string("tree document: ") + msg);
}

}  // namespace

LabeledTree parse_tree(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("tree document: ") + e.what());
  }
  require(doc.is_object() && doc.contains("alphabet") && doc.contains("root"),
          "expected object with 'alphabet' and 'root'");
  require(doc["alphabet"].is_array(), "'alphabet' must be an array");
  std::vector<std::string> alphabet;
  for (const auto& l : doc["alphabet"]) {
    require(l.is_string(), "labels must be strings");
    alphabet.push_back(l.get<std::string>());
  }

  // Pass 1: flatten the document into preorder, parents before children.
  struct Flat {
    const json* node;
    int32_t parent;  // index into flat list
    int child_slot;
  };
  std::vector<Flat> flat;
  std::vector<Flat> stack{{&doc["root"], -1, 0}};
  while (!stack.empty()) {
    Flat it = stack.back();
    stack.pop_back();
    const json& jn = *it.node;
    require(jn.is_object() && jn.contains("id"), "node must be an object with 'id'");
    require(jn["id"].is_number_integer(), "'id' must be an integer");
    int32_t me = static_cast<int32_t>(flat.size());
    flat.push_back(it);
    if (jn.contains("children")) {
      require(jn["children"].is_array() && jn["children"].size() == 2,
              "'children' must hold exactly two nodes");
      stack.push_back({&jn["children"][1], me, 1});
      stack.push_back({&jn["children"][0], me, 0});
    }
  }

  // Pass 2: build bottom-up (children appear after parents in `flat`).
  TreeBuilder b(alphabet);
  std::vector<std::array<NodeId, 2>> slots(flat.size(), {kNoNode, kNoNode});
  std::vector<NodeId> built(flat.size(), kNoNode);
  for (int32_t i = static_cast<int32_t>(flat.size()) - 1; i >= 0; --i) {
    const json& jn = *flat[i].node;
    int64_t ext = jn["id"].get<int64_t>();
    NodeId n;
    if (jn.contains("children")) {
      require(slots[i][0] != kNoNode && slots[i][1] != kNoNode, "missing child");
      n = b.internal(slots[i][0], slots[i][1], ext);
    } else {
      n = b.leaf(ext);
    }
    if (jn.contains("labels")) {
      require(jn["labels"].is_array(), "'labels' must be an array");
      for (const auto& l : jn["labels"]) {
        require(l.is_string(), "labels must be strings");
        int32_t idx = -1;
        for (size_t k = 0; k < alphabet.size(); ++k)
          if (alphabet[k] == l.get<std::string>()) idx = static_cast<int32_t>(k);
        require(idx >= 0, "node label not in alphabet");
        b.add_label(n, idx);
      }
    }
    built[i] = n;
    if (flat[i].parent >= 0) slots[flat[i].parent][flat[i].child_slot] = n;
  }
  return b.freeze(built[0]);
}

std::string serialize_tree(const LabeledTree& t) {
  json doc;
  doc["alphabet"] = json::array();
  for (const auto& l : t.alphabet()) doc["alphabet"].push_back(l);
  // Build node objects bottom-up (children have larger preorder ids).
  std::vector<json> node_json(t.size());
  for (NodeId n = t.size() - 1; n >= 0; --n) {
    json jn;
    jn["id"] = t.external_id(n);
    jn["labels"] = json::array();
    for (int32_t l = 0; l < t.num_labels(); ++l)
      if (t.has_label(n, l)) jn["labels"].push_back(t.alphabet()[l]);
    if (!t.is_leaf(n)) {
      jn["children"] = json::array();
      jn["children"].push_back(std::move(node_json[t.first_child(n)]));
      jn["children"].push_back(std::move(node_json[t.second_child(n)]));
    }
    node_json[n] = std::move(jn);
  }
  doc["root"] = std::move(node_json[t.root()]);
  return doc.dump(2) + "\n";
}

LabeledTree make_single_leaf(std::vector<std::string> alphabet) {
  TreeBuilder b(std::move(alphabet));
  NodeId n = b.leaf();
  return b.freeze(n);
}

LabeledTree make_complete_tree(int32_t depth, std::vector<std::string> alphabet) {
  TreeBuilder b(std::move(alphabet));
  // build levels bottom-up
  std::vector<NodeId> level;
  for (int64_t i = 0; i < (int64_t{1} << depth); ++i) level.push_back(b.leaf());
  while (level.size() > 1) {
    std::vector<NodeId> up;
    for (size_t i = 0; i + 1 < level.size(); i += 2) up.push_back(b.internal(level[i], level[i + 1]));
    level = std::move(up);
  }
  return b.freeze(level[0]);
}

LabeledTree make_caterpillar(int64_t spine_len, std::vector<std::string> alphabet) {
  TreeBuilder b(std::move(alphabet));
  NodeId cur = b.leaf();
  for (int64_t i = 0; i < spine_len; ++i) cur = b.internal(b.leaf(), cur);
  return b.freeze(cur);
}

LabeledTree make_random_full_tree(int32_t num_nodes, std::vector<std::string> alphabet,
                                  std::mt19937& rng) {
  if (num_nodes < 1 || num_nodes % 2 == 0) throw Error("a full binary tree has odd size");
  TreeBuilder b(std::move(alphabet));
  // Grow by splitting random leaves.
  struct Slot {
    NodeId first = kNoNode, second = kNoNode;
  };
  int32_t leaves_needed = (num_nodes + 1) / 2;
  // Represent the shape as a vector of nodes with child slots, then emit.
  std::vector<Slot> shape(1);
  std::vector<int32_t> leaf_list{0};
  while (static_cast<int32_t>(leaf_list.size()) < leaves_needed) {
    std::uniform_int_distribution<size_t> pick(0, leaf_list.size() - 1);
    size_t at = pick(rng);
    int32_t v = leaf_list[at];
    int32_t a = static_cast<int32_t>(shape.size());
    shape.push_back({});
    int32_t c = static_cast<int32_t>(shape.size());
    shape.push_back({});
    shape[v].first = a;
    shape[v].second = c;
    leaf_list[at] = a;
    leaf_list.push_back(c);
  }
  std::vector<NodeId> built(shape.size(), kNoNode);
  // emit bottom-up via explicit stack
  std::vector<int32_t> stack{0};
  std::vector<int32_t> post;
  while (!stack.empty()) {
    int32_t v = stack.back();
    stack.pop_back();
    post.push_back(v);
    if (shape[v].first != kNoNode) {
      stack.push_back(shape[v].first);
      stack.push_back(shape[v].second);
    }
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    int32_t v = *it;
    if (shape[v].first == kNoNode)
      built[v] = b.leaf();
    else
      built[v] = b.internal(built[shape[v].first], built[shape[v].second]);
  }
  return b.freeze(built[0]);
}

}  // namespace treeq
