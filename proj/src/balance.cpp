#include "treeq/balance.hpp"

#include <algorithm>

namespace treeq {

const char* cluster_kind_name(ClusterKind k) {
  switch (k) {
    case ClusterKind::kReadLeaf: return "read-leaf";
    case ClusterKind::kReadInternal: return "read-internal";
    case ClusterKind::kJoinHoleSecond: return "join-hole-second";
    case ClusterKind::kJoinHoleFirst: return "join-hole-first";
    case ClusterKind::kApply: return "apply";
    case ClusterKind::kCompose: return "compose";
  }
  return "?";
}

namespace {

std::vector<std::string> kind_alphabet() {
  std::vector<std::string> a;
  for (int k = 0; k < 6; ++k) a.push_back(cluster_kind_name(static_cast<ClusterKind>(k)));
  return a;
}

struct Build {
  const LabeledTree* t = nullptr;
  TreeBuilder b{kind_alphabet()};
  std::vector<ClusterKind> kind;
  std::vector<NodeId> orig;
  std::vector<NodeId> emb;
  std::vector<int64_t> sub;  // subtree sizes of the input tree

  NodeId mk_read(ClusterKind k, NodeId orig_node) {
    NodeId c = b.leaf();
    b.add_label(c, static_cast<int32_t>(k));
    kind.push_back(k);
    orig.push_back(orig_node);
    emb[orig_node] = c;
    return c;
  }
  NodeId mk(ClusterKind k, NodeId x, NodeId y) {
    NodeId c = b.internal(x, y);
    b.add_label(c, static_cast<int32_t>(k));
    kind.push_back(k);
    orig.push_back(kNoNode);
    return c;
  }

  NodeId join_ctx(NodeId p, NodeId hole_child) {
    bool hole_second = t->second_child(p) == hole_child;
    NodeId sib = hole_second ? t->first_child(p) : t->second_child(p);
    return mk(hole_second ? ClusterKind::kJoinHoleSecond : ClusterKind::kJoinHoleFirst,
              mk_read(ClusterKind::kReadInternal, p), eval(sib));
  }

  NodeId eval(NodeId v) {
    if (t->is_leaf(v)) return mk_read(ClusterKind::kReadLeaf, v);
    // walk to the separator node: both child subtrees at most half
    NodeId m = v;
    while (true) {
      NodeId c1 = t->first_child(m), c2 = t->second_child(m);
      int64_t s1 = c1 == kNoNode ? 0 : sub[c1];
      int64_t s2 = c2 == kNoNode ? 0 : sub[c2];
      if (s1 * 2 > sub[v] && s1 >= s2)
        m = c1;
      else if (s2 * 2 > sub[v])
        m = c2;
      else
        break;
    }
    NodeId core = mk(ClusterKind::kApply,
                     join_ctx(m, t->second_child(m)),
                     eval(t->second_child(m)));
    if (m == v) return core;
    return mk(ClusterKind::kApply, ctx_chain(v, m), core);
  }

  // Transformation cluster for the fragment subtree(v) minus subtree(hole).
  NodeId ctx_chain(NodeId v, NodeId hole) {
    std::vector<NodeId> path;  // hole up to v
    for (NodeId p = hole; p != v; p = t->parent(p)) path.push_back(p);
    path.push_back(v);
    std::reverse(path.begin(), path.end());
    return ctx_span(path, 0, static_cast<int32_t>(path.size()) - 1);
  }

  // path[i] is the fragment top, path[j] the hole.
  NodeId ctx_span(const std::vector<NodeId>& path, int32_t i, int32_t j) {
    if (j - i == 1) return join_ctx(path[i], path[j]);
    const int64_t hole_sz = sub[path[j]];
    const int64_t total = sub[path[i]] - hole_sz;
    auto lower = [&](int32_t idx) { return sub[path[idx]] - hole_sz; };
    // Prefer a split point on the hole path when one is balanced enough.
    int32_t best = -1;
    int64_t best_max = total;
    for (int32_t idx = i + 1; idx < j; ++idx) {
      int64_t m = std::max(total - lower(idx), lower(idx));
      if (m < best_max) best_max = m, best = idx;
    }
    if (best >= 0 && best_max * 3 <= total * 2)
      return mk(ClusterKind::kCompose, ctx_span(path, i, best), ctx_span(path, best, j));
    // Otherwise one hanging subtree dominates: peel it off at the crossing
    // point and recurse into it as a whole-subtree evaluation.
    int32_t cross = i;
    while (cross + 1 < j && lower(cross + 1) * 2 > total) ++cross;
    NodeId piece = join_ctx(path[cross], path[cross + 1]);
    if (cross + 1 < j)
      piece = mk(ClusterKind::kCompose, piece, ctx_span(path, cross + 1, j));
    if (cross > i) piece = mk(ClusterKind::kCompose, ctx_span(path, i, cross), piece);
    return piece;
  }
};

ClusterTree finish(Build& ctx, NodeId root_cluster, int32_t orig_size) {
  ClusterTree out;
  std::vector<NodeId> order;
  out.tree = ctx.b.freeze(root_cluster, &order);
  out.kind.assign(out.tree.size(), ClusterKind::kApply);
  out.orig.assign(out.tree.size(), kNoNode);
  out.embedding.assign(orig_size, kNoNode);
  for (size_t old = 0; old < order.size(); ++old) {
    NodeId v = order[old];
    if (v == kNoNode) continue;
    out.kind[v] = ctx.kind[old];
    out.orig[v] = ctx.orig[old];
  }
  for (NodeId n = 0; n < orig_size; ++n) out.embedding[n] = order[ctx.emb[n]];
  return out;
}

void init_build(Build& ctx, const LabeledTree& t) {
  ctx.t = &t;
  ctx.emb.assign(t.size(), kNoNode);
  ctx.sub.assign(t.size(), 1);
  for (NodeId n = t.size() - 1; n >= 0; --n)
    if (!t.is_leaf(n)) ctx.sub[n] = 1 + ctx.sub[t.first_child(n)] + ctx.sub[t.second_child(n)];
}

}  // namespace

ClusterTree balance_tree(const LabeledTree& t) {
  Build ctx;
  init_build(ctx, t);
  NodeId root = ctx.eval(t.root());
  return finish(ctx, root, t.size());
}

ClusterTree chain_tree(const LabeledTree& t) {
  Build ctx;
  init_build(ctx, t);
  // Same algebra, no balancing: evaluate following the input shape.
  std::vector<NodeId> cluster(t.size(), kNoNode);
  for (NodeId v = t.size() - 1; v >= 0; --v) {
    if (t.is_leaf(v)) {
      cluster[v] = ctx.mk_read(ClusterKind::kReadLeaf, v);
    } else {
      NodeId join = ctx.mk(ClusterKind::kJoinHoleSecond,
                           ctx.mk_read(ClusterKind::kReadInternal, v),
                           cluster[t.first_child(v)]);
      cluster[v] = ctx.mk(ClusterKind::kApply, join, cluster[t.second_child(v)]);
    }
  }
  return finish(ctx, cluster[t.root()], t.size());
}

LabeledTree cluster_labeling(const ClusterTree& ct, const LabeledTree& t) {
  std::vector<std::string> alphabet = kind_alphabet();
  const int32_t base = static_cast<int32_t>(alphabet.size());
  for (const auto& l : t.alphabet()) alphabet.push_back(l);
  TreeBuilder b(alphabet);
  std::vector<NodeId> built(ct.size(), kNoNode);
  for (NodeId v = ct.size() - 1; v >= 0; --v) {
    NodeId n = ct.tree.is_leaf(v)
                   ? b.leaf()
                   : b.internal(built[ct.tree.first_child(v)], built[ct.tree.second_child(v)]);
    b.add_label(n, static_cast<int32_t>(ct.kind[v]));
    if (ct.orig[v] != kNoNode)
      b.set_labels(n, (uint64_t{1} << static_cast<int32_t>(ct.kind[v])) |
                          (t.label_mask(ct.orig[v]) << base));
    built[v] = n;
  }
  return b.freeze(built[ct.tree.root()]);
}

LiftedAutomaton::LiftedAutomaton(const TreeAutomaton& base, const VarSet& z, int64_t func_cap)
    : base_(base), z_(z), func_cap_(func_cap) {
  base_.validate();
  if (base_.num_letters != z.num_letters())
    throw Error("lifted automaton: alphabet does not match the variable set");
  int64_t bound = 1;
  for (int32_t i = 0; i < base_.num_states; ++i) {
    bound *= base_.num_states;
    if (bound > func_cap_)
      throw Error("automaton too large to lift: |Q|^|Q| exceeds the cap of " +
                  std::to_string(func_cap_));
  }
  func_base_ = base_.num_states + (1 << z_.z_size());
}

std::span<const StateId> LiftedAutomaton::func_table(ValueId v) const {
  return funcs_[v - func_base_];
}

LiftedAutomaton::ValueId LiftedAutomaton::intern_func(const std::vector<StateId>& table) {
  uint64_t h = 1469598103934665603ull;
  for (StateId q : table) h = (h ^ static_cast<uint64_t>(q)) * 1099511628211ull;
  auto& bucket = func_lookup_[h];
  for (ValueId id : bucket)
    if (funcs_[id - func_base_] == table) return id;
  if (static_cast<int64_t>(funcs_.size()) >= func_cap_)
    throw Error("automaton too large to lift: transformation cap exceeded");
  funcs_.push_back(table);
  ValueId id = func_base_ + static_cast<ValueId>(funcs_.size()) - 1;
  bucket.push_back(id);
  return id;
}

LiftedAutomaton::ValueId LiftedAutomaton::merge(ClusterKind k, ValueId a, ValueId b) {
  uint64_t key = (static_cast<uint64_t>(k) << 60) | (static_cast<uint64_t>(a) << 30) |
                 static_cast<uint64_t>(b);
  auto it = merge_memo_.find(key);
  if (it != merge_memo_.end()) return it->second;
  ValueId out = kNoValue;
  const int32_t nq = base_.num_states;
  std::vector<StateId> table(nq);
  switch (k) {
    case ClusterKind::kJoinHoleSecond:
      if (is_letter(a) && is_state(b)) {
        for (StateId q = 0; q < nq; ++q) table[q] = base_.trans_at(b, q, as_letter(a));
        out = intern_func(table);
      }
      break;
    case ClusterKind::kJoinHoleFirst:
      if (is_letter(a) && is_state(b)) {
        for (StateId q = 0; q < nq; ++q) table[q] = base_.trans_at(q, b, as_letter(a));
        out = intern_func(table);
      }
      break;
    case ClusterKind::kApply:
      if (is_func(a) && is_state(b)) out = func_table(a)[b];
      break;
    case ClusterKind::kCompose:
      if (is_func(a) && is_func(b)) {
        auto fa = func_table(a), fb = func_table(b);
        for (StateId q = 0; q < nq; ++q) table[q] = fa[fb[q]];
        out = intern_func(table);
      }
      break;
    default:
      break;
  }
  if (out == kNoValue) throw Error("cluster merge on mismatched value kinds");
  merge_memo_.emplace(key, out);
  return out;
}

void LiftedAutomaton::close() {
  if (closed_) return;
  const int32_t letters = 1 << z_.z_size();
  std::vector<uint8_t> state_seen(base_.num_states, 0);
  std::vector<uint8_t> func_seen;
  std::vector<ValueId> states, funcs;
  auto add_state = [&](StateId q) {
    if (!state_seen[q]) state_seen[q] = 1, states.push_back(q);
  };
  auto add_func = [&](ValueId f) {
    size_t idx = static_cast<size_t>(f - func_base_);
    if (func_seen.size() <= idx) func_seen.resize(idx + 1, 0);
    if (!func_seen[idx]) func_seen[idx] = 1, funcs.push_back(f);
  };
  for (Letter m = 0; m < letters; ++m) add_state(base_.init[m]);
  // Incremental pairwise closure: each dequeued item is paired with everything
  // discovered before it; later items pick up the pairs with it in turn.
  size_t si = 0, fi = 0;
  while (si < states.size() || fi < funcs.size()) {
    if (si < states.size()) {
      ValueId q = states[si++];
      for (Letter m = 0; m < letters; ++m) {
        add_func(merge(ClusterKind::kJoinHoleSecond, letter_value(m), q));
        add_func(merge(ClusterKind::kJoinHoleFirst, letter_value(m), q));
      }
      for (size_t k = 0; k < fi; ++k) add_state(merge(ClusterKind::kApply, funcs[k], q));
    } else {
      ValueId f = funcs[fi++];
      for (size_t k = 0; k < si; ++k) add_state(merge(ClusterKind::kApply, f, states[k]));
      for (size_t k = 0; k < fi; ++k) {
        add_func(merge(ClusterKind::kCompose, f, funcs[k]));
        add_func(merge(ClusterKind::kCompose, funcs[k], f));
      }
    }
  }
  closed_ = true;
}

LiftedAutomaton::ValueId LiftedAutomaton::eval(const ClusterTree& ct,
                                               std::span<const uint32_t> annotation) {
  std::vector<ValueId> val(ct.size(), kNoValue);
  for (NodeId v = ct.size() - 1; v >= 0; --v) {
    switch (ct.kind[v]) {
      case ClusterKind::kReadLeaf:
        val[v] = read_leaf(annotation[ct.orig[v]]);
        break;
      case ClusterKind::kReadInternal:
        val[v] = letter_value(annotation[ct.orig[v]]);
        break;
      default:
        val[v] = merge(ct.kind[v], val[ct.tree.first_child(v)], val[ct.tree.second_child(v)]);
    }
  }
  return val[ct.tree.root()];
}

Letter LiftedAutomaton::dense_letter(const ClusterTree& ct, NodeId v,
                                     std::span<const uint32_t> annotation) const {
  const int32_t letters = 1 << z_.z_size();
  switch (ct.kind[v]) {
    case ClusterKind::kReadLeaf:
      return 4 + static_cast<Letter>(annotation[ct.orig[v]]);
    case ClusterKind::kReadInternal:
      return 4 + letters + static_cast<Letter>(annotation[ct.orig[v]]);
    default:
      return static_cast<Letter>(ct.kind[v]) - 2;
  }
}

TreeAutomaton LiftedAutomaton::to_tree_automaton() const {
  if (!closed_) throw Error("lifted automaton: dense view requires close()");
  const int32_t letters = 1 << z_.z_size();
  const int32_t dense_letters = 4 + 2 * letters;
  const int32_t total = value_count() + 1;
  const StateId sink = total - 1;
  auto* self = const_cast<LiftedAutomaton*>(this);
  std::vector<StateId> finals;
  for (ValueId v = 0; v < value_count(); ++v)
    if (is_accepting(v)) finals.push_back(v);
  auto init = [&](Letter l) -> StateId {
    if (l >= 4 && l < 4 + letters) return base_.init[l - 4];
    if (l >= 4 + letters) return base_.num_states + (l - 4 - letters);
    return sink;
  };
  auto trans = [&](StateId v1, StateId v2, Letter l) -> StateId {
    if (l >= 4 || v1 == sink || v2 == sink) return sink;
    ClusterKind k = static_cast<ClusterKind>(l + 2);
    bool ok = false;
    switch (k) {
      case ClusterKind::kJoinHoleSecond:
      case ClusterKind::kJoinHoleFirst:
        ok = is_letter(v1) && is_state(v2);
        break;
      case ClusterKind::kApply:
        ok = is_func(v1) && is_state(v2);
        break;
      default:
        ok = is_func(v1) && is_func(v2);
    }
    if (!ok) return sink;
    return self->merge(k, v1, v2);
  };
  return build_automaton(total, finals, dense_letters, init, trans);
}

LiftedAutomaton lift_balanced(const TreeAutomaton& a, const VarSet& z, int64_t func_cap) {
  LiftedAutomaton lifted(a, z, func_cap);
  lifted.close();
  return lifted;
}

}  // namespace treeq
