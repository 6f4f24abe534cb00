#include "treeq/compile.hpp"

#include <algorithm>

namespace treeq {

namespace {

using ValueId = LiftedAutomaton::ValueId;

struct Compiler {
  const LabeledTree* t;
  const VarSet* z;
  const ClusterTree* ct;
  LiftedAutomaton alg;
  CircuitBuilder b;
  int32_t zs, xs;

  std::vector<std::vector<ValueId>> reach;   // per cluster node, sorted
  std::vector<std::vector<ValueId>> useful;  // subset of reach, sorted
  // per cluster node: gate per useful value, parallel to useful[v]
  std::vector<std::vector<GateId>> gates;

  std::vector<GateId> svar_gate;  // [orig * xs + i]
  std::vector<GateId> bvar_gate;  // [orig * (zs - xs) + j]
  std::vector<GateId> bvar_not;

  Compiler(const LabeledTree& tree, const TreeAutomaton& a, const VarSet& vars,
           const ClusterTree& clusters, int64_t cap)
      : t(&tree), z(&vars), ct(&clusters), alg(a, vars, cap) {
    zs = z->z_size();
    xs = z->enum_count();
    svar_gate.assign(static_cast<size_t>(t->size()) * std::max(xs, 1), kNoGate);
    bvar_gate.assign(static_cast<size_t>(t->size()) * std::max(zs - xs, 1), kNoGate);
    bvar_not = bvar_gate;
  }

  ValueId read_value(NodeId v, uint32_t mask) {
    return ct->kind[v] == ClusterKind::kReadLeaf ? alg.read_leaf(mask) : alg.letter_value(mask);
  }

  void compute_reach() {
    reach.resize(ct->size());
    std::vector<ValueId> tmp;
    for (NodeId v = ct->size() - 1; v >= 0; --v) {
      tmp.clear();
      if (ct->orig[v] != kNoNode) {
        for (uint32_t m = 0; m < (uint32_t{1} << zs); ++m) tmp.push_back(read_value(v, m));
      } else {
        NodeId c1 = ct->tree.first_child(v), c2 = ct->tree.second_child(v);
        for (ValueId s : reach[c1])
          for (ValueId u : reach[c2]) tmp.push_back(alg.merge(ct->kind[v], s, u));
      }
      std::sort(tmp.begin(), tmp.end());
      tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
      reach[v] = tmp;
    }
  }

  static bool member(const std::vector<ValueId>& xs_, ValueId v) {
    return std::binary_search(xs_.begin(), xs_.end(), v);
  }

  void compute_useful() {
    useful.resize(ct->size());
    NodeId root = ct->tree.root();
    for (ValueId s : reach[root])
      if (alg.is_accepting(s)) useful[root].push_back(s);
    for (NodeId v = 0; v < ct->size(); ++v) {
      if (ct->orig[v] != kNoNode || useful[v].empty()) continue;
      NodeId c1 = ct->tree.first_child(v), c2 = ct->tree.second_child(v);
      std::vector<ValueId>&u1 = useful[c1], &u2 = useful[c2];
      for (ValueId s : reach[c1])
        for (ValueId u : reach[c2])
          if (member(useful[v], alg.merge(ct->kind[v], s, u))) {
            u1.push_back(s);
            u2.push_back(u);
          }
      for (auto* u : {&u1, &u2}) {
        std::sort(u->begin(), u->end());
        u->erase(std::unique(u->begin(), u->end()), u->end());
      }
    }
  }

  GateId svar_of(NodeId orig, int32_t i) {
    GateId& g = svar_gate[orig * xs + i];
    if (g == kNoGate) g = b.svar(i, orig);
    return g;
  }
  GateId btest(NodeId orig, int32_t j, bool positive) {
    GateId& g = bvar_gate[orig * (zs - xs) + j];
    if (g == kNoGate) g = b.bvar(j, orig);
    if (positive) return g;
    GateId& ng = bvar_not[orig * (zs - xs) + j];
    if (ng == kNoGate) ng = b.not_gate(g);
    return ng;
  }

  bool is_nullary_times(GateId g) const {
    return g != kNoGate && b.type(g) == GateType::kTimes && b.fan_in(g) == 0;
  }
  GateId times_fold(GateId x, GateId y) {
    if (is_nullary_times(x)) return y;
    if (is_nullary_times(y)) return x;
    return b.times(x, y);
  }
  GateId union_fold(std::vector<GateId>& xs_) {
    if (xs_.size() == 1) return xs_[0];
    return b.union_gate(xs_);
  }

  // Gate capturing, for every mask in `masks` (all agreeing on bits below
  // `bit`), the enum singletons its high bits select, gated by tests on the
  // updatable high bits. Masks must be sorted.
  GateId emit_cube(NodeId orig, const std::vector<uint32_t>& masks, int32_t bit) {
    if (bit >= xs &&
        masks.size() == (size_t{1} << (zs - bit)))  // label bits integrate out
      return b.times0();
    if (bit == zs) return b.times0();
    std::vector<uint32_t> lo, hi;
    for (uint32_t m : masks) ((m >> bit) & 1 ? hi : lo).push_back(m);
    GateId g_lo = lo.empty() ? kNoGate : emit_cube(orig, lo, bit + 1);
    GateId g_hi = hi.empty() ? kNoGate : emit_cube(orig, hi, bit + 1);
    std::vector<GateId> parts;
    if (bit < xs) {  // enumerable bit: the high side picks up the singleton
      if (g_lo != kNoGate) parts.push_back(g_lo);
      if (g_hi != kNoGate) parts.push_back(times_fold(svar_of(orig, bit), g_hi));
    } else {  // updatable bit: gate both sides by the label test
      if (g_lo != kNoGate) parts.push_back(b.boxtimes(g_lo, btest(orig, bit - xs, false)));
      if (g_hi != kNoGate) parts.push_back(b.boxtimes(g_hi, btest(orig, bit - xs, true)));
    }
    return union_fold(parts);
  }

  void emit_read(NodeId v) {
    NodeId orig = ct->orig[v];
    std::vector<uint32_t> masks;
    for (size_t k = 0; k < useful[v].size(); ++k) {
      masks.clear();
      for (uint32_t m = 0; m < (uint32_t{1} << zs); ++m)
        if (read_value(v, m) == useful[v][k]) masks.push_back(m);
      gates[v][k] = emit_cube(orig, masks, 0);
    }
  }

  void emit_merge(NodeId v) {
    NodeId c1 = ct->tree.first_child(v), c2 = ct->tree.second_child(v);
    std::vector<std::vector<GateId>> parts(useful[v].size());
    for (size_t i = 0; i < useful[c1].size(); ++i)
      for (size_t j = 0; j < useful[c2].size(); ++j) {
        ValueId r = alg.merge(ct->kind[v], useful[c1][i], useful[c2][j]);
        auto it = std::lower_bound(useful[v].begin(), useful[v].end(), r);
        if (it == useful[v].end() || *it != r) continue;
        size_t k = static_cast<size_t>(it - useful[v].begin());
        parts[k].push_back(times_fold(gates[c1][i], gates[c2][j]));
      }
    for (size_t k = 0; k < useful[v].size(); ++k) gates[v][k] = union_fold(parts[k]);
  }

  HybridCircuit run(bool homogenize_out, int64_t* pre_gates) {
    compute_reach();
    compute_useful();
    gates.resize(ct->size());
    for (NodeId v = ct->size() - 1; v >= 0; --v) {
      gates[v].assign(useful[v].size(), kNoGate);
      if (useful[v].empty()) continue;
      if (ct->orig[v] != kNoNode)
        emit_read(v);
      else
        emit_merge(v);
    }
    NodeId root = ct->tree.root();
    std::vector<GateId> finals(gates[root]);
    GateId g0 = finals.empty() ? b.union_gate({}) : union_fold(finals);
    HybridCircuit c = b.freeze(g0, kNoGate, /*prune=*/true);
    if (pre_gates) *pre_gates = c.size();
    if (homogenize_out) return homogenize(c);
    return c;
  }
};

}  // namespace

CompiledProvenance compile_provenance(const LabeledTree& t, const TreeAutomaton& a,
                                      const VarSet& z, const ClusterTree& ct,
                                      const CompileOptions& opts) {
  if (z.z_size() > opts.max_z)
    throw Error("compile: too many variables for the letter loops");
  for (int32_t j = 0; j < z.upd_count(); ++j)
    if (t.label_index(z.upd_vars[j]) < 0)
      throw Error("compile: tree alphabet is missing label " + z.upd_vars[j]);

  Compiler comp(t, a, z, ct, opts.func_cap);
  CompiledProvenance out;
  out.circuit = comp.run(opts.homogenize, &out.gates_before_homogenize);
  out.num_upd = z.upd_count();
  out.bvar_gate.assign(static_cast<size_t>(t.size()) * std::max(out.num_upd, 1), kNoGate);
  for (GateId g : out.circuit.bvar_gates()) {
    auto [j, n] = out.circuit.bvar_label(g);
    out.bvar_gate[n * out.num_upd + j] = g;
  }
  return out;
}

}  // namespace treeq
