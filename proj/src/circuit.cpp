#include "treeq/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace treeq {

void HybridCircuit::validate() const {
  for (GateId g = 0; g < size(); ++g) {
    auto ins = inputs(g);
    for (GateId i : ins)
      if (i >= g) throw Error("circuit: wires must point upward");
    switch (type(g)) {
      case GateType::kSvar:
      case GateType::kBvar:
        if (!ins.empty()) throw Error("circuit: variable gates have no inputs");
        break;
      case GateType::kNot:
        if (ins.size() != 1 || is_set_valued(ins[0]))
          throw Error("circuit: negation takes one Boolean input");
        break;
      case GateType::kTimes:
        if (ins.size() != 0 && ins.size() != 2)
          throw Error("circuit: product gates have fan-in 0 or 2");
        for (GateId i : ins)
          if (!is_set_valued(i)) throw Error("circuit: product inputs must be set-valued");
        break;
      case GateType::kBoxTimes:
        if (ins.size() != 2 || !is_set_valued(ins[0]) || is_set_valued(ins[1]))
          throw Error("circuit: gated product takes one set-valued and one Boolean input");
        break;
      case GateType::kUnion:
        for (GateId i : ins)
          if (!is_set_valued(i)) throw Error("circuit: union inputs must be set-valued");
        break;
      case GateType::kAnd:
      case GateType::kOr:
        for (GateId i : ins)
          if (is_set_valued(i)) throw Error("circuit: Boolean gate with set-valued input");
        break;
    }
  }
  if (output_ != kNoGate && !is_set_valued(output_))
    throw Error("circuit: output must be set-valued");
  if (secondary_ != kNoGate && is_set_valued(secondary_))
    throw Error("circuit: secondary output must be Boolean");
}

GateId CircuitBuilder::svar(int32_t var, NodeId node) {
  GateId g = gate(GateType::kSvar, {});
  var_[g] = var;
  node_[g] = node;
  return g;
}

GateId CircuitBuilder::bvar(int32_t label, NodeId node) {
  GateId g = gate(GateType::kBvar, {});
  var_[g] = label;
  node_[g] = node;
  return g;
}

GateId CircuitBuilder::not_gate(GateId b) { return gate(GateType::kNot, {b}); }

GateId CircuitBuilder::gate(GateType t, std::span<const GateId> inputs) {
  GateId g = size();
  type_.push_back(t);
  var_.push_back(-1);
  node_.push_back(kNoNode);
  if (inputs.size() <= 2) {
    a_.push_back(inputs.size() > 0 ? inputs[0] : kNoGate);
    b_.push_back(inputs.size() > 1 ? inputs[1] : kNoGate);
  } else {
    a_.push_back(kPooled);
    b_.push_back(static_cast<GateId>(pool_.size()));
    pool_.push_back(static_cast<GateId>(inputs.size()));
    pool_.insert(pool_.end(), inputs.begin(), inputs.end());
  }
  for (GateId i : inputs)
    if (i < 0 || i >= g) throw Error("circuit builder: input id out of range");
  return g;
}

int32_t CircuitBuilder::fan_in(GateId g) const {
  if (a_[g] == kPooled) return pool_[b_[g]];
  if (a_[g] == kNoGate) return 0;
  return b_[g] == kNoGate ? 1 : 2;
}

HybridCircuit CircuitBuilder::freeze(GateId output, GateId secondary, bool prune,
                                     std::vector<GateId>* remap_out) const {
  const int32_t n = size();
  std::vector<uint8_t> keep(n, prune ? 0 : 1);
  if (prune) {
    std::vector<GateId> stack;
    auto mark = [&](GateId g) {
      if (g != kNoGate && !keep[g]) keep[g] = 1, stack.push_back(g);
    };
    mark(output);
    mark(secondary);
    while (!stack.empty()) {
      GateId g = stack.back();
      stack.pop_back();
      if (a_[g] == kPooled) {
        const GateId* base = pool_.data() + b_[g];
        for (GateId k = 0; k < base[0]; ++k) mark(base[1 + k]);
      } else {
        mark(a_[g]);
        if (a_[g] != kNoGate) mark(b_[g]);
      }
    }
  }
  std::vector<GateId> remap(n, kNoGate);
  int32_t m = 0;
  for (GateId g = 0; g < n; ++g)
    if (keep[g]) remap[g] = m++;

  HybridCircuit c;
  c.type_.resize(m);
  c.aux_.assign(m, -1);
  c.in_off_.assign(m + 1, 0);
  c.out_off_.assign(m + 1, 0);
  auto each_input = [&](GateId g, auto&& fn) {
    if (a_[g] == kPooled) {
      const GateId* base = pool_.data() + b_[g];
      for (GateId k = 0; k < base[0]; ++k) fn(base[1 + k]);
    } else if (a_[g] != kNoGate) {
      fn(a_[g]);
      if (b_[g] != kNoGate) fn(b_[g]);
    }
  };
  for (GateId g = 0; g < n; ++g) {
    if (!keep[g]) continue;
    GateId id = remap[g];
    c.type_[id] = type_[g];
    each_input(g, [&](GateId i) {
      ++c.in_off_[id + 1];
      ++c.out_off_[remap[i] + 1];
    });
    if (type_[g] == GateType::kSvar) {
      c.aux_[id] = static_cast<int32_t>(c.svar_labels_.size());
      c.svar_labels_.emplace_back(var_[g], node_[g]);
      c.svar_gates_.push_back(id);
    } else if (type_[g] == GateType::kBvar) {
      c.aux_[id] = static_cast<int32_t>(c.bvar_labels_.size());
      c.bvar_labels_.emplace_back(var_[g], node_[g]);
      c.bvar_gates_.push_back(id);
    }
  }
  for (int32_t i = 0; i < m; ++i) {
    c.in_off_[i + 1] += c.in_off_[i];
    c.out_off_[i + 1] += c.out_off_[i];
  }
  c.in_.resize(c.in_off_[m]);
  c.out_.resize(c.out_off_[m]);
  std::vector<uint32_t> ipos(c.in_off_.begin(), c.in_off_.end() - 1);
  std::vector<uint32_t> opos(c.out_off_.begin(), c.out_off_.end() - 1);
  for (GateId g = 0; g < n; ++g) {
    if (!keep[g]) continue;
    GateId id = remap[g];
    each_input(g, [&](GateId i) {
      c.in_[ipos[id]++] = remap[i];
      c.out_[opos[remap[i]]++] = id;
    });
  }
  for (int32_t i = 0; i < m; ++i)
    c.max_fan_in_ = std::max(c.max_fan_in_, static_cast<int32_t>(c.in_off_[i + 1] - c.in_off_[i]));
  c.output_ = output == kNoGate ? kNoGate : remap[output];
  c.secondary_ = secondary == kNoGate ? kNoGate : remap[secondary];
  if (remap_out) *remap_out = std::move(remap);
  return c;
}

Valuation valuation_from_labels(const HybridCircuit& c, const LabeledTree& t, const VarSet& z) {
  Valuation nu(c.size(), 0);
  std::vector<int32_t> tree_label(z.upd_count());
  for (int32_t j = 0; j < z.upd_count(); ++j) {
    tree_label[j] = t.label_index(z.upd_vars[j]);
    if (tree_label[j] < 0) throw Error("tree alphabet is missing label " + z.upd_vars[j]);
  }
  for (GateId g : c.bvar_gates()) {
    auto [label, node] = c.bvar_label(g);
    nu[g] = t.has_label(node, tree_label[label]) ? 1 : 0;
  }
  return nu;
}

bool eval_boolean(const HybridCircuit& c, const Valuation& nu, GateId g) {
  std::vector<uint8_t> val(g + 1, 0);
  for (GateId i = 0; i <= g; ++i) {
    if (c.is_set_valued(i)) continue;
    auto ins = c.inputs(i);
    switch (c.type(i)) {
      case GateType::kBvar:
        val[i] = nu[i];
        break;
      case GateType::kNot:
        val[i] = !val[ins[0]];
        break;
      case GateType::kAnd: {
        uint8_t v = 1;
        for (GateId x : ins) v &= val[x];
        val[i] = v;
        break;
      }
      case GateType::kOr: {
        uint8_t v = 0;
        for (GateId x : ins) v |= val[x];
        val[i] = v;
        break;
      }
      default:
        break;
    }
  }
  return val[g] != 0;
}

namespace {

AssignmentSet set_union_sorted(std::vector<AssignmentSet*> parts) {
  AssignmentSet out;
  for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<AssignmentSet> brute_force_semantics_all(const HybridCircuit& c, const Valuation& nu) {
  if (c.num_svars() > 20) throw Error("circuit too large for brute-force semantics");
  std::vector<AssignmentSet> sets(c.size());
  std::vector<uint8_t> bval(c.size(), 0);
  for (GateId g = 0; g < c.size(); ++g) {
    auto ins = c.inputs(g);
    switch (c.type(g)) {
      case GateType::kBvar:
        bval[g] = nu[g];
        break;
      case GateType::kNot:
        bval[g] = !bval[ins[0]];
        break;
      case GateType::kAnd: {
        uint8_t v = 1;
        for (GateId x : ins) v &= bval[x];
        bval[g] = v;
        break;
      }
      case GateType::kOr: {
        uint8_t v = 0;
        for (GateId x : ins) v |= bval[x];
        bval[g] = v;
        break;
      }
      case GateType::kSvar:
        sets[g] = {AssignmentMask{1} << c.label_ordinal(g)};
        break;
      case GateType::kUnion: {
        std::vector<AssignmentSet*> parts;
        for (GateId x : ins) parts.push_back(&sets[x]);
        sets[g] = set_union_sorted(parts);
        break;
      }
      case GateType::kTimes: {
        if (ins.empty()) {
          sets[g] = {0};
        } else {
          AssignmentSet out;
          out.reserve(sets[ins[0]].size() * sets[ins[1]].size());
          for (AssignmentMask x : sets[ins[0]])
            for (AssignmentMask y : sets[ins[1]]) out.push_back(x | y);
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          sets[g] = std::move(out);
        }
        break;
      }
      case GateType::kBoxTimes:
        sets[g] = bval[ins[1]] ? sets[ins[0]] : AssignmentSet{};
        break;
    }
  }
  // encode Boolean values as sets so callers can treat gates uniformly
  for (GateId g = 0; g < c.size(); ++g)
    if (!c.is_set_valued(g) && bval[g]) sets[g] = {0};
  return sets;
}

AssignmentSet brute_force_semantics(const HybridCircuit& c, const Valuation& nu, GateId g) {
  auto sets = brute_force_semantics_all(c, nu);
  AssignmentSet out = sets[g];
  if (g == c.output() && c.has_secondary() && !sets[c.secondary_output()].empty()) {
    out.insert(out.begin(), 0);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::sort(out.begin(), out.end());
  }
  return out;
}

Assignment mask_to_assignment(const HybridCircuit& c, AssignmentMask m) {
  Assignment a;
  for (int32_t i = 0; i < c.num_svars(); ++i)
    if ((m >> i) & 1) a.singletons.push_back(c.svar_label_at(i));
  std::sort(a.singletons.begin(), a.singletons.end());
  return a;
}

int64_t delta_of(const HybridCircuit& c, GateId g) {
  std::vector<uint8_t> seen(c.size(), 0);
  std::vector<GateId> stack{g};
  seen[g] = 1;
  int64_t count = 0;
  while (!stack.empty()) {
    GateId v = stack.back();
    stack.pop_back();
    ++count;
    for (GateId h : c.consumers(v))
      if (!seen[h]) seen[h] = 1, stack.push_back(h);
  }
  return count;
}

namespace {

void compute_delta(const HybridCircuit& c, StructReport& r, int32_t cap) {
  const int32_t n = c.size();
  if (n > cap) {
    r.dependency_size = -1;
    return;
  }
  const int32_t words = (n + 63) / 64;
  std::vector<uint64_t> bits(static_cast<size_t>(n) * words, 0);
  r.per_gate_delta.assign(n, 0);
  r.dependency_size = 0;
  for (GateId g = n - 1; g >= 0; --g) {
    uint64_t* row = bits.data() + static_cast<size_t>(g) * words;
    row[g / 64] |= uint64_t{1} << (g % 64);
    for (GateId h : c.consumers(g)) {
      const uint64_t* hr = bits.data() + static_cast<size_t>(h) * words;
      for (int32_t w = 0; w < words; ++w) row[w] |= hr[w];
    }
    int64_t pc = 0;
    for (int32_t w = 0; w < words; ++w) pc += __builtin_popcountll(row[w]);
    r.per_gate_delta[g] = pc;
    r.dependency_size = std::max(r.dependency_size, pc);
  }
}

bool check_decomposable(const HybridCircuit& c) {
  if (c.num_svars() > 64) throw Error("decomposability check limited to 64 set variables");
  std::vector<uint64_t> dom(c.size(), 0);
  bool ok = true;
  for (GateId g = 0; g < c.size(); ++g) {
    if (!c.is_set_valued(g)) continue;
    if (c.type(g) == GateType::kSvar) {
      dom[g] = uint64_t{1} << c.label_ordinal(g);
      continue;
    }
    auto ins = c.inputs(g);
    for (GateId i : ins)
      if (c.is_set_valued(i)) dom[g] |= dom[i];
    if (c.type(g) == GateType::kTimes && ins.size() == 2 && (dom[ins[0]] & dom[ins[1]]))
      ok = false;
  }
  return ok;
}

bool disjoint_sorted(const AssignmentSet& a, const AssignmentSet& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace

StructReport check_structure(const HybridCircuit& c, CheckMode mode,
                             const StructCheckOptions& opts) {
  StructReport r;
  r.max_fan_in = c.max_fan_in();
  r.homogenized = true;
  for (GateId g = 0; g < c.size(); ++g)
    if (c.type(g) == GateType::kTimes && c.fan_in(g) == 0) r.homogenized = false;
  compute_delta(c, r, opts.max_delta_gates);

  if (mode == CheckMode::kCertified) {
    r.certified = true;
    r.decomposable = r.deterministic = r.upwards_deterministic = true;
    return r;
  }
  if (c.num_bvars() > opts.max_bvars)
    throw Error("too many Boolean variables for a brute-force structure check");
  if (c.num_svars() > opts.max_svars)
    throw Error("too many set variables for a brute-force structure check");

  r.decomposable = check_decomposable(c);
  r.deterministic = true;
  r.upwards_deterministic = true;
  const auto& bvars = c.bvar_gates();
  for (uint64_t bits = 0; bits < (uint64_t{1} << bvars.size()); ++bits) {
    Valuation nu(c.size(), 0);
    for (size_t i = 0; i < bvars.size(); ++i) nu[bvars[i]] = (bits >> i) & 1;
    auto sets = brute_force_semantics_all(c, nu);
    std::vector<uint8_t> bval(c.size(), 0);
    for (GateId g = 0; g < c.size(); ++g)
      if (!c.is_set_valued(g)) bval[g] = !sets[g].empty();
    for (GateId g = 0; g < c.size() && r.deterministic; ++g) {
      if (c.type(g) != GateType::kUnion) continue;
      auto ins = c.inputs(g);
      for (size_t i = 0; i < ins.size() && r.deterministic; ++i)
        for (size_t j = i + 1; j < ins.size(); ++j)
          if (!disjoint_sorted(sets[ins[i]], sets[ins[j]])) {
            r.deterministic = false;
            break;
          }
    }
    for (GateId g = 0; g < c.size() && r.upwards_deterministic; ++g) {
      if (!c.is_set_valued(g)) continue;
      int pure = 0;
      for (GateId h : c.consumers(g)) {
        switch (c.type(h)) {
          case GateType::kUnion:
            ++pure;
            break;
          case GateType::kTimes: {
            auto hin = c.inputs(h);
            GateId other = hin[0] == g ? hin[1] : hin[0];
            if (std::binary_search(sets[other].begin(), sets[other].end(), AssignmentMask{0}))
              ++pure;
            break;
          }
          case GateType::kBoxTimes: {
            auto hin = c.inputs(h);
            if (hin[0] == g && bval[hin[1]]) ++pure;
            break;
          }
          default:
            break;
        }
      }
      if (pure > 1) r.upwards_deterministic = false;
    }
    if (!r.deterministic && !r.upwards_deterministic) break;
  }
  return r;
}

ProvenanceCircuit build_provenance(const EufAutomaton& a, const EufTree& t) {
  for (NodeId n = 0; n < t.size(); ++n)
    if (!t.tree.is_leaf(n) && t.site[n] != Site::kFix)
      throw Error("expanded tree must carry the fixed site on internal nodes");

  CircuitBuilder b;
  const int32_t nq = a.aut.num_states;
  // one union gate per automaton state per node, addressed [node * nq + q]
  std::vector<GateId> state_gate(static_cast<size_t>(t.size()) * nq, kNoGate);
  std::vector<GateId> scratch;
  for (NodeId n = t.size() - 1; n >= 0; --n) {
    if (t.tree.is_leaf(n)) {
      StateId q0 = a.aut.init[EufAutomaton::letter(t.site[n], 0)];
      StateId q1 = a.aut.init[EufAutomaton::letter(t.site[n], 1)];
      GateId g_pos, g_neg;
      switch (t.site[n]) {
        case Site::kFix:
          g_pos = b.union_gate({});
          g_neg = b.times0();
          break;
        case Site::kUpd: {
          GateId bv = b.bvar(t.var_of[n] - t.enum_count, t.orig_of[n]);
          g_pos = b.boxtimes(b.times0(), bv);
          g_neg = b.boxtimes(b.times0(), b.not_gate(bv));
          break;
        }
        case Site::kEnu:
          g_pos = b.svar(t.var_of[n], t.orig_of[n]);
          g_neg = b.times0();
          break;
      }
      for (StateId q = 0; q < nq; ++q) {
        scratch.clear();
        if (q == q1) scratch.push_back(g_pos);
        if (q == q0) scratch.push_back(g_neg);
        state_gate[static_cast<size_t>(n) * nq + q] = b.union_gate(scratch);
      }
    } else {
      NodeId c1 = t.tree.first_child(n), c2 = t.tree.second_child(n);
      Letter fix0 = EufAutomaton::letter(Site::kFix, 0);
      std::vector<std::vector<GateId>> by_state(nq);
      for (StateId q1 = 0; q1 < nq; ++q1)
        for (StateId q2 = 0; q2 < nq; ++q2) {
          GateId prod = b.times(state_gate[static_cast<size_t>(c1) * nq + q1],
                                state_gate[static_cast<size_t>(c2) * nq + q2]);
          by_state[a.aut.trans_at(q1, q2, fix0)].push_back(prod);
        }
      for (StateId q = 0; q < nq; ++q)
        state_gate[static_cast<size_t>(n) * nq + q] = b.union_gate(by_state[q]);
    }
  }
  scratch.clear();
  for (StateId q = 0; q < nq; ++q)
    if (a.aut.is_final(q))
      scratch.push_back(state_gate[static_cast<size_t>(t.tree.root()) * nq + q]);
  GateId output = b.union_gate(scratch);
  ProvenanceCircuit out;
  out.circuit = b.freeze(output, kNoGate, /*prune=*/false);
  return out;
}

HybridCircuit homogenize(const HybridCircuit& c) {
  if (c.has_secondary()) throw Error("homogenize: circuit already has a secondary output");
  const int32_t n = c.size();
  // may_empty[g]: some valuation may put {} in the set of g; may_full[g]: some
  // valuation may put a nonempty assignment there. Sound over-approximations:
  // a zero flag is definite.
  std::vector<uint8_t> may_empty(n, 0), may_full(n, 0);
  for (GateId g = 0; g < n; ++g) {
    auto ins = c.inputs(g);
    switch (c.type(g)) {
      case GateType::kSvar:
        may_full[g] = 1;
        break;
      case GateType::kTimes:
        if (ins.empty()) {
          may_empty[g] = 1;
        } else {
          may_empty[g] = may_empty[ins[0]] & may_empty[ins[1]];
          may_full[g] = (may_full[ins[0]] & (may_full[ins[1]] | may_empty[ins[1]])) |
                        (may_full[ins[1]] & may_empty[ins[0]]);
        }
        break;
      case GateType::kBoxTimes:
        may_empty[g] = may_empty[ins[0]];
        may_full[g] = may_full[ins[0]];
        break;
      case GateType::kUnion:
        for (GateId i : ins) {
          may_empty[g] |= may_empty[i];
          may_full[g] |= may_full[i];
        }
        break;
      default:
        break;
    }
  }

  CircuitBuilder b;
  GateId const0 = b.or_gate({});
  GateId const1 = b.and_gate({});
  std::vector<GateId> bmap(n, kNoGate);   // Boolean gates, copied as-is
  std::vector<GateId> pos(n, kNoGate);    // nonempty part; kNoGate = always empty
  std::vector<GateId> zero(n, kNoGate);   // Boolean "captures {}" circuit
  std::vector<GateId> tmp;

  auto fold_or = [&](std::span<const GateId> xs) {
    tmp.clear();
    for (GateId x : xs) {
      if (x == const1) return const1;
      if (x != const0) tmp.push_back(x);
    }
    if (tmp.empty()) return const0;
    if (tmp.size() == 1) return tmp[0];
    return b.or_gate(tmp);
  };
  auto fold_and2 = [&](GateId x, GateId y) {
    if (x == const0 || y == const0) return const0;
    if (x == const1) return y;
    if (y == const1) return x;
    return b.gate(GateType::kAnd, {x, y});
  };

  for (GateId g = 0; g < n; ++g) {
    auto ins = c.inputs(g);
    if (!c.is_set_valued(g)) {
      switch (c.type(g)) {
        case GateType::kBvar: {
          auto [label, node] = c.bvar_label(g);
          bmap[g] = b.bvar(label, node);
          break;
        }
        case GateType::kNot:
          bmap[g] = b.not_gate(bmap[ins[0]]);
          break;
        case GateType::kAnd:
        case GateType::kOr: {
          tmp.clear();
          for (GateId i : ins) tmp.push_back(bmap[i]);
          bmap[g] = b.gate(c.type(g), tmp);
          break;
        }
        default:
          break;
      }
      continue;
    }
    switch (c.type(g)) {
      case GateType::kSvar: {
        auto [var, node] = c.svar_label(g);
        pos[g] = b.svar(var, node);
        zero[g] = const0;
        break;
      }
      case GateType::kUnion: {
        tmp.clear();
        for (GateId i : ins)
          if (pos[i] != kNoGate) tmp.push_back(pos[i]);
        if (tmp.size() == 1)
          pos[g] = tmp[0];
        else if (!tmp.empty())
          pos[g] = b.union_gate(tmp);
        std::vector<GateId> zs;
        for (GateId i : ins) zs.push_back(zero[i]);
        zero[g] = fold_or(zs);
        break;
      }
      case GateType::kTimes: {
        if (ins.empty()) {
          zero[g] = const1;
          break;
        }
        GateId x = ins[0], y = ins[1];
        zero[g] = fold_and2(zero[x], zero[y]);
        tmp.clear();
        if (pos[x] != kNoGate && pos[y] != kNoGate) tmp.push_back(b.times(pos[x], pos[y]));
        if (pos[y] != kNoGate && zero[x] != const0)
          tmp.push_back(zero[x] == const1 ? pos[y] : b.boxtimes(pos[y], zero[x]));
        if (pos[x] != kNoGate && zero[y] != const0)
          tmp.push_back(zero[y] == const1 ? pos[x] : b.boxtimes(pos[x], zero[y]));
        if (tmp.size() == 1)
          pos[g] = tmp[0];
        else if (!tmp.empty())
          pos[g] = b.union_gate(tmp);
        break;
      }
      case GateType::kBoxTimes: {
        GateId s = ins[0], t = bmap[ins[1]];
        if (pos[s] != kNoGate) pos[g] = b.boxtimes(pos[s], t);
        zero[g] = fold_and2(zero[s], t);
        break;
      }
      default:
        break;
    }
  }
  GateId g0 = pos[c.output()] != kNoGate ? pos[c.output()] : b.union_gate({});
  GateId g1 = zero[c.output()];
  return b.freeze(g0, g1, /*prune=*/true);
}

std::string dump_circuit(const HybridCircuit& c) {
  static const char* names[] = {"svar", "bvar", "union", "times", "boxtimes", "and", "or", "not"};
  std::ostringstream os;
  for (GateId g = 0; g < c.size(); ++g) {
    os << g << ' ' << names[static_cast<int>(c.type(g))];
    for (GateId i : c.inputs(g)) os << ' ' << i;
    if (c.type(g) == GateType::kSvar) {
      auto [v, n] = c.svar_label(g);
      os << "  <" << v << ':' << n << '>';
    } else if (c.type(g) == GateType::kBvar) {
      auto [l, n] = c.bvar_label(g);
      os << "  <" << l << ':' << n << '>';
    }
    if (g == c.output()) os << "  [output]";
    if (g == c.secondary_output()) os << "  [secondary]";
    os << '\n';
  }
  return os.str();
}

}  // namespace treeq
