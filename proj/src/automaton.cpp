#include "treeq/automaton.hpp"

#include <algorithm>
#include <json.hpp>

namespace treeq {

using json = nlohmann::ordered_json;

int32_t VarSet::z_index(std::string_view name) const {
  for (int32_t i = 0; i < z_size(); ++i)
    if (var_name(i) == name) return i;
  return -1;
}

void TreeAutomaton::validate() const {
  if (num_states <= 0 || num_letters <= 0) throw Error("automaton: empty state or letter set");
  if (static_cast<int32_t>(finals.size()) != num_states) throw Error("automaton: finals size");
  if (static_cast<int32_t>(init.size()) != num_letters)
    throw Error("automaton: init table not total");
  if (init.size() + trans.size() !=
      static_cast<size_t>(num_letters) * (1 + static_cast<size_t>(num_states) * num_states))
    throw Error("automaton: transition table not total");
  for (StateId q : init)
    if (q < 0 || q >= num_states) throw Error("automaton: init state out of range");
  for (StateId q : trans)
    if (q < 0 || q >= num_states) throw Error("automaton: transition state out of range");
}

TreeAutomaton build_automaton(int32_t num_states, std::span<const StateId> finals,
                              int32_t num_letters,
                              const std::function<StateId(Letter)>& init,
                              const std::function<StateId(StateId, StateId, Letter)>& trans) {
  TreeAutomaton a;
  a.num_states = num_states;
  a.num_letters = num_letters;
  a.finals.assign(num_states, 0);
  for (StateId q : finals) a.finals[q] = 1;
  a.init.resize(num_letters);
  for (Letter l = 0; l < num_letters; ++l) a.init[l] = init(l);
  a.trans.resize(static_cast<size_t>(num_states) * num_states * num_letters);
  for (StateId q1 = 0; q1 < num_states; ++q1)
    for (StateId q2 = 0; q2 < num_states; ++q2)
      for (Letter l = 0; l < num_letters; ++l)
        a.trans[(static_cast<size_t>(q1) * num_states + q2) * num_letters + l] = trans(q1, q2, l);
  a.validate();
  return a;
}

RunResult run(const TreeAutomaton& a, const LabeledTree& t, std::span<const Letter> letter_of) {
  RunResult r;
  r.states.assign(t.size(), kNoState);
  for (NodeId n = t.size() - 1; n >= 0; --n) {  // reverse preorder = children first
    Letter l = letter_of[n];
    if (l < 0 || l >= a.num_letters) throw Error("run: label outside the automaton alphabet");
    r.states[n] = t.is_leaf(n) ? a.init[l]
                               : a.trans_at(r.states[t.first_child(n)],
                                            r.states[t.second_child(n)], l);
  }
  r.accept = a.is_final(r.states[t.root()]);
  return r;
}

RunResult run(const TreeAutomaton& a, const LabeledTree& t, const VarSet& z) {
  std::vector<int32_t> z_of(t.num_labels());
  for (int32_t l = 0; l < t.num_labels(); ++l) z_of[l] = z.z_index(t.alphabet()[l]);
  std::vector<Letter> letters(t.size());
  for (NodeId n = 0; n < t.size(); ++n) {
    uint32_t mask = 0;
    uint64_t lm = t.label_mask(n);
    for (int32_t l = 0; l < t.num_labels(); ++l) {
      if (!((lm >> l) & 1)) continue;
      if (z_of[l] < 0) throw Error("run: label outside the automaton alphabet");
      mask |= uint32_t{1} << z_of[l];
    }
    letters[n] = static_cast<Letter>(mask);
  }
  return run(a, t, letters);
}

namespace {

// Per-node base letter mask read off the tree labeling (upd bits only).
std::vector<uint32_t> labeling_masks(const LabeledTree& t, const VarSet& z) {
  std::vector<uint32_t> base(t.size(), 0);
  for (int32_t j = 0; j < z.upd_count(); ++j) {
    int32_t l = t.label_index(z.upd_vars[j]);
    if (l < 0) throw Error("tree alphabet is missing label " + z.upd_vars[j]);
    for (NodeId n = 0; n < t.size(); ++n)
      if (t.has_label(n, l)) base[n] |= uint32_t{1} << (z.enum_count() + j);
  }
  return base;
}

void check_brute_force_guard(int64_t bits) {
  if (bits > 24) throw Error("instance too large for brute force (" + std::to_string(bits) +
                             " annotation bits, limit 24)");
}

}  // namespace

std::vector<AnnotatedOutput> brute_force_output(const TreeAutomaton& a, const LabeledTree& t,
                                                const VarSet& z) {
  const int32_t n = t.size(), zs = z.z_size();
  check_brute_force_guard(static_cast<int64_t>(n) * zs);
  std::vector<AnnotatedOutput> out;
  std::vector<Letter> letters(n);
  for (uint64_t total = 0; total < (uint64_t{1} << (n * zs)); ++total) {
    for (NodeId v = 0; v < n; ++v)
      letters[v] = static_cast<Letter>((total >> (v * zs)) & ((uint32_t{1} << zs) - 1));
    if (!run(a, t, letters).accept) continue;
    AnnotatedOutput o;
    for (NodeId v = 0; v < n; ++v) {
      for (int32_t i = 0; i < zs; ++i) {
        if (!((letters[v] >> i) & 1)) continue;
        if (z.is_enum(i))
          o.enum_part.singletons.emplace_back(i, v);
        else
          o.upd_part.singletons.emplace_back(i - z.enum_count(), v);
      }
    }
    std::sort(o.enum_part.singletons.begin(), o.enum_part.singletons.end());
    std::sort(o.upd_part.singletons.begin(), o.upd_part.singletons.end());
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const AnnotatedOutput& x, const AnnotatedOutput& y) {
    return std::tie(x.upd_part.singletons, x.enum_part.singletons) <
           std::tie(y.upd_part.singletons, y.enum_part.singletons);
  });
  return out;
}

std::vector<Assignment> answers_for_labeling(const TreeAutomaton& a, const LabeledTree& t,
                                             const VarSet& z) {
  const int32_t n = t.size(), xs = z.enum_count();
  check_brute_force_guard(static_cast<int64_t>(n) * xs);
  std::vector<uint32_t> base = labeling_masks(t, z);
  std::vector<Letter> letters(n);
  std::vector<Assignment> out;
  for (uint64_t enum_bits = 0; enum_bits < (uint64_t{1} << (n * xs)); ++enum_bits) {
    for (NodeId v = 0; v < n; ++v)
      letters[v] = static_cast<Letter>(base[v] |
                                       ((enum_bits >> (v * xs)) & ((uint32_t{1} << xs) - 1)));
    if (!run(a, t, letters).accept) continue;
    Assignment asg;
    for (NodeId v = 0; v < n; ++v)
      for (int32_t i = 0; i < xs; ++i)
        if ((letters[v] >> i) & 1) asg.singletons.emplace_back(i, v);
    std::sort(asg.singletons.begin(), asg.singletons.end());
    out.push_back(std::move(asg));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct EufCtx {
  TreeBuilder b{std::vector<std::string>{"enu", "upd", "fix"}};
  std::vector<Site> site;
  std::vector<int32_t> var_of;
  std::vector<NodeId> orig_of;
  std::vector<NodeId> var_leaf;
  int32_t zs = 0;

  NodeId mk(Site s, int32_t var, NodeId orig, NodeId a = kNoNode, NodeId c = kNoNode) {
    NodeId n = (a == kNoNode) ? b.leaf() : b.internal(a, c);
    b.add_label(n, static_cast<int32_t>(s));
    site.push_back(s);
    var_of.push_back(var);
    orig_of.push_back(orig);
    return n;
  }

  // Full binary tree over the variable leaves [lo, hi) of `orig`, in order.
  NodeId var_span(NodeId orig, int32_t lo, int32_t hi) {
    if (hi - lo == 1) {
      Site s = lo < static_cast<int32_t>(enum_count) ? Site::kEnu : Site::kUpd;
      NodeId leaf = mk(s, lo, orig);
      var_leaf[orig * zs + lo] = leaf;
      return leaf;
    }
    int32_t mid = lo + (hi - lo + 1) / 2;
    NodeId a = var_span(orig, lo, mid);
    NodeId c = var_span(orig, mid, hi);
    return mk(Site::kFix, -1, kNoNode, a, c);
  }

  NodeId vars_root(NodeId orig) {
    if (zs == 0) return mk(Site::kFix, -1, kNoNode);
    return var_span(orig, 0, zs);
  }

  size_t enum_count = 0;
};

}  // namespace

EufTree expand_tobool(const LabeledTree& t, const VarSet& z) {
  EufCtx ctx;
  ctx.zs = z.z_size();
  ctx.enum_count = z.enum_count();
  ctx.var_leaf.assign(static_cast<size_t>(t.size()) * std::max(ctx.zs, 1), kNoNode);

  // children after parents in preorder, so build gadgets bottom-up
  std::vector<NodeId> gadget(t.size(), kNoNode);
  for (NodeId n = t.size() - 1; n >= 0; --n) {
    NodeId vars = ctx.vars_root(n);
    NodeId right = t.is_leaf(n)
                       ? ctx.mk(Site::kFix, -1, kNoNode)
                       : ctx.mk(Site::kFix, -1, kNoNode, gadget[t.first_child(n)],
                                gadget[t.second_child(n)]);
    gadget[n] = ctx.mk(Site::kFix, -1, n, vars, right);
  }

  EufTree out;
  out.z_size = ctx.zs;
  out.enum_count = z.enum_count();
  std::vector<NodeId> order;
  out.tree = ctx.b.freeze(gadget[t.root()], &order);
  // freeze() renumbers; rebuild per-node arrays in the new id space
  out.site.assign(out.tree.size(), Site::kFix);
  out.var_of.assign(out.tree.size(), -1);
  out.orig_of.assign(out.tree.size(), kNoNode);
  out.var_leaf_.assign(ctx.var_leaf.size(), kNoNode);
  for (size_t old = 0; old < order.size(); ++old) {
    NodeId v = order[old];
    if (v == kNoNode) continue;
    out.site[v] = ctx.site[old];
    out.var_of[v] = ctx.var_of[old];
    out.orig_of[v] = ctx.orig_of[old];
  }
  for (size_t i = 0; i < ctx.var_leaf.size(); ++i)
    if (ctx.var_leaf[i] != kNoNode) out.var_leaf_[i] = order[ctx.var_leaf[i]];
  return out;
}

EufAutomaton lift_tobool(const TreeAutomaton& a, const VarSet& z) {
  a.validate();
  EufAutomaton e;
  e.base_states = a.num_states;
  e.z_size = z.z_size();
  const int32_t nq = a.num_states, zs = e.z_size;
  const int32_t seq_count = (1 << (zs + 1)) - 1;
  const int32_t total = nq + nq * nq + seq_count + 1;
  const StateId sink = total - 1;
  const StateId seq0 = nq + nq * nq;  // empty sequence

  auto is_base = [&](StateId s) { return s < nq; };
  auto is_pair = [&](StateId s) { return s >= nq && s < nq + nq * nq; };
  auto is_seq = [&](StateId s) { return s >= seq0 && s < sink; };
  auto seq_len = [&](StateId s) {
    int32_t v = s - seq0;
    int len = 0;
    while (v >= (1 << len)) v -= (1 << len), ++len;
    return len;
  };
  auto seq_bits = [&](StateId s) {
    int32_t v = s - seq0;
    int len = 0;
    while (v >= (1 << len)) v -= (1 << len), ++len;
    return static_cast<uint32_t>(v);
  };
  auto mk_seq = [&](int len, uint32_t bits) {
    return seq0 + ((1 << len) - 1) + static_cast<StateId>(bits);
  };

  std::vector<StateId> finals;
  for (StateId q = 0; q < nq; ++q)
    if (a.is_final(q)) finals.push_back(q);

  auto init = [&](Letter l) -> StateId {
    Site s = static_cast<Site>(l / 2);
    int bit = l % 2;
    if (s == Site::kFix) return seq0;
    return zs == 0 ? sink : mk_seq(1, static_cast<uint32_t>(bit));
  };
  auto trans = [&](StateId s1, StateId s2, Letter l) -> StateId {
    if (static_cast<Site>(l / 2) != Site::kFix) return sink;
    if (s1 == sink || s2 == sink) return sink;
    if (is_base(s1) && is_base(s2)) return nq + s1 * nq + s2;
    if (is_seq(s1) && seq_len(s1) == zs && s2 == seq0)
      return a.init[static_cast<Letter>(seq_bits(s1))];
    if (is_seq(s1) && is_seq(s2)) {
      int l1 = seq_len(s1), l2 = seq_len(s2);
      if (l1 + l2 > zs || l1 == 0 || l2 == 0) return sink;
      return mk_seq(l1 + l2, seq_bits(s1) | (seq_bits(s2) << l1));
    }
    if (is_seq(s1) && seq_len(s1) == zs && is_pair(s2)) {
      StateId q1 = (s2 - nq) / nq, q2 = (s2 - nq) % nq;
      return a.trans_at(q1, q2, static_cast<Letter>(seq_bits(s1)));
    }
    return sink;
  };
  e.aut = build_automaton(total, finals, 6, init, trans);
  return e;
}

RunResult run_euf(const EufAutomaton& a, const EufTree& t, std::span<const uint32_t> annotation) {
  std::vector<Letter> letters(t.size());
  for (NodeId n = 0; n < t.size(); ++n) {
    int bit = 0;
    if (t.var_of[n] >= 0 && t.orig_of[n] != kNoNode)
      bit = (annotation[t.orig_of[n]] >> t.var_of[n]) & 1;
    letters[n] = EufAutomaton::letter(t.site[n], bit);
  }
  return run(a.aut, t.tree, letters);
}

namespace {

// Query: leaf x whose B-annotation differs from its parent's.
// States: 0 none, 1 pending (leaf bit 0), 2 pending (leaf bit 1), 3 ok, 4 dead.
CatalogEntry make_example1() {
  CatalogEntry c;
  c.vars.enum_vars = {"x"};
  c.vars.upd_vars = {"B"};
  constexpr StateId kNone = 0, kPend0 = 1, kPend1 = 2, kOk = 3, kDead = 4;
  auto init = [&](Letter m) -> StateId {
    bool x = m & 1, b = m & 2;
    if (!x) return kNone;
    return b ? kPend1 : kPend0;
  };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    bool x = m & 1, b = m & 2;
    if (q1 == kDead || q2 == kDead || x) return kDead;
    auto resolve = [&](StateId q) -> StateId {
      if (q == kPend0) return b ? kOk : kDead;
      if (q == kPend1) return b ? kDead : kOk;
      return q;
    };
    StateId r1 = resolve(q1), r2 = resolve(q2);
    if (r1 == kDead || r2 == kDead) return kDead;
    int found = (r1 == kOk) + (r2 == kOk);
    if (found > 1) return kDead;
    return found == 1 ? kOk : kNone;
  };
  c.automaton = build_automaton(5, std::array<StateId, 1>{kOk}, c.vars.num_letters(), init, trans);
  return c;
}

// Query: x carries label l (x ranges over all nodes).
CatalogEntry make_select_l() {
  CatalogEntry c;
  c.vars.enum_vars = {"x"};
  c.vars.upd_vars = {"l"};
  constexpr StateId kNone = 0, kOk = 1, kDead = 2;
  auto init = [&](Letter m) -> StateId {
    bool x = m & 1, l = m & 2;
    if (!x) return kNone;
    return l ? kOk : kDead;
  };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    bool x = m & 1, l = m & 2;
    if (q1 == kDead || q2 == kDead) return kDead;
    if (x && !l) return kDead;
    int found = (q1 == kOk) + (q2 == kOk) + (x ? 1 : 0);
    if (found > 1) return kDead;
    return found == 1 ? kOk : kNone;
  };
  c.automaton = build_automaton(3, std::array<StateId, 1>{kOk}, c.vars.num_letters(), init, trans);
  return c;
}

// Boolean query: some node carries label l.
CatalogEntry make_exists_l() {
  CatalogEntry c;
  c.vars.upd_vars = {"l"};
  constexpr StateId kNo = 0, kYes = 1;
  auto init = [&](Letter m) -> StateId { return (m & 1) ? kYes : kNo; };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    return ((m & 1) || q1 == kYes || q2 == kYes) ? kYes : kNo;
  };
  c.automaton = build_automaton(2, std::array<StateId, 1>{kYes}, c.vars.num_letters(), init, trans);
  return c;
}

// Binary query: x is a proper ancestor of y.
// States: 0 neither, 1 y only, 2 x only (y not below), 3 ok, 4 dead.
CatalogEntry make_ancestor() {
  CatalogEntry c;
  c.vars.enum_vars = {"x", "y"};
  constexpr StateId kE = 0, kY = 1, kX = 2, kB = 3, kDead = 4;
  auto combine = [&](StateId q1, StateId q2) -> StateId {
    if (q1 == kDead || q2 == kDead) return kDead;
    if (q1 == kE) return q2;
    if (q2 == kE) return q1;
    return kDead;  // two marked substatuses can never recover
  };
  auto mark = [&](StateId q, bool x, bool y) -> StateId {
    if (q == kDead) return kDead;
    if (x && y) return kDead;
    if (y) {
      if (q == kE) return kY;
      return kDead;
    }
    if (x) {
      if (q == kE) return kX;
      if (q == kY) return kB;
      return kDead;
    }
    return q;
  };
  auto init = [&](Letter m) -> StateId { return mark(kE, m & 1, m & 2); };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    return mark(combine(q1, q2), m & 1, m & 2);
  };
  c.automaton = build_automaton(5, std::array<StateId, 1>{kB}, c.vars.num_letters(), init, trans);
  return c;
}

// Ancestor query with x read from the parameter label "px":
// answers y strictly below the unique px-labeled node.
CatalogEntry make_ancestor_param() {
  CatalogEntry c;
  c.vars.enum_vars = {"y"};
  c.vars.upd_vars = {"px"};
  constexpr StateId kE = 0, kY = 1, kX = 2, kB = 3, kDead = 4;
  auto combine = [&](StateId q1, StateId q2) -> StateId {
    if (q1 == kDead || q2 == kDead) return kDead;
    if (q1 == kE) return q2;
    if (q2 == kE) return q1;
    return kDead;
  };
  auto mark = [&](StateId q, bool x, bool y) -> StateId {
    if (q == kDead) return kDead;
    if (x && y) return kDead;
    if (y) return q == kE ? kY : kDead;
    if (x) {
      if (q == kE) return kX;
      if (q == kY) return kB;
      return kDead;
    }
    return q;
  };
  auto init = [&](Letter m) -> StateId { return mark(kE, m & 2, m & 1); };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    return mark(combine(q1, q2), m & 2, m & 1);
  };
  c.automaton = build_automaton(5, std::array<StateId, 1>{kB}, c.vars.num_letters(), init, trans);
  return c;
}

// Projection of the ancestor query: x has some proper descendant,
// i.e. x marks an internal node.
CatalogEntry make_ancestor_proj() {
  CatalogEntry c;
  c.vars.enum_vars = {"x"};
  constexpr StateId kE = 0, kOk = 1, kDead = 2;
  auto init = [&](Letter m) -> StateId { return (m & 1) ? kDead : kE; };
  auto trans = [&](StateId q1, StateId q2, Letter m) -> StateId {
    if (q1 == kDead || q2 == kDead) return kDead;
    int found = (q1 == kOk) + (q2 == kOk) + ((m & 1) ? 1 : 0);
    if (found > 1) return kDead;
    return found == 1 ? kOk : kE;
  };
  c.automaton = build_automaton(3, std::array<StateId, 1>{kOk}, c.vars.num_letters(), init, trans);
  return c;
}

}  // namespace

CatalogEntry example_automata(std::string_view name) {
  if (name == "example1") return make_example1();
  if (name == "select-l") return make_select_l();
  if (name == "exists-l") return make_exists_l();
  if (name == "ancestor") return make_ancestor();
  if (name == "ancestor-param") return make_ancestor_param();
  if (name == "ancestor-proj") return make_ancestor_proj();
  throw Error("unknown catalog automaton: " + std::string(name));
}

std::vector<std::string> catalog_names() {
  return {"example1", "select-l", "exists-l", "ancestor", "ancestor-param", "ancestor-proj"};
}

TreeAutomaton parse_automaton(const std::string& text, VarSet* vars_out) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("automaton document: ") + e.what());
  }
  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw Error(std::string("automaton document: missing '") + key + "'");
    return doc[key];
  };
  VarSet z;
  const json& vars = need("vars");
  for (const auto& v : vars["enum"]) z.enum_vars.push_back(v.get<std::string>());
  for (const auto& v : vars["upd"]) z.upd_vars.push_back(v.get<std::string>());
  for (int32_t i = 0; i < z.z_size(); ++i)
    for (int32_t j = i + 1; j < z.z_size(); ++j)
      if (z.var_name(i) == z.var_name(j))
        throw Error("automaton document: duplicate variable " + z.var_name(i));

  TreeAutomaton a;
  a.num_states = need("states").get<int32_t>();
  a.num_letters = z.num_letters();
  a.finals.assign(a.num_states, 0);
  for (const auto& f : need("finals")) {
    int32_t q = f.get<int32_t>();
    if (q < 0 || q >= a.num_states) throw Error("automaton document: final state out of range");
    a.finals[q] = 1;
  }
  // "alphabet" lists each letter as the set of variable names; order fixes the
  // letter index and must match the mask encoding.
  const json& alpha = need("alphabet");
  if (static_cast<int32_t>(alpha.size()) != a.num_letters)
    throw Error("automaton document: alphabet must list all variable subsets");
  for (int32_t i = 0; i < a.num_letters; ++i) {
    uint32_t mask = 0;
    for (const auto& v : alpha[i]) {
      int32_t zi = z.z_index(v.get<std::string>());
      if (zi < 0) throw Error("automaton document: unknown variable in alphabet");
      mask |= uint32_t{1} << zi;
    }
    if (mask != static_cast<uint32_t>(i))
      throw Error("automaton document: alphabet out of mask order");
  }
  a.init.assign(a.num_letters, kNoState);
  const json& init = need("init");
  if (static_cast<int32_t>(init.size()) != a.num_letters)
    throw Error("automaton document: init table not total");
  for (int32_t i = 0; i < a.num_letters; ++i) a.init[i] = init[i].get<StateId>();
  a.trans.assign(static_cast<size_t>(a.num_states) * a.num_states * a.num_letters, kNoState);
  for (const auto& row : need("trans")) {
    if (!row.is_array() || row.size() != 4)
      throw Error("automaton document: trans rows are [q1, q2, letter, q]");
    int64_t q1 = row[0].get<int64_t>(), q2 = row[1].get<int64_t>(), l = row[2].get<int64_t>(),
            q = row[3].get<int64_t>();
    if (q1 < 0 || q1 >= a.num_states || q2 < 0 || q2 >= a.num_states || l < 0 ||
        l >= a.num_letters || q < 0 || q >= a.num_states)
      throw Error("automaton document: trans row out of range");
    a.trans[(static_cast<size_t>(q1) * a.num_states + q2) * a.num_letters + l] =
        static_cast<StateId>(q);
  }
  for (StateId q : a.trans)
    if (q == kNoState) throw Error("automaton document: transition table not total");
  a.validate();
  if (vars_out) *vars_out = z;
  return a;
}

std::string serialize_automaton(const TreeAutomaton& a, const VarSet& z) {
  json doc;
  doc["states"] = a.num_states;
  doc["finals"] = json::array();
  for (StateId q = 0; q < a.num_states; ++q)
    if (a.is_final(q)) doc["finals"].push_back(q);
  doc["vars"]["enum"] = z.enum_vars;
  doc["vars"]["upd"] = z.upd_vars;
  doc["alphabet"] = json::array();
  for (int32_t m = 0; m < a.num_letters; ++m) {
    json letter = json::array();
    for (int32_t i = 0; i < z.z_size(); ++i)
      if ((m >> i) & 1) letter.push_back(z.var_name(i));
    doc["alphabet"].push_back(std::move(letter));
  }
  doc["init"] = a.init;
  doc["trans"] = json::array();
  for (StateId q1 = 0; q1 < a.num_states; ++q1)
    for (StateId q2 = 0; q2 < a.num_states; ++q2)
      for (Letter l = 0; l < a.num_letters; ++l)
        doc["trans"].push_back(json::array({q1, q2, l, a.trans_at(q1, q2, l)}));
  return doc.dump(2) + "\n";
}

}  // namespace treeq
