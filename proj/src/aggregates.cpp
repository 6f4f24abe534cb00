#include "treeq/aggregates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace treeq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AggValue count_plus(AggValue a, AggValue b) { return {a.n + b.n, 0}; }
AggValue count_times(AggValue a, AggValue b) { return {a.n * b.n, 0}; }
AggValue count_weight(double w) {
  return {static_cast<uint64_t>(static_cast<int64_t>(w)), 0};
}
AggValue count_sample(std::mt19937& rng) { return {rng() % 100, 0}; }

AggValue trop_plus(AggValue a, AggValue b) { return {0, std::min(a.d, b.d)}; }
AggValue trop_times(AggValue a, AggValue b) { return {0, a.d + b.d}; }
AggValue trop_weight(double w) { return {0, w}; }
AggValue trop_sample(std::mt19937& rng) {
  return {0, static_cast<double>(static_cast<int32_t>(rng() % 41)) - 20.0};
}

AggValue pair_plus(AggValue a, AggValue b) { return {a.n + b.n, a.d + b.d}; }
AggValue pair_times(AggValue a, AggValue b) {
  return {a.n * b.n, static_cast<double>(a.n) * b.d + static_cast<double>(b.n) * a.d};
}
AggValue pair_weight(double w) { return {1, w}; }
AggValue pair_sample(std::mt19937& rng) {
  return {rng() % 5, (static_cast<double>(rng() % 200) - 100.0) / 8.0};
}

bool rel_eq(double a, double b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Semiring::Semiring(std::string name, AggValue zero, AggValue one, Binary plus, Binary times,
                   AggValue (*from_weight)(double), AggValue (*sample)(std::mt19937&),
                   bool numeric)
    : name_(std::move(name)),
      zero_(zero),
      one_(one),
      plus_(plus),
      times_(times),
      from_weight_(from_weight),
      sample_(sample),
      numeric_(numeric) {}

const Semiring& Semiring::count() {
  static const Semiring k("count", {0, 0}, {1, 0}, count_plus, count_times, count_weight,
                          count_sample, false);
  return k;
}

const Semiring& Semiring::tropical() {
  static const Semiring k("tropical", {0, kInf}, {0, 0.0}, trop_plus, trop_times, trop_weight,
                          trop_sample, true);
  return k;
}

const Semiring& Semiring::pair_count_sum() {
  static const Semiring k("pair-count-sum", {0, 0.0}, {1, 0.0}, pair_plus, pair_times,
                          pair_weight, pair_sample, true);
  return k;
}

const Semiring& Semiring::by_name(std::string_view name) {
  if (name == "count") return count();
  if (name == "tropical") return tropical();
  if (name == "pair-count-sum") return pair_count_sum();
  throw Error("unknown semiring: " + std::string(name));
}

bool Semiring::eq(AggValue a, AggValue b) const {
  return a.n == b.n && (numeric_ ? rel_eq(a.d, b.d) : true);
}

std::string Semiring::to_string(AggValue v) const {
  std::ostringstream os;
  if (name_ == "count")
    os << v.n;
  else if (name_ == "tropical")
    os << v.d;
  else
    os << '(' << v.n << ", " << v.d << ')';
  return os.str();
}

AggregateEngine::AggregateEngine(LabeledTree t, TreeAutomaton a, VarSet z, const Semiring& k,
                                 std::vector<AggValue> node_weights, EngineOptions opts)
    : tree_(std::move(t)), aut_(std::move(a)), vars_(std::move(z)), k_(&k),
      rho_(std::move(node_weights)) {
  if (static_cast<int32_t>(rho_.size()) != tree_.size())
    throw Error("aggregate: weight map must be total on tree nodes");
  ct_ = opts.balance ? balance_tree(tree_) : chain_tree(tree_);
  CompileOptions copts;
  copts.homogenize = false;  // the empty assignment stays on the main output
  copts.func_cap = opts.func_cap;
  comp_ = compile_provenance(tree_, aut_, vars_, ct_, copts);
  nu_ = valuation_from_labels(comp_.circuit, tree_, vars_);

  const HybridCircuit& c = comp_.circuit;
  svars_of_node_.resize(tree_.size());
  for (GateId g : c.svar_gates()) svars_of_node_[c.svar_label(g).second].push_back(g);
  upd_of_label_.assign(tree_.num_labels(), -1);
  for (int32_t j = 0; j < vars_.upd_count(); ++j)
    upd_of_label_[tree_.label_index(vars_.upd_vars[j])] = j;

  val_.resize(c.size());
  for (GateId g = 0; g < c.size(); ++g) val_[g] = eval_gate(g);
  stamp_.assign(c.size(), 0);
}

AggValue AggregateEngine::eval_gate(GateId g) const {
  const HybridCircuit& c = comp_.circuit;
  auto ins = c.inputs(g);
  switch (c.type(g)) {
    case GateType::kBvar:
      return {nu_[g], 0};
    case GateType::kNot:
      return {static_cast<uint64_t>(!val_[ins[0]].n), 0};
    case GateType::kAnd: {
      uint64_t v = 1;
      for (GateId i : ins) v &= val_[i].n;
      return {v, 0};
    }
    case GateType::kOr: {
      uint64_t v = 0;
      for (GateId i : ins) v |= val_[i].n;
      return {v, 0};
    }
    case GateType::kSvar:
      return rho_[c.svar_label(g).second];
    case GateType::kTimes: {
      if (ins.empty()) return k_->one();
      return k_->times(val_[ins[0]], val_[ins[1]]);
    }
    case GateType::kBoxTimes:
      return val_[ins[1]].n ? val_[ins[0]] : k_->zero();
    case GateType::kUnion: {
      AggValue v = k_->zero();
      for (GateId i : ins) v = k_->plus(v, val_[i]);
      return v;
    }
  }
  return k_->zero();
}

int64_t AggregateEngine::propagate(std::vector<GateId> seeds) {
  const HybridCircuit& c = comp_.circuit;
  ++epoch_;
  int64_t touched = 0;
  auto push = [&](GateId g) {
    if (stamp_[g] == epoch_) return;
    stamp_[g] = epoch_;
    heap_.push_back(g);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  };
  for (GateId g : seeds) push(g);
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    GateId g = heap_.back();
    heap_.pop_back();
    ++touched;
    for (GateId h : c.consumers(g)) push(h);
    val_[g] = eval_gate(g);
  }
  return touched;
}

AggValue AggregateEngine::value() const {
  GateId g0 = comp_.circuit.output();
  return g0 == kNoGate ? k_->zero() : val_[g0];
}

UpdateReport AggregateEngine::relabel(const Relabeling& r) {
  tree_.check_node(r.node);
  tree_.check_label(r.label);
  apply_relabel_in_place(tree_, r);
  UpdateReport report;
  int32_t j = upd_of_label_[r.label];
  if (j < 0) return report;
  GateId bv = comp_.bvar_for(r.node, j);
  if (bv == kNoGate) return report;
  nu_[bv] ^= 1;
  report.touched_gates = propagate({bv});
  return report;
}

UpdateReport AggregateEngine::set_weight(NodeId n, AggValue w) {
  tree_.check_node(n);
  rho_[n] = w;
  UpdateReport report;
  report.touched_gates = propagate(svars_of_node_[n]);
  return report;
}

AggValue AggregateEngine::recompute_scratch() const {
  const HybridCircuit& c = comp_.circuit;
  AggregateEngine& self = const_cast<AggregateEngine&>(*this);
  std::vector<AggValue> saved = val_;
  for (GateId g = 0; g < c.size(); ++g) self.val_[g] = eval_gate(g);
  AggValue out = value();
  self.val_ = std::move(saved);
  return out;
}

AverageTracker::AverageTracker(LabeledTree t, TreeAutomaton a, VarSet z, std::vector<double> chi,
                               EngineOptions opts)
    : agg_(std::move(t), std::move(a), std::move(z), Semiring::pair_count_sum(),
           [&] {
             std::vector<AggValue> rho;
             rho.reserve(chi.size());
             for (double x : chi) rho.push_back({1, x});
             return rho;
           }(),
           opts) {
  if (agg_.tree().size() != static_cast<int32_t>(chi.size()))
    throw Error("average: one value per tree node required");
}

double AverageTracker::average() const {
  AggValue v = agg_.value();
  if (v.n == 0) throw Error("average of an empty selection");
  return v.d / static_cast<double>(v.n);
}

uint64_t AverageTracker::selected_count() const { return agg_.value().n; }

UpdateReport AverageTracker::set_value(NodeId n, double chi) {
  return agg_.set_weight(n, {1, chi});
}

AggValue aggregate_value(const LabeledTree& t, const TreeAutomaton& a, const VarSet& z,
                         const Semiring& k, std::vector<AggValue> node_weights,
                         EngineOptions opts) {
  return AggregateEngine(t, a, z, k, std::move(node_weights), opts).value();
}

LabeledTree with_extra_labels(const LabeledTree& t, std::span<const std::string> labels) {
  std::vector<std::string> alphabet = t.alphabet();
  for (const auto& l : labels) {
    if (t.label_index(l) >= 0) throw Error("label already present: " + l);
    alphabet.push_back(l);
  }
  TreeBuilder b(alphabet);
  std::vector<NodeId> built(t.size(), kNoNode);
  for (NodeId n = t.size() - 1; n >= 0; --n) {
    built[n] = t.is_leaf(n) ? b.leaf(t.external_id(n))
                            : b.internal(built[t.first_child(n)], built[t.second_child(n)],
                                         t.external_id(n));
    b.set_labels(built[n], t.label_mask(n));
  }
  return b.freeze(built[t.root()]);
}

GroupByEngine::GroupByEngine(const LabeledTree& t, const TreeAutomaton& group_query,
                             const VarSet& group_vars, const TreeAutomaton& projection,
                             const VarSet& projection_vars,
                             std::vector<std::string> param_labels, const Semiring& k,
                             std::vector<AggValue> node_weights, EngineOptions opts)
    : param_labels_(std::move(param_labels)),
      current_(param_labels_.size(), kNoNode),
      proj_(t, projection, projection_vars, opts),
      agg_(with_extra_labels(t, param_labels_), group_query, group_vars, k,
           std::move(node_weights), opts),
      enum_(proj_.answers()) {
  for (const auto& l : param_labels_) param_label_idx_.push_back(agg_.tree().label_index(l));
}

bool GroupByEngine::next(GroupResult& out) {
  Assignment b;
  if (!enum_.next(b)) return false;
  if (b.singletons.size() != param_labels_.size())
    throw Error("group-by: projected query must bind every parameter once");
  last_group_touched_ = 0;
  out.key.clear();
  for (size_t i = 0; i < b.singletons.size(); ++i) {
    NodeId n = b.singletons[i].second;
    out.key.push_back(n);
    if (current_[i] == n) continue;
    if (current_[i] != kNoNode)
      last_group_touched_ +=
          agg_.relabel({current_[i], param_label_idx_[i]}).touched_gates;
    last_group_touched_ += agg_.relabel({n, param_label_idx_[i]}).touched_gates;
    current_[i] = n;
  }
  out.value = agg_.value();
  return true;
}

ParamEngine::ParamEngine(const LabeledTree& t, const TreeAutomaton& a, const VarSet& z,
                         std::vector<std::string> param_labels, EngineOptions opts)
    : param_labels_(std::move(param_labels)), current_(param_labels_.size(), kNoNode) {
  engine_ = std::make_unique<Engine>(with_extra_labels(t, param_labels_), a, z, opts);
  for (const auto& l : param_labels_)
    param_label_idx_.push_back(engine_->tree().label_index(l));
}

UpdateReport ParamEngine::set_parameters(std::span<const NodeId> b) {
  if (b.size() != param_labels_.size()) throw Error("set-parameters: arity mismatch");
  UpdateReport total;
  for (size_t i = 0; i < b.size(); ++i) {
    engine_->tree().check_node(b[i]);
    if (current_[i] == b[i]) continue;
    if (current_[i] != kNoNode) {
      UpdateReport r = engine_->relabel({current_[i], param_label_idx_[i]});
      total.touched_gates += r.touched_gates;
      total.touched_forest += r.touched_forest;
    }
    UpdateReport r = engine_->relabel({b[i], param_label_idx_[i]});
    total.touched_gates += r.touched_gates;
    total.touched_forest += r.touched_forest;
    current_[i] = b[i];
  }
  return total;
}

}  // namespace treeq
