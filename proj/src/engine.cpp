#include "treeq/engine.hpp"

#include <algorithm>

namespace treeq {

Engine::Engine(LabeledTree t, TreeAutomaton a, VarSet z, EngineOptions opts)
    : tree_(std::move(t)), aut_(std::move(a)), vars_(std::move(z)), opts_(opts) {
  ct_ = opts_.balance ? balance_tree(tree_) : chain_tree(tree_);
  CompileOptions copts;
  copts.homogenize = true;
  copts.func_cap = opts_.func_cap;
  comp_ = compile_provenance(tree_, aut_, vars_, ct_, copts);
  delta_ = compute_shortcuts(comp_.circuit);
  nu_ = valuation_from_labels(comp_.circuit, tree_, vars_);
  pe_ = build_partial_eval(comp_.circuit, nu_);
  sb_ = build_switchboard(comp_.circuit, delta_, pe_);

  forest_ = std::make_unique<ReachForest>(sb_.num_vertices(), std::max(sb_.degree_bound, 1));
  for (int32_t v = 0; v < sb_.num_vertices(); ++v)
    if (sb_.vertex_is_exit[v]) forest_->set_exit(v);
  std::vector<ForestEdge> live;
  for (int32_t e = 0; e < sb_.num_edges; ++e)
    if (sb_.beta[e]) live.emplace_back(sb_.edge_head[e], sb_.edge_tail[e]);
  std::sort(live.begin(), live.end());
  forest_->insert_edges(live);
  forest_->build_index();

  upd_of_label_.assign(tree_.num_labels(), -1);
  for (int32_t j = 0; j < vars_.upd_count(); ++j)
    upd_of_label_[tree_.label_index(vars_.upd_vars[j])] = j;
}

UpdateReport Engine::relabel(const Relabeling& r) {
  tree_.check_node(r.node);
  tree_.check_label(r.label);
  apply_relabel_in_place(tree_, r);
  ++generation_;
  UpdateReport report;
  int32_t j = upd_of_label_[r.label];
  if (j < 0) return report;  // label the query never reads
  GateId bv = comp_.bvar_for(r.node, j);
  if (bv == kNoGate) return report;  // pruned: no answer ever depends on it
  auto upd = update_partial_eval(comp_.circuit, nu_, pe_, bv);
  report.touched_gates = upd.touched;
  EdgeDiff diff = update_switchboard(comp_.circuit, delta_, pe_, sb_, upd.changed);
  forest_->remove_edges(diff.removed);
  report.touched_forest += forest_->last_touched();
  forest_->insert_edges(diff.added);
  report.touched_forest += forest_->last_touched();
  return report;
}

EnumIndexView Engine::index_view() const {
  EnumIndexView v;
  v.circuit = &comp_.circuit;
  v.delta = &delta_;
  v.omega = &pe_;
  v.switchboard = &sb_;
  v.forest = forest_.get();
  v.generation = &generation_;
  return v;
}

std::vector<Assignment> Engine::all_answers(int64_t limit) const {
  std::vector<Assignment> out;
  Enumeration e = answers();
  Assignment a;
  while (e.next(a)) {
    out.push_back(a);
    if (limit >= 0 && static_cast<int64_t>(out.size()) >= limit) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treeq
