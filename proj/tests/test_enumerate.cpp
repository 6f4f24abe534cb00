#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "treeq/enumerate.hpp"
#include "treeq/engine.hpp"

using namespace treeq;

namespace {

// Builds the full index bundle for a standalone circuit (testing only).
struct Bundle {
  HybridCircuit circuit;
  ShortcutFn delta;
  Valuation nu;
  PartialEval pe;
  Switchboard sb;
  std::unique_ptr<ReachForest> forest;
  uint64_t generation = 0;

  explicit Bundle(HybridCircuit c, Valuation v) : circuit(std::move(c)), nu(std::move(v)) {
    delta = compute_shortcuts(circuit);
    pe = build_partial_eval(circuit, nu);
    sb = build_switchboard(circuit, delta, pe);
    forest = std::make_unique<ReachForest>(sb.num_vertices(), std::max(sb.degree_bound, 1));
    for (int32_t x = 0; x < sb.num_vertices(); ++x)
      if (sb.vertex_is_exit[x]) forest->set_exit(x);
    std::vector<ForestEdge> live;
    for (int32_t e = 0; e < sb.num_edges; ++e)
      if (sb.beta[e]) live.emplace_back(sb.edge_head[e], sb.edge_tail[e]);
    std::sort(live.begin(), live.end());
    forest->insert_edges(live);
    forest->build_index();
  }

  EnumIndexView view() const {
    return {&circuit, &delta, &pe, &sb, forest.get(), &generation};
  }

  std::vector<Assignment> drain(EnumStats* stats = nullptr) {
    Enumeration e = open_enumeration(view());
    std::vector<Assignment> out;
    Assignment a;
    while (e.next(a)) out.push_back(a);
    if (stats) *stats = e.stats();
    return out;
  }
};

}  // namespace

TEST_CASE("nothing to enumerate is detected immediately") {
  CircuitBuilder b;
  HybridCircuit c = b.freeze(b.union_gate({}));
  Bundle bundle(std::move(c), Valuation(1, 0));
  EnumStats stats;
  CHECK(bundle.drain(&stats).empty());
  CHECK(stats.max_visits_per_output <= 2);
}

TEST_CASE("product of two singletons") {
  CircuitBuilder b;
  GateId g0 = b.times(b.svar(0, 0), b.svar(1, 0));
  HybridCircuit c = b.freeze(g0);
  Bundle bundle(std::move(c), Valuation(3, 0));
  EnumStats stats;
  auto out = bundle.drain(&stats);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == test::asg({{0, 0}, {1, 0}}));
  CHECK(stats.max_visits_per_output <= 2 * 16);
}

TEST_CASE("union over mixed exits") {
  CircuitBuilder b;
  GateId s1 = b.svar(0, 0);
  GateId prod = b.times(b.svar(0, 1), b.svar(1, 2));
  GateId g0 = b.union_gate({s1, prod});
  HybridCircuit c = b.freeze(g0);
  Valuation nu(c.size(), 0);
  AssignmentSet want = brute_force_semantics(c, nu, c.output());
  Bundle bundle(c, nu);
  auto out = bundle.drain();
  REQUIRE(out.size() == want.size());
  std::vector<Assignment> expect;
  for (AssignmentMask m : want) expect.push_back(mask_to_assignment(c, m));
  std::sort(expect.begin(), expect.end());
  std::sort(out.begin(), out.end());
  CHECK(out == expect);
}

TEST_CASE("chained unions hop through the index") {
  CircuitBuilder b;
  GateId s = b.svar(0, 0);
  GateId mid = b.union_gate({s});
  GateId top = b.union_gate({mid});
  HybridCircuit c = b.freeze(top);
  Bundle bundle(std::move(c), Valuation(3, 0));
  EnumStats stats;
  auto out = bundle.drain(&stats);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == test::asg({{0, 0}}));
  // the walk lands on the exit directly instead of descending per gate
  CHECK(stats.max_visits_per_output <= 8);
}

TEST_CASE("empty assignment arrives first through the secondary output") {
  auto cat = example_automata("exists-l");
  LabeledTree t = apply_relabel(make_complete_tree(1, {"l"}), {0, 0});
  Engine e(t, cat.automaton, cat.vars);
  auto out = e.all_answers();
  REQUIRE(out.size() == 1);
  CHECK(out[0].singletons.empty());

  Engine empty(apply_relabel(t, {0, 0}), cat.automaton, cat.vars);
  CHECK(empty.all_answers().empty());
}

TEST_CASE("running example enumerates the expected pair") {
  auto cat = example_automata("example1");
  Engine e(test::example_tree(), cat.automaton, cat.vars);
  Enumeration en = e.answers();
  std::vector<Assignment> got;
  Assignment a;
  while (en.next(a)) got.push_back(a);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<Assignment>{test::asg({{0, 1}}), test::asg({{0, 2}})});
  CHECK(en.stats().outputs == 2);
  CHECK_FALSE(en.next(a));  // stays exhausted

  SUBCASE("every exit yielded by the index is nonempty and of exit kind") {
    EnumIndexView view = e.index_view();
    for (auto it = exits_of(view, e.circuit().output()); !it.done(); ++it) {
      GateId g = *it;
      GateType ty = e.circuit().type(g);
      CHECK((ty == GateType::kSvar || ty == GateType::kTimes));
      CHECK(view.omega->omega[g] == 1);
    }
  }
}

TEST_CASE("enumeration output matches the oracle on random pipelines") {
  std::mt19937 rng(1007);
  for (const char* name : {"example1", "ancestor", "select-l"}) {
    auto cat = example_automata(name);
    for (int rep = 0; rep < 12; ++rep) {
      std::vector<std::string> alphabet = cat.vars.upd_vars;
      LabeledTree t = make_random_full_tree(1 + 2 * (rng() % 3), alphabet, rng);
      t = test::with_labeling(t, rng());
      Engine e(t, cat.automaton, cat.vars);
      Enumeration en = e.answers();
      std::vector<Assignment> got;
      Assignment a;
      while (en.next(a)) got.push_back(a);
      std::vector<Assignment> sorted = got;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      CHECK(sorted == answers_for_labeling(cat.automaton, t, cat.vars));
    }
  }
}

TEST_CASE("stack stays linear in the assignment size") {
  auto cat = example_automata("ancestor");
  std::mt19937 rng(3);
  LabeledTree t = make_random_full_tree(15, {}, rng);
  Engine e(t, cat.automaton, cat.vars);
  Enumeration en = e.answers();
  Assignment a;
  size_t max_len = 0;
  while (en.next(a)) max_len = std::max(max_len, a.singletons.size());
  if (max_len > 0) CHECK(en.stats().max_stack_depth <= 8 * static_cast<int64_t>(max_len) + 4);
}

TEST_CASE("updates invalidate open enumerations") {
  auto cat = example_automata("example1");
  Engine e(test::example_tree(), cat.automaton, cat.vars);
  Enumeration en = e.answers();
  Assignment a;
  REQUIRE(en.next(a));
  e.relabel({0, 0});
  CHECK_THROWS_AS(en.next(a), StaleEnumeration);
  // a fresh enumeration sees the new valuation
  CHECK(e.all_answers().empty());
}
