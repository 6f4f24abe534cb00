#include <doctest.h>

#include <map>
#include <random>

#include "test_util.hpp"
#include "treeq/aggregates.hpp"

using namespace treeq;

namespace {

// brute-force sum of products over the oracle answers
AggValue oracle_aggregate(const LabeledTree& t, const CatalogEntry& cat, const Semiring& k,
                          const std::vector<AggValue>& rho) {
  AggValue total = k.zero();
  for (const Assignment& a : answers_for_labeling(cat.automaton, t, cat.vars)) {
    AggValue prod = k.one();
    for (auto [var, node] : a.singletons) prod = k.times(prod, rho[node]);
    total = k.plus(total, prod);
  }
  return total;
}

std::vector<AggValue> ones(const LabeledTree& t, const Semiring& k) {
  return std::vector<AggValue>(t.size(), k.one());
}

// test-local query: select every leaf
CatalogEntry select_leaves() {
  CatalogEntry c;
  c.vars.enum_vars = {"x"};
  constexpr StateId kE = 0, kOk = 1, kDead = 2;
  c.automaton = build_automaton(
      3, std::array<StateId, 1>{kOk}, 2, [](Letter m) { return (m & 1) ? kOk : kE; },
      [](StateId q1, StateId q2, Letter m) -> StateId {
        if (q1 == kDead || q2 == kDead || (m & 1)) return kDead;
        int found = (q1 == kOk) + (q2 == kOk);
        return found > 1 ? kDead : (found == 1 ? kOk : kE);
      });
  return c;
}

}  // namespace

TEST_CASE("semirings satisfy the axioms on sampled elements") {
  std::mt19937 rng(99);
  for (const char* name : {"count", "tropical", "pair-count-sum"}) {
    const Semiring& k = Semiring::by_name(name);
    for (int rep = 0; rep < 200; ++rep) {
      AggValue a = k.sample(rng), b = k.sample(rng), c = k.sample(rng);
      CHECK(k.eq(k.plus(a, b), k.plus(b, a)));
      CHECK(k.eq(k.times(a, b), k.times(b, a)));
      CHECK(k.eq(k.plus(k.plus(a, b), c), k.plus(a, k.plus(b, c))));
      CHECK(k.eq(k.times(k.times(a, b), c), k.times(a, k.times(b, c))));
      CHECK(k.eq(k.plus(a, k.zero()), a));
      CHECK(k.eq(k.times(a, k.one()), a));
      CHECK(k.eq(k.times(a, k.zero()), k.zero()));
      CHECK(k.eq(k.times(a, k.plus(b, c)), k.plus(k.times(a, b), k.times(a, c))));
    }
  }
  CHECK_THROWS_AS(Semiring::by_name("bogus"), Error);
}

TEST_CASE("counting the running example") {
  auto cat = example_automata("example1");
  LabeledTree t = test::example_tree();
  AggregateEngine agg(t, cat.automaton, cat.vars, Semiring::count(),
                      ones(t, Semiring::count()));
  CHECK(agg.value().n == 2);
  CHECK(aggregate_value(t, cat.automaton, cat.vars, Semiring::count(),
                        ones(t, Semiring::count()))
            .n == 2);
  agg.relabel({0, 0});
  CHECK(agg.value().n == 0);
  agg.relabel({1, 0});
  CHECK(agg.value().n == 1);
  // toggling twice restores the count
  agg.relabel({2, 0});
  agg.relabel({2, 0});
  CHECK(agg.value().n == 1);
}

TEST_CASE("sum of products equals the brute-force oracle") {
  std::mt19937 rng(31337);
  for (const char* query : {"example1", "select-l", "exists-l", "ancestor"}) {
    auto cat = example_automata(query);
    for (const char* sname : {"count", "tropical", "pair-count-sum"}) {
      const Semiring& k = Semiring::by_name(sname);
      for (const LabeledTree& shape : test::sweep_trees(cat.vars.upd_vars, 5)) {
        LabeledTree t = test::with_labeling(shape, rng());
        std::vector<AggValue> rho;
        for (NodeId n = 0; n < t.size(); ++n) rho.push_back(k.sample(rng));
        AggregateEngine agg(t, cat.automaton, cat.vars, k, rho);
        CHECK(k.eq(agg.value(), oracle_aggregate(t, cat, k, rho)));
      }
    }
  }
}

TEST_CASE("incremental updates equal scratch recomputation") {
  std::mt19937 rng(4711);
  auto cat = example_automata("select-l");
  const Semiring& k = Semiring::pair_count_sum();
  LabeledTree t = make_random_full_tree(9, {"l"}, rng);
  std::vector<AggValue> rho;
  for (NodeId n = 0; n < t.size(); ++n) rho.push_back(k.sample(rng));
  AggregateEngine agg(t, cat.automaton, cat.vars, k, rho);
  for (int step = 0; step < 60; ++step) {
    if (rng() & 1) {
      agg.relabel({static_cast<NodeId>(rng() % t.size()), 0});
    } else {
      NodeId n = static_cast<NodeId>(rng() % t.size());
      rho[n] = k.sample(rng);
      agg.set_weight(n, rho[n]);
    }
    CHECK(k.eq(agg.value(), agg.recompute_scratch()));
  }
  // and against the brute-force oracle over the final state
  CHECK(k.eq(agg.value(), oracle_aggregate(agg.tree(), cat, k, rho)));
}

TEST_CASE("weight changes shift the aggregate by the oracle delta") {
  auto cat = select_leaves();
  LabeledTree t = test::example_tree();
  const Semiring& k = Semiring::count();
  std::vector<AggValue> rho = ones(t, k);
  AggregateEngine agg(t, cat.automaton, cat.vars, k, rho);
  CHECK(agg.value().n == 2);  // two leaves selected, weight 1 each
  agg.set_weight(1, AggValue{5, 0});
  rho[1] = {5, 0};
  CHECK(agg.value().n == oracle_aggregate(t, cat, k, rho).n);
  CHECK(agg.value().n == 6);
}

TEST_CASE("average tracker") {
  auto cat = select_leaves();
  LabeledTree t = test::example_tree();

  SUBCASE("mean of the selected leaves") {
    AverageTracker avg(t, cat.automaton, cat.vars, {0.0, 4.0, 6.0});
    CHECK(avg.average() == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(avg.selected_count() == 2);
  }

  SUBCASE("single selected node returns its value") {
    auto sel = example_automata("select-l");
    TreeBuilder b({"l"});
    NodeId leaf1 = b.leaf(), leaf2 = b.leaf();
    NodeId root = b.internal(leaf1, leaf2);
    b.add_label(root, 0);
    LabeledTree one = b.freeze(root);
    AverageTracker avg(one, sel.automaton, sel.vars, {7.5, 0.0, 0.0});
    CHECK(avg.average() == doctest::Approx(7.5));
  }

  SUBCASE("empty selection has no average") {
    auto sel = example_automata("select-l");
    LabeledTree bare = make_complete_tree(1, {"l"});
    AverageTracker avg(bare, sel.automaton, sel.vars, std::vector<double>(bare.size(), 1.0));
    CHECK_THROWS_AS(avg.average(), Error);
  }

  SUBCASE("relabels and value changes track the direct mean") {
    auto sel = example_automata("select-l");
    std::mt19937 rng(55);
    LabeledTree t2 = make_random_full_tree(9, {"l"}, rng);
    std::vector<double> chi(t2.size());
    for (auto& x : chi) x = (rng() % 1000) / 16.0;
    AverageTracker avg(t2, sel.automaton, sel.vars, chi);
    LabeledTree mirror = t2;
    for (int step = 0; step < 40; ++step) {
      if (rng() & 1) {
        NodeId n = rng() % t2.size();
        avg.relabel({n, 0});
        apply_relabel_in_place(mirror, {n, 0});
      } else {
        NodeId n = rng() % t2.size();
        chi[n] = (rng() % 1000) / 16.0;
        avg.set_value(n, chi[n]);
      }
      double sum = 0;
      int64_t count = 0;
      for (NodeId n = 0; n < mirror.size(); ++n)
        if (mirror.has_label(n, 0)) sum += chi[n], ++count;
      if (count == 0) {
        CHECK_THROWS_AS(avg.average(), Error);
      } else {
        CHECK(avg.average() == doctest::Approx(sum / count).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("group-by over the ancestor query") {
  auto grouped = example_automata("ancestor-param");
  auto projection = example_automata("ancestor-proj");
  const Semiring& k = Semiring::count();

  SUBCASE("three-node tree has one group") {
    LabeledTree t = test::example_tree();
    GroupByEngine gb(t, grouped.automaton, grouped.vars, projection.automaton, projection.vars,
                     {"px"}, k, ones(t, k));
    GroupResult g;
    REQUIRE(gb.next(g));
    CHECK(g.key == std::vector<NodeId>{0});
    CHECK(g.value.n == 2);
    CHECK_FALSE(gb.next(g));
  }

  SUBCASE("single node: no pairs, no groups") {
    LabeledTree t = make_single_leaf({"B"});
    GroupByEngine gb(t, grouped.automaton, grouped.vars, projection.automaton, projection.vars,
                     {"px"}, k, ones(t, k));
    GroupResult g;
    CHECK_FALSE(gb.next(g));
  }

  SUBCASE("matches brute-force grouping on random trees") {
    std::mt19937 rng(8);
    auto pairs = example_automata("ancestor");
    for (int rep = 0; rep < 8; ++rep) {
      LabeledTree t = make_random_full_tree(7, {}, rng);
      std::vector<AggValue> rho;
      for (NodeId n = 0; n < t.size(); ++n) rho.push_back(k.sample(rng));
      // group value = aggregate over the non-parameter part of each pair
      std::map<NodeId, AggValue> want;
      for (const Assignment& a : answers_for_labeling(pairs.automaton, t, pairs.vars)) {
        NodeId x = a.singletons[0].second, y = a.singletons[1].second;
        auto [it, fresh] = want.emplace(x, k.zero());
        it->second = k.plus(it->second, rho[y]);
      }
      GroupByEngine gb(t, grouped.automaton, grouped.vars, projection.automaton,
                       projection.vars, {"px"}, k, rho);
      std::map<NodeId, AggValue> got;
      GroupResult g;
      while (gb.next(g)) {
        REQUIRE(g.key.size() == 1);
        CHECK(got.emplace(g.key[0], g.value).second);
      }
      REQUIRE(got.size() == want.size());
      for (auto& [key, val] : want) {
        REQUIRE(got.count(key));
        CHECK(k.eq(got[key], val));
      }
    }
  }
}

TEST_CASE("parameterized queries") {
  auto cat = example_automata("ancestor-param");
  LabeledTree t = test::example_tree();
  ParamEngine pe(t, cat.automaton, cat.vars, {"px"});

  SUBCASE("descendants of the root") {
    pe.set_parameters(std::array<NodeId, 1>{0});
    CHECK(pe.all_answers() ==
          std::vector<Assignment>{test::asg({{0, 1}}), test::asg({{0, 2}})});
  }

  SUBCASE("a leaf parameter has no descendants") {
    pe.set_parameters(std::array<NodeId, 1>{1});
    CHECK(pe.all_answers().empty());
  }

  SUBCASE("re-setting the same parameters is a no-op") {
    pe.set_parameters(std::array<NodeId, 1>{0});
    auto before = pe.all_answers();
    UpdateReport r = pe.set_parameters(std::array<NodeId, 1>{0});
    CHECK(r.touched_gates == 0);
    CHECK(pe.all_answers() == before);
  }

  SUBCASE("arity mismatches are rejected") {
    CHECK_THROWS_AS(pe.set_parameters(std::array<NodeId, 2>{0, 1}), Error);
  }
}
