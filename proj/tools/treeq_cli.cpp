#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "treeq/aggregates.hpp"
#include "treeq/engine.hpp"

namespace {

using namespace treeq;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct BenchRow {
  std::string command;
  int64_t outputs = 0;
  int64_t max_steps_per_output = 0;
  int64_t touched_gates = 0;
  int64_t touched_forest = 0;
};

struct Cli {
  CatalogEntry query;
  EngineOptions opts;
  bool oracle_check = false;
  std::vector<std::string> param_labels;
  std::vector<NodeId> param_pos;
  std::unique_ptr<Engine> engine;
  std::unique_ptr<AggregateEngine> counter;  // cardinality: unit weights always
  std::map<std::string, std::unique_ptr<AggregateEngine>> aggs;
  std::map<NodeId, double> weights;  // by internal node id
  std::string default_semiring = "count";
  std::vector<BenchRow> bench;

  const LabeledTree& tree() const { return engine->tree(); }

  std::vector<AggValue> weight_vector(const Semiring& k) const {
    std::vector<AggValue> rho(tree().size(), k.one());
    for (auto [n, w] : weights) rho[n] = k.from_weight(w);
    return rho;
  }

  AggregateEngine& agg(const std::string& name) {
    auto it = aggs.find(name);
    if (it != aggs.end()) return *it->second;
    const Semiring& k = Semiring::by_name(name);
    auto e = std::make_unique<AggregateEngine>(tree(), query.automaton, query.vars, k,
                                               weight_vector(k), opts);
    return *aggs.emplace(name, std::move(e)).first->second;
  }

  AggregateEngine& count_engine() {
    if (!counter) {
      const Semiring& k = Semiring::count();
      counter = std::make_unique<AggregateEngine>(
          tree(), query.automaton, query.vars, k,
          std::vector<AggValue>(tree().size(), k.one()), opts);
    }
    return *counter;
  }

  NodeId node_arg(const std::string& tok) const {
    NodeId n = tree().node_by_external(std::stoll(tok));
    if (n == kNoNode) throw Error("unknown node id " + tok);
    return n;
  }

  std::string format_assignment(const Assignment& a) const {
    if (a.singletons.empty()) return "{}";
    std::string out;
    for (auto [var, node] : a.singletons) {
      if (!out.empty()) out += ' ';
      out += query.vars.enum_vars[var] + ":" + std::to_string(tree().external_id(node));
    }
    return out;
  }

  std::vector<Assignment> oracle_answers() const {
    return answers_for_labeling(query.automaton, tree(), query.vars);
  }

  void cmd_enumerate(int64_t limit, BenchRow& row) {
    Enumeration e = engine->answers();
    Assignment a;
    std::vector<Assignment> seen;
    while ((limit < 0 || row.outputs < limit) && e.next(a)) {
      std::cout << format_assignment(a) << '\n';
      ++row.outputs;
      if (oracle_check) seen.push_back(a);
    }
    row.max_steps_per_output = e.stats().max_visits_per_output;
    if (oracle_check && limit < 0) {
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw Error("oracle mismatch: duplicate assignment enumerated");
      if (seen != oracle_answers()) throw Error("oracle mismatch: enumeration differs");
    }
  }

  void cmd_relabel(NodeId n, int32_t label, BenchRow& row) {
    UpdateReport r = engine->relabel({n, label});
    row.touched_gates = r.touched_gates;
    row.touched_forest = r.touched_forest;
    if (counter) counter->relabel({n, label});
    for (auto& [name, a] : aggs) row.touched_gates += a->relabel({n, label}).touched_gates;
  }

  void run_command(const std::string& line) {
    std::istringstream ss(line);
    std::string cmd;
    ss >> cmd;
    if (cmd.empty()) return;
    BenchRow row;
    row.command = cmd;
    if (cmd == "enumerate") {
      int64_t limit = -1;
      ss >> limit;
      cmd_enumerate(limit, row);
    } else if (cmd == "relabel") {
      std::string node, label;
      if (!(ss >> node >> label)) throw Error("relabel takes a node id and a label");
      int32_t l = tree().label_index(label);
      if (l < 0) throw Error("unknown label " + label);
      cmd_relabel(node_arg(node), l, row);
    } else if (cmd == "count") {
      AggregateEngine& a = count_engine();
      std::cout << a.semiring().to_string(a.value()) << '\n';
      row.outputs = 1;
      if (oracle_check && a.value().n != oracle_answers().size())
        throw Error("oracle mismatch: maintained count differs");
    } else if (cmd == "aggregate") {
      std::string name;
      if (!(ss >> name)) name = default_semiring;
      AggregateEngine& a = agg(name);
      std::cout << a.semiring().to_string(a.value()) << '\n';
      row.outputs = 1;
    } else if (cmd == "set-weight") {
      std::string node, value;
      if (!(ss >> node >> value)) throw Error("set-weight takes a node id and a value");
      NodeId n = node_arg(node);
      double w = std::stod(value);
      weights[n] = w;
      for (auto& [name, a] : aggs)
        row.touched_gates += a->set_weight(n, a->semiring().from_weight(w)).touched_gates;
    } else if (cmd == "set-params") {
      std::vector<NodeId> b;
      std::string tok;
      while (ss >> tok) b.push_back(node_arg(tok));
      if (b.size() != param_labels.size())
        throw Error("set-params takes one node per parameter label");
      for (size_t i = 0; i < b.size(); ++i) {
        if (param_pos[i] == b[i]) continue;
        int32_t l = tree().label_index(param_labels[i]);
        if (param_pos[i] != kNoNode) cmd_relabel(param_pos[i], l, row);
        cmd_relabel(b[i], l, row);
        param_pos[i] = b[i];
      }
    } else if (cmd == "bench-report") {
      print_bench();
    } else {
      throw Error("unknown command: " + cmd);
    }
    bench.push_back(row);
  }

  void print_bench() const {
    std::cout << "command,outputs,max_steps_per_output,touched_gates,touched_forest_vertices\n";
    for (const auto& r : bench)
      std::cout << r.command << ',' << r.outputs << ',' << r.max_steps_per_output << ','
                << r.touched_gates << ',' << r.touched_forest << '\n';
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental tree-query evaluation"};
  std::string tree_path, automaton_path, script_path, semiring = "count", weights_path;
  std::vector<std::string> params;
  bool no_balance = false, oracle = false, bench = false;
  std::string dump_automaton, dump_circuit_path;
  app.add_option("--tree", tree_path, "tree document (JSON)")->required();
  app.add_option("--automaton", automaton_path,
                 "automaton document (JSON), or catalog:<name>")
      ->required();
  app.add_option("--script", script_path, "command script; default 'enumerate'");
  app.add_option("--semiring", semiring, "default semiring for 'aggregate'");
  app.add_option("--weights", weights_path, "per-node weights: lines 'node value'");
  app.add_option("--params", params, "parameter labels for set-params");
  app.add_flag("--no-balance", no_balance, "skip tree balancing (debug; slow updates)");
  app.add_flag("--oracle-check", oracle, "verify outputs against brute force (small inputs)");
  app.add_flag("--bench", bench, "print instrumented counters after the script");
  app.add_option("--dump-automaton", dump_automaton, "write the loaded automaton and exit");
  app.add_option("--dump-circuit", dump_circuit_path,
                 "write the compiled circuit, one gate per line");
  CLI11_PARSE(app, argc, argv);

  try {
    Cli cli;
    cli.oracle_check = oracle;
    cli.default_semiring = semiring;
    cli.opts.balance = !no_balance;
    if (automaton_path.rfind("catalog:", 0) == 0)
      cli.query = treeq::example_automata(automaton_path.substr(8));
    else
      cli.query.automaton = treeq::parse_automaton(read_file(automaton_path), &cli.query.vars);
    if (!dump_automaton.empty()) {
      std::ofstream out(dump_automaton, std::ios::binary);
      out << treeq::serialize_automaton(cli.query.automaton, cli.query.vars);
      return 0;
    }
    treeq::LabeledTree t = treeq::parse_tree(read_file(tree_path));
    cli.param_labels = params;
    cli.param_pos.assign(params.size(), treeq::kNoNode);
    if (!params.empty()) t = treeq::with_extra_labels(t, params);
    cli.engine = std::make_unique<treeq::Engine>(std::move(t), cli.query.automaton,
                                                 cli.query.vars, cli.opts);
    if (!weights_path.empty()) {
      std::istringstream in(read_file(weights_path));
      std::string node;
      double value;
      while (in >> node >> value) cli.weights[cli.node_arg(node)] = value;
    }

    if (!dump_circuit_path.empty())
      std::ofstream(dump_circuit_path, std::ios::binary)
          << treeq::dump_circuit(cli.engine->circuit());

    std::vector<std::string> script;
    if (script_path.empty()) {
      script.push_back("enumerate");
    } else {
      std::istringstream in(read_file(script_path));
      std::string line;
      while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        if (!line.empty()) script.push_back(line);
      }
    }
    for (const auto& line : script) cli.run_command(line);
    if (bench) cli.print_bench();
    return 0;
  } catch (const std::exception& e) {
    std::string what = e.what();
    std::cerr << "error: " << what << '\n';
    return what.rfind("oracle mismatch", 0) == 0 ? 2 : 1;
  }
}
