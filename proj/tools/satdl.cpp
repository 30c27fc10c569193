// Command-line front end: encode datasets to WCNF, train perfect or sparse
// decision lists (integrated, separated or greedy), evaluate and explain
// stored models, run cross-validation, and solve WCNF files directly.
//
// Exit codes: 0 success, 2 usage error, 3 unsatisfiable (label-inconsistent
// data), 4 resource or time limit, 1 anything else.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "satdl/satdl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsat = 3;
constexpr int kExitResource = 4;

struct UsageError : satdl::Error {
  using satdl::Error::Error;
};

struct CommonOptions {
  std::string data_path;
  std::string class_column;  // empty: last column
  int quantize = 0;          // 0 = off
  std::string mode = "perfect";
  std::string lambda_text;
  std::string order = "union";
  std::string solver = "builtin";
  std::string solver_command;
  double time_limit_s = 0.0;
  std::uint64_t seed = 1;
  int nodes = 0;  // 0 = default (schedule start / sparse auto bound)
  int max_nodes = 60;
  int step = 5;

  satdl::NSchedule schedule_for(const satdl::BinDataset& ds) const {
    satdl::NSchedule s = satdl::NSchedule::defaults(ds.class_count);
    if (nodes > 0) s.initial_n = nodes;
    s.max_n = max_nodes;
    s.step = step;
    return s;
  }
};

void add_data_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--data", o.data_path, "input CSV file (header row required)")->required();
  cmd->add_option("--class-col", o.class_column,
                  "class column, by name or 0-based index (default: last column)");
  cmd->add_option("--quantize", o.quantize, "equal-width intervals for numeric columns")
      ->check(CLI::IsMember({0, 2, 3, 4}));
}

void add_mode_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--mode", o.mode, "perfect or sparse")
      ->check(CLI::IsMember({"perfect", "sparse"}));
  cmd->add_option("--lambda", o.lambda_text,
                  "sparse per-node cost in misclassification units; the paper's presets are "
                  "0.005, 0.05 and 0.5");
}

void add_solver_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--solver", o.solver, "builtin or external")
      ->check(CLI::IsMember({"builtin", "external"}));
  cmd->add_option("--solver-cmd", o.solver_command,
                  "external solver command; the WCNF path is appended as the final argument "
                  "(SATDL_EXTERNAL_SOLVER overrides)");
  cmd->add_option("--time-limit", o.time_limit_s, "builtin solver budget in seconds (0 = none)");
}

std::string resolve_class_column(const CommonOptions& o) {
  if (!o.class_column.empty()) return o.class_column;
  // Peek at the header to find the last column's name.
  std::ifstream in(o.data_path);
  if (!in) throw satdl::IngestError("cannot open " + o.data_path);
  std::string header;
  std::getline(in, header);
  auto pos = header.find_last_of(',');
  std::string name = pos == std::string::npos ? header : header.substr(pos + 1);
  while (!name.empty() && (name.back() == '\r' || name.back() == '\n' || name.back() == ' '))
    name.pop_back();
  return name;
}

satdl::BinDataset load_binarized(const CommonOptions& o) {
  auto raw = satdl::load_csv(o.data_path, resolve_class_column(o));
  if (o.quantize >= 2) raw = satdl::quantize(raw, o.quantize);
  return satdl::one_hot(raw);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

std::unique_ptr<satdl::MaxSatSolver> make_solver(const CommonOptions& o) {
  if (o.solver == "builtin") {
    auto budget = std::chrono::milliseconds(static_cast<std::int64_t>(o.time_limit_s * 1000.0));
    return std::make_unique<satdl::BuiltinSolver>(budget);
  }
  std::string cmd = o.solver_command;
  if (const char* env = std::getenv("SATDL_EXTERNAL_SOLVER"); env && *env) cmd = env;
  if (cmd.empty())
    throw UsageError("--solver external needs --solver-cmd or SATDL_EXTERNAL_SOLVER");
  return std::make_unique<satdl::ExternalSolver>(split_words(cmd));
}

std::optional<satdl::SparseConfig> sparse_config(const CommonOptions& o,
                                                 const satdl::BinDataset& ds) {
  if (o.mode != "sparse") return std::nullopt;
  if (o.lambda_text.empty()) throw UsageError("sparse mode requires --lambda");
  return satdl::SparseConfig::from_lambda(satdl::parse_decimal(o.lambda_text),
                                          static_cast<int>(ds.size()));
}

satdl::OrderingStrategy parse_order(const std::string& order, const satdl::BinDataset& ds) {
  using satdl::OrderingKind;
  satdl::OrderingStrategy s;
  if (order == "union") {
    s.kind = OrderingKind::integrated;
  } else if (order == "inc") {
    s.kind = OrderingKind::count_asc;
  } else if (order == "dec") {
    s.kind = OrderingKind::count_desc;
  } else if (order == "acc-inc") {
    s.kind = OrderingKind::acc_asc;
  } else if (order == "acc-dec") {
    s.kind = OrderingKind::acc_desc;
  } else if (order == "cost-inc") {
    s.kind = OrderingKind::cost_asc;
  } else if (order == "cost-dec") {
    s.kind = OrderingKind::cost_desc;
  } else if (order == "greedy") {
    s.kind = OrderingKind::greedy;
  } else {
    // Explicit permutation: comma-separated class names or ids.
    s.kind = OrderingKind::explicit_order;
    std::istringstream ss(order);
    std::string tok;
    std::set<int> seen;
    while (std::getline(ss, tok, ',')) {
      int id = -1;
      if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
        id = std::stoi(tok);
      } else {
        for (std::size_t c = 0; c < ds.class_names.size(); ++c)
          if (ds.class_names[c] == tok) id = static_cast<int>(c);
      }
      if (id < 0 || id >= ds.class_count)
        throw UsageError("unknown class '" + tok + "' in --order");
      if (!seen.insert(id).second) throw UsageError("class '" + tok + "' repeated in --order");
      s.permutation.push_back(id);
    }
    if (s.permutation.empty()) throw UsageError("empty --order list");
  }
  return s;
}

struct TrainedModel {
  satdl::DecisionList list;
  std::optional<satdl::SparseResult> sparse;  // set in sparse integrated mode
};

TrainedModel run_training(const satdl::BinDataset& ds, const CommonOptions& o,
                          const satdl::MaxSatSolver& solver) {
  auto cfg = sparse_config(o, ds);
  auto strategy = parse_order(o.order, ds);
  const bool sparse = o.mode == "sparse";
  const auto schedule = o.schedule_for(ds);
  satdl::SeparatedOptions sep{sparse ? satdl::EncodeMode::sparse : satdl::EncodeMode::perfect,
                              cfg, schedule};

  TrainedModel out;
  switch (strategy.kind) {
    case satdl::OrderingKind::integrated:
      if (sparse) {
        std::optional<int> n_override;
        if (o.nodes > 0) n_override = o.nodes;
        out.sparse = satdl::train_sparse(ds, *cfg, n_override, solver);
        out.list = out.sparse->list;
      } else {
        out.list = satdl::train_perfect(ds, schedule, solver);
      }
      break;
    case satdl::OrderingKind::greedy:
      out.list = satdl::train_separated_greedy(ds, sep, solver);
      break;
    case satdl::OrderingKind::explicit_order:
      out.list = satdl::train_separated_fixed(ds, strategy.permutation, sep, solver);
      break;
    default: {
      auto sigma = satdl::order_classes(ds, strategy, sep, solver);
      out.list = satdl::train_separated_fixed(ds, sigma, sep, solver);
      break;
    }
  }
  return out;
}

std::string fraction_text(const satdl::Rational& r) {
  return satdl::to_decimal_string(r, 6) + " (" + std::to_string(r.numerator()) + "/" +
         std::to_string(r.denominator()) + ")";
}

// --- subcommands ------------------------------------------------------------

int cmd_encode(const CommonOptions& o, int nodes, const std::string& out_path,
               std::string varmap_path) {
  auto ds = load_binarized(o);
  auto cfg = sparse_config(o, ds);
  std::pair<satdl::WcnfFormula, satdl::VariableLayout> enc =
      o.mode == "sparse" ? satdl::encode_sparse(ds, nodes, *cfg)
                         : satdl::encode_perfect(ds, nodes);
  std::ofstream out(out_path);
  if (!out) throw satdl::Error("cannot write " + out_path);
  satdl::write_wcnf(enc.first, out);
  if (varmap_path.empty()) varmap_path = out_path + ".vars";
  std::ofstream vm(varmap_path);
  if (!vm) throw satdl::Error("cannot write " + varmap_path);
  satdl::write_variable_map(enc.second, enc.first.variable_count, vm);
  std::cout << "wrote " << out_path << ": " << enc.first.variable_count << " variables ("
            << enc.second.primary_count() << " primary), " << enc.first.hard.size()
            << " hard + " << enc.first.soft.size() << " soft clauses, top weight "
            << enc.first.top_weight() << "\n"
            << "variable map: " << varmap_path << "\n";
  return kExitOk;
}

int cmd_train(const CommonOptions& o, const std::string& model_out) {
  auto ds = load_binarized(o);
  auto solver = make_solver(o);
  auto trained = run_training(ds, o, *solver);
  const auto& dl = trained.list;

  if (dl.rules.empty()) {
    std::cout << "optimal model is empty (no rule is worth its cost at this lambda)\n";
  } else {
    std::cout << satdl::render_text(dl);
    std::ofstream out(model_out);
    if (!out) throw satdl::Error("cannot write " + model_out);
    out << satdl::serialize_model(dl);
    std::cout << "model written to " << model_out << "\n";
  }
  std::cout << "literal size: " << satdl::model_size(dl) << "\n"
            << "rules: " << dl.rules.size() << "\n";
  if (!dl.rules.empty())
    std::cout << "training accuracy: " << fraction_text(satdl::accuracy(dl, ds)) << "\n";
  if (o.mode == "sparse") {
    auto cfg = sparse_config(o, ds);
    int nodes = trained.sparse ? trained.sparse->encoded_nodes
                               : static_cast<int>((ds.size() + cfg->big_lambda - 1) /
                                                  cfg->big_lambda) + 1;
    auto obj = satdl::sparse_objective(dl, ds, cfg->big_lambda, nodes);
    std::cout << "sparse objective: errors " << obj.errors << " + lambda*nodes "
              << obj.lambda_nodes << " = solver cost " << obj.solver_cost()
              << "; constant offset N*Lambda " << obj.offset << "; paper total " << obj.total
              << "\n";
    if (trained.sparse && trained.sparse->cost != obj.solver_cost())
      throw satdl::Error("internal: solver cost disagrees with simulated objective");
    if (trained.sparse && !trained.sparse->optimal)
      std::cout << "warning: time limit hit, model is best-known, not proven optimal\n";
  }
  return kExitOk;
}

satdl::BinDataset align_to_model(const satdl::BinDataset& ds, const satdl::DecisionList& dl) {
  std::vector<int> feature_map(dl.feature_names.size(), -1);
  for (std::size_t f = 0; f < dl.feature_names.size(); ++f) {
    auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), dl.feature_names[f]);
    if (it == ds.feature_names.end())
      throw satdl::Error("dataset lacks model feature '" + dl.feature_names[f] + "'");
    feature_map[f] = static_cast<int>(it - ds.feature_names.begin());
  }
  satdl::BinDataset out;
  out.feature_count = dl.feature_count;
  out.feature_names = dl.feature_names;
  out.class_names = dl.class_names;
  out.class_count = dl.class_count;
  for (const auto& e : ds.instances) {
    satdl::Instance x;
    x.features.resize(feature_map.size());
    for (std::size_t f = 0; f < feature_map.size(); ++f)
      x.features[f] = e.features[static_cast<std::size_t>(feature_map[f])];
    const auto& name = ds.class_names[static_cast<std::size_t>(e.class_id)];
    auto it = std::find(out.class_names.begin(), out.class_names.end(), name);
    if (it == out.class_names.end()) {
      out.class_names.push_back(name);  // unseen label: model can never predict it
      out.class_count = static_cast<int>(out.class_names.size());
      x.class_id = out.class_count - 1;
    } else {
      x.class_id = static_cast<int>(it - out.class_names.begin());
    }
    out.instances.push_back(std::move(x));
  }
  return out;
}

int cmd_evaluate(const CommonOptions& o, const std::string& model_path, bool per_instance,
                 const std::string& report_path) {
  std::ifstream mf(model_path);
  if (!mf) throw satdl::Error("cannot open " + model_path);
  std::stringstream buf;
  buf << mf.rdbuf();
  auto dl = satdl::deserialize_model(buf.str());
  auto ds = align_to_model(load_binarized(o), dl);

  auto acc = satdl::accuracy(dl, ds);
  auto rep = satdl::explain_report(dl, ds);
  std::cout << "accuracy: " << fraction_text(acc) << "\n"
            << "model size: " << satdl::model_size(dl) << "\n"
            << "average explanation size: " << fraction_text(rep.average) << "\n";
  std::ostringstream table;
  table << "instance,fired_rule,predicted,expected,explanation_size\n";
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    const auto& e = ds.instances[i];
    auto p = satdl::predict(dl, e.features);
    table << i + 1 << ',' << (p ? std::to_string(p->rule_index + 1) : "-") << ','
          << (p ? dl.class_names[static_cast<std::size_t>(p->class_id)] : "-") << ','
          << ds.class_names[static_cast<std::size_t>(e.class_id)] << ','
          << satdl::to_decimal_string(rep.per_instance[i], 6) << '\n';
  }
  if (per_instance) std::cout << table.str();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw satdl::Error("cannot write " + report_path);
    out << table.str();
  }
  return kExitOk;
}

struct FoldOutcome {
  bool ok = false;
  std::string error;
  std::size_t train_rows = 0, test_rows = 0;
  std::int64_t size = 0;
  satdl::Rational train_acc{0}, test_acc{0}, expl{0};
};

int cmd_cv(const CommonOptions& o, int folds, int jobs, const std::string& report_path) {
  auto raw = satdl::load_csv(o.data_path, resolve_class_column(o));
  const int m = static_cast<int>(raw.row_count());
  if (folds < 2 || folds > m)
    throw UsageError("fold count must lie in [2, " + std::to_string(m) + "]");

  // The split only needs instance indices, but runs over the binarized view
  // so the seed covers the exact same instance set a training run would see.
  auto full =
      o.quantize >= 2 ? satdl::one_hot(satdl::quantize(raw, o.quantize)) : satdl::one_hot(raw);
  auto split = satdl::kfold_split(full, folds, o.seed);

  std::vector<FoldOutcome> outcomes(static_cast<std::size_t>(folds));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int f = next.fetch_add(1);
      if (f >= folds) return;
      auto& oc = outcomes[static_cast<std::size_t>(f)];
      try {
        std::vector<int> train_rows, test_rows;
        for (int i = 0; i < m; ++i)
          (split.assignments[static_cast<std::size_t>(i)] == f ? test_rows : train_rows)
              .push_back(i);
        auto train_raw = satdl::select_rows(raw, train_rows);
        auto test_raw = satdl::select_rows(raw, test_rows);
        // Fit preprocessing on the training fold only; test rows outside the
        // fitted bin range clamp to the nearest bin.
        if (o.quantize >= 2) {
          auto q = satdl::fit_quantizer(train_raw, o.quantize);
          train_raw = satdl::apply_quantizer(train_raw, q);
          test_raw = satdl::apply_quantizer(test_raw, q);
        }
        auto enc = satdl::fit_one_hot(train_raw);
        auto train_ds = satdl::apply_one_hot(train_raw, enc);
        auto test_ds = satdl::apply_one_hot(test_raw, enc);

        auto solver = make_solver(o);
        auto trained = run_training(train_ds, o, *solver);
        oc.train_rows = train_rows.size();
        oc.test_rows = test_rows.size();
        oc.size = satdl::model_size(trained.list);
        oc.train_acc = trained.list.rules.empty() ? satdl::Rational(0)
                                                  : satdl::accuracy(trained.list, train_ds);
        oc.test_acc = trained.list.rules.empty() ? satdl::Rational(0)
                                                 : satdl::accuracy(trained.list, test_ds);
        oc.expl = satdl::explain_report(trained.list, test_ds).average;
        oc.ok = true;
      } catch (const std::exception& e) {
        oc.ok = false;
        oc.error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, folds); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream table;
  table << "fold,status,train_rows,test_rows,literal_size,train_accuracy,test_accuracy,"
           "avg_explanation_size\n";
  int failures = 0;
  std::vector<double> accs, sizes, expls;
  for (int f = 0; f < folds; ++f) {
    const auto& oc = outcomes[static_cast<std::size_t>(f)];
    if (!oc.ok) {
      ++failures;
      table << f + 1 << ",failed(" << oc.error << "),,,,,,\n";
      continue;
    }
    table << f + 1 << ",ok," << oc.train_rows << ',' << oc.test_rows << ',' << oc.size << ','
          << satdl::to_decimal_string(oc.train_acc, 6) << ','
          << satdl::to_decimal_string(oc.test_acc, 6) << ','
          << satdl::to_decimal_string(oc.expl, 6) << '\n';
    accs.push_back(boost::rational_cast<double>(oc.test_acc));
    sizes.push_back(static_cast<double>(oc.size));
    expls.push_back(boost::rational_cast<double>(oc.expl));
  }
  auto mean = [](const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
  };
  auto stddev = [&](const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mu = mean(xs), s = 0;
    for (double x : xs) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(xs.size()));
  };
  std::cout << table.str();
  char line[256];
  std::snprintf(line, sizeof line,
                "aggregate%s: test_accuracy %.4f +- %.4f, literal_size %.2f +- %.2f, "
                "avg_explanation_size %.3f +- %.3f over %d/%d folds\n",
                failures ? " (partial)" : "", mean(accs), stddev(accs), mean(sizes),
                stddev(sizes), mean(expls), stddev(expls), folds - failures, folds);
  std::cout << line;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw satdl::Error("cannot write " + report_path);
    out << table.str() << line;
  }
  return failures == folds ? kExitOther : kExitOk;
}

int cmd_solve(const std::string& wcnf_path, double time_limit_s) {
  std::ifstream in(wcnf_path);
  if (!in) throw satdl::Error("cannot open " + wcnf_path);
  auto f = satdl::parse_wcnf(in);
  auto budget = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit_s * 1000.0));
  auto res = satdl::solve_builtin(f, budget);
  std::cout << "c satdl builtin exact MaxSAT (linear SAT-UNSAT descent)\n";
  switch (res.status) {
    case satdl::SolveStatus::unsatisfiable_hard:
      std::cout << "s UNSATISFIABLE\n";
      break;
    case satdl::SolveStatus::timeout:
      if (res.cost >= 0) std::cout << "o " << res.cost << "\n";
      std::cout << "s UNKNOWN\n";
      break;
    case satdl::SolveStatus::optimum: {
      std::cout << "o " << res.cost << "\n";
      std::cout << "s OPTIMUM FOUND\n";
      std::cout << "v";
      for (int v = 1; v <= f.variable_count; ++v)
        std::cout << ' ' << (res.assignment[static_cast<std::size_t>(v)] ? v : -v);
      std::cout << " 0\n";
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satdl: exact decision-list learning via partial weighted MaxSAT"};
  app.require_subcommand(1);

  CommonOptions opt;
  int folds = 5, jobs = 1;
  std::string out_path, varmap_path, model_out = "model.json", model_path, report_path;
  bool per_instance = false;

  auto* enc = app.add_subcommand("encode", "compile a dataset to a WCNF file");
  add_data_options(enc, opt);
  add_mode_options(enc, opt);
  enc->add_option("--nodes", opt.nodes, "node budget N")->required();
  enc->add_option("--out", out_path, "output WCNF path")->required();
  enc->add_option("--varmap", varmap_path, "sidecar variable map path (default: <out>.vars)");

  auto* tr = app.add_subcommand("train", "learn a decision list and store it");
  add_data_options(tr, opt);
  add_mode_options(tr, opt);
  add_solver_options(tr, opt);
  tr->add_option("--order", opt.order,
                 "union, inc, dec, acc-inc, acc-dec, cost-inc, cost-dec, greedy, or an explicit "
                 "comma-separated class list");
  tr->add_option("--nodes", opt.nodes, "initial node budget (perfect) / node budget (sparse)");
  tr->add_option("--max-nodes", opt.max_nodes, "node budget ceiling for the perfect schedule");
  tr->add_option("--step", opt.step, "node budget increment between attempts");
  tr->add_option("--seed", opt.seed, "random seed (recorded in reports)");
  tr->add_option("--model-out", model_out, "where to write the model document");

  auto* ev = app.add_subcommand("evaluate", "score a stored model against a dataset");
  add_data_options(ev, opt);
  ev->add_option("--model", model_path, "model document to evaluate")->required();
  ev->add_flag("--per-instance", per_instance, "print the per-instance table");
  ev->add_option("--report", report_path, "write the per-instance table as CSV");

  auto* cv = app.add_subcommand("cv", "k-fold cross validation");
  add_data_options(cv, opt);
  add_mode_options(cv, opt);
  add_solver_options(cv, opt);
  cv->add_option("--order", opt.order, "training strategy, as in train");
  cv->add_option("--folds", folds, "fold count");
  cv->add_option("--seed", opt.seed, "fold-split seed");
  cv->add_option("--jobs", jobs, "folds trained concurrently");
  cv->add_option("--nodes", opt.nodes, "initial node budget (perfect) / node budget (sparse)");
  cv->add_option("--max-nodes", opt.max_nodes, "node budget ceiling");
  cv->add_option("--step", opt.step, "node budget increment");
  cv->add_option("--report", report_path, "write per-fold rows and aggregate as CSV");

  std::string wcnf_path;
  auto* so = app.add_subcommand("solve", "solve a WCNF file with the builtin exact solver");
  so->add_option("wcnf", wcnf_path, "partial weighted MaxSAT instance")->required();
  so->add_option("--time-limit", opt.time_limit_s, "budget in seconds (0 = none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (enc->parsed()) return cmd_encode(opt, opt.nodes, out_path, varmap_path);
    if (tr->parsed()) return cmd_train(opt, model_out);
    if (ev->parsed()) return cmd_evaluate(opt, model_path, per_instance, report_path);
    if (cv->parsed()) return cmd_cv(opt, folds, jobs, report_path);
    if (so->parsed()) return cmd_solve(wcnf_path, opt.time_limit_s);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const satdl::InconsistentDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsat;
  } catch (const satdl::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const satdl::SolveTimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const satdl::ClassTrainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
