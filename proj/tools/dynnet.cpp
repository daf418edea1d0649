// Command-line front end: infer / simulate / bench / eval.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "dynnet/io.hpp"
#include "dynnet/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dynnet;

namespace {

// Exit-code taxonomy (documented in the README):
//   0 success, 2 usage / file format, 3 data (missing values, constant or
//   empty columns), 4 singular covariance, 5 solver, 6 penalty spec,
//   7 degenerate classification, 8 simulation, 1 anything else.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const FileFormatError*>(&e)) return 2;
  if (dynamic_cast<const ConstantColumn*>(&e) ||
      dynamic_cast<const MissingValueWithImputeOff*>(&e) ||
      dynamic_cast<const AllMissingColumn*>(&e))
    return 3;
  if (dynamic_cast<const SingularCovariance*>(&e)) return 4;
  if (dynamic_cast<const SingularActiveBlock*>(&e) ||
      dynamic_cast<const NonConvergence*>(&e))
    return 5;
  if (dynamic_cast<const MissingInit*>(&e) ||
      dynamic_cast<const MissingClassification*>(&e) ||
      dynamic_cast<const NonPositiveRho*>(&e) ||
      dynamic_cast<const AllInfinitePenalties*>(&e))
    return 6;
  if (dynamic_cast<const DegenerateInput*>(&e)) return 7;
  if (dynamic_cast<const InfeasibleEdgeCount*>(&e) ||
      dynamic_cast<const SingularSupportBlock*>(&e))
    return 8;
  return 1;
}

PenaltyRegime parse_regime(const std::string& s) {
  if (s == "lasso") return PenaltyRegime::Lasso;
  if (s == "adaptive") return PenaltyRegime::Adaptive;
  if (s == "known") return PenaltyRegime::KnownClasses;
  if (s == "inferred") return PenaltyRegime::InferredClasses;
  throw CLI::ValidationError("penalty must be lasso|adaptive|known|inferred");
}

Criterion parse_criterion(const std::string& s) {
  if (s == "bic") return Criterion::BIC;
  if (s == "aic") return Criterion::AIC;
  throw CLI::ValidationError("criterion must be bic|aic");
}

std::string regime_name(PenaltyRegime r) {
  switch (r) {
    case PenaltyRegime::Lasso: return "lasso";
    case PenaltyRegime::Adaptive: return "adaptive";
    case PenaltyRegime::KnownClasses: return "known";
    case PenaltyRegime::InferredClasses: return "inferred";
  }
  return "?";
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("DYNNET_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

struct InferArgs {
  std::string data, classes_file, out = "dynnet_out";
  std::string penalty = "lasso", criterion = "bic", init_criterion = "bic";
  double ratio = 2.0;
  int grid_size = 50;
  int seed = 0;
  int threads = 0;
  bool impute = false;
  bool dot = false;
};

int cmd_infer(const InferArgs& a) {
  const RawMatrix raw = read_matrix(a.data);
  const TimeCourseMatrix X = standardize(raw.values, raw.names, a.impute);
  const EmpiricalMoments m = empirical_moments(X);

  PipelineConfig cfg;
  cfg.regime = parse_regime(a.penalty);
  cfg.criterion = parse_criterion(a.criterion);
  cfg.init_criterion = parse_criterion(a.init_criterion);
  cfg.ratio = a.ratio;
  cfg.grid_size = a.grid_size;
  cfg.seed = a.seed;
  cfg.solver.threads = resolve_threads(a.threads);
  int defaulted = 0;
  if (cfg.regime == PenaltyRegime::KnownClasses) {
    if (a.classes_file.empty())
      throw MissingClassification();
    cfg.known_classes = read_classes(a.classes_file, X.names, &defaulted);
  }

  const PipelineResult res = run_inference(m, cfg);

  fs::create_directories(a.out);
  const fs::path out(a.out);
  write_edge_list((out / "edges.csv").string(), res.best.A_hat, X.names);
  write_matrix((out / "adjacency.csv").string(), res.best.A_hat, X.names);
  write_path_table((out / "path.csv").string(), res.path);
  if (res.classes_used)
    write_classes((out / "classes.csv").string(), *res.classes_used, X.names);
  if (a.dot) write_dot((out / "network.dot").string(), res.best.A_hat, X.names);

  std::ofstream summary(out / "summary.txt");
  summary << std::setprecision(12);
  summary << "command: infer\n"
          << "penalty: " << a.penalty << "\n"
          << "criterion: " << a.criterion << "\n"
          << "ratio: " << a.ratio << "\n"
          << "seed: " << a.seed << "\n"
          << "n: " << m.n << "\np: " << m.p << "\n"
          << "grid_size: " << a.grid_size << "\n"
          << "grid_points_solved: " << res.path.estimates.size() << "\n"
          << "chosen_rho: " << res.best.rho << "\n"
          << "df: " << res.best.df << "\n"
          << "bic: " << res.best.bic << "\naic: " << res.best.aic << "\n"
          << "null_model_selected: " << (res.best.df == 0 ? "yes" : "no") << "\n";
  if (res.null_init) summary << "initial_lasso_null: yes\n";
  if (defaulted > 0) {
    summary << "classes_defaulted_to_leaf: " << defaulted << "\n";
    std::cerr << "warning: " << defaulted
              << " variable(s) missing from classes file, defaulted to leaf\n";
  }
  std::cout << "wrote " << out.string() << " (df=" << res.best.df
            << ", rho=" << res.best.rho << ")\n";
  return 0;
}

struct SimulateArgs {
  int p = 20, n = 20, K = -1;
  double hub_prob = 0.1, hub_to_leaf = 0.85, sigma2 = 0.1;
  int replicates = 1;
  unsigned seed = 0;
  std::string out = "dynnet_sim";
};

int cmd_simulate(const SimulateArgs& a) {
  HubGraphConfig cfg{a.p, a.K, a.hub_prob, a.hub_to_leaf};
  fs::create_directories(a.out);
  for (int r = 0; r < a.replicates; ++r) {
    std::mt19937_64 rng = replicate_rng(a.seed, r);
    const unsigned inst_seed = static_cast<unsigned>(rng());
    const SimulatedInstance inst = simulate_instance(cfg, a.n, a.sigma2, inst_seed);
    const std::string tag = a.replicates == 1 ? "" : "_" + std::to_string(r);
    const fs::path out(a.out);
    write_matrix((out / ("data" + tag + ".csv")).string(), inst.X.values,
                 inst.X.names);
    write_edge_list((out / ("truth" + tag + ".csv")).string(), inst.A_true,
                    inst.X.names);
    write_classes((out / ("classes" + tag + ".csv")).string(), inst.classes,
                  inst.X.names);
  }
  std::cout << "wrote " << a.replicates << " replicate(s) to " << a.out << "\n";
  return 0;
}

struct EvalArgs {
  std::string estimate, truth, data, out;
  bool exclude_diagonal = false;
};

int cmd_eval(const EvalArgs& a) {
  std::vector<std::string> names;
  if (!a.data.empty()) {
    names = read_matrix(a.data).names;
  } else {
    // fall back to the union of names appearing in either edge list
    std::set<std::string> seen;
    for (const std::string& path : {a.truth, a.estimate}) {
      std::ifstream in(path);
      if (!in) throw Error("cannot open " + path);
      std::string line;
      while (std::getline(in, line)) {
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        std::istringstream ss(line);
        std::string src, dst;
        if (std::getline(ss, src, delim) && std::getline(ss, dst, delim)) {
          seen.insert(src);
          seen.insert(dst);
        }
      }
    }
    names.assign(seen.begin(), seen.end());
  }
  if (names.empty()) throw Error("no variables found");

  const EdgeSet truth = read_edge_list(a.truth, names);
  const EdgeSet est_edges = read_edge_list(a.estimate, names);
  const int p = static_cast<int>(names.size());
  Eigen::MatrixXd A_hat = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [i, j] : est_edges) A_hat(i, j) = 1.0;

  const ConfusionCounts c = confusion(A_hat, truth, a.exclude_diagonal);
  const Rates r = rates(c);

  std::ostream* outp = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error("cannot write " + a.out);
    outp = &file;
  }
  auto fmt = [](const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string("NA");
  };
  *outp << "tp," << c.tp << "\nfp," << c.fp << "\ntn," << c.tn << "\nfn,"
        << c.fn << "\nprecision," << fmt(r.precision) << "\nrecall,"
        << fmt(r.recall) << "\nfallout," << fmt(r.fallout) << "\n";
  return 0;
}

struct BenchArgs {
  std::vector<std::string> settings;  // "p,n,replicates"
  double ratio = 2.0, sigma2 = 0.1;
  int grid_size = 50;
  unsigned seed = 0;
  int threads = 0;
  std::string out = "dynnet_bench";
};

struct ReplicateRow {
  bool ok = false;
  std::map<std::string, Rates> by_method;
  double irrep_failing = 0.0;
};

int cmd_bench(const BenchArgs& a) {
  fs::create_directories(a.out);
  std::ofstream table(fs::path(a.out) / "metrics.csv");
  table << "setting,method,criterion,replicate,precision,recall,fallout\n";
  table << std::setprecision(10);
  std::ofstream agg(fs::path(a.out) / "aggregate.csv");
  agg << "setting,method,criterion,mean_precision,se_precision,defined_precision,"
         "mean_recall,se_recall,mean_fallout,se_fallout,failed_replicates\n";
  agg << std::setprecision(6);
  std::ofstream irrep(fs::path(a.out) / "irrepresentability.csv");
  irrep << "setting,mean_fraction_failing,se\n" << std::setprecision(6);

  const std::vector<std::pair<PenaltyRegime, Criterion>> methods = {
      {PenaltyRegime::Lasso, Criterion::BIC},
      {PenaltyRegime::Lasso, Criterion::AIC},
      {PenaltyRegime::Adaptive, Criterion::BIC},
      {PenaltyRegime::Adaptive, Criterion::AIC},
      {PenaltyRegime::KnownClasses, Criterion::BIC},
      {PenaltyRegime::KnownClasses, Criterion::AIC},
      {PenaltyRegime::InferredClasses, Criterion::BIC},
      {PenaltyRegime::InferredClasses, Criterion::AIC},
  };

  const int nthreads = resolve_threads(a.threads);

  for (const std::string& setting : a.settings) {
    int p, n, reps;
    if (std::sscanf(setting.c_str(), "%d,%d,%d", &p, &n, &reps) != 3)
      throw Error("setting must be 'p,n,replicates', got '" + setting + "'");
    const std::string tag = std::to_string(p) + "x" + std::to_string(n);

    std::vector<ReplicateRow> rows(reps);
    std::vector<double> irrep_vals(reps, 0.0);
    std::vector<bool> irrep_ok(reps, false);

    auto run_replicates = [&](int lo, int hi) {
      for (int r = lo; r < hi; ++r) {
        try {
          std::mt19937_64 rng = replicate_rng(a.seed, r);
          HubGraphConfig cfg{p, -1, 0.1, 0.85};
          const SimulatedInstance inst =
              simulate_instance(cfg, n, a.sigma2, static_cast<unsigned>(rng()));
          const EmpiricalMoments m = empirical_moments(inst.X);

          try {
            rows[r].irrep_failing =
                check_irrepresentability(m, inst.A_true).fraction_failing;
            irrep_vals[r] = rows[r].irrep_failing;
            irrep_ok[r] = true;
          } catch (const SingularSupportBlock&) {
          }

          for (const auto& [regime, crit] : methods) {
            PipelineConfig pc;
            pc.regime = regime;
            pc.criterion = crit;
            pc.ratio = a.ratio;
            pc.grid_size = a.grid_size;
            if (regime == PenaltyRegime::KnownClasses)
              pc.known_classes = inst.classes;
            const PipelineResult res = run_inference(m, pc);
            const std::string key = regime_name(regime) + "," +
                                    (crit == Criterion::BIC ? "bic" : "aic");
            rows[r].by_method[key] =
                rates(confusion(res.best.A_hat, inst.edges));
          }
          rows[r].ok = true;
        } catch (const std::exception& e) {
          std::cerr << "replicate " << r << " (" << tag << ") failed: "
                    << e.what() << "\n";
        }
      }
    };

    if (nthreads == 1) {
      run_replicates(0, reps);
    } else {
      std::vector<std::thread> pool;
      const int chunk = (reps + nthreads - 1) / nthreads;
      for (int t = 0; t < nthreads; ++t)
        pool.emplace_back(run_replicates, t * chunk,
                          std::min(reps, (t + 1) * chunk));
      for (auto& th : pool) th.join();
    }

    int failed = 0;
    for (int r = 0; r < reps; ++r)
      if (!rows[r].ok) ++failed;

    for (const auto& [regime, crit] : methods) {
      const std::string key = regime_name(regime) + "," +
                              (crit == Criterion::BIC ? "bic" : "aic");
      std::vector<double> prec, rec, fall;
      for (int r = 0; r < reps; ++r) {
        if (!rows[r].ok) continue;
        const Rates& rr = rows[r].by_method.at(key);
        auto fmt = [](const std::optional<double>& v) {
          return v ? std::to_string(*v) : std::string("NA");
        };
        table << tag << "," << key << "," << r << "," << fmt(rr.precision)
              << "," << fmt(rr.recall) << "," << fmt(rr.fallout) << "\n";
        if (rr.precision) prec.push_back(*rr.precision);
        if (rr.recall) rec.push_back(*rr.recall);
        if (rr.fallout) fall.push_back(*rr.fallout);
      }
      auto mean_se = [](const std::vector<double>& v) -> std::pair<double, double> {
        if (v.empty()) return {std::nan(""), std::nan("")};
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= v.size();
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var = v.size() > 1 ? var / (v.size() - 1) : 0.0;
        return {mean, std::sqrt(var / v.size())};
      };
      const auto [mp, sp] = mean_se(prec);
      const auto [mr, sr] = mean_se(rec);
      const auto [mf, sf] = mean_se(fall);
      agg << tag << "," << key << "," << mp << "," << sp << "," << prec.size()
          << "," << mr << "," << sr << "," << mf << "," << sf << "," << failed
          << "\n";
    }

    std::vector<double> iv;
    for (int r = 0; r < reps; ++r)
      if (irrep_ok[r]) iv.push_back(irrep_vals[r]);
    double mean = 0.0;
    for (double x : iv) mean += x;
    if (!iv.empty()) mean /= iv.size();
    double var = 0.0;
    for (double x : iv) var += (x - mean) * (x - mean);
    var = iv.size() > 1 ? var / (iv.size() - 1) : 0.0;
    irrep << tag << "," << mean << "," << std::sqrt(var / std::max<size_t>(iv.size(), 1))
          << "\n";
    std::cout << tag << ": " << reps - failed << "/" << reps
              << " replicates ok, irrepresentability failing fraction " << mean
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse directed network inference from time-course data"};
  app.require_subcommand(1);
  app.set_config("--config");

  InferArgs ia;
  auto* infer = app.add_subcommand("infer", "infer a network from a data matrix");
  infer->add_option("--data", ia.data, "delimited time-course matrix")->required();
  infer->add_option("--penalty", ia.penalty, "lasso|adaptive|known|inferred");
  infer->add_option("--classes", ia.classes_file, "known classes file (name,hub|leaf)");
  infer->add_option("--criterion", ia.criterion, "bic|aic");
  infer->add_option("--init-criterion", ia.init_criterion, "criterion for the initial Lasso");
  infer->add_option("--ratio", ia.ratio, "leaf/hub penalty ratio (> 1)");
  infer->add_option("--grid-size", ia.grid_size, "penalty grid size");
  infer->add_option("--seed", ia.seed, "random seed");
  infer->add_option("--threads", ia.threads, "worker threads");
  infer->add_flag("--impute", ia.impute, "impute missing values");
  infer->add_flag("--dot", ia.dot, "also write a dot-format graph");
  infer->add_option("--out", ia.out, "output directory");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "generate synthetic instances");
  sim->add_option("--p", sa.p, "number of variables");
  sim->add_option("--n", sa.n, "number of transitions");
  sim->add_option("--K", sa.K, "edge count (default 2p)");
  sim->add_option("--hub-prob", sa.hub_prob, "hub probability");
  sim->add_option("--hub-to-leaf", sa.hub_to_leaf, "hub->leaf edge fraction");
  sim->add_option("--sigma2", sa.sigma2, "noise variance");
  sim->add_option("--replicates", sa.replicates, "replicate count");
  sim->add_option("--seed", sa.seed, "master seed");
  sim->add_option("--out", sa.out, "output directory");

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "score an edge list against a truth");
  ev->add_option("--estimate", ea.estimate, "estimated edge list")->required();
  ev->add_option("--truth", ea.truth, "truth edge list")->required();
  ev->add_option("--data", ea.data, "data matrix, used for the variable set");
  ev->add_option("--out", ea.out, "metrics output file (default stdout)");
  ev->add_flag("--exclude-diagonal", ea.exclude_diagonal, "skip self-loops");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "simulation benchmark");
  bench->add_option("--setting", ba.settings, "p,n,replicates (repeatable)")->required();
  bench->add_option("--ratio", ba.ratio, "leaf/hub penalty ratio");
  bench->add_option("--sigma2", ba.sigma2, "noise variance");
  bench->add_option("--grid-size", ba.grid_size, "penalty grid size");
  bench->add_option("--seed", ba.seed, "master seed");
  bench->add_option("--threads", ba.threads, "worker threads");
  bench->add_option("--out", ba.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*infer) return cmd_infer(ia);
    if (*sim) return cmd_simulate(sa);
    if (*ev) return cmd_eval(ea);
    if (*bench) return cmd_bench(ba);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
