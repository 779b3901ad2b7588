#include "docclust/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "docclust/corpus.hpp"
#include "docclust/errors.hpp"
#include "docclust/partitioner.hpp"
#include "docclust/quality.hpp"
#include "docclust/sweep.hpp"

namespace docclust {

namespace {

const std::vector<std::string> kKindNames = {"i1", "i2", "e1", "g1", "g1p", "h1", "h2"};

struct InputOptions {
  std::string matrix;
  std::string labels;
  std::string weighting = "tfidf";
};

void add_input_options(CLI::App *cmd, InputOptions &in, bool labels_required) {
  cmd->add_option("--matrix", in.matrix, "sparse doc-term matrix file")->required();
  auto *labels = cmd->add_option("--labels", in.labels, "class label file, one label per line");
  if (labels_required) labels->required();
  cmd->add_option("--weighting", in.weighting, "term weighting")
      ->check(CLI::IsMember({"none", "tfidf"}))
      ->capture_default_str();
}

Corpus load_corpus(const InputOptions &in, std::ostream &err) {
  const RawMatrix raw = load_sparse_matrix(in.matrix);
  std::optional<LabelSet> labels;
  if (!in.labels.empty()) labels = load_labels(in.labels, raw.n_docs);
  Corpus corpus = build_corpus(raw, labels, *parse_weighting(in.weighting));
  if (!corpus.dropped_rows.empty()) {
    err << "warning: dropped " << corpus.dropped_rows.size()
        << " document(s) with an all-zero vector (rows";
    for (std::size_t i = 0; i < std::min<std::size_t>(corpus.dropped_rows.size(), 10); ++i)
      err << ' ' << corpus.dropped_rows[i] + 1;
    err << (corpus.dropped_rows.size() > 10 ? " ...)\n" : ")\n");
  }
  return corpus;
}

void print_report(std::ostream &out, const QualityReport &report) {
  out << "entropy=" << report.entropy << '\n' << "purity=" << report.purity << '\n';
  out << "cluster size entropy purity\n";
  for (std::size_t r = 0; r < report.per_cluster.size(); ++r) {
    const auto &c = report.per_cluster[r];
    out << r << ' ' << c.size << ' ' << c.entropy << ' ' << c.purity << '\n';
  }
}

struct ClusterOptions {
  InputOptions in;
  std::string method = "rb";
  std::string kind = "i2";
  int k = 0;
  int trials = 10;
  int refine_iters = 10;
  std::uint64_t seed = 1;
  std::string bisect = "largest";
  std::string out;
};

int run_cluster(const ClusterOptions &o, std::ostream &out, std::ostream &err) {
  const Corpus corpus = load_corpus(o.in, err);
  ClusterConfig cc;
  cc.kind = *parse_criterion(o.kind);
  cc.k = o.k;
  cc.n_trials = o.trials;
  cc.max_refine_iters = o.refine_iters;
  cc.seed = o.seed;
  cc.method = *parse_method(o.method);
  cc.bisect_selection = *parse_bisect_selection(o.bisect);
  const ClusteringResult run = run_clustering(corpus, cc);

  std::vector<int> by_row(corpus.source_n, -1);
  for (std::size_t j = 0; j < corpus.n(); ++j)
    by_row[corpus.source_rows[j]] = run.partition.assignment()[j];

  const std::string path = o.out.empty() ? o.in.matrix + ".clustering." + std::to_string(o.k) : o.out;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write " + path);
  write_assignment(file, by_row);

  out << std::setprecision(6);
  out << "method=" << o.method << " kind=" << o.kind << " k=" << o.k << " n=" << corpus.n()
      << " seed=" << o.seed << '\n';
  out << "assignment=" << path << '\n';
  out << "criterion_value=" << run.partition.value(cc.kind) << '\n';
  out << "wall_time_s=" << run.wall_time << '\n';
  if (corpus.has_labels()) print_report(out, evaluate(run.partition, *corpus.labels, corpus.q));
  return kExitOk;
}

struct EvalOptions {
  std::string assignment;
  std::string labels;
};

int run_eval(const EvalOptions &o, std::ostream &out) {
  const std::vector<int> assignment = load_assignment(o.assignment);
  const LabelSet labels = load_labels(o.labels, assignment.size());
  int k = 0;
  for (int c : assignment) {
    if (c < -1) throw DataError(o.assignment + ": negative cluster index " + std::to_string(c));
    k = std::max(k, c + 1);
  }
  if (k == 0) throw DataError(o.assignment + ": no clustered documents");
  const QualityReport report = evaluate(confusion(assignment, labels.ids, k, labels.q()));
  out << std::setprecision(6) << "k=" << k << " q=" << labels.q() << '\n';
  print_report(out, report);
  return kExitOk;
}

struct SweepOptions {
  InputOptions in;
  std::string method = "rb";
  std::vector<std::string> kinds = {"i2"};
  std::vector<int> k_grid = default_k_grid();
  int trials = 10;
  int refine_iters = 10;
  int repeats = 1;
  std::uint64_t seed = 1;
  std::string bisect = "largest";
  std::string out;
  bool no_timing = false;
};

std::vector<CriterionKind> parse_kinds(const std::vector<std::string> &names) {
  std::vector<CriterionKind> kinds;
  for (const auto &name : names) {
    if (name == "all") return {kAllCriteria.begin(), kAllCriteria.end()};
    kinds.push_back(*parse_criterion(name));
  }
  return kinds;
}

int run_sweep(const SweepOptions &o, std::ostream &out, std::ostream &err) {
  const Corpus corpus = load_corpus(o.in, err);
  SweepConfig sc;
  sc.k_grid = o.k_grid;
  sc.kinds = parse_kinds(o.kinds);
  sc.method = *parse_method(o.method);
  sc.bisect_selection = *parse_bisect_selection(o.bisect);
  sc.seed = o.seed;
  sc.repeats = o.repeats;
  sc.n_trials = o.trials;
  sc.max_refine_iters = o.refine_iters;
  sc.timing = !o.no_timing;

  const SweepResult result = sweep(corpus, sc, [&err](const SweepRow &r) {
    err << "  " << to_string(r.kind) << " k=" << r.k << " entropy=" << r.entropy
        << " purity=" << r.purity << " time=" << r.wall_time << "s\n";
  });
  for (const auto &f : result.failures)
    err << "cell failed: kind=" << to_string(f.kind) << " k=" << f.k << " repeat=" << f.repeat
        << ": " << f.message << '\n';
  emit_csv(result.rows, o.out);
  out << "wrote " << result.rows.size() << " rows to " << o.out;
  if (!result.failures.empty()) out << " (" << result.failures.size() << " failed cells)";
  out << '\n';
  return kExitOk;
}

struct RecommendOptions {
  std::string in;
  std::string kind;
  double eps_entropy = 0.02;
  double eps_purity = 0.02;
  std::string out;
};

int run_recommend(const RecommendOptions &o, std::ostream &out) {
  const std::vector<SweepRow> rows = load_sweep_csv(o.in);
  std::vector<CriterionKind> kinds;
  if (!o.kind.empty()) {
    kinds.push_back(*parse_criterion(o.kind));
  } else {
    for (CriterionKind kind : kAllCriteria)
      if (std::any_of(rows.begin(), rows.end(), [kind](const SweepRow &r) { return r.kind == kind; }))
        kinds.push_back(kind);
  }
  if (kinds.empty()) throw DataError(o.in + ": no sweep rows");

  std::ostringstream text;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    std::vector<SweepRow> subset;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(subset),
                 [&](const SweepRow &r) { return r.kind == kinds[i]; });
    if (subset.empty()) throw DataError(o.in + ": no rows for kind " + std::string(to_string(kinds[i])));
    Recommendation rec;
    try {
      rec = recommend_k(subset, o.eps_entropy, o.eps_purity);
    } catch (const InvalidArgument &e) {
      throw DataError(std::string(to_string(kinds[i])) + ": " + e.what());
    }
    if (i > 0) text << '\n';
    write_recommendation(text, rec, std::string(to_string(kinds[i])));
  }
  if (o.out.empty()) {
    out << text.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw DataError("cannot write " + o.out);
    file << text.str();
  }
  return kExitOk;
}

void add_cluster_method_options(CLI::App *cmd, std::string &method, int &trials, int &refine_iters,
                                std::uint64_t &seed, std::string &bisect) {
  cmd->add_option("--method", method, "clustering method")
      ->check(CLI::IsMember({"rb", "direct", "agglo"}))
      ->capture_default_str();
  cmd->add_option("--trials", trials, "trials per bisection / direct run")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  cmd->add_option("--refine-iters", refine_iters, "maximum refinement sweeps")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();
  cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  cmd->add_option("--bisect", bisect, "cluster chosen for each bisection")
      ->check(CLI::IsMember({"largest", "best-gain"}))
      ->capture_default_str();
}

}  // namespace

std::vector<int> load_assignment(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open assignment file " + path.string());
  std::vector<int> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t pending_blank = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    int c = 0;
    std::string rest;
    if (!(ss >> c)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        ++pending_blank;
        continue;
      }
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad cluster index");
    }
    if (ss >> rest)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": trailing text");
    if (pending_blank > 0)
      throw DataError(path.string() + ":" + std::to_string(lineno - 1) + ": empty line");
    out.push_back(c);
  }
  return out;
}

void write_assignment(std::ostream &out, const std::vector<int> &assignment) {
  for (int c : assignment) out << c << '\n';
}

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Partitional document clustering with criterion-driven refinement"};
  app.name("docclust");
  app.require_subcommand(1);

  ClusterOptions cluster_opts;
  auto *cluster = app.add_subcommand("cluster", "cluster once and write an assignment file");
  add_input_options(cluster, cluster_opts.in, false);
  add_cluster_method_options(cluster, cluster_opts.method, cluster_opts.trials,
                             cluster_opts.refine_iters, cluster_opts.seed, cluster_opts.bisect);
  cluster->add_option("--kind", cluster_opts.kind, "criterion function")
      ->check(CLI::IsMember(kKindNames))
      ->capture_default_str();
  cluster->add_option("--k", cluster_opts.k, "number of clusters")
      ->required()
      ->check(CLI::Range(1, 1 << 30));
  cluster->add_option("--out", cluster_opts.out,
                      "assignment file (default: <matrix>.clustering.<k>)");

  EvalOptions eval_opts;
  auto *eval = app.add_subcommand("eval", "score an assignment file against class labels");
  eval->add_option("--assignment", eval_opts.assignment, "one cluster index per line")->required();
  eval->add_option("--labels", eval_opts.labels, "class label file")->required();

  SweepOptions sweep_opts;
  auto *sweep_cmd = app.add_subcommand("sweep", "cluster over a grid of k and criteria, write CSV");
  add_input_options(sweep_cmd, sweep_opts.in, true);
  add_cluster_method_options(sweep_cmd, sweep_opts.method, sweep_opts.trials,
                             sweep_opts.refine_iters, sweep_opts.seed, sweep_opts.bisect);
  std::vector<std::string> kind_names = kKindNames;
  kind_names.push_back("all");
  sweep_cmd->add_option("--kinds,--kind", sweep_opts.kinds, "criteria, comma separated, or 'all'")
      ->delimiter(',')
      ->check(CLI::IsMember(kind_names));
  sweep_cmd->add_option("--k-grid,--k", sweep_opts.k_grid, "ascending k values, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(1, 1 << 30));
  sweep_cmd->add_option("--repeats", sweep_opts.repeats, "runs per (kind, k) cell")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_opts.out, "output CSV")->required();
  sweep_cmd->add_flag("--no-timing", sweep_opts.no_timing,
                      "record wall_time_s as 0 for byte-reproducible output");

  RecommendOptions rec_opts;
  auto *recommend = app.add_subcommand("recommend", "recommend k from a sweep CSV");
  recommend->add_option("--in", rec_opts.in, "sweep CSV")->required();
  recommend->add_option("--kind", rec_opts.kind, "only this criterion")
      ->check(CLI::IsMember(kKindNames));
  recommend->add_option("--eps-entropy", rec_opts.eps_entropy, "entropy tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  recommend->add_option("--eps-purity", rec_opts.eps_purity, "purity tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  recommend->add_option("--out", rec_opts.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cluster) return run_cluster(cluster_opts, out, err);
    if (*eval) return run_eval(eval_opts, out);
    if (*sweep_cmd) {
      if (!std::is_sorted(sweep_opts.k_grid.begin(), sweep_opts.k_grid.end()) ||
          std::adjacent_find(sweep_opts.k_grid.begin(), sweep_opts.k_grid.end()) !=
              sweep_opts.k_grid.end()) {
        err << "--k-grid: values must be strictly ascending\n";
        return kExitUsage;
      }
      return run_sweep(sweep_opts, out, err);
    }
    if (*recommend) return run_recommend(rec_opts, out);
  } catch (const DataError &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace docclust
