#include "docclust/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "docclust/errors.hpp"
#include "docclust/quality.hpp"

namespace docclust {

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int kind_rank(CriterionKind kind) { return static_cast<int>(kind); }

std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T field_as(const std::string &text, const std::string &where) {
  T value{};
  const char *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw DataError(where + ": bad number '" + text + "'");
  return value;
}

void validate(const SweepConfig &config) {
  if (config.k_grid.empty()) throw InvalidArgument("k grid is empty");
  for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
    if (config.k_grid[i] < 1) throw InvalidArgument("k grid values must be >= 1");
    if (i > 0 && config.k_grid[i] <= config.k_grid[i - 1])
      throw InvalidArgument("k grid must be strictly ascending");
  }
  if (config.kinds.empty()) throw InvalidArgument("no criterion kinds to sweep");
  if (config.repeats < 1) throw InvalidArgument("repeats must be >= 1");
}

}  // namespace

std::vector<int> default_k_grid() { return {2, 4, 5, 10, 15, 20, 25, 50, 75, 100, 150, 200}; }

std::uint64_t cell_seed(std::uint64_t seed, CriterionKind kind, int k, int repeat) {
  return derive_seed(seed, {static_cast<std::uint64_t>(kind_rank(kind)),
                            static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(repeat)});
}

SweepResult sweep(const Corpus &corpus, const SweepConfig &config,
                  const std::function<void(const SweepRow &)> &on_row) {
  if (!corpus.has_labels()) throw DataError("sweep needs class labels for entropy and purity");
  validate(config);

  SweepResult result;
  for (CriterionKind kind : config.kinds) {
    for (int k : config.k_grid) {
      for (int repeat = 0; repeat < config.repeats; ++repeat) {
        ClusterConfig cc;
        cc.kind = kind;
        cc.k = k;
        cc.n_trials = config.n_trials;
        cc.max_refine_iters = config.max_refine_iters;
        cc.method = config.method;
        cc.bisect_selection = config.bisect_selection;
        cc.seed = cell_seed(config.seed, kind, k, repeat);
        try {
          const ClusteringResult run = run_clustering(corpus, cc);
          const QualityReport q = evaluate(run.partition, *corpus.labels, corpus.q);
          SweepRow row{k, kind, run.partition.value(kind), q.entropy, q.purity,
                       config.timing ? run.wall_time : 0.0, cc.seed};
          result.rows.push_back(row);
          if (on_row) on_row(row);
        } catch (const std::exception &e) {
          result.failures.push_back({k, kind, repeat, e.what()});
        }
      }
    }
  }
  return result;
}

Recommendation recommend_k(std::span<const SweepRow> rows, double eps_entropy, double eps_purity) {
  if (!rows.empty()) {
    for (const SweepRow &r : rows)
      if (r.kind != rows.front().kind)
        throw InvalidArgument("recommend_k expects rows of a single criterion kind");
  }

  struct Point {
    double entropy = 0, purity = 0;
    int count = 0;
  };
  std::map<int, Point> by_k;
  for (const SweepRow &r : rows) {
    Point &p = by_k[r.k];
    p.entropy += r.entropy;
    p.purity += r.purity;
    ++p.count;
  }
  if (by_k.size() < 3)
    throw InvalidArgument("recommend_k needs at least 3 grid points, got " +
                          std::to_string(by_k.size()));

  std::vector<int> ks;
  std::vector<double> entropy, purity;
  for (const auto &[k, p] : by_k) {
    ks.push_back(k);
    entropy.push_back(p.entropy / p.count);
    purity.push_back(p.purity / p.count);
  }

  Recommendation rec;
  rec.epsilon_entropy = eps_entropy;
  rec.epsilon_purity = eps_purity;
  // The last point has no later evidence, so it can never qualify by itself.
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    double max_de = 0, max_dp = 0;
    for (std::size_t j = i + 1; j < ks.size(); ++j) {
      max_de = std::max(max_de, std::abs(entropy[j] - entropy[i]));
      max_dp = std::max(max_dp, std::abs(purity[j] - purity[i]));
    }
    if (max_de <= eps_entropy && max_dp <= eps_purity) {
      rec.recommended_k = ks[i];
      rec.qualifies = true;
      rec.justification = "entropy " + g6(entropy[i]) + " purity " + g6(purity[i]) + " at k=" +
                          std::to_string(ks[i]) + "; over " + std::to_string(ks.size() - i - 1) +
                          " later grid points max |dE|=" + g6(max_de) +
                          " max |dP|=" + g6(max_dp);
      return rec;
    }
  }
  rec.recommended_k = ks.back();
  rec.qualifies = false;
  rec.justification = "no grid point has a stable tail within tolerance; largest k=" +
                      std::to_string(ks.back()) + " returned";
  return rec;
}

void write_sweep_csv(std::ostream &out, std::vector<SweepRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
    if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.k < b.k;
  });
  out << kSweepCsvHeader << '\n';
  for (const SweepRow &r : rows) {
    out << r.k << ',' << to_string(r.kind) << ',' << g6(r.criterion_value) << ','
        << g6(r.entropy) << ',' << g6(r.purity) << ',' << g6(r.wall_time) << ',' << r.seed
        << '\n';
  }
}

void emit_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_sweep_csv(out, rows);
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<SweepRow> read_sweep_csv(std::istream &in, const std::string &source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepCsvHeader) throw DataError(source + ":1: unexpected CSV header");

  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto f = split(line, ',');
    if (f.size() != 7) throw DataError(where + ": expected 7 fields");
    SweepRow r;
    r.k = field_as<int>(f[0], where);
    const auto kind = parse_criterion(f[1]);
    if (!kind) throw DataError(where + ": unknown criterion '" + f[1] + "'");
    r.kind = *kind;
    r.criterion_value = field_as<double>(f[2], where);
    r.entropy = field_as<double>(f[3], where);
    r.purity = field_as<double>(f[4], where);
    r.wall_time = field_as<double>(f[5], where);
    r.seed = field_as<std::uint64_t>(f[6], where);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SweepRow> load_sweep_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_sweep_csv(in, path.string());
}

void write_recommendation(std::ostream &out, const Recommendation &rec, const std::string &kind) {
  if (!kind.empty()) out << "kind=" << kind << '\n';
  out << "recommended_k=" << rec.recommended_k << '\n'
      << "eps_e=" << g6(rec.epsilon_entropy) << '\n'
      << "eps_p=" << g6(rec.epsilon_purity) << '\n'
      << "qualifies=" << (rec.qualifies ? "true" : "false") << '\n'
      << "justification=" << rec.justification << '\n';
}

void emit_recommendation(const Recommendation &rec, const std::filesystem::path &path,
                         const std::string &kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_recommendation(out, rec, kind);
}

}  // namespace docclust
