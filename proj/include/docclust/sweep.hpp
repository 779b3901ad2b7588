#ifndef DOCCLUST_SWEEP_HPP
#define DOCCLUST_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "docclust/corpus.hpp"
#include "docclust/criterion.hpp"
#include "docclust/partitioner.hpp"

namespace docclust {

/// 2, 4, 5, 10, 15, 20, 25, 50, 75, 100, 150, 200.
std::vector<int> default_k_grid();

struct SweepConfig {
  std::vector<int> k_grid = default_k_grid();
  std::vector<CriterionKind> kinds = {CriterionKind::I2};
  Method method = Method::RepeatedBisection;
  BisectSelection bisect_selection = BisectSelection::Largest;
  std::uint64_t seed = 1;
  int repeats = 1;
  int n_trials = 10;
  int max_refine_iters = 10;
  /// When false, wall_time is recorded as 0 so output is fully reproducible.
  bool timing = true;
};

struct SweepRow {
  int k = 0;
  CriterionKind kind = CriterionKind::I2;
  double criterion_value = 0;
  double entropy = 0;
  double purity = 0;
  double wall_time = 0;
  std::uint64_t seed = 0;
};

struct CellFailure {
  int k = 0;
  CriterionKind kind = CriterionKind::I2;
  int repeat = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<CellFailure> failures;
};

/// Seed used for one (kind, k, repeat) cell of a sweep.
std::uint64_t cell_seed(std::uint64_t seed, CriterionKind kind, int k, int repeat);

/// Clusters the corpus once per (kind, k, repeat) and scores each result.
/// A failing cell is recorded in `failures` and the sweep continues.
SweepResult sweep(const Corpus &corpus, const SweepConfig &config,
                  const std::function<void(const SweepRow &)> &on_row = {});

struct Recommendation {
  int recommended_k = 0;
  double epsilon_entropy = 0.02;
  double epsilon_purity = 0.02;
  bool qualifies = false;
  std::string justification;
};

/// Smallest grid k whose entropy and purity stay within the tolerances at
/// every later grid point. Repeated rows for one k are averaged. Falls back to
/// the largest k (qualifies = false) when no point has a stable tail.
Recommendation recommend_k(std::span<const SweepRow> rows, double eps_entropy = 0.02,
                           double eps_purity = 0.02);

inline constexpr const char *kSweepCsvHeader = "k,kind,criterion_value,entropy,purity,wall_time_s,seed";

/// Rows sorted by (kind, k), floats at 6 significant digits.
void write_sweep_csv(std::ostream &out, std::vector<SweepRow> rows);
void emit_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &path);

std::vector<SweepRow> read_sweep_csv(std::istream &in, const std::string &source = "<stream>");
std::vector<SweepRow> load_sweep_csv(const std::filesystem::path &path);

/// key=value block: kind (when given), recommended_k, eps_e, eps_p, qualifies,
/// justification.
void write_recommendation(std::ostream &out, const Recommendation &rec, const std::string &kind = {});
void emit_recommendation(const Recommendation &rec, const std::filesystem::path &path,
                         const std::string &kind = {});

}  // namespace docclust

#endif  // DOCCLUST_SWEEP_HPP
