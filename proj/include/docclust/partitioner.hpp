#ifndef DOCCLUST_PARTITIONER_HPP
#define DOCCLUST_PARTITIONER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "docclust/corpus.hpp"
#include "docclust/criterion.hpp"
#include "docclust/partition.hpp"

namespace docclust {

enum class Method { RepeatedBisection, Direct, Agglomerative };
enum class BisectSelection { Largest, BestGain };

std::string to_string(Method method);
std::optional<Method> parse_method(const std::string &name);
std::string to_string(BisectSelection selection);
std::optional<BisectSelection> parse_bisect_selection(const std::string &name);

struct ClusterConfig {
  CriterionKind kind = CriterionKind::I2;
  int k = 2;
  int n_trials = 10;
  int max_refine_iters = 10;
  std::uint64_t seed = 1;
  Method method = Method::RepeatedBisection;
  BisectSelection bisect_selection = BisectSelection::Largest;
};

using Rng = std::mt19937_64;

/// Mixes a base seed with stream coordinates into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

/// Move-based refinement: visits documents in random order and applies the
/// best strictly improving move to any other cluster. Stops after a sweep with
/// no moves or after `max_sweeps` sweeps. When `trace` is given, the criterion
/// value is appended before refinement and after every accepted move.
/// Returns the number of accepted moves.
int refine(Partition &partition, CriterionKind kind, int max_sweeps, Rng &rng,
           std::vector<double> *trace = nullptr);

/// Best-of-`n_trials` two-way split of the documents docs[ids[*]].
Partition bisect(std::span<const SparseVectorXd> docs, std::vector<int> ids, CriterionKind kind,
                 int n_trials, int max_refine_iters, std::uint64_t seed);

Partition repeated_bisection(const Corpus &corpus, const ClusterConfig &config);
Partition direct_kway(const Corpus &corpus, const ClusterConfig &config);

/// Average-link agglomeration under cosine similarity, stopped at k clusters.
/// Cluster indices follow the smallest member document index.
Partition agglomerative(const Corpus &corpus, int k);

struct ClusteringResult {
  Partition partition;
  double wall_time = 0;  // seconds, clustering call only
};

ClusteringResult run_clustering(const Corpus &corpus, const ClusterConfig &config);

}  // namespace docclust

#endif  // DOCCLUST_PARTITIONER_HPP
