#include "docclust/partitioner.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "docclust/errors.hpp"

namespace docclust {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_k(int k, std::size_t n) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (static_cast<std::size_t>(k) > n)
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the number of documents (" +
                          std::to_string(n) + ")");
}

void check_trials(int n_trials) {
  if (n_trials < 1) throw InvalidArgument("n_trials must be at least 1");
}

int uniform_index(Rng &rng, int size) {
  return std::uniform_int_distribution<int>(0, size - 1)(rng);
}

/// Keeps the first trial among equals so results do not depend on ordering.
void keep_best(std::optional<Partition> &best, double &best_value, Partition candidate,
               CriterionKind kind) {
  const double v = candidate.value(kind);
  if (!best || is_better(v, best_value, kind)) {
    best_value = v;
    best.emplace(std::move(candidate));
  }
}

int largest_cluster(const std::vector<std::vector<int>> &clusters) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(clusters.size()); ++c)
    if (clusters[c].size() > clusters[best].size()) best = c;
  return best;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::RepeatedBisection: return "rb";
    case Method::Direct: return "direct";
    case Method::Agglomerative: return "agglo";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string &name) {
  if (name == "rb") return Method::RepeatedBisection;
  if (name == "direct") return Method::Direct;
  if (name == "agglo") return Method::Agglomerative;
  return std::nullopt;
}

std::string to_string(BisectSelection selection) {
  return selection == BisectSelection::Largest ? "largest" : "best-gain";
}

std::optional<BisectSelection> parse_bisect_selection(const std::string &name) {
  if (name == "largest") return BisectSelection::Largest;
  if (name == "best-gain") return BisectSelection::BestGain;
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t s : stream) h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
  return h;
}

int refine(Partition &partition, CriterionKind kind, int max_sweeps, Rng &rng,
           std::vector<double> *trace) {
  if (trace) trace->push_back(partition.value(kind));
  std::vector<int> order = iota_ids(partition.size());
  int total = 0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    int moves = 0;
    for (int j : order) {
      const int from = partition.assignment()[j];
      const auto choice = partition.state().best_move(partition.doc(j), from, kind);
      if (choice.to < 0) continue;
      partition.move(j, choice.to);
      ++moves;
      if (trace) trace->push_back(partition.value(kind));
    }
    total += moves;
    if (moves == 0) break;
  }
  return total;
}

Partition bisect(std::span<const SparseVectorXd> docs, std::vector<int> ids, CriterionKind kind,
                 int n_trials, int max_refine_iters, std::uint64_t seed) {
  const int m = static_cast<int>(ids.size());
  if (m < 2) throw InvalidArgument("bisect needs at least two documents");
  check_trials(n_trials);
  if (m == 2) return Partition(docs, std::move(ids), {0, 1}, 2);

  std::optional<Partition> best;
  double best_value = 0;
  for (int trial = 0; trial < n_trials; ++trial) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    const int a = uniform_index(rng, m);
    int b = uniform_index(rng, m - 1);
    if (b >= a) ++b;

    const SparseVectorXd &seed_a = docs[ids[a]];
    const SparseVectorXd &seed_b = docs[ids[b]];
    std::vector<int> assignment(m);
    for (int j = 0; j < m; ++j) {
      if (j == a || j == b) {
        assignment[j] = j == a ? 0 : 1;
        continue;
      }
      const SparseVectorXd &d = docs[ids[j]];
      assignment[j] = dot(d, seed_b) > dot(d, seed_a) ? 1 : 0;
    }
    Partition p(docs, ids, std::move(assignment), 2);
    refine(p, kind, max_refine_iters, rng);
    keep_best(best, best_value, std::move(p), kind);
  }
  return std::move(*best);
}

Partition repeated_bisection(const Corpus &corpus, const ClusterConfig &config) {
  const int n = static_cast<int>(corpus.n());
  check_k(config.k, corpus.n());
  check_trials(config.n_trials);
  std::span<const SparseVectorXd> docs(corpus.docs);

  std::vector<std::vector<int>> clusters{iota_ids(n)};
  std::vector<int> assignment(n, 0);

  auto split_of = [&](int step, int c) {
    return bisect(docs, clusters[c], config.kind, config.n_trials, config.max_refine_iters,
                  derive_seed(config.seed, {static_cast<std::uint64_t>(step),
                                            static_cast<std::uint64_t>(c)}));
  };
  auto apply_split = [](std::vector<std::vector<int>> &cl, std::vector<int> &asg, int c,
                        const Partition &split) {
    const int child = static_cast<int>(cl.size());
    std::vector<int> keep, moved;
    for (int j = 0; j < split.size(); ++j)
      (split.assignment()[j] == 0 ? keep : moved).push_back(split.ids()[j]);
    for (int id : moved) asg[id] = child;
    cl[c] = std::move(keep);
    cl.push_back(std::move(moved));
  };

  for (int step = 1; step < config.k; ++step) {
    if (config.bisect_selection == BisectSelection::Largest) {
      const int c = largest_cluster(clusters);
      apply_split(clusters, assignment, c, split_of(step, c));
      continue;
    }
    int best_c = -1;
    double best_value = 0;
    std::optional<Partition> best_split;
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
      if (clusters[c].size() < 2) continue;
      Partition split = split_of(step, c);
      auto cl = clusters;
      auto asg = assignment;
      apply_split(cl, asg, c, split);
      const double v = Partition(docs, asg, step + 1).value(config.kind);
      if (best_c < 0 || is_better(v, best_value, config.kind)) {
        best_c = c;
        best_value = v;
        best_split.emplace(std::move(split));
      }
    }
    apply_split(clusters, assignment, best_c, *best_split);
  }
  return Partition(docs, std::move(assignment), config.k);
}

Partition direct_kway(const Corpus &corpus, const ClusterConfig &config) {
  const int n = static_cast<int>(corpus.n());
  const int k = config.k;
  check_k(k, corpus.n());
  check_trials(config.n_trials);
  std::span<const SparseVectorXd> docs(corpus.docs);

  std::optional<Partition> best;
  double best_value = 0;
  for (int trial = 0; trial < config.n_trials; ++trial) {
    Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(trial)}));
    std::vector<int> pool = iota_ids(n);
    for (int c = 0; c < k; ++c) std::swap(pool[c], pool[c + uniform_index(rng, n - c)]);

    std::vector<int> assignment(n, 0);
    std::vector<std::vector<int>> members(k);
    for (int j = 0; j < n; ++j) {
      int arg = 0;
      double top = dot(docs[j], docs[pool[0]]);
      for (int c = 1; c < k; ++c) {
        const double s = dot(docs[j], docs[pool[c]]);
        if (s > top) {
          top = s;
          arg = c;
        }
      }
      assignment[j] = arg;
      members[arg].push_back(j);
    }

    for (int c = 0; c < k; ++c) {
      if (!members[c].empty()) continue;
      const int donor = largest_cluster(members);
      DenseVectorXd centroid = DenseVectorXd::Zero(static_cast<Eigen::Index>(corpus.vocab_size));
      for (int j : members[donor]) centroid += docs[j];
      std::size_t pick = 0;
      double lowest = docs[members[donor][0]].dot(centroid);
      for (std::size_t i = 1; i < members[donor].size(); ++i) {
        const double s = docs[members[donor][i]].dot(centroid);
        if (s < lowest) {
          lowest = s;
          pick = i;
        }
      }
      const int stolen = members[donor][pick];
      members[donor].erase(members[donor].begin() + static_cast<std::ptrdiff_t>(pick));
      members[c].push_back(stolen);
      assignment[stolen] = c;
    }

    Partition p(docs, std::move(assignment), k);
    refine(p, config.kind, config.max_refine_iters, rng);
    keep_best(best, best_value, std::move(p), config.kind);
  }
  return std::move(*best);
}

Partition agglomerative(const Corpus &corpus, int k) {
  const int n = static_cast<int>(corpus.n());
  check_k(k, corpus.n());
  std::span<const SparseVectorXd> docs(corpus.docs);

  // Upper-triangular store of dot(D_a, D_b) for a < b; sums stay exact under
  // merging, averages are formed on demand.
  std::vector<double> cross(static_cast<std::size_t>(n) * (n - 1) / 2);
  auto at = [n](int a, int b) -> std::size_t {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * n - static_cast<std::size_t>(a) * (a + 1) / 2 +
           static_cast<std::size_t>(b - a - 1);
  };
  {
    DenseVectorXd scratch = DenseVectorXd::Zero(static_cast<Eigen::Index>(corpus.vocab_size));
    for (int a = 0; a < n; ++a) {
      scratch.setZero();
      scratch += docs[a];
      for (int b = a + 1; b < n; ++b) cross[at(a, b)] = docs[b].dot(scratch);
    }
  }

  std::vector<double> size(n, 1.0);
  std::vector<char> active(n, 1);
  std::vector<std::vector<int>> members(n);
  for (int a = 0; a < n; ++a) members[a] = {a};
  std::vector<int> best(n, -1);
  std::vector<double> best_avg(n, 0.0);

  auto average = [&](int a, int b) { return cross[at(a, b)] / (size[a] * size[b]); };
  auto rescan = [&](int a) {
    best[a] = -1;
    for (int b = a + 1; b < n; ++b) {
      if (!active[b]) continue;
      const double s = average(a, b);
      if (best[a] < 0 || s > best_avg[a]) {
        best[a] = b;
        best_avg[a] = s;
      }
    }
  };
  for (int a = 0; a < n; ++a) rescan(a);

  for (int clusters = n; clusters > k; --clusters) {
    int a = -1;
    for (int c = 0; c < n; ++c)
      if (active[c] && best[c] >= 0 && (a < 0 || best_avg[c] > best_avg[a])) a = c;
    const int b = best[a];

    for (int c = 0; c < n; ++c)
      if (active[c] && c != a && c != b) cross[at(a, c)] += cross[at(b, c)];
    size[a] += size[b];
    active[b] = 0;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();

    rescan(a);
    for (int c = 0; c < b; ++c) {
      if (!active[c] || c == a) continue;
      if (best[c] == a || best[c] == b) {
        rescan(c);
      } else if (c < a) {
        const double s = average(c, a);
        if (s > best_avg[c] || (s == best_avg[c] && a < best[c])) {
          best[c] = a;
          best_avg[c] = s;
        }
      }
    }
  }

  std::vector<int> assignment(n, -1);
  int next = 0;
  for (int a = 0; a < n; ++a) {
    if (!active[a]) continue;
    for (int j : members[a]) assignment[j] = next;
    ++next;
  }
  return Partition(docs, std::move(assignment), k);
}

ClusteringResult run_clustering(const Corpus &corpus, const ClusterConfig &config) {
  check_k(config.k, corpus.n());
  check_trials(config.n_trials);
  const auto start = std::chrono::steady_clock::now();
  std::optional<Partition> result;
  switch (config.method) {
    case Method::RepeatedBisection: result.emplace(repeated_bisection(corpus, config)); break;
    case Method::Direct: result.emplace(direct_kway(corpus, config)); break;
    case Method::Agglomerative: result.emplace(agglomerative(corpus, config.k)); break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(*result), elapsed.count()};
}

}  // namespace docclust
