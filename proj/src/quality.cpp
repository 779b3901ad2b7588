#include "docclust/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "docclust/errors.hpp"

namespace docclust {

namespace {

long row_total(std::span<const long> row) {
  return std::accumulate(row.begin(), row.end(), 0L);
}

}  // namespace

ConfusionCounts confusion(std::span<const int> assignment, std::span<const int> labels, int k,
                          int q) {
  if (assignment.size() != labels.size())
    throw DataError("assignment has " + std::to_string(assignment.size()) +
                    " entries but there are " + std::to_string(labels.size()) + " labels");
  ConfusionCounts out;
  out.counts.assign(k, std::vector<long>(q, 0));
  out.cluster_sizes.assign(k, 0);
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const int r = assignment[j];
    if (r == -1) continue;
    const int i = labels[j];
    if (r < 0 || r >= k) throw DataError("cluster index " + std::to_string(r) + " out of range");
    if (i < 0 || i >= q) throw DataError("class id " + std::to_string(i) + " out of range");
    ++out.counts[r][i];
    ++out.cluster_sizes[r];
    ++out.n;
  }
  return out;
}

ConfusionCounts confusion(const Partition &partition, std::span<const int> labels, int q) {
  if (static_cast<int>(labels.size()) != partition.size())
    throw DataError("label count does not match partition size");
  return confusion(partition.assignment(), labels, partition.k(), q);
}

double cluster_entropy(std::span<const long> row, int q) {
  const long n_r = row_total(row);
  if (n_r <= 0) throw DataError("entropy of an empty cluster is undefined");
  if (q <= 1) return 0.0;
  double h = 0;
  for (long c : row) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n_r);
    h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(q));
}

double cluster_purity(std::span<const long> row) {
  const long n_r = row_total(row);
  if (n_r <= 0) throw DataError("purity of an empty cluster is undefined");
  return static_cast<double>(*std::max_element(row.begin(), row.end())) /
         static_cast<double>(n_r);
}

QualityReport evaluate(const ConfusionCounts &counts) {
  if (counts.n <= 0) throw DataError("no labeled documents to evaluate");
  QualityReport report;
  const double n = static_cast<double>(counts.n);
  for (int r = 0; r < counts.k(); ++r) {
    ClusterQuality cq;
    cq.size = counts.cluster_sizes[r];
    if (cq.size > 0) {
      cq.entropy = cluster_entropy(counts.counts[r], counts.q());
      cq.purity = cluster_purity(counts.counts[r]);
      report.entropy += static_cast<double>(cq.size) / n * cq.entropy;
      report.purity += static_cast<double>(cq.size) / n * cq.purity;
    }
    report.per_cluster.push_back(cq);
  }
  return report;
}

QualityReport evaluate(const Partition &partition, std::span<const int> labels, int q) {
  return evaluate(confusion(partition, labels, q));
}

}  // namespace docclust
