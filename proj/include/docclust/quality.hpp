#ifndef DOCCLUST_QUALITY_HPP
#define DOCCLUST_QUALITY_HPP

#include <span>
#include <vector>

#include "docclust/partition.hpp"

namespace docclust {

/// counts[r][i]: documents of class i assigned to cluster r.
struct ConfusionCounts {
  std::vector<std::vector<long>> counts;
  std::vector<long> cluster_sizes;
  long n = 0;

  int k() const { return static_cast<int>(counts.size()); }
  int q() const { return counts.empty() ? 0 : static_cast<int>(counts.front().size()); }
};

struct ClusterQuality {
  long size = 0;
  double entropy = 0;
  double purity = 0;
};

struct QualityReport {
  double entropy = 0;
  double purity = 0;
  std::vector<ClusterQuality> per_cluster;
};

/// Tabulates cluster-by-class counts. Entries of `assignment` equal to -1 are
/// skipped (unclustered documents).
ConfusionCounts confusion(std::span<const int> assignment, std::span<const int> labels, int k,
                          int q);
ConfusionCounts confusion(const Partition &partition, std::span<const int> labels, int q);

/// Normalized class entropy of one cluster, in [0, 1]; 0 when q == 1.
double cluster_entropy(std::span<const long> row, int q);
double cluster_purity(std::span<const long> row);

QualityReport evaluate(const ConfusionCounts &counts);
QualityReport evaluate(const Partition &partition, std::span<const int> labels, int q);

}  // namespace docclust

#endif  // DOCCLUST_QUALITY_HPP
