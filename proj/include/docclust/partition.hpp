#ifndef DOCCLUST_PARTITION_HPP
#define DOCCLUST_PARTITION_HPP

#include <span>
#include <vector>

#include "docclust/criterion.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust {

/// k-way assignment of a document set with per-cluster composites.
///
/// The set is a list of ids into a shared document array; local index j
/// refers to docs[ids[j]]. Every cluster is non-empty and cluster indices are
/// contiguous 0..k-1.
class Partition {
 public:
  /// Builds from a full assignment (one cluster index per local document).
  Partition(std::span<const SparseVectorXd> docs, std::vector<int> ids,
            std::vector<int> assignment, int k);

  /// Convenience: the set is every document in `docs`.
  Partition(std::span<const SparseVectorXd> docs, std::vector<int> assignment, int k);

  int k() const { return state_.k(); }
  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<int> &assignment() const { return assignment_; }
  const std::vector<int> &ids() const { return ids_; }
  const std::vector<int> &members(int c) const { return members_[c]; }
  const CriterionState<double> &state() const { return state_; }
  const SparseVectorXd &doc(int local) const { return docs_[ids_[local]]; }
  std::span<const SparseVectorXd> docs() const { return docs_; }

  double value(CriterionKind kind) const { return state_.value(kind); }

  /// Change in `kind` if local document `doc` moved to cluster `to`.
  double delta_move(int doc, int from, int to, CriterionKind kind) const;

  void move(int doc, int to);

  /// Assignment expressed over the ids (global document index -> cluster).
  std::vector<int> assignment_by_id(int n_total) const;

 private:
  void check_doc(int doc, int from) const;

  std::span<const SparseVectorXd> docs_;
  std::vector<int> ids_;
  std::vector<int> assignment_;
  std::vector<std::vector<int>> members_;
  std::vector<int> position_;  // index of each document inside members_[c]
  CriterionState<double> state_;
};

/// Identity id list 0..n-1.
std::vector<int> iota_ids(int n);

}  // namespace docclust

#endif  // DOCCLUST_PARTITION_HPP
