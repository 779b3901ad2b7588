#include "docclust/partition.hpp"

#include <numeric>
#include <ranges>
#include <string>

#include "docclust/errors.hpp"

namespace docclust {

namespace {

Eigen::Index dimension_of(std::span<const SparseVectorXd> docs) {
  return docs.empty() ? 0 : docs.front().size();
}

}  // namespace

std::vector<int> iota_ids(int n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

Partition::Partition(std::span<const SparseVectorXd> docs, std::vector<int> assignment, int k)
    : Partition(docs, iota_ids(static_cast<int>(docs.size())), std::move(assignment), k) {}

Partition::Partition(std::span<const SparseVectorXd> docs, std::vector<int> ids,
                     std::vector<int> assignment, int k)
    : docs_(docs), ids_(std::move(ids)), assignment_(std::move(assignment)),
      members_(k), position_(assignment_.size(), 0), state_(dimension_of(docs), k) {
  if (k < 1) throw InvalidArgument("partition needs k >= 1");
  if (assignment_.size() != ids_.size())
    throw InvalidArgument("assignment length does not match document set size");
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const int c = assignment_[j];
    if (c < 0 || c >= k)
      throw InvalidArgument("cluster index " + std::to_string(c) + " out of range");
    position_[j] = static_cast<int>(members_[c].size());
    members_[c].push_back(static_cast<int>(j));
    state_.add(doc(static_cast<int>(j)), c);
  }
  for (int c = 0; c < k; ++c)
    if (members_[c].empty()) throw InvalidArgument("cluster " + std::to_string(c) + " is empty");
  state_.finalize();
}

void Partition::check_doc(int doc, int from) const {
  if (doc < 0 || doc >= size()) throw InvalidArgument("document index out of range");
  if (assignment_[doc] != from)
    throw InvalidArgument("document " + std::to_string(doc) + " is not in cluster " +
                          std::to_string(from));
}

double Partition::delta_move(int doc, int from, int to, CriterionKind kind) const {
  check_doc(doc, from);
  return state_.delta_move(this->doc(doc), from, to, kind);
}

void Partition::move(int doc, int to) {
  const int from = doc >= 0 && doc < size() ? assignment_[doc] : -1;
  check_doc(doc, from);
  state_.move(this->doc(doc), from, to);

  auto &src = members_[from];
  const int pos = position_[doc];
  src[pos] = src.back();
  position_[src[pos]] = pos;
  src.pop_back();
  position_[doc] = static_cast<int>(members_[to].size());
  members_[to].push_back(doc);
  assignment_[doc] = to;

  for (int c : {from, to}) {
    if (!state_.needs_refresh(c)) continue;
    auto vectors = members_[c] | std::views::transform([this](int j) -> const SparseVectorXd & {
                     return this->doc(j);
                   });
    state_.rebuild_cluster(c, vectors);
  }
}

std::vector<int> Partition::assignment_by_id(int n_total) const {
  std::vector<int> out(n_total, -1);
  for (std::size_t j = 0; j < ids_.size(); ++j) out[ids_[j]] = assignment_[j];
  return out;
}

}  // namespace docclust
