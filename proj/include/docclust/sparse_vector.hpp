#ifndef DOCCLUST_SPARSE_VECTOR_HPP
#define DOCCLUST_SPARSE_VECTOR_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstdint>
#include <span>

namespace docclust {

/// Document vector: sorted (term, weight) pairs, 0-based term indices.
template <typename Scalar>
using SparseVector = Eigen::SparseVector<Scalar>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using SparseVectorXd = SparseVector<double>;
using DenseVectorXd = DenseVector<double>;

template <typename Scalar>
inline Scalar dot(const SparseVector<Scalar> &u, const SparseVector<Scalar> &v) {
  return u.dot(v);
}

template <typename Scalar>
inline Scalar euclidean_distance(const SparseVector<Scalar> &u,
                                 const SparseVector<Scalar> &v) {
  // Merge walk over both supports; keeps the sum order independent of which
  // argument comes first so the result is exactly symmetric.
  using InnerIt = typename SparseVector<Scalar>::InnerIterator;
  InnerIt a(u), b(v);
  Scalar sum = 0;
  while (a || b) {
    Scalar diff;
    if (a && (!b || a.index() < b.index())) {
      diff = a.value();
      ++a;
    } else if (b && (!a || b.index() < a.index())) {
      diff = b.value();
      ++b;
    } else {
      diff = a.value() - b.value();
      ++a;
      ++b;
    }
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

/// Running element-wise sum of a document set with a cached squared norm.
///
/// For unit-norm documents the squared norm equals the sum of pairwise dot
/// products over all ordered pairs of members, self-pairs included, which is
/// what every clustering criterion is expressed in.
template <typename Scalar>
class CompositeVector {
 public:
  using Dense = DenseVector<Scalar>;
  using Sparse = SparseVector<Scalar>;

  /// Incremental updates tolerated before the sum is rebuilt from members.
  static constexpr std::int64_t kRefreshInterval = 10000;

  CompositeVector() = default;
  explicit CompositeVector(Eigen::Index dim) : sum_(Dense::Zero(dim)) {}

  Eigen::Index dim() const { return sum_.size(); }
  const Dense &sum() const { return sum_; }
  Scalar squared_norm() const { return squared_norm_; }
  Scalar norm() const { return std::sqrt(squared_norm_); }
  std::int64_t updates_since_refresh() const { return updates_; }
  bool needs_refresh() const { return updates_ >= kRefreshInterval; }

  Scalar dot(const Sparse &d) const { return d.dot(sum_); }
  Scalar dot(const CompositeVector &other) const { return sum_.dot(other.sum_); }

  CompositeVector &add(const Sparse &d) {
    squared_norm_ += Scalar(2) * dot(d) + d.squaredNorm();
    sum_ += d;
    ++updates_;
    return *this;
  }

  CompositeVector &remove(const Sparse &d) {
    squared_norm_ += d.squaredNorm() - Scalar(2) * dot(d);
    sum_ -= d;
    ++updates_;
    return *this;
  }

  /// Recomputes the cached norm from the stored sum.
  void recompute_norm() {
    squared_norm_ = sum_.squaredNorm();
    updates_ = 0;
  }

  /// Rebuilds the sum from scratch out of the given member documents.
  template <typename DocRange>
  void rebuild(const DocRange &members) {
    sum_.setZero();
    for (const Sparse &d : members) sum_ += d;
    recompute_norm();
  }

 private:
  Dense sum_;
  Scalar squared_norm_ = 0;
  std::int64_t updates_ = 0;
};

/// Element-wise sum of `docs`; an empty set gives the zero vector of `dim`.
template <typename Scalar>
CompositeVector<Scalar> composite(std::span<const SparseVector<Scalar>> docs,
                                  Eigen::Index dim) {
  CompositeVector<Scalar> c(dim);
  c.rebuild(docs);
  return c;
}

template <typename Scalar>
CompositeVector<Scalar> add_doc(CompositeVector<Scalar> c,
                                const SparseVector<Scalar> &d) {
  c.add(d);
  return c;
}

template <typename Scalar>
CompositeVector<Scalar> remove_doc(CompositeVector<Scalar> c,
                                   const SparseVector<Scalar> &d) {
  c.remove(d);
  return c;
}

}  // namespace docclust

#endif  // DOCCLUST_SPARSE_VECTOR_HPP
