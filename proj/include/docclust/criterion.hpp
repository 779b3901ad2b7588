#ifndef DOCCLUST_CRITERION_HPP
#define DOCCLUST_CRITERION_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docclust/errors.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust {

enum class CriterionKind { I1, I2, E1, G1, G1p, H1, H2 };

enum class Direction { Maximize, Minimize };

inline constexpr std::array<CriterionKind, 7> kAllCriteria = {
    CriterionKind::I1, CriterionKind::I2, CriterionKind::E1, CriterionKind::G1,
    CriterionKind::G1p, CriterionKind::H1, CriterionKind::H2};

constexpr Direction direction(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::E1:
    case CriterionKind::G1:
    case CriterionKind::G1p:
      return Direction::Minimize;
    default:
      return Direction::Maximize;
  }
}

/// Lower-case CLI spelling: i1, i2, e1, g1, g1p, h1, h2.
constexpr std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::I1: return "i1";
    case CriterionKind::I2: return "i2";
    case CriterionKind::E1: return "e1";
    case CriterionKind::G1: return "g1";
    case CriterionKind::G1p: return "g1p";
    case CriterionKind::H1: return "h1";
    case CriterionKind::H2: return "h2";
  }
  return "?";
}

inline std::optional<CriterionKind> parse_criterion(std::string_view name) {
  for (CriterionKind kind : kAllCriteria)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

inline constexpr double kImprovementEpsilon = 1e-10;

/// Strict improvement test in the kind's optimization direction.
constexpr bool is_improvement(double delta, CriterionKind kind) {
  return direction(kind) == Direction::Maximize ? delta > kImprovementEpsilon
                                                 : delta < -kImprovementEpsilon;
}

/// True when `a` is strictly better than `b` under `kind`.
constexpr bool is_better(double a, double b, CriterionKind kind) {
  return direction(kind) == Direction::Maximize ? a > b : a < b;
}

/// Sufficient statistics of one cluster: size, ||D_i||^2, and D_i . D.
template <typename Scalar>
struct ClusterStats {
  Scalar size = 0;
  Scalar intra = 0;  // sum of sim(u, v) over ordered pairs in S_i
  Scalar cross = 0;  // sum of sim(u, v) for u in S_i, v in S
};

namespace detail {

template <typename Scalar>
void require_nondegenerate(const ClusterStats<Scalar> &c) {
  if (!(c.intra > Scalar(0)))
    throw DataError("degenerate cluster: composite vector has zero norm");
}

template <typename Scalar>
Scalar i1_term(const ClusterStats<Scalar> &c) { return c.intra / c.size; }

template <typename Scalar>
Scalar i2_term(const ClusterStats<Scalar> &c) { return std::sqrt(c.intra); }

template <typename Scalar>
Scalar e1_term(const ClusterStats<Scalar> &c) {
  return c.size * c.cross / std::sqrt(c.intra);
}

template <typename Scalar>
Scalar g1_term(const ClusterStats<Scalar> &c) { return c.cross / c.intra; }

template <typename Scalar>
Scalar g1p_term(const ClusterStats<Scalar> &c) {
  return c.size * c.size * c.cross / c.intra;
}

}  // namespace detail

/// Running totals of the additive parts every criterion is built from.
template <typename Scalar>
struct CriterionTotals {
  Scalar i1 = 0, i2 = 0, e1 = 0, g1 = 0, g1p = 0;

  void accumulate(const ClusterStats<Scalar> &c, Scalar sign = 1) {
    detail::require_nondegenerate(c);
    i1 += sign * detail::i1_term(c);
    i2 += sign * detail::i2_term(c);
    e1 += sign * detail::e1_term(c);
    g1 += sign * detail::g1_term(c);
    g1p += sign * detail::g1p_term(c);
  }

  Scalar value(CriterionKind kind) const {
    switch (kind) {
      case CriterionKind::I1: return i1;
      case CriterionKind::I2: return i2;
      case CriterionKind::E1: return e1;
      case CriterionKind::G1: return g1;
      case CriterionKind::G1p: return g1p;
      case CriterionKind::H1: return i1 / e1;
      case CriterionKind::H2: return i2 / e1;
    }
    return Scalar(0);
  }
};

/// Per-cluster composites and sizes plus the composite of the whole set.
///
/// Cluster membership lives with the owner (see Partition); the state only
/// sees documents as they are added, removed or moved.
template <typename Scalar>
class CriterionState {
 public:
  using Sparse = SparseVector<Scalar>;
  using Composite = CompositeVector<Scalar>;

  CriterionState(Eigen::Index dim, int k)
      : dim_(dim), clusters_(k, Composite(dim)), sizes_(k, 0), cross_(k, 0),
        total_(dim) {}

  int k() const { return static_cast<int>(clusters_.size()); }
  Eigen::Index dim() const { return dim_; }
  long size(int c) const { return sizes_[c]; }
  long n() const {
    long s = 0;
    for (long v : sizes_) s += v;
    return s;
  }
  const Composite &cluster(int c) const { return clusters_[c]; }
  const Composite &total() const { return total_; }
  Scalar cross(int c) const { return cross_[c]; }

  ClusterStats<Scalar> stats(int c) const {
    return {Scalar(sizes_[c]), clusters_[c].squared_norm(), cross_[c]};
  }

  /// Bulk construction step; call finalize() once every document is placed.
  void add(const Sparse &d, int c) {
    clusters_[c].add(d);
    total_.add(d);
    ++sizes_[c];
    finalized_ = false;
  }

  /// Refreshes norms, cross terms and cached totals after bulk adds.
  void finalize() {
    for (auto &c : clusters_) c.recompute_norm();
    total_.recompute_norm();
    for (int c = 0; c < k(); ++c) cross_[c] = clusters_[c].dot(total_);
    refresh_totals();
    finalized_ = true;
  }

  bool finalized() const { return finalized_; }

  Scalar value(CriterionKind kind) const {
    require_finalized();
    return totals_.value(kind);
  }

  const CriterionTotals<Scalar> &totals() const { return totals_; }

  /// Change in value(kind) if `d` moved from cluster `from` to `to`.
  Scalar delta_move(const Sparse &d, int from, int to, CriterionKind kind) const {
    require_finalized();
    check_move(from, to);
    const Removal r = removal(d, from);
    return delta(r, to, added(d, to, r), kind);
  }

  struct MoveChoice {
    int to = -1;  // -1 when no target improves the criterion
    Scalar delta = 0;
  };

  /// Best improving target for `d` over every other cluster; ties go to the
  /// lowest cluster index.
  MoveChoice best_move(const Sparse &d, int from, CriterionKind kind) const {
    require_finalized();
    MoveChoice best;
    if (sizes_[from] < 2) return best;
    const Removal r = removal(d, from);
    for (int to = 0; to < k(); ++to) {
      if (to == from) continue;
      const Scalar dl = delta(r, to, added(d, to, r), kind);
      if (!is_improvement(static_cast<double>(dl), kind)) continue;
      if (best.to < 0 || is_better(static_cast<double>(dl), static_cast<double>(best.delta), kind))
        best = {to, dl};
    }
    return best;
  }

  void move(const Sparse &d, int from, int to) {
    require_finalized();
    check_move(from, to);
    const Scalar to_total = total_.dot(d);
    clusters_[from].remove(d);
    clusters_[to].add(d);
    --sizes_[from];
    ++sizes_[to];
    cross_[from] -= to_total;
    cross_[to] += to_total;
    refresh_totals();
  }

  /// Rebuilds cluster `c` from its members to shed accumulated drift.
  template <typename DocRange>
  void rebuild_cluster(int c, const DocRange &members) {
    clusters_[c].rebuild(members);
    cross_[c] = clusters_[c].dot(total_);
    refresh_totals();
  }

  bool needs_refresh(int c) const { return clusters_[c].needs_refresh(); }

 private:
  struct Removal {
    int from;
    Scalar dd;        // ||d||^2
    Scalar to_total;  // d . D
    ClusterStats<Scalar> after;
  };

  Removal removal(const Sparse &d, int from) const {
    const Scalar dd = d.squaredNorm();
    const Scalar to_total = total_.dot(d);
    const ClusterStats<Scalar> f = stats(from);
    return {from, dd, to_total,
            {f.size - 1, f.intra - Scalar(2) * clusters_[from].dot(d) + dd, f.cross - to_total}};
  }

  ClusterStats<Scalar> added(const Sparse &d, int to, const Removal &r) const {
    const ClusterStats<Scalar> t = stats(to);
    return {t.size + 1, t.intra + Scalar(2) * clusters_[to].dot(d) + r.dd, t.cross + r.to_total};
  }

  Scalar delta(const Removal &r, int to, const ClusterStats<Scalar> &to_after,
               CriterionKind kind) const {
    CriterionTotals<Scalar> before, after;
    before.accumulate(stats(r.from));
    before.accumulate(stats(to));
    after.accumulate(r.after);
    after.accumulate(to_after);
    if (kind != CriterionKind::H1 && kind != CriterionKind::H2)
      return after.value(kind) - before.value(kind);
    // Ratios: rebuild numerator and denominator from the updated parts.
    const bool h1 = kind == CriterionKind::H1;
    const Scalar numer = h1 ? totals_.i1 : totals_.i2;
    const Scalar numer_after = numer + (h1 ? after.i1 - before.i1 : after.i2 - before.i2);
    const Scalar e1_after = totals_.e1 + (after.e1 - before.e1);
    return numer_after / e1_after - numer / totals_.e1;
  }

  void check_move(int from, int to) const {
    if (from == to) throw InvalidArgument("move source and target coincide");
    if (from < 0 || from >= k() || to < 0 || to >= k())
      throw InvalidArgument("move names a cluster out of range");
    if (sizes_[from] < 2)
      throw InvalidArgument("move would empty cluster " + std::to_string(from));
  }

  void require_finalized() const {
    if (!finalized_) throw std::logic_error("criterion state used before finalize()");
  }

  void refresh_totals() {
    totals_ = {};
    for (int c = 0; c < k(); ++c) totals_.accumulate(stats(c));
  }

  Eigen::Index dim_;
  std::vector<Composite> clusters_;
  std::vector<long> sizes_;
  std::vector<Scalar> cross_;
  Composite total_;
  CriterionTotals<Scalar> totals_;
  bool finalized_ = false;
};

}  // namespace docclust

#endif  // DOCCLUST_CRITERION_HPP
