#include <doctest.h>

#include <cmath>
#include <random>

#include "docclust/errors.hpp"
#include "docclust/quality.hpp"
#include "test_support.hpp"

using namespace docclust;
using namespace docclust::testing;

TEST_CASE("cluster entropy") {
  CHECK(cluster_entropy(std::vector<long>{5, 0, 0, 0}, 4) == 0.0);
  CHECK(cluster_entropy(std::vector<long>{3, 3, 3, 3}, 4) == doctest::Approx(1.0).epsilon(1e-15));
  // -(1/ln 4) * [(1/2) ln(1/2) + 2 * (1/4) ln(1/4)] = 0.75
  const double hand = -(0.5 * std::log(0.5) + 0.5 * std::log(0.25)) / std::log(4.0);
  CHECK(hand == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::abs(cluster_entropy(std::vector<long>{2, 1, 1, 0}, 4) - 0.75) <= 1e-15);
  CHECK(cluster_entropy(std::vector<long>{7}, 1) == 0.0);
  CHECK_THROWS_AS(cluster_entropy(std::vector<long>{0, 0}, 2), DataError);
}

TEST_CASE("cluster purity") {
  CHECK(cluster_purity(std::vector<long>{5, 0, 0, 0}) == 1.0);
  CHECK(cluster_purity(std::vector<long>{3, 3, 3, 3}) == 0.25);
  CHECK(cluster_purity(std::vector<long>{2, 1, 1, 0}) == 0.5);
  CHECK_THROWS_AS(cluster_purity(std::vector<long>{0, 0, 0}), DataError);
}

TEST_CASE("confusion tabulates cluster-by-class counts") {
  const std::vector<int> labels = {0, 1, 1, 2, 0, 2};
  const auto one = confusion(std::vector<int>(6, 0), labels, 1, 3);
  CHECK(one.counts[0] == std::vector<long>{2, 2, 2});
  CHECK(one.n == 6);

  const auto singles = confusion(std::vector<int>{0, 1, 2, 3, 4, 5}, labels, 6, 3);
  for (int r = 0; r < 6; ++r) {
    std::vector<long> hot(3, 0);
    hot[labels[r]] = 1;
    CHECK(singles.counts[r] == hot);
  }
  CHECK_THROWS_AS(confusion(std::vector<int>{0, 0}, labels, 1, 3), DataError);
}

TEST_CASE("class grouping is perfect and singletons are perfect") {
  const std::vector<int> labels = {0, 1, 1, 2, 0, 2};
  const auto grouped = evaluate(confusion(labels, labels, 3, 3));
  CHECK(grouped.entropy == 0.0);
  CHECK(grouped.purity == 1.0);
  const auto singles = evaluate(confusion(std::vector<int>{0, 1, 2, 3, 4, 5}, labels, 6, 3));
  CHECK(singles.entropy == 0.0);
  CHECK(std::abs(singles.purity - 1.0) <= 1e-15);
}

TEST_CASE("classic4 class sizes give the expected single-cluster purity") {
  std::vector<int> labels;
  const int sizes[] = {3204, 1460, 1398, 1033};
  for (int c = 0; c < 4; ++c) labels.insert(labels.end(), sizes[c], c);
  const auto report = evaluate(confusion(std::vector<int>(labels.size(), 0), labels, 1, 4));
  CHECK(report.purity == doctest::Approx(3204.0 / 7095.0).epsilon(1e-15));
  CHECK(std::abs(report.purity - 0.4516) < 1e-4);

  const auto truth = confusion(labels, labels, 4, 4);
  CHECK(truth.cluster_sizes == std::vector<long>{3204, 1460, 1398, 1033});
}

TEST_CASE("weighted sums match the independent oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 20, k = 1 + trial % 6, q = 1 + trial % 4;
    const auto assignment = random_assignment(rng, n, k);
    std::vector<int> labels(n);
    for (int &l : labels) l = std::uniform_int_distribution<int>(0, q - 1)(rng);
    const auto report = evaluate(confusion(assignment, labels, k, q));
    const auto oracle = oracle_quality(assignment, labels, k, q);
    CHECK(std::abs(report.entropy - oracle.entropy) <= 1e-12);
    CHECK(std::abs(report.purity - oracle.purity) <= 1e-12);

    double entropy = 0, purity = 0;
    for (const auto &c : report.per_cluster) {
      entropy += static_cast<double>(c.size) / n * c.entropy;
      purity += static_cast<double>(c.size) / n * c.purity;
    }
    CHECK(std::abs(entropy - report.entropy) <= 1e-12);
    CHECK(std::abs(purity - report.purity) <= 1e-12);
  }
}

TEST_CASE("range and refinement properties") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 30, k = 2 + trial % 5, q = 2 + trial % 3;
    auto assignment = random_assignment(rng, n, k);
    std::vector<int> labels(n);
    for (int &l : labels) l = std::uniform_int_distribution<int>(0, q - 1)(rng);
    const auto before = evaluate(confusion(assignment, labels, k, q));

    std::vector<long> class_sizes(q, 0);
    for (int l : labels) ++class_sizes[l];
    const double floor = static_cast<double>(*std::max_element(class_sizes.begin(), class_sizes.end())) / n;
    CHECK(before.entropy >= 0.0);
    CHECK(before.entropy <= 1.0 + 1e-15);
    CHECK(before.purity >= floor - 1e-15);
    CHECK(before.purity <= 1.0 + 1e-15);

    // Split a random cluster with at least two members into two.
    const int target = assignment[std::uniform_int_distribution<int>(0, n - 1)(rng)];
    std::vector<int> members;
    for (int j = 0; j < n; ++j)
      if (assignment[j] == target) members.push_back(j);
    if (members.size() < 2) continue;
    std::shuffle(members.begin(), members.end(), rng);
    const std::size_t cut = 1 + std::uniform_int_distribution<std::size_t>(0, members.size() - 2)(rng);
    for (std::size_t i = 0; i < cut; ++i) assignment[members[i]] = k;
    const auto after = evaluate(confusion(assignment, labels, k + 1, q));
    CHECK(after.purity >= before.purity - 1e-12);
    CHECK(after.entropy <= before.entropy + 1e-12);
  }
}

TEST_CASE("consistent relabeling of clusters and classes changes nothing") {
  std::mt19937_64 rng(47);
  const int n = 40, k = 4, q = 3;
  const auto assignment = random_assignment(rng, n, k);
  std::vector<int> labels(n);
  for (int &l : labels) l = std::uniform_int_distribution<int>(0, q - 1)(rng);
  const std::vector<int> cperm = {3, 1, 0, 2}, qperm = {2, 0, 1};
  std::vector<int> a2, l2;
  for (int j = 0; j < n; ++j) {
    a2.push_back(cperm[assignment[j]]);
    l2.push_back(qperm[labels[j]]);
  }
  const auto a = evaluate(confusion(assignment, labels, k, q));
  const auto b = evaluate(confusion(a2, l2, k, q));
  CHECK(std::abs(a.entropy - b.entropy) <= 1e-15);
  CHECK(std::abs(a.purity - b.purity) <= 1e-15);
}
