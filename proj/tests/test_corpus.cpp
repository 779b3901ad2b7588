#include <doctest.h>

#include <random>
#include <sstream>

#include "docclust/corpus.hpp"
#include "docclust/errors.hpp"
#include "test_support.hpp"

using namespace docclust;

namespace {

RawMatrix parse(const std::string &text) {
  std::istringstream in(text);
  return read_sparse_matrix(in, "test");
}

std::string error_of(const std::string &text) {
  try {
    parse(text);
  } catch (const DataError &e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("reads a small matrix") {
  const RawMatrix raw = parse("2 3 3\n1 1.0 3 2.0\n2 5.0\n");
  CHECK(raw.n_docs == 2);
  CHECK(raw.n_terms == 3);
  CHECK(raw.nnz() == 3);
  REQUIRE(raw.rows[0].size() == 2);
  CHECK(raw.rows[0][0] == RawMatrix::Entry{0, 1.0});
  CHECK(raw.rows[0][1] == RawMatrix::Entry{2, 2.0});
  CHECK(raw.rows[1][0] == RawMatrix::Entry{1, 5.0});
}

TEST_CASE("row entries are sorted and empty rows kept") {
  const RawMatrix raw = parse("3 4 3\n4 1 2 7\n\n1 0.5\n");
  CHECK(raw.rows[0] == std::vector<RawMatrix::Entry>{{1, 7.0}, {3, 1.0}});
  CHECK(raw.rows[1].empty());
  CHECK(raw.rows[2].size() == 1);
}

TEST_CASE("malformed inputs are reported with line numbers") {
  CHECK(error_of("1 1 1\n2 1.0\n").find("test:2: term index 2 out of range") != std::string::npos);
  CHECK(error_of("2 3\n1 1\n2 1\n").find("test:1: malformed header") != std::string::npos);
  CHECK(error_of("1 3 2\n1 1.0\n").find("nonzeros") != std::string::npos);
  CHECK(error_of("1 3 1\n1 -2.0\n").find("test:2: negative value") != std::string::npos);
  CHECK(error_of("2 3 1\n1 1.0\n").find("rows") != std::string::npos);
  CHECK(error_of("1 3 2\n1 1.0\n2 2.0\n").find("test:3: more rows") != std::string::npos);
  CHECK(error_of("1 3 2\n1 1.0 1 2.0\n").find("duplicate") != std::string::npos);
  CHECK(error_of("1 3 1\n1 x\n").find("bad value") != std::string::npos);
  CHECK(error_of("1 3 1\n1\n").find("odd number") != std::string::npos);
}

TEST_CASE("write then read reproduces the matrix") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coin(0, 1), value(0.5, 20);
  for (int trial = 0; trial < 20; ++trial) {
    RawMatrix raw;
    raw.n_docs = 1 + trial % 7;
    raw.n_terms = 1 + trial % 11;
    for (std::size_t r = 0; r < raw.n_docs; ++r) {
      std::vector<RawMatrix::Entry> row;
      for (std::size_t t = 0; t < raw.n_terms; ++t)
        if (coin(rng) < 0.4) row.emplace_back(static_cast<int>(t), std::round(value(rng) * 1000) / 1000);
      raw.rows.push_back(row);
    }
    std::ostringstream first;
    write_sparse_matrix(first, raw);
    const RawMatrix back = parse(first.str());
    CHECK(back.rows == raw.rows);
    std::ostringstream second;
    write_sparse_matrix(second, back);
    CHECK(second.str() == first.str());
  }
}

TEST_CASE("labels map by first appearance") {
  std::istringstream in("med\nmed\ncisi\n");
  const LabelSet set = read_labels(in, 3);
  CHECK(set.ids == std::vector<int>{0, 0, 1});
  CHECK(set.q() == 2);
  CHECK(set.names == std::vector<std::string>{"med", "cisi"});
}

TEST_CASE("label errors") {
  std::istringstream short_file("a\nb\n");
  CHECK_THROWS_AS(read_labels(short_file, 3), DataError);
  std::istringstream gap("a\n\nb\n");
  CHECK_THROWS_WITH_AS(read_labels(gap, 3), doctest::Contains("2: empty label"), DataError);
}

TEST_CASE("classic4-sized label file gives the four source collections") {
  std::ostringstream text;
  const std::pair<const char *, int> parts[] = {{"cacm", 3204}, {"cisi", 1460}, {"cran", 1398}, {"med", 1033}};
  for (auto [name, count] : parts)
    for (int i = 0; i < count; ++i) text << name << '\n';
  std::istringstream in(text.str());
  const LabelSet set = read_labels(in, 7095);
  CHECK(set.q() == 4);
  std::vector<int> sizes(4, 0);
  for (int id : set.ids) ++sizes[id];
  CHECK(sizes == std::vector<int>{3204, 1460, 1398, 1033});
}

TEST_CASE("unweighted documents are L2 normalized") {
  const RawMatrix raw = parse("1 2 2\n1 3.0 2 4.0\n");
  const Corpus c = build_corpus(raw, std::nullopt, Weighting::None);
  REQUIRE(c.n() == 1);
  CHECK(c.docs[0].coeff(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(c.docs[0].coeff(1) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("tf-idf matches a hand-computed table") {
  // term 2 occurs in every document, so its weight ln(3/3) vanishes.
  const RawMatrix raw = parse("3 4 7\n1 2 2 1\n2 3 3 1\n1 1 2 1 4 2\n");
  const Corpus c = build_corpus(raw, std::nullopt, Weighting::TfIdf);
  REQUIRE(c.n() == 3);
  CHECK(c.docs[0].nonZeros() == 1);
  CHECK(c.docs[0].coeff(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.docs[1].nonZeros() == 1);
  CHECK(c.docs[1].coeff(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.docs[2].nonZeros() == 2);
  CHECK(std::abs(c.docs[2].coeff(0) - 0.18147115159841573) <= 1e-14);
  CHECK(std::abs(c.docs[2].coeff(3) - 0.9833962686209181) <= 1e-14);
  CHECK(c.docs[2].coeff(1) == 0.0);
}

TEST_CASE("zero documents are dropped and labels realigned") {
  // Doc 2 only has the ubiquitous term 1, so tf-idf zeroes it out.
  const RawMatrix raw = parse("3 3 5\n1 1 2 1\n1 4\n1 1 3 2\n");
  std::istringstream labels_in("x\ny\nz\n");
  const LabelSet labels = read_labels(labels_in, 3);
  const Corpus c = build_corpus(raw, labels, Weighting::TfIdf);
  CHECK(c.n() == 2);
  CHECK(c.dropped_rows == std::vector<std::size_t>{1});
  CHECK(c.source_rows == std::vector<std::size_t>{0, 2});
  CHECK(*c.labels == std::vector<int>{0, 1});
  CHECK(c.class_names == std::vector<std::string>{"x", "z"});
  CHECK(c.q == 2);
}

TEST_CASE("a corpus with no usable documents is an error") {
  const RawMatrix raw = parse("2 1 2\n1 1\n1 2\n");
  CHECK_THROWS_AS(build_corpus(raw, std::nullopt, Weighting::TfIdf), DataError);
}

TEST_CASE("label count mismatch is rejected") {
  const RawMatrix raw = parse("2 1 2\n1 1\n1 2\n");
  CHECK_THROWS_AS(build_corpus(raw, map_labels({"a"}), Weighting::None), DataError);
}

TEST_CASE("document frequencies match a brute-force count and norms are unit") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coin(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    RawMatrix raw;
    raw.n_docs = 1 + trial * 4;
    raw.n_terms = 3 + trial % 17;
    for (std::size_t r = 0; r < raw.n_docs; ++r) {
      std::vector<RawMatrix::Entry> row;
      for (std::size_t t = 0; t < raw.n_terms; ++t)
        if (coin(rng) < 0.35) row.emplace_back(static_cast<int>(t), 1.0 + std::floor(coin(rng) * 5));
      raw.rows.push_back(row);
    }
    const auto df = document_frequencies(raw);
    for (std::size_t t = 0; t < raw.n_terms; ++t) {
      std::size_t count = 0;
      for (const auto &row : raw.rows)
        for (const auto &e : row)
          if (e.first == static_cast<int>(t)) ++count;
      CHECK(df[t] == count);
    }
    for (Weighting w : {Weighting::None, Weighting::TfIdf}) {
      try {
        const Corpus c = build_corpus(raw, std::nullopt, w);
        for (const auto &d : c.docs) CHECK(std::abs(d.norm() - 1.0) <= 1e-9);
      } catch (const DataError &) {
        // every row empty after weighting: acceptable for tiny random matrices
      }
    }
  }
}
