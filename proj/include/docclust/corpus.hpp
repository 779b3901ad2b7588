#ifndef DOCCLUST_CORPUS_HPP
#define DOCCLUST_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "docclust/sparse_vector.hpp"

namespace docclust {

/// Doc-term counts exactly as read from a sparse matrix file.
/// Term indices are 0-based in memory and sorted within each row.
struct RawMatrix {
  using Entry = std::pair<int, double>;

  std::size_t n_docs = 0;
  std::size_t n_terms = 0;
  std::vector<std::vector<Entry>> rows;

  std::size_t nnz() const;
};

enum class Weighting { None, TfIdf };

/// Unit-norm document vectors with optional class labels. Immutable once built.
struct Corpus {
  std::vector<SparseVectorXd> docs;
  std::size_t vocab_size = 0;
  std::optional<std::vector<int>> labels;
  int q = 0;
  /// Class names in id order, when labels came from a file.
  std::vector<std::string> class_names;
  /// Row of the input matrix each document came from.
  std::vector<std::size_t> source_rows;
  /// Input rows dropped because their weighted vector was all zero.
  std::vector<std::size_t> dropped_rows;
  /// Row count of the input matrix (docs.size() + dropped_rows.size()).
  std::size_t source_n = 0;

  std::size_t n() const { return docs.size(); }
  bool has_labels() const { return labels.has_value(); }
};

/// Class ids in order of first appearance, with the original label strings.
struct LabelSet {
  std::vector<int> ids;
  std::vector<std::string> names;
  int q() const { return static_cast<int>(names.size()); }
};

RawMatrix read_sparse_matrix(std::istream &in, const std::string &source = "<stream>");
RawMatrix load_sparse_matrix(const std::filesystem::path &path);

void write_sparse_matrix(std::ostream &out, const RawMatrix &raw);
void write_sparse_matrix(const std::filesystem::path &path, const RawMatrix &raw);

LabelSet read_labels(std::istream &in, std::size_t n, const std::string &source = "<stream>");
LabelSet load_labels(const std::filesystem::path &path, std::size_t n);

/// Maps label strings to contiguous ids by first appearance.
LabelSet map_labels(const std::vector<std::string> &labels);

/// Number of rows containing each term.
std::vector<std::size_t> document_frequencies(const RawMatrix &raw);

Corpus build_corpus(const RawMatrix &raw, const std::optional<LabelSet> &labels,
                    Weighting weighting);

std::optional<Weighting> parse_weighting(const std::string &name);

}  // namespace docclust

#endif  // DOCCLUST_CORPUS_HPP
