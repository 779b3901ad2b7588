#include "docclust/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "docclust/errors.hpp"

namespace docclust {

namespace {

[[noreturn]] void fail(const std::string &source, std::size_t line, const std::string &what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

template <typename T>
bool parse_number(const std::string &tok, T &value) {
  const char *end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool blank(const std::string &line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::size_t RawMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto &row : rows) total += row.size();
  return total;
}

RawMatrix read_sparse_matrix(std::istream &in, const std::string &source) {
  std::string line;
  if (!std::getline(in, line)) fail(source, 1, "missing header");

  const auto head = tokens(line);
  std::size_t declared_nnz = 0;
  RawMatrix raw;
  if (head.size() != 3 || !parse_number(head[0], raw.n_docs) ||
      !parse_number(head[1], raw.n_terms) || !parse_number(head[2], declared_nnz))
    fail(source, 1, "malformed header, expected '<n_docs> <n_terms> <n_nonzeros>'");
  if (raw.n_docs == 0 || raw.n_terms == 0)
    fail(source, 1, "header declares an empty matrix");

  raw.rows.reserve(raw.n_docs);
  std::size_t lineno = 1;
  std::size_t trailing_blank = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (raw.rows.size() == raw.n_docs) {
      if (!blank(line)) fail(source, lineno, "more rows than the header declares");
      ++trailing_blank;
      continue;
    }
    const auto tok = tokens(line);
    if (tok.size() % 2 != 0) fail(source, lineno, "odd number of fields, expected index/value pairs");
    std::vector<RawMatrix::Entry> row;
    row.reserve(tok.size() / 2);
    for (std::size_t i = 0; i < tok.size(); i += 2) {
      long index = 0;
      double value = 0;
      if (!parse_number(tok[i], index)) fail(source, lineno, "bad term index '" + tok[i] + "'");
      if (!parse_number(tok[i + 1], value) || !std::isfinite(value))
        fail(source, lineno, "bad value '" + tok[i + 1] + "'");
      if (index < 1 || static_cast<std::size_t>(index) > raw.n_terms)
        fail(source, lineno, "term index " + tok[i] + " out of range [1, " +
                                 std::to_string(raw.n_terms) + "]");
      if (value < 0) fail(source, lineno, "negative value " + tok[i + 1]);
      row.emplace_back(static_cast<int>(index - 1), value);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        fail(source, lineno, "duplicate term index " + std::to_string(row[i].first + 1));
    raw.rows.push_back(std::move(row));
  }
  if (raw.rows.size() != raw.n_docs)
    fail(source, lineno, "header declares " + std::to_string(raw.n_docs) + " rows, found " +
                             std::to_string(raw.rows.size()));
  if (raw.nnz() != declared_nnz)
    fail(source, 1, "header declares " + std::to_string(declared_nnz) + " nonzeros, found " +
                        std::to_string(raw.nnz()));
  return raw;
}

RawMatrix load_sparse_matrix(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open matrix file " + path.string());
  return read_sparse_matrix(in, path.string());
}

void write_sparse_matrix(std::ostream &out, const RawMatrix &raw) {
  out << raw.n_docs << ' ' << raw.n_terms << ' ' << raw.nnz() << '\n';
  for (const auto &row : raw.rows) {
    bool first = true;
    for (const auto &[index, value] : row) {
      if (!first) out << ' ';
      out << index + 1 << ' ' << format_value(value);
      first = false;
    }
    out << '\n';
  }
}

void write_sparse_matrix(const std::filesystem::path &path, const RawMatrix &raw) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write matrix file " + path.string());
  write_sparse_matrix(out, raw);
}

LabelSet map_labels(const std::vector<std::string> &labels) {
  LabelSet set;
  std::unordered_map<std::string, int> ids;
  set.ids.reserve(labels.size());
  for (const auto &label : labels) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<int>(set.names.size()));
    if (inserted) set.names.push_back(label);
    set.ids.push_back(it->second);
  }
  return set;
}

LabelSet read_labels(std::istream &in, std::size_t n, const std::string &source) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(trim(line));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].empty()) fail(source, i + 1, "empty label");
  if (lines.size() != n)
    throw DataError(source + ": expected " + std::to_string(n) + " labels, found " +
                    std::to_string(lines.size()));
  return map_labels(lines);
}

LabelSet load_labels(const std::filesystem::path &path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file " + path.string());
  return read_labels(in, n, path.string());
}

std::vector<std::size_t> document_frequencies(const RawMatrix &raw) {
  std::vector<std::size_t> df(raw.n_terms, 0);
  for (const auto &row : raw.rows)
    for (const auto &[index, value] : row)
      if (value != 0) ++df[index];
  return df;
}

Corpus build_corpus(const RawMatrix &raw, const std::optional<LabelSet> &labels,
                    Weighting weighting) {
  if (labels && labels->ids.size() != raw.n_docs)
    throw DataError("label count " + std::to_string(labels->ids.size()) +
                    " does not match document count " + std::to_string(raw.n_docs));

  std::vector<double> idf;
  if (weighting == Weighting::TfIdf) {
    const auto df = document_frequencies(raw);
    idf.resize(raw.n_terms, 0.0);
    for (std::size_t t = 0; t < raw.n_terms; ++t)
      if (df[t] > 0) idf[t] = std::log(static_cast<double>(raw.n_docs) / static_cast<double>(df[t]));
  }

  Corpus corpus;
  corpus.vocab_size = raw.n_terms;
  corpus.source_n = raw.n_docs;
  std::vector<std::string> kept_labels;
  const auto dim = static_cast<Eigen::Index>(raw.n_terms);

  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    SparseVectorXd v(dim);
    v.reserve(static_cast<Eigen::Index>(raw.rows[r].size()));
    for (const auto &[index, value] : raw.rows[r]) {
      const double w = weighting == Weighting::TfIdf ? value * idf[index] : value;
      if (w != 0) v.insertBack(index) = w;
    }
    const double norm = v.norm();
    if (!(norm > 0)) {
      corpus.dropped_rows.push_back(r);
      continue;
    }
    v /= norm;
    corpus.docs.push_back(std::move(v));
    corpus.source_rows.push_back(r);
    if (labels) kept_labels.push_back(labels->names[labels->ids[r]]);
  }

  if (corpus.docs.empty()) throw DataError("every document is empty after weighting");
  if (labels) {
    LabelSet remapped = map_labels(kept_labels);
    corpus.labels = std::move(remapped.ids);
    corpus.class_names = std::move(remapped.names);
    corpus.q = static_cast<int>(corpus.class_names.size());
  }
  return corpus;
}

std::optional<Weighting> parse_weighting(const std::string &name) {
  if (name == "none") return Weighting::None;
  if (name == "tfidf") return Weighting::TfIdf;
  return std::nullopt;
}

}  // namespace docclust
