#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/error.hpp"
#include "sumscope/text.hpp"

namespace sumscope {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using SentenceVector = Eigen::VectorXd;
// One row per sentence (or per token), in document order.
using SentenceMatrix = Eigen::MatrixXd;

// u.v / (|u| |v|), 0 when either norm is 0.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar cosine(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedU::Scalar;
  if (u.size() != v.size()) {
    throw DimensionError("cosine: dimension " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) return Scalar(0);
  return u.dot(v) / (nu * nv);
}

// Rows scaled to unit length; zero rows stay zero.
template <typename Derived>
MatrixX<typename Derived::Scalar> normalize_rows(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar n = out.row(i).norm();
    if (n > Scalar(0)) out.row(i) /= n;
  }
  return out;
}

// Cosine similarity of every row pair: Gram matrix of the unit rows.
template <typename Derived>
MatrixX<typename Derived::Scalar> cosine_matrix(const Eigen::MatrixBase<Derived>& rows) {
  const auto unit = normalize_rows(rows);
  return unit * unit.transpose();
}

// Rank-r linear map onto the leading right singular vectors.
template <typename Scalar>
struct Projection {
  MatrixX<Scalar> components;        // n x r, orthonormal columns
  VectorX<Scalar> singular_values;   // r, non-increasing

  Eigen::Index input_dim() const { return components.rows(); }
  Eigen::Index rank() const { return components.cols(); }

  template <typename Derived>
  VectorX<Scalar> apply(const Eigen::MatrixBase<Derived>& v) const {
    if (v.size() != components.rows()) throw DimensionError("projection input dimension mismatch");
    return components.transpose() * v;
  }
};

namespace detail {

// Box-Muller on a 64-bit Mersenne Twister: same stream on every platform.
template <typename Scalar>
MatrixX<Scalar> gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  MatrixX<Scalar> out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double r = std::sqrt(-2.0 * std::log(uniform()));
      out(i, j) = static_cast<Scalar>(r * std::cos(2.0 * 3.14159265358979323846 * uniform()));
    }
  }
  return out;
}

template <typename Scalar>
MatrixX<Scalar> orthonormal_basis(const MatrixX<Scalar>& y) {
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(y);
  return qr.householderQ() * MatrixX<Scalar>::Identity(y.rows(), y.cols());
}

template <typename Scalar>
Projection<Scalar> from_svd(const MatrixX<Scalar>& dense, Eigen::Index rank) {
  Eigen::BDCSVD<MatrixX<Scalar>> svd(dense, Eigen::ComputeThinV);
  return {svd.matrixV().leftCols(rank), svd.singularValues().head(rank)};
}

}  // namespace detail

struct SvdOptions {
  std::uint64_t seed = 0;
  int power_iterations = 4;
  Eigen::Index oversample = 10;
  // Solve exactly when min(rows, cols) is at most this.
  Eigen::Index exact_threshold = 64;
};

// Top-`rank` right singular vectors of an m x n matrix (dense or sparse).
// Small problems are solved exactly; larger ones by seeded randomized subspace
// iteration. Throws InvalidRank unless 1 <= rank <= min(m, n).
template <typename MatrixType>
Projection<typename MatrixType::Scalar> truncated_svd(const MatrixType& a, Eigen::Index rank,
                                                     const SvdOptions& options = {}) {
  using Scalar = typename MatrixType::Scalar;
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index smallest = std::min(m, n);
  if (rank < 1 || rank > smallest) {
    throw InvalidRank("rank " + std::to_string(rank) + " outside [1, " + std::to_string(smallest) + "]");
  }
  if (smallest <= options.exact_threshold) {
    return detail::from_svd<Scalar>(MatrixX<Scalar>(a), rank);
  }
  const Eigen::Index width = std::min(rank + options.oversample, smallest);
  MatrixX<Scalar> q = detail::orthonormal_basis<Scalar>(a * detail::gaussian_matrix<Scalar>(n, width, options.seed));
  for (int it = 0; it < options.power_iterations; ++it) {
    const MatrixX<Scalar> z = detail::orthonormal_basis<Scalar>(MatrixX<Scalar>(a.transpose() * q));
    q = detail::orthonormal_basis<Scalar>(MatrixX<Scalar>(a * z));
  }
  const MatrixX<Scalar> b = q.transpose() * a;
  return detail::from_svd<Scalar>(b, rank);
}

struct TfidfOptions {
  double min_df = 0.01;
  bool remove_stopwords = true;
  // Document frequency counted over sentences (default) or whole documents.
  bool document_level_df = false;
};

class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(std::map<std::string, Eigen::Index> vocabulary, Eigen::VectorXd idf, TfidfOptions options,
             std::size_t unit_count);

  const std::map<std::string, Eigen::Index>& vocabulary() const { return vocabulary_; }
  const Eigen::VectorXd& idf() const { return idf_; }
  const TfidfOptions& options() const { return options_; }
  std::size_t unit_count() const { return unit_count_; }
  std::optional<double> idf_of(const std::string& token) const;

  const std::optional<Projection<double>>& projection() const { return projection_; }
  void set_projection(Projection<double> p);

  // Raw L2-normalized Tf-Idf vector over the vocabulary.
  Eigen::VectorXd raw_vector(TokenSpan sentence) const;
  Eigen::SparseVector<double> sparse_vector(TokenSpan sentence) const;
  // raw_vector, projected and renormalized when a projection is set.
  SentenceVector vector(TokenSpan sentence) const;
  SentenceMatrix encode(const Document& doc) const;

 private:
  std::map<std::string, Eigen::Index> vocabulary_;
  Eigen::VectorXd idf_;
  TfidfOptions options_;
  std::size_t unit_count_ = 0;
  std::optional<Projection<double>> projection_;
};

// Streams document-frequency counts; build() applies the min_df filter.
class TfidfBuilder {
 public:
  explicit TfidfBuilder(TfidfOptions options = {}, const StopwordSet& stopwords = default_stopwords());

  void add_sentence(TokenSpan tokens);
  // Adds one unit per sentence or one for the whole document, per options.
  void add_document(const Document& doc);
  std::size_t unit_count() const { return units_; }
  // idf(t) = ln((1 + N) / (1 + df(t))) + 1 over tokens with df/N >= min_df.
  TfidfModel build() const;

 private:
  void add_unit(const std::vector<std::string_view>& distinct);

  TfidfOptions options_;
  const StopwordSet* stopwords_;
  std::unordered_map<std::string, std::size_t> df_;
  std::size_t units_ = 0;
};

TfidfModel fit_tfidf(const std::vector<Tokens>& sentences, double min_df,
                     const StopwordSet& stopwords = default_stopwords());

inline SentenceVector tfidf_vector(const TfidfModel& model, TokenSpan sentence) { return model.vector(sentence); }

// Fits a rank-`rank` projection on the sparse sentence-by-term matrix built
// from `sentences` and installs it on the model.
void fit_projection(TfidfModel& model, const std::vector<Tokens>& sentences, Eigen::Index rank,
                    const SvdOptions& options = {});

struct DocEmbeddings {
  std::string id;
  SentenceMatrix sentences;             // one row per sentence
  std::vector<SentenceMatrix> tokens;   // per sentence, one row per token; empty when absent

  bool has_tokens() const { return !tokens.empty(); }
};

// Parses one embedding JSONL line; nullopt for a {"_meta": ...} header.
std::optional<DocEmbeddings> parse_embedding_line(std::string_view line);

struct EmbeddingTable {
  std::map<std::string, DocEmbeddings> docs;
  Eigen::Index dim = 0;
};

EmbeddingTable load_embeddings(const std::string& path);

// Random access by id without holding vectors in memory: offsets are
// recorded on construction and one line is re-read per lookup.
class EmbeddingIndex {
 public:
  explicit EmbeddingIndex(const std::string& path);

  bool contains(const std::string& id) const { return offsets_.contains(id); }
  std::size_t size() const { return offsets_.size(); }
  Eigen::Index dim() const { return dim_; }
  // Throws AlignmentError when the id is absent.
  DocEmbeddings get(const std::string& id);

 private:
  std::string path_;
  std::ifstream in_;
  std::unordered_map<std::string, std::streamoff> offsets_;
  Eigen::Index dim_ = 0;
};

// Throws AlignmentError unless there is one sentence vector per sentence.
void check_alignment(const DocEmbeddings& emb, const Document& doc);
// Throws AlignmentError unless each sentence has one token vector per token.
void check_token_alignment(const DocEmbeddings& emb, const std::vector<Sentence>& sentences);

}  // namespace sumscope
