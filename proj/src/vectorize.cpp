#include "sumscope/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <unordered_set>

namespace sumscope {

TfidfModel::TfidfModel(std::map<std::string, Eigen::Index> vocabulary, Eigen::VectorXd idf, TfidfOptions options,
                       std::size_t unit_count)
    : vocabulary_(std::move(vocabulary)), idf_(std::move(idf)), options_(options), unit_count_(unit_count) {}

std::optional<double> TfidfModel::idf_of(const std::string& token) const {
  const auto it = vocabulary_.find(token);
  if (it == vocabulary_.end()) return std::nullopt;
  return idf_(it->second);
}

void TfidfModel::set_projection(Projection<double> p) {
  if (p.input_dim() != static_cast<Eigen::Index>(vocabulary_.size())) {
    throw DimensionError("projection input dimension does not match vocabulary size");
  }
  projection_ = std::move(p);
}

Eigen::SparseVector<double> TfidfModel::sparse_vector(TokenSpan sentence) const {
  std::map<Eigen::Index, double> counts;
  for (const auto& t : sentence) {
    if (const auto it = vocabulary_.find(t); it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  Eigen::SparseVector<double> out(static_cast<Eigen::Index>(vocabulary_.size()));
  double norm2 = 0.0;
  for (const auto& [col, tf] : counts) norm2 += (tf * idf_(col)) * (tf * idf_(col));
  if (norm2 == 0.0) return out;
  const double inv = 1.0 / std::sqrt(norm2);
  out.reserve(static_cast<Eigen::Index>(counts.size()));
  for (const auto& [col, tf] : counts) out.insert(col) = tf * idf_(col) * inv;
  return out;
}

Eigen::VectorXd TfidfModel::raw_vector(TokenSpan sentence) const { return Eigen::VectorXd(sparse_vector(sentence)); }

SentenceVector TfidfModel::vector(TokenSpan sentence) const {
  if (!projection_) return raw_vector(sentence);
  const auto sparse = sparse_vector(sentence);
  SentenceVector out = projection_->components.transpose() * sparse;
  const double n = out.norm();
  if (n > 0.0) out /= n;
  return out;
}

SentenceMatrix TfidfModel::encode(const Document& doc) const {
  const auto dim = projection_ ? projection_->rank() : static_cast<Eigen::Index>(vocabulary_.size());
  SentenceMatrix out(static_cast<Eigen::Index>(doc.sentence_count()), dim);
  for (std::size_t i = 0; i < doc.sentence_count(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = vector(doc.flat_sentences()[i].tokens).transpose();
  }
  return out;
}

TfidfBuilder::TfidfBuilder(TfidfOptions options, const StopwordSet& stopwords)
    : options_(options), stopwords_(&stopwords) {
  if (!(options_.min_df > 0.0 && options_.min_df <= 1.0)) throw DegenerateInput("min_df must be in (0, 1]");
}

void TfidfBuilder::add_unit(const std::vector<std::string_view>& tokens) {
  std::unordered_set<std::string_view> distinct;
  for (const auto t : tokens) {
    if (options_.remove_stopwords && stopwords_->contains(t)) continue;
    if (distinct.insert(t).second) ++df_[std::string(t)];
  }
  ++units_;
}

void TfidfBuilder::add_sentence(TokenSpan tokens) {
  add_unit(std::vector<std::string_view>(tokens.begin(), tokens.end()));
}

void TfidfBuilder::add_document(const Document& doc) {
  if (!options_.document_level_df) {
    for (const auto& s : doc.flat_sentences()) add_sentence(s.tokens);
    return;
  }
  std::vector<std::string_view> all;
  for (const auto& s : doc.flat_sentences()) all.insert(all.end(), s.tokens.begin(), s.tokens.end());
  add_unit(all);
}

TfidfModel TfidfBuilder::build() const {
  if (units_ == 0) throw DegenerateInput("tf-idf: empty corpus");
  const auto n = static_cast<double>(units_);
  std::map<std::string, std::size_t> kept;
  for (const auto& [token, df] : df_) {
    if (static_cast<double>(df) / n >= options_.min_df) kept.emplace(token, df);
  }
  if (kept.empty()) throw DegenerateInput("tf-idf: empty vocabulary after min_df filtering");
  std::map<std::string, Eigen::Index> vocabulary;
  Eigen::VectorXd idf(static_cast<Eigen::Index>(kept.size()));
  Eigen::Index col = 0;
  for (const auto& [token, df] : kept) {
    vocabulary.emplace(token, col);
    idf(col) = std::log((1.0 + n) / (1.0 + static_cast<double>(df))) + 1.0;
    ++col;
  }
  return TfidfModel(std::move(vocabulary), std::move(idf), options_, units_);
}

TfidfModel fit_tfidf(const std::vector<Tokens>& sentences, double min_df, const StopwordSet& stopwords) {
  TfidfOptions options;
  options.min_df = min_df;
  TfidfBuilder builder(options, stopwords);
  for (const auto& s : sentences) builder.add_sentence(s);
  return builder.build();
}

void fit_projection(TfidfModel& model, const std::vector<Tokens>& sentences, Eigen::Index rank,
                    const SvdOptions& options) {
  const auto cols = static_cast<Eigen::Index>(model.vocabulary().size());
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto v = model.sparse_vector(sentences[i]);
    for (Eigen::SparseVector<double>::InnerIterator it(v); it; ++it) {
      triplets.emplace_back(static_cast<Eigen::Index>(i), it.index(), it.value());
    }
  }
  Eigen::SparseMatrix<double> matrix(static_cast<Eigen::Index>(sentences.size()), cols);
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  model.set_projection(truncated_svd(matrix, rank, options));
}

namespace {

using nlohmann::json;

Eigen::RowVectorXd parse_vector(const json& node, Eigen::Index dim) {
  if (!node.is_array()) throw FormatError("embedding vector must be a list of numbers");
  if (static_cast<Eigen::Index>(node.size()) != dim) {
    throw FormatError("vector of length " + std::to_string(node.size()) + " in a file of dim " + std::to_string(dim));
  }
  Eigen::RowVectorXd out(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& x = node[static_cast<std::size_t>(i)];
    if (!x.is_number()) throw FormatError("embedding values must be numbers");
    out(i) = x.get<double>();
    if (!std::isfinite(out(i))) throw FormatError("non-finite embedding value");
  }
  return out;
}

SentenceMatrix parse_rows(const json& node, Eigen::Index dim) {
  if (!node.is_array()) throw FormatError("expected a list of vectors");
  SentenceMatrix out(static_cast<Eigen::Index>(node.size()), dim);
  for (std::size_t i = 0; i < node.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = parse_vector(node[i], dim);
  return out;
}

json parse_json(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

bool is_meta(const json& obj) { return obj.is_object() && obj.contains("_meta"); }

std::string header_id(const json& obj) {
  const auto it = obj.find("id");
  if (it == obj.end() || !it->is_string()) throw FormatError("embedding row without string id");
  return it->get<std::string>();
}

Eigen::Index header_dim(const json& obj) {
  const auto it = obj.find("dim");
  if (it == obj.end() || !it->is_number_integer() || it->get<long long>() < 1) {
    throw FormatError("embedding row without positive integer dim");
  }
  return static_cast<Eigen::Index>(it->get<long long>());
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

std::optional<DocEmbeddings> parse_embedding_line(std::string_view line) {
  const json obj = parse_json(line);
  if (is_meta(obj)) return std::nullopt;
  if (!obj.is_object()) throw FormatError("embedding row must be a JSON object");
  DocEmbeddings out;
  out.id = header_id(obj);
  const Eigen::Index dim = header_dim(obj);
  const auto sentences = obj.find("sentences");
  const auto tokens = obj.find("tokens");
  const bool has_tokens = tokens != obj.end() && !tokens->is_null();
  if (sentences == obj.end() && !has_tokens) throw FormatError("embedding row without sentences or tokens");
  out.sentences = sentences != obj.end() ? parse_rows(*sentences, dim) : SentenceMatrix(0, dim);
  if (has_tokens) {
    if (!tokens->is_array()) throw FormatError("tokens must be a list of per-sentence lists");
    for (const auto& per_sentence : *tokens) out.tokens.push_back(parse_rows(per_sentence, dim));
  }
  return out;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  EmbeddingTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    auto row = parse_embedding_line(line);
    if (!row) continue;
    const Eigen::Index dim = row->sentences.cols();
    if (table.dim == 0) {
      table.dim = dim;
    } else if (table.dim != dim) {
      throw FormatError("dimension " + std::to_string(dim) + " differs from " + std::to_string(table.dim));
    }
    auto id = row->id;
    table.docs.insert_or_assign(std::move(id), std::move(*row));
  }
  return table;
}

EmbeddingIndex::EmbeddingIndex(const std::string& path) : path_(path), in_(path) {
  if (!in_) throw IoError("cannot open " + path);
  std::string line;
  std::streamoff offset = in_.tellg();
  while (std::getline(in_, line)) {
    const std::streamoff start = offset;
    offset = in_.tellg();
    if (blank(line)) continue;
    const json obj = parse_json(line);
    if (is_meta(obj)) continue;
    if (!obj.is_object()) throw FormatError("embedding row must be a JSON object");
    const Eigen::Index dim = header_dim(obj);
    if (dim_ == 0) {
      dim_ = dim;
    } else if (dim_ != dim) {
      throw FormatError("dimension " + std::to_string(dim) + " differs from " + std::to_string(dim_));
    }
    offsets_.insert_or_assign(header_id(obj), start);
  }
  in_.clear();
}

DocEmbeddings EmbeddingIndex::get(const std::string& id) {
  const auto it = offsets_.find(id);
  if (it == offsets_.end()) throw AlignmentError("no embeddings for id " + id + " in " + path_);
  in_.clear();
  in_.seekg(it->second);
  std::string line;
  if (!std::getline(in_, line)) throw IoError("cannot re-read " + path_);
  auto row = parse_embedding_line(line);
  if (!row) throw FormatError("offset for " + id + " points at a header line");
  return std::move(*row);
}

void check_alignment(const DocEmbeddings& emb, const Document& doc) {
  if (static_cast<std::size_t>(emb.sentences.rows()) != doc.sentence_count()) {
    throw AlignmentError("id " + doc.id() + ": " + std::to_string(emb.sentences.rows()) +
                         " sentence vectors for " + std::to_string(doc.sentence_count()) + " sentences");
  }
}

void check_token_alignment(const DocEmbeddings& emb, const std::vector<Sentence>& sentences) {
  if (emb.tokens.size() != sentences.size()) {
    throw AlignmentError("id " + emb.id + ": token vectors for " + std::to_string(emb.tokens.size()) +
                         " sentences, expected " + std::to_string(sentences.size()));
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (static_cast<std::size_t>(emb.tokens[i].rows()) != sentences[i].tokens.size()) {
      throw AlignmentError("id " + emb.id + " sentence " + std::to_string(i + 1) + ": " +
                           std::to_string(emb.tokens[i].rows()) + " token vectors for " +
                           std::to_string(sentences[i].tokens.size()) + " tokens");
    }
  }
}

}  // namespace sumscope
