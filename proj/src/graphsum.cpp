#include "sumscope/graphsum.hpp"

#include <algorithm>
#include <numeric>

#include "sumscope/error.hpp"
#include "sumscope/rouge.hpp"

namespace sumscope {
namespace {

void require_aligned(const SentenceMatrix& vectors, const Document& doc) {
  if (static_cast<std::size_t>(vectors.rows()) != doc.sentence_count()) {
    throw AlignmentError("id " + doc.id() + ": " + std::to_string(vectors.rows()) + " vectors for " +
                         std::to_string(doc.sentence_count()) + " sentences");
  }
}

double edge_weight(bool bias, double db_self, double db_other, const CentralityConfig& config) {
  if (!bias) return 1.0;
  return db_self >= db_other ? config.lambda1 : config.lambda2;
}

Eigen::VectorXd intra_sums(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config,
                           bool bias) {
  require_aligned(vectors, doc);
  const Eigen::MatrixXd sim = cosine_matrix(vectors);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(vectors.rows());
  for (const auto& section : doc.sections()) {
    const auto [begin, end] = doc.section_range(section.index);
    const std::size_t n = end - begin;
    std::vector<double> db(n);
    for (std::size_t k = 0; k < n; ++k) db[k] = boundary_distance(k + 1, n, config.alpha);
    for (std::size_t a = 0; a < n; ++a) {
      double total = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto i = static_cast<Eigen::Index>(begin + a);
        const auto j = static_cast<Eigen::Index>(begin + b);
        total += sim(i, j) * edge_weight(bias, db[a], db[b], config);
      }
      out(static_cast<Eigen::Index>(begin + a)) = total;
    }
  }
  return out;
}

Eigen::VectorXd inter_sums(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config,
                           bool bias) {
  require_aligned(vectors, doc);
  const std::size_t section_count = doc.sections().size();
  Eigen::MatrixXd means(static_cast<Eigen::Index>(section_count), vectors.cols());
  std::vector<double> db(section_count);
  for (std::size_t s = 0; s < section_count; ++s) {
    const auto [begin, end] = doc.section_range(s + 1);
    means.row(static_cast<Eigen::Index>(s)) =
        vectors.middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(end - begin)).colwise().mean();
    db[s] = boundary_distance(s + 1, section_count, config.alpha);
  }
  const Eigen::MatrixXd sim = normalize_rows(vectors) * normalize_rows(means).transpose();

  Eigen::VectorXd out = Eigen::VectorXd::Zero(vectors.rows());
  for (const auto& sentence : doc.flat_sentences()) {
    const auto i = static_cast<Eigen::Index>(sentence.position_in_document - 1);
    const std::size_t own = *sentence.section_index - 1;
    double total = 0.0;
    for (std::size_t other = 0; other < section_count; ++other) {
      if (other == own && !config.inter_include_own_section) continue;
      total += sim(i, static_cast<Eigen::Index>(other)) * edge_weight(bias, db[own], db[other], config);
    }
    out(i) = total;
  }
  return out;
}

}  // namespace

double boundary_distance(std::size_t position, std::size_t n, double alpha) {
  if (position < 1 || position > n) {
    throw InvalidPosition("position " + std::to_string(position) + " outside [1, " + std::to_string(n) + "]");
  }
  return std::min(static_cast<double>(position), alpha * static_cast<double>(n - position));
}

Eigen::VectorXd intra_centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config) {
  return intra_sums(vectors, doc, config, config.bias_enabled);
}

Eigen::VectorXd inter_centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config) {
  return inter_sums(vectors, doc, config, config.bias_enabled);
}

CentralityScores centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config) {
  CentralityScores out;
  out.intra = intra_centrality(vectors, doc, config);
  out.inter = inter_centrality(vectors, doc, config);
  if (config.bias_enabled) {
    out.score = config.mu1 * out.inter + out.intra;
  } else {
    const Eigen::MatrixXd sim = cosine_matrix(vectors);
    out.score = sim.rowwise().sum() - sim.diagonal();
  }
  return out;
}

std::vector<std::size_t> extract_summary(const Document& doc, const CentralityScores& scores,
                                         std::size_t budget_tokens, bool strict_budget) {
  if (scores.size() != doc.sentence_count()) {
    throw AlignmentError("id " + doc.id() + ": " + std::to_string(scores.size()) + " scores for " +
                         std::to_string(doc.sentence_count()) + " sentences");
  }
  std::vector<std::size_t> order(doc.sentence_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores.score(static_cast<Eigen::Index>(a)) > scores.score(static_cast<Eigen::Index>(b));
  });
  std::vector<std::size_t> picked;
  std::size_t remaining = budget_tokens;
  for (const std::size_t i : order) {
    const std::size_t len = doc.flat_sentences()[i].tokens.size();
    if (len <= remaining) {
      picked.push_back(i);
      remaining -= len;
    } else if (strict_budget) {
      break;
    }
  }
  if (picked.empty()) throw EmptySelection("id " + doc.id() + ": no sentence fits a budget of " +
                                           std::to_string(budget_tokens) + " tokens");
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<std::size_t> summarize(const Document& doc, const SentenceEncoder& encoder,
                                   const CentralityConfig& config) {
  const auto scores = centrality(encoder(doc), doc, config);
  return extract_summary(doc, scores, config.budget_tokens, config.strict_budget);
}

CentralityConfig tune(const std::vector<CorpusRecord>& validation, const SentenceEncoder& encoder,
                      const TuningGrid& grid, const CentralityConfig& base) {
  if (validation.empty()) throw DegenerateInput("tune: empty validation set");
  if (grid.alphas.empty() || grid.mu1s.empty()) throw DegenerateInput("tune: empty grid");
  std::vector<SentenceMatrix> encoded;
  std::vector<Tokens> references;
  encoded.reserve(validation.size());
  for (const auto& record : validation) {
    encoded.push_back(encoder(record.document));
    references.push_back(record.reference.flat_tokens());
  }

  CentralityConfig best = base;
  double best_score = -1.0;
  for (const double alpha : grid.alphas) {
    for (const double mu1 : grid.mu1s) {
      CentralityConfig config = base;
      config.alpha = alpha;
      config.mu1 = mu1;
      double total = 0.0;
      for (std::size_t r = 0; r < validation.size(); ++r) {
        const auto& doc = validation[r].document;
        Tokens summary;
        try {
          const auto scores = centrality(encoded[r], doc, config);
          for (const auto i : extract_summary(doc, scores, config.budget_tokens, config.strict_budget)) {
            const auto& t = doc.flat_sentences()[i].tokens;
            summary.insert(summary.end(), t.begin(), t.end());
          }
        } catch (const EmptySelection&) {
        }
        total += rouge_n(summary, references[r], 1).f1;
      }
      const double mean = total / static_cast<double>(validation.size());
      if (mean > best_score) {
        best_score = mean;
        best = config;
      }
    }
  }
  return best;
}

}  // namespace sumscope
