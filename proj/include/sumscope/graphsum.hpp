#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/vectorize.hpp"

namespace sumscope {

struct CentralityConfig {
  double lambda1 = 0.5;  // edge weight when the scored node is no nearer a boundary
  double lambda2 = 1.0;  // edge weight when the scored node is nearer a boundary
  double alpha = 1.0;    // weight of the distance to the section end
  double mu1 = 1.0;      // weight of inter-section centrality
  std::size_t budget_tokens = 242;
  bool bias_enabled = true;
  // Sum inter-section similarity over the sentence's own section as well.
  bool inter_include_own_section = false;
  // Stop at the first sentence that overflows the budget instead of skipping it.
  bool strict_budget = false;
};

// min(position, alpha * (n - position)) for a 1-based position in a run of n.
// Throws InvalidPosition unless 1 <= position <= n.
double boundary_distance(std::size_t position, std::size_t n, double alpha);

struct CentralityScores {
  Eigen::VectorXd score;  // aligned to Document::flat_sentences()
  Eigen::VectorXd intra;
  Eigen::VectorXd inter;

  std::size_t size() const { return static_cast<std::size_t>(score.size()); }
};

// Biased similarity to the other sentences of the same section.
Eigen::VectorXd intra_centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config);

// Biased similarity to the mean vectors of the other sections, with the
// boundary distance taken over section positions.
Eigen::VectorXd inter_centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config);

// mu1 * inter + intra with the bias on; the plain sum of cosine similarity to
// every other sentence of the document with it off.
CentralityScores centrality(const SentenceMatrix& vectors, const Document& doc, const CentralityConfig& config);

// Greedy budgeted selection by descending score (earlier sentence on ties).
// Returns flat sentence indices in document order. Throws EmptySelection when
// nothing fits.
std::vector<std::size_t> extract_summary(const Document& doc, const CentralityScores& scores,
                                         std::size_t budget_tokens, bool strict_budget = false);

using SentenceEncoder = std::function<SentenceMatrix(const Document&)>;

std::vector<std::size_t> summarize(const Document& doc, const SentenceEncoder& encoder,
                                   const CentralityConfig& config);

struct TuningGrid {
  std::vector<double> alphas{0.0, 0.5, 0.8, 1.0, 1.2};
  std::vector<double> mu1s{0.5, 1.0, 1.5};
};

// Exhaustive search over alpha x mu1 (alpha outer) maximizing mean ROUGE-1 F1
// of the extracted summaries; the first best grid point wins ties.
CentralityConfig tune(const std::vector<CorpusRecord>& validation, const SentenceEncoder& encoder,
                      const TuningGrid& grid, const CentralityConfig& base = {});

}  // namespace sumscope
