#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/rouge.hpp"
#include "sumscope/vectorize.hpp"

namespace sumscope {

struct RelevanceScores {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
};

// ROUGE-1/2/L over the flattened token sequences. Throws DegenerateInput when
// either side has no tokens.
RelevanceScores relevance_rouge(const SummaryText& candidate, const SummaryText& reference, bool stem = false);

// Greedy soft matching of token embeddings (one row per token): recall is the
// mean over reference tokens of the best cosine to any candidate token,
// precision the mirror image; negative cosines count as 0.
RougeScore relevance_soft(const SentenceMatrix& candidate_tokens, const SentenceMatrix& reference_tokens);

// Fraction of document sections that receive at least one candidate sentence,
// each sentence going to the section with the highest ROUGE-L F1 (earlier
// section on ties). Sentences with no overlap with any section are ignored.
double informativeness(const SummaryText& candidate, const Document& doc);

struct CoherenceOptions {
  // Divide by ||S|| - 1 instead of ||S||.
  bool normalized = false;
};

// Sum of next-sentence probabilities over consecutive pairs divided by ||S||.
// Throws AlignmentError unless there are ||S|| - 1 scores.
double semantic_coherence(const SummaryText& candidate, std::span<const double> nsp_scores,
                          const CoherenceOptions& options = {});

using NspScores = std::map<std::string, std::vector<double>>;

// {"id": ..., "scores": [...]} per line; a {"_meta": ...} line is skipped.
// Throws FormatError for values outside [0, 1].
NspScores load_nsp_scores(const std::string& path);

struct EvalReport {
  RelevanceScores relevance;
  std::optional<double> soft_overlap;
  std::optional<double> informativeness;
  std::optional<double> coherence;
};

}  // namespace sumscope
