#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/rouge.hpp"
#include "sumscope/text.hpp"

namespace sumscope {

// A shared token run: doc[doc_start, doc_start + length) equals
// summary[summ_start, summ_start + length).
struct Fragment {
  std::size_t doc_start = 0;
  std::size_t summ_start = 0;
  std::size_t length = 0;

  bool operator==(const Fragment&) const = default;
};

struct FragmentSet {
  std::vector<Fragment> fragments;  // ordered by summ_start, disjoint in the summary
  std::size_t summary_length = 0;
};

// Left-to-right greedy matching: at each summary position take the longest
// token run found anywhere in the document (earliest document start on ties)
// and jump past it, otherwise advance by one.
FragmentSet greedy_fragments(TokenSpan doc, TokenSpan summary);

// Share of summary tokens inside fragments. Throws DegenerateInput for |S| = 0.
double coverage(const FragmentSet& frags);
// Sum of squared fragment lengths over |S|. Throws DegenerateInput for |S| = 0.
double density(const FragmentSet& frags);

struct Compression {
  double token_ratio = 0.0;     // |D| / |S|
  double sentence_ratio = 0.0;  // ||D|| / ||S||
};
Compression compression(const CorpusRecord& record);

// Mean ROUGE-L F1 over unordered pairs of distinct summary sentences;
// nullopt for fewer than two sentences.
std::optional<double> redundancy(const SummaryText& summary);

struct Keyword {
  Tokens phrase;
  double score = 0.0;
};

struct RakeOptions {
  // Candidate phrases longer than this are discarded before scoring.
  std::size_t max_phrase_length = 4;
};

// RAKE: phrases are maximal runs free of stopwords and phrase punctuation;
// word score is degree / frequency on the co-occurrence graph; phrase score is
// the sum of its word scores. Distinct phrases, best first, ties by first
// occurrence.
std::vector<Keyword> rake_keywords(const SummaryText& text, std::size_t k,
                                   const StopwordSet& stopwords = default_stopwords(),
                                   const RakeOptions& options = {});

// Normalized entropy (base 10) of the decile histogram of document positions
// where salient reference unigrams occur.
std::optional<double> decile_entropy(std::span<const std::size_t> positions, std::size_t doc_length);

// Salient unigrams are the stopword-free, de-duplicated words of the top
// `keyword_count` RAKE phrases of the reference; every occurrence counts.
std::optional<double> uniformity(const Document& doc, const SummaryText& reference,
                                 std::size_t keyword_count = 20,
                                 const StopwordSet& stopwords = default_stopwords());

// Sample Pearson correlation. Throws DegenerateInput on length mismatch,
// fewer than two points, or a constant input.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct DataMetrics {
  double compression_token = 0.0;
  double compression_sent = 0.0;
  double coverage = 0.0;
  double density = 0.0;
  std::optional<double> redundancy;
  std::optional<double> uniformity;
};

DataMetrics data_metrics(const CorpusRecord& record, const StopwordSet& stopwords = default_stopwords());

}  // namespace sumscope
