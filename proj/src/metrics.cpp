#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sumscope/error.hpp"
#include "sumscope/lexical.hpp"

namespace sumscope {
namespace {

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Splits one sentence into RAKE candidate phrases. Words are produced exactly
// as tokenize() would produce them; phrase breaks fall on stopwords, on
// punctuation stripped from word edges and on hyphens.
void candidate_phrases(std::string_view raw, const StopwordSet& stopwords, std::vector<Tokens>& out) {
  Tokens current;
  const auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    if (is_space(raw[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < raw.size() && !is_space(raw[j])) ++j;
    const std::string_view chunk = raw.substr(i, j - i);
    std::size_t piece_start = 0;
    for (std::size_t h = 0; h <= chunk.size(); ++h) {
      if (h < chunk.size() && chunk[h] != '-') continue;
      const std::string_view piece = chunk.substr(piece_start, h - piece_start);
      piece_start = h + 1;
      std::size_t b = 0;
      std::size_t e = piece.size();
      while (b < e && is_ascii_punct(piece[b])) ++b;
      while (e > b && is_ascii_punct(piece[e - 1])) --e;
      if (b > 0) flush();
      if (b < e) {
        auto words = tokenize(piece.substr(b, e - b));
        for (auto& w : words) {
          if (stopwords.contains(w)) {
            flush();
          } else {
            current.push_back(std::move(w));
          }
        }
      }
      if (e < piece.size() || h < chunk.size()) flush();
    }
    i = j;
  }
  flush();
}

}  // namespace

Compression compression(const CorpusRecord& record) {
  const auto stats = doc_stats(record);
  if (stats.summary_tokens == 0 || stats.summary_sentences == 0) {
    throw DegenerateInput("compression of an empty summary");
  }
  return {static_cast<double>(stats.doc_tokens) / static_cast<double>(stats.summary_tokens),
          static_cast<double>(stats.doc_sentences) / static_cast<double>(stats.summary_sentences)};
}

std::optional<double> redundancy(const SummaryText& summary) {
  const auto& sentences = summary.sentences();
  if (sentences.size() < 2) return std::nullopt;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      total += rouge_l(sentences[i].tokens, sentences[j].tokens).f1;
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

std::vector<Keyword> rake_keywords(const SummaryText& text, std::size_t k, const StopwordSet& stopwords,
                                   const RakeOptions& options) {
  std::vector<Tokens> phrases;
  for (const auto& s : text.sentences()) candidate_phrases(s.raw, stopwords, phrases);
  std::erase_if(phrases, [&](const Tokens& p) { return p.size() > options.max_phrase_length; });

  std::unordered_map<std::string, double> frequency;
  std::unordered_map<std::string, double> degree;
  for (const auto& phrase : phrases) {
    for (const auto& w : phrase) {
      frequency[w] += 1.0;
      degree[w] += static_cast<double>(phrase.size());
    }
  }

  std::vector<Keyword> ranked;
  std::set<Tokens> seen;
  for (const auto& phrase : phrases) {
    if (!seen.insert(phrase).second) continue;
    double score = 0.0;
    for (const auto& w : phrase) score += degree[w] / frequency[w];
    ranked.push_back({phrase, score});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Keyword& a, const Keyword& b) { return a.score > b.score; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::optional<double> decile_entropy(std::span<const std::size_t> positions, std::size_t doc_length) {
  if (positions.empty() || doc_length == 0) return std::nullopt;
  std::array<std::size_t, 10> buckets{};
  for (const std::size_t p : positions) ++buckets[std::min<std::size_t>(10 * p / doc_length, 9)];
  double entropy = 0.0;
  const auto total = static_cast<double>(positions.size());
  for (const std::size_t count : buckets) {
    if (count == 0) continue;
    const double q = static_cast<double>(count) / total;
    entropy -= q * std::log(q);
  }
  return std::clamp(entropy / std::log(10.0), 0.0, 1.0);
}

std::optional<double> uniformity(const Document& doc, const SummaryText& reference, std::size_t keyword_count,
                                 const StopwordSet& stopwords) {
  std::unordered_set<std::string> salient;
  for (const auto& keyword : rake_keywords(reference, keyword_count, stopwords)) {
    for (const auto& w : keyword.phrase) {
      if (!stopwords.contains(w)) salient.insert(w);
    }
  }
  std::vector<std::size_t> positions;
  std::size_t p = 0;
  for (const auto& s : doc.flat_sentences()) {
    for (const auto& t : s.tokens) {
      if (salient.contains(t)) positions.push_back(p);
      ++p;
    }
  }
  return decile_entropy(positions, p);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DegenerateInput("pearson: length mismatch");
  if (xs.size() < 2) throw DegenerateInput("pearson: fewer than two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

DataMetrics data_metrics(const CorpusRecord& record, const StopwordSet& stopwords) {
  const auto ratios = compression(record);
  const auto frags = greedy_fragments(record.document.flat_tokens(), record.reference.flat_tokens());
  DataMetrics m;
  m.compression_token = ratios.token_ratio;
  m.compression_sent = ratios.sentence_ratio;
  m.coverage = coverage(frags);
  m.density = density(frags);
  m.redundancy = redundancy(record.reference);
  m.uniformity = uniformity(record.document, record.reference, 20, stopwords);
  return m;
}

}  // namespace sumscope
