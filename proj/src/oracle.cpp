#include "sumscope/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sumscope/error.hpp"

namespace sumscope {

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  std::mt19937_64 gen(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(gen() % i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

OracleResult greedy_oracle_trace(const Document& doc, const SummaryText& reference, const OracleConfig& config) {
  if (doc.sentence_count() == 0 || reference.token_count() == 0) {
    throw DegenerateInput("oracle: empty document or reference");
  }
  if (config.budget == 0) throw DegenerateInput("oracle: budget must be positive");

  const auto& sentences = doc.flat_sentences();
  // consider[r]: the sentence examined r-th; also the concatenation order.
  std::vector<std::size_t> consider(sentences.size());
  if (config.order_mode == OrderMode::Randomized) {
    consider = seeded_permutation(sentences.size(), config.seed);
  } else {
    std::iota(consider.begin(), consider.end(), std::size_t{0});
  }
  const Tokens ref = reference.flat_tokens();

  std::vector<bool> taken(sentences.size(), false);
  std::vector<std::size_t> selected_ranks;  // kept sorted
  std::size_t used_tokens = 0;
  double current = 0.0;
  OracleResult out;

  const auto concat = [&](const std::vector<std::size_t>& ranks) {
    Tokens text;
    for (const std::size_t r : ranks) {
      const auto& t = sentences[consider[r]].tokens;
      text.insert(text.end(), t.begin(), t.end());
    }
    return text;
  };

  while (true) {
    if (config.budget_unit == BudgetUnit::Sentences && selected_ranks.size() >= config.budget) break;
    double best_score = current;
    std::size_t best_rank = sentences.size();
    for (std::size_t r = 0; r < consider.size(); ++r) {
      const std::size_t i = consider[r];
      if (taken[i]) continue;
      if (config.budget_unit == BudgetUnit::Tokens && used_tokens + sentences[i].tokens.size() > config.budget) {
        continue;
      }
      auto trial = selected_ranks;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), r), r);
      const double score = rouge(config.rouge_variant, concat(trial), ref).f1;
      if (score > best_score) {
        best_score = score;
        best_rank = r;
      }
    }
    if (best_rank == sentences.size()) break;
    const std::size_t i = consider[best_rank];
    taken[i] = true;
    used_tokens += sentences[i].tokens.size();
    selected_ranks.insert(std::upper_bound(selected_ranks.begin(), selected_ranks.end(), best_rank), best_rank);
    current = best_score;
    out.step_scores.push_back(best_score);
  }
  for (const std::size_t r : selected_ranks) out.indices.push_back(consider[r]);
  return out;
}

std::vector<std::size_t> greedy_oracle(const Document& doc, const SummaryText& reference,
                                       const OracleConfig& config) {
  return greedy_oracle_trace(doc, reference, config).indices;
}

}  // namespace sumscope
