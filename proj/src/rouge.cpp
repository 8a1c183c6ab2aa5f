#include "sumscope/rouge.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

namespace sumscope {
namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(TokenSpan tokens, std::size_t n, std::size_t& total) {
  NgramCounts counts;
  total = 0;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
    ++total;
  }
  return counts;
}

}  // namespace

RougeScore RougeScore::from_pr(double precision, double recall) {
  const double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  return {precision, recall, f1};
}

RougeScore rouge_n(TokenSpan candidate, TokenSpan reference, std::size_t n) {
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  const auto cand = count_ngrams(candidate, n, cand_total);
  const auto ref = count_ngrams(reference, n, ref_total);
  if (cand_total == 0 || ref_total == 0) return {};
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    if (const auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  return RougeScore::from_pr(static_cast<double>(overlap) / static_cast<double>(cand_total),
                             static_cast<double>(overlap) / static_cast<double>(ref_total));
}

std::size_t lcs_length(TokenSpan a, TokenSpan b) {
  if (a.empty() || b.empty()) return 0;
  // Two rolling rows over the shorter sequence.
  if (b.size() > a.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(TokenSpan candidate, TokenSpan reference) {
  if (candidate.empty() || reference.empty()) return {};
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  return RougeScore::from_pr(lcs / static_cast<double>(candidate.size()),
                             lcs / static_cast<double>(reference.size()));
}

RougeScore rouge(RougeVariant variant, TokenSpan candidate, TokenSpan reference) {
  switch (variant) {
    case RougeVariant::R1:
      return rouge_n(candidate, reference, 1);
    case RougeVariant::R2:
      return rouge_n(candidate, reference, 2);
    case RougeVariant::RL:
      return rouge_l(candidate, reference);
  }
  return {};
}

}  // namespace sumscope
