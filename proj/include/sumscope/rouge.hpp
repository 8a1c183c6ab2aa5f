#pragma once

#include <cstddef>

#include "sumscope/text.hpp"

namespace sumscope {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_pr(double precision, double recall);
  bool operator==(const RougeScore&) const = default;
};

enum class RougeVariant { R1, R2, RL };

// Clipped n-gram overlap. Zero when either side has no n-grams.
RougeScore rouge_n(TokenSpan candidate, TokenSpan reference, std::size_t n);

// Longest-common-subsequence ROUGE over flat token sequences.
RougeScore rouge_l(TokenSpan candidate, TokenSpan reference);

std::size_t lcs_length(TokenSpan a, TokenSpan b);

RougeScore rouge(RougeVariant variant, TokenSpan candidate, TokenSpan reference);

}  // namespace sumscope
