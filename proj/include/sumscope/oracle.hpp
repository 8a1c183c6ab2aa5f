#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/rouge.hpp"

namespace sumscope {

enum class OrderMode { Original, Randomized };
enum class BudgetUnit { Sentences, Tokens };

struct OracleConfig {
  RougeVariant rouge_variant = RougeVariant::R1;
  OrderMode order_mode = OrderMode::Original;
  std::uint64_t seed = 0;  // used by OrderMode::Randomized
  BudgetUnit budget_unit = BudgetUnit::Sentences;
  std::size_t budget = 3;
};

struct OracleResult {
  std::vector<std::size_t> indices;  // flat sentence indices in concatenation order
  std::vector<double> step_scores;   // F1 after each accepted sentence
};

// Deterministic Fisher-Yates permutation of [0, n) driven by mt19937_64.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

// Greedily adds the sentence that most improves ROUGE F1 of the running
// selection (concatenated in consideration order) against the reference;
// stops when no candidate strictly improves or the budget is reached.
OracleResult greedy_oracle_trace(const Document& doc, const SummaryText& reference, const OracleConfig& config);

std::vector<std::size_t> greedy_oracle(const Document& doc, const SummaryText& reference,
                                       const OracleConfig& config);

}  // namespace sumscope
