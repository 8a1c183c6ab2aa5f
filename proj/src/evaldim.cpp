#include "sumscope/evaldim.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>

#include "sumscope/error.hpp"

namespace sumscope {

RelevanceScores relevance_rouge(const SummaryText& candidate, const SummaryText& reference, bool stem) {
  Tokens cand = candidate.flat_tokens();
  Tokens ref = reference.flat_tokens();
  if (cand.empty() || ref.empty()) throw DegenerateInput("relevance: empty candidate or reference");
  if (stem) {
    cand = stem_tokens(cand);
    ref = stem_tokens(ref);
  }
  return {rouge_n(cand, ref, 1), rouge_n(cand, ref, 2), rouge_l(cand, ref)};
}

RougeScore relevance_soft(const SentenceMatrix& candidate_tokens, const SentenceMatrix& reference_tokens) {
  if (candidate_tokens.cols() != reference_tokens.cols()) {
    throw DimensionError("soft overlap: dimension " + std::to_string(candidate_tokens.cols()) + " vs " +
                         std::to_string(reference_tokens.cols()));
  }
  if (candidate_tokens.rows() == 0 || reference_tokens.rows() == 0) {
    throw DegenerateInput("soft overlap: no token vectors");
  }
  const Eigen::MatrixXd sim =
      (normalize_rows(candidate_tokens) * normalize_rows(reference_tokens).transpose()).cwiseMax(0.0);
  const double precision = sim.rowwise().maxCoeff().mean();
  const double recall = sim.colwise().maxCoeff().mean();
  auto score = RougeScore::from_pr(std::clamp(precision, 0.0, 1.0), std::clamp(recall, 0.0, 1.0));
  score.f1 = std::clamp(score.f1, 0.0, 1.0);
  return score;
}

double informativeness(const SummaryText& candidate, const Document& doc) {
  const auto& sections = doc.sections();
  if (sections.empty()) return 0.0;
  std::vector<Tokens> section_text;
  section_text.reserve(sections.size());
  for (const auto& section : sections) {
    Tokens t;
    for (const auto& s : section.sentences) t.insert(t.end(), s.tokens.begin(), s.tokens.end());
    section_text.push_back(std::move(t));
  }
  std::set<std::size_t> covered;
  for (const auto& sentence : candidate.sentences()) {
    double best = 0.0;
    std::size_t best_section = sections.size();
    for (std::size_t k = 0; k < sections.size(); ++k) {
      const double f1 = rouge_l(sentence.tokens, section_text[k]).f1;
      if (f1 > best) {
        best = f1;
        best_section = k;
      }
    }
    if (best_section < sections.size()) covered.insert(best_section);
  }
  return static_cast<double>(covered.size()) / static_cast<double>(sections.size());
}

double semantic_coherence(const SummaryText& candidate, std::span<const double> nsp_scores,
                          const CoherenceOptions& options) {
  const std::size_t m = candidate.sentence_count();
  const std::size_t expected = m == 0 ? 0 : m - 1;
  if (nsp_scores.size() != expected) {
    throw AlignmentError(std::to_string(nsp_scores.size()) + " NSP scores for " + std::to_string(m) + " sentences");
  }
  if (m < 2) return 0.0;
  double total = 0.0;
  for (const double s : nsp_scores) total += s;
  const double denominator = options.normalized ? static_cast<double>(m - 1) : static_cast<double>(m);
  return total / denominator;
}

NspScores load_nsp_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  NspScores out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
    }
    if (obj.is_object() && obj.contains("_meta")) continue;
    const auto id = obj.find("id");
    const auto scores = obj.find("scores");
    if (!obj.is_object() || id == obj.end() || !id->is_string() || scores == obj.end() || !scores->is_array()) {
      throw FormatError("line " + std::to_string(line_number) + ": expected {\"id\", \"scores\"}");
    }
    std::vector<double> values;
    for (const auto& v : *scores) {
      if (!v.is_number()) throw FormatError("line " + std::to_string(line_number) + ": non-numeric score");
      const double x = v.get<double>();
      if (!(x >= 0.0 && x <= 1.0)) throw FormatError("line " + std::to_string(line_number) + ": score outside [0, 1]");
      values.push_back(x);
    }
    out.insert_or_assign(id->get<std::string>(), std::move(values));
  }
  return out;
}

}  // namespace sumscope
