#include <string_view>
#include <unordered_map>

#include "sumscope/error.hpp"
#include "sumscope/lexical.hpp"

namespace sumscope {

FragmentSet greedy_fragments(TokenSpan doc, TokenSpan summary) {
  // Candidate starts per token, ascending, so the first longest match found
  // is the earliest one.
  std::unordered_map<std::string_view, std::vector<std::size_t>> starts;
  for (std::size_t j = 0; j < doc.size(); ++j) starts[doc[j]].push_back(j);

  FragmentSet out;
  out.summary_length = summary.size();
  std::size_t i = 0;
  while (i < summary.size()) {
    Fragment best{0, i, 0};
    if (const auto it = starts.find(summary[i]); it != starts.end()) {
      for (const std::size_t j : it->second) {
        std::size_t len = 0;
        while (i + len < summary.size() && j + len < doc.size() && summary[i + len] == doc[j + len]) ++len;
        if (len > best.length) best = Fragment{j, i, len};
      }
    }
    if (best.length > 0) {
      out.fragments.push_back(best);
      i += best.length;
    } else {
      ++i;
    }
  }
  return out;
}

double coverage(const FragmentSet& frags) {
  if (frags.summary_length == 0) throw DegenerateInput("coverage of an empty summary");
  std::size_t covered = 0;
  for (const auto& f : frags.fragments) covered += f.length;
  return static_cast<double>(covered) / static_cast<double>(frags.summary_length);
}

double density(const FragmentSet& frags) {
  if (frags.summary_length == 0) throw DegenerateInput("density of an empty summary");
  std::size_t squares = 0;
  for (const auto& f : frags.fragments) squares += f.length * f.length;
  return static_cast<double>(squares) / static_cast<double>(frags.summary_length);
}

}  // namespace sumscope
