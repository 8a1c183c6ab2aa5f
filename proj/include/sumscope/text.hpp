#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sumscope {

using Tokens = std::vector<std::string>;
using TokenSpan = std::span<const std::string>;

// Lowercases (ASCII), splits on whitespace, strips leading/trailing
// punctuation from each token and splits on internal hyphens. Bytes >= 0x80
// are treated as word characters, so UTF-8 text passes through unchanged.
Tokens tokenize(std::string_view text);

// Fallback sentence splitter for corpora that are not pre-segmented.
// Blank lines always end a sentence; otherwise a split happens after . ! ?
// followed by whitespace and an uppercase letter (or end of text), unless the
// terminator closes a known abbreviation.
std::vector<std::string> segment_sentences(std::string_view raw_text);

std::string join(TokenSpan tokens, std::string_view sep = " ");

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

  // Embedded English list (the 179-word NLTK list).
  static StopwordSet english();
  // One word per line; blank lines and lines starting with '#' ignored.
  static StopwordSet from_file(const std::string& path);

 private:
  std::unordered_set<std::string> words_;
};

// The process-wide list: the file named by SUMSCOPE_STOPWORDS if set,
// the embedded English list otherwise. Loaded once.
const StopwordSet& default_stopwords();

// Porter (1980) suffix-stripping stemmer. Expects a lowercase token.
std::string porter_stem(std::string_view word);
Tokens stem_tokens(TokenSpan tokens);

}  // namespace sumscope
