#include "sumscope/text.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include "sumscope/error.hpp"

namespace sumscope {
namespace {

// Length in bytes of the whitespace sequence at text[i], 0 if none. Covers
// ASCII whitespace and the UTF-8 encodings of the Unicode Zs/Zl/Zp spaces.
std::size_t whitespace_at(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return 1;
  const auto byte = [&](std::size_t k) -> unsigned {
    return i + k < text.size() ? static_cast<unsigned char>(text[i + k]) : 0u;
  };
  if (c == 0xC2 && (byte(1) == 0xA0 || byte(1) == 0x85)) return 2;
  if (c == 0xE1 && byte(1) == 0x9A && byte(2) == 0x80) return 3;
  if (c == 0xE2 && byte(1) == 0x80) {
    const unsigned b = byte(2);
    if ((b >= 0x80 && b <= 0x8A) || b == 0xA8 || b == 0xA9 || b == 0xAF) return 3;
  }
  if (c == 0xE2 && byte(1) == 0x81 && byte(2) == 0x9F) return 3;
  if (c == 0xE3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;
  return 0;
}

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

void emit_piece(std::string_view piece, Tokens& out) {
  std::size_t b = 0;
  std::size_t e = piece.size();
  while (b < e && is_ascii_punct(piece[b])) ++b;
  while (e > b && is_ascii_punct(piece[e - 1])) --e;
  if (b == e) return;
  std::string token(piece.substr(b, e - b));
  for (auto& ch : token) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  out.push_back(std::move(token));
}

void emit_chunk(std::string_view chunk, Tokens& out) {
  std::size_t start = 0;
  for (std::size_t i = 0; i <= chunk.size(); ++i) {
    if (i == chunk.size() || chunk[i] == '-') {
      emit_piece(chunk.substr(start, i - start), out);
      start = i + 1;
    }
  }
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && whitespace_at(s, b) > 0) b += whitespace_at(s, b);
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

constexpr std::array<std::string_view, 5> kAbbreviations = {"e.g.", "i.e.", "et al.", "fig.", "eq."};

bool ends_with_abbreviation(std::string_view text, std::size_t terminator) {
  const std::string_view head = text.substr(0, terminator + 1);
  for (const auto abbr : kAbbreviations) {
    if (head.size() < abbr.size()) continue;
    const std::size_t at = head.size() - abbr.size();
    bool match = true;
    for (std::size_t k = 0; k < abbr.size() && match; ++k) {
      char c = head[at + k];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      match = c == abbr[k];
    }
    if (!match) continue;
    if (at == 0) return true;
    const auto before = static_cast<unsigned char>(head[at - 1]);
    if (!std::isalnum(before)) return true;
  }
  return false;
}

void segment_paragraph(std::string_view para, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < para.size(); ++i) {
    const char c = para[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t k = i + 1;
    bool boundary = false;
    if (k == para.size()) {
      boundary = true;
    } else if (const std::size_t w = whitespace_at(para, k); w > 0) {
      while (k < para.size() && whitespace_at(para, k) > 0) k += whitespace_at(para, k);
      boundary = k == para.size() || is_ascii_upper(para[k]);
    }
    if (!boundary || (c == '.' && ends_with_abbreviation(para, i))) continue;
    const auto sentence = trim(para.substr(start, i + 1 - start));
    if (!sentence.empty()) out.emplace_back(sentence);
    start = i + 1;
  }
  const auto rest = trim(para.substr(std::min(start, para.size())));
  if (!rest.empty()) out.emplace_back(rest);
}

// Start offset of the next blank-line separator at or after pos, with its end.
std::pair<std::size_t, std::size_t> next_blank_line(std::string_view text, std::size_t pos) {
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] != '\n') continue;
    std::size_t j = i + 1;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
    if (j < text.size() && text[j] == '\n') {
      std::size_t end = j + 1;
      while (end < text.size() && whitespace_at(text, end) > 0) end += whitespace_at(text, end);
      return {i, end};
    }
  }
  return {text.size(), text.size()};
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (const std::size_t w = whitespace_at(text, i); w > 0) {
      i += w;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && whitespace_at(text, j) == 0) ++j;
    emit_chunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::vector<std::string> segment_sentences(std::string_view raw_text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const auto [sep, next] = next_blank_line(raw_text, pos);
    segment_paragraph(raw_text.substr(pos, sep - pos), out);
    pos = next;
  }
  return out;
}

std::string join(TokenSpan tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += sep;
    out += tokens[i];
  }
  return out;
}

StopwordSet StopwordSet::english() {
  static constexpr std::string_view kWords[] = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
      "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his",
      "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself",
      "they", "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
      "that", "that'll", "these", "those", "am", "is", "are", "was", "were", "be", "been",
      "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an", "the",
      "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by", "for",
      "with", "about", "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over", "under",
      "again", "further", "then", "once", "here", "there", "when", "where", "why", "how",
      "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
      "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can",
      "will", "just", "don", "don't", "should", "should've", "now", "d", "ll", "m", "o", "re",
      "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn", "didn't", "doesn",
      "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn", "isn't", "ma",
      "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
      "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn",
      "wouldn't"};
  std::unordered_set<std::string> words;
  for (const auto w : kWords) words.emplace(w);
  return StopwordSet(std::move(words));
}

StopwordSet StopwordSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    for (auto& t : tokenize(word)) words.insert(std::move(t));
  }
  return StopwordSet(std::move(words));
}

const StopwordSet& default_stopwords() {
  static const StopwordSet instance = [] {
    if (const char* path = std::getenv("SUMSCOPE_STOPWORDS"); path != nullptr && *path != '\0') {
      return StopwordSet::from_file(path);
    }
    return StopwordSet::english();
  }();
  return instance;
}

Tokens stem_tokens(TokenSpan tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(porter_stem(t));
  return out;
}

}  // namespace sumscope
