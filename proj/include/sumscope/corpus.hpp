#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumscope/text.hpp"

namespace sumscope {

// Positions are 1-based throughout: position_in_section is the x used by the
// boundary distance, section_index the section's place in the document.
struct Sentence {
  std::string raw;
  Tokens tokens;
  std::optional<std::size_t> section_index;  // unset for summary sentences
  std::size_t position_in_section = 0;
  std::size_t position_in_document = 0;

  bool operator==(const Sentence&) const = default;
};

Sentence make_sentence(std::string raw);

struct Section {
  std::optional<std::string> name;
  std::vector<Sentence> sentences;
  std::size_t index = 0;

  bool operator==(const Section&) const = default;
};

class Document {
 public:
  Document() = default;
  // Assigns section indices and sentence positions. Throws SchemaError for
  // an empty section list or an empty section.
  Document(std::string id, std::vector<Section> sections);

  const std::string& id() const { return id_; }
  const std::vector<Section>& sections() const { return sections_; }
  const std::vector<Sentence>& flat_sentences() const { return flat_; }

  std::size_t token_count() const;
  std::size_t sentence_count() const { return flat_.size(); }
  // All tokens of the document in reading order.
  Tokens flat_tokens() const;
  // Flat sentence index range [first, last) of section `index` (1-based).
  std::pair<std::size_t, std::size_t> section_range(std::size_t index) const;

  bool operator==(const Document&) const = default;

 private:
  std::string id_;
  std::vector<Section> sections_;
  std::vector<Sentence> flat_;
};

class SummaryText {
 public:
  SummaryText() = default;
  explicit SummaryText(std::vector<Sentence> sentences);
  static SummaryText from_raw(const std::vector<std::string>& sentences);

  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t token_count() const { return token_count_; }
  std::size_t sentence_count() const { return sentences_.size(); }
  Tokens flat_tokens() const;
  bool empty() const { return sentences_.empty(); }

  bool operator==(const SummaryText&) const = default;

 private:
  std::vector<Sentence> sentences_;
  std::size_t token_count_ = 0;
};

struct CorpusRecord {
  Document document;
  SummaryText reference;

  bool operator==(const CorpusRecord&) const = default;
};

struct DocStats {
  std::size_t doc_tokens = 0;        // |D|
  std::size_t doc_sentences = 0;     // ||D||
  std::size_t summary_tokens = 0;    // |S|
  std::size_t summary_sentences = 0; // ||S||

  bool operator==(const DocStats&) const = default;
};

DocStats doc_stats(const CorpusRecord& record);

// Parses one arXiv-style JSONL line:
//   {"article_id", "abstract_text": [..], "sections": [[..],..], "section_names": [..]}
// or with "article_text": [..] in place of sections (one section named "body").
// Sentence markers "<S>" / "</S>" are removed. Unknown fields are ignored.
CorpusRecord parse_corpus_line(std::string_view json_text);

// Inverse of parse_corpus_line (sections form, compact JSON, no newline).
std::string to_corpus_line(const CorpusRecord& record);

// Streams records from a JSONL file one line at a time, skipping blank lines.
class CorpusReader {
 public:
  explicit CorpusReader(const std::string& path);

  // Next record, or nullopt at end of file. Errors from parse_corpus_line
  // propagate; line_number() names the offending line.
  std::optional<CorpusRecord> next();
  // Next non-blank raw line without parsing it.
  std::optional<std::string> next_line();
  std::size_t line_number() const { return line_number_; }

 private:
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

}  // namespace sumscope
