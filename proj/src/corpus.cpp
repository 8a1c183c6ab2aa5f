#include "sumscope/corpus.hpp"

#include <json.hpp>

#include "sumscope/error.hpp"

namespace sumscope {
namespace {

using nlohmann::json;

std::string clean_sentence(std::string raw) {
  for (const std::string_view tag : {"<S>", "</S>"}) {
    for (auto at = raw.find(tag); at != std::string::npos; at = raw.find(tag, at)) {
      raw.erase(at, tag.size());
    }
  }
  const auto first = raw.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = raw.find_last_not_of(" \t\r\n");
  return raw.substr(first, last - first + 1);
}

std::vector<Sentence> sentence_list(const json& node, const char* field) {
  if (!node.is_array()) throw SchemaError(std::string(field) + " must be a list of strings");
  std::vector<Sentence> out;
  for (const auto& item : node) {
    if (!item.is_string()) throw SchemaError(std::string(field) + " must be a list of strings");
    auto raw = clean_sentence(item.get<std::string>());
    if (!raw.empty()) out.push_back(make_sentence(std::move(raw)));
  }
  return out;
}

std::string record_id(const json& obj) {
  for (const char* key : {"article_id", "id"}) {
    const auto it = obj.find(key);
    if (it == obj.end()) continue;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (it->is_number()) return it->dump();
    throw SchemaError(std::string(key) + " must be a string or number");
  }
  throw SchemaError("missing article_id");
}

}  // namespace

Sentence make_sentence(std::string raw) {
  Sentence s;
  s.tokens = tokenize(raw);
  s.raw = std::move(raw);
  return s;
}

Document::Document(std::string id, std::vector<Section> sections)
    : id_(std::move(id)), sections_(std::move(sections)) {
  if (sections_.empty()) throw SchemaError("document has no sections");
  std::size_t flat_position = 0;
  for (std::size_t si = 0; si < sections_.size(); ++si) {
    auto& section = sections_[si];
    if (section.sentences.empty()) throw SchemaError("document section " + std::to_string(si + 1) + " is empty");
    section.index = si + 1;
    for (std::size_t k = 0; k < section.sentences.size(); ++k) {
      auto& s = section.sentences[k];
      s.section_index = section.index;
      s.position_in_section = k + 1;
      s.position_in_document = ++flat_position;
      flat_.push_back(s);
    }
  }
}

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : flat_) n += s.tokens.size();
  return n;
}

Tokens Document::flat_tokens() const {
  Tokens out;
  out.reserve(token_count());
  for (const auto& s : flat_) out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  return out;
}

std::pair<std::size_t, std::size_t> Document::section_range(std::size_t index) const {
  if (index == 0 || index > sections_.size()) throw InvalidPosition("no section " + std::to_string(index));
  const auto& first = sections_[index - 1].sentences.front();
  const std::size_t begin = first.position_in_document - 1;
  return {begin, begin + sections_[index - 1].sentences.size()};
}

SummaryText::SummaryText(std::vector<Sentence> sentences) : sentences_(std::move(sentences)) {
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    auto& s = sentences_[i];
    s.section_index.reset();
    s.position_in_section = 0;
    s.position_in_document = i + 1;
    token_count_ += s.tokens.size();
  }
}

SummaryText SummaryText::from_raw(const std::vector<std::string>& sentences) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (const auto& raw : sentences) out.push_back(make_sentence(raw));
  return SummaryText(std::move(out));
}

Tokens SummaryText::flat_tokens() const {
  Tokens out;
  out.reserve(token_count_);
  for (const auto& s : sentences_) out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  return out;
}

DocStats doc_stats(const CorpusRecord& record) {
  return {record.document.token_count(), record.document.sentence_count(),
          record.reference.token_count(), record.reference.sentence_count()};
}

CorpusRecord parse_corpus_line(std::string_view json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!obj.is_object()) throw SchemaError("record must be a JSON object");

  const std::string id = record_id(obj);

  const auto abstract = obj.find("abstract_text");
  if (abstract == obj.end()) throw SchemaError("missing abstract_text");
  auto reference = sentence_list(*abstract, "abstract_text");
  if (reference.empty()) throw SchemaError("empty abstract_text");

  std::vector<Section> sections;
  if (const auto secs = obj.find("sections"); secs != obj.end()) {
    if (!secs->is_array()) throw SchemaError("sections must be a list of lists");
    const auto names = obj.find("section_names");
    const bool has_names = names != obj.end() && !names->is_null();
    if (has_names && (!names->is_array() || names->size() != secs->size())) {
      throw SchemaError("sections/section_names length mismatch");
    }
    for (std::size_t i = 0; i < secs->size(); ++i) {
      Section section;
      section.sentences = sentence_list((*secs)[i], "sections");
      if (section.sentences.empty()) continue;
      if (has_names) {
        const auto& name = (*names)[i];
        if (!name.is_string()) throw SchemaError("section_names must be strings");
        section.name = name.get<std::string>();
      }
      sections.push_back(std::move(section));
    }
  } else if (const auto text = obj.find("article_text"); text != obj.end()) {
    Section body;
    body.name = "body";
    body.sentences = sentence_list(*text, "article_text");
    if (!body.sentences.empty()) sections.push_back(std::move(body));
  } else {
    throw SchemaError("missing sections or article_text");
  }
  if (sections.empty()) throw SchemaError("empty document");

  return CorpusRecord{Document(id, std::move(sections)), SummaryText(std::move(reference))};
}

std::string to_corpus_line(const CorpusRecord& record) {
  json obj = json::object();
  obj["article_id"] = record.document.id();
  json abstract = json::array();
  for (const auto& s : record.reference.sentences()) abstract.push_back(s.raw);
  obj["abstract_text"] = std::move(abstract);
  json sections = json::array();
  json names = json::array();
  bool any_name = false;
  for (const auto& section : record.document.sections()) {
    json sentences = json::array();
    for (const auto& s : section.sentences) sentences.push_back(s.raw);
    sections.push_back(std::move(sentences));
    names.push_back(section.name.value_or(""));
    any_name = any_name || section.name.has_value();
  }
  obj["sections"] = std::move(sections);
  if (any_name) obj["section_names"] = std::move(names);
  return obj.dump();
}

CorpusReader::CorpusReader(const std::string& path) : in_(path) {
  if (!in_) throw IoError("cannot open " + path);
}

std::optional<std::string> CorpusReader::next_line() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  return std::nullopt;
}

std::optional<CorpusRecord> CorpusReader::next() {
  auto line = next_line();
  if (!line) return std::nullopt;
  return parse_corpus_line(*line);
}

}  // namespace sumscope
