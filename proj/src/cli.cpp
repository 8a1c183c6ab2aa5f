#include "sumscope/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "sumscope/corpus.hpp"
#include "sumscope/error.hpp"
#include "sumscope/evaldim.hpp"
#include "sumscope/graphsum.hpp"
#include "sumscope/lexical.hpp"
#include "sumscope/oracle.hpp"
#include "sumscope/profile.hpp"
#include "sumscope/vectorize.hpp"

namespace sumscope::cli {
namespace {

using nlohmann::ordered_json;

// Thrown to unwind a command with an exit code and one diagnostic line.
struct Abort {
  int code;
  std::string diagnostic;
};

std::string kv_quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const SchemaError*>(&e)) return "schema";
  if (dynamic_cast<const AlignmentError*>(&e)) return "alignment";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "degenerate_input";
  if (dynamic_cast<const FormatError*>(&e)) return "format";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  return "data";
}

[[noreturn]] void abort_with(const std::exception& e, std::string_view path, std::size_t line = 0) {
  const int code = dynamic_cast<const IoError*>(&e) ? kMissingInput : kDataError;
  std::string diag = "error=" + error_kind(e) + " path=" + kv_quote(path);
  if (line > 0) diag += " line=" + std::to_string(line);
  diag += " message=" + kv_quote(e.what());
  throw Abort{code, std::move(diag)};
}

[[noreturn]] void usage_error(std::string_view message) {
  throw Abort{kUsage, "error=usage message=" + kv_quote(message)};
}

void require_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Abort{kMissingInput, "error=missing_input path=" + kv_quote(path)};
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Abort{kMissingInput, "error=io path=" + kv_quote(path) + " message=" + kv_quote("cannot write")};
  return out;
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Reads the corpus in bounded batches, applies `work` to each record on a
// worker pool and hands the results to `sink` in input order. `work` also
// receives one draw from the seeded master generator, taken in record order.
template <typename Result, typename Work, typename Sink>
void stream_corpus(const std::string& path, unsigned workers, std::uint64_t seed, Work work, Sink sink) {
  require_file(path);
  std::unique_ptr<CorpusReader> reader;
  try {
    reader = std::make_unique<CorpusReader>(path);
  } catch (const IoError& e) {
    abort_with(e, path);
  }
  std::mt19937_64 master(seed);
  const std::size_t batch_size = std::size_t{workers} * 16;
  while (true) {
    std::vector<std::string> lines;
    std::vector<std::size_t> line_numbers;
    std::vector<std::uint64_t> draws;
    while (lines.size() < batch_size) {
      auto line = reader->next_line();
      if (!line) break;
      lines.push_back(std::move(*line));
      line_numbers.push_back(reader->line_number());
      draws.push_back(master());
    }
    if (lines.empty()) break;

    std::vector<std::optional<Result>> results(lines.size());
    std::vector<std::exception_ptr> errors(lines.size());
    const auto run_slice = [&](std::size_t first) {
      for (std::size_t i = first; i < lines.size(); i += workers) {
        try {
          results[i] = work(parse_corpus_line(lines[i]), draws[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      run_slice(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_slice, w);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (errors[i]) {
        try {
          std::rethrow_exception(errors[i]);
        } catch (const Error& e) {
          abort_with(e, path, line_numbers[i]);
        } catch (const std::exception& e) {
          abort_with(Error(e.what()), path, line_numbers[i]);
        }
      }
      sink(std::move(*results[i]), line_numbers[i]);
    }
  }
}

std::string candidate_line(const Document& doc, const std::vector<std::size_t>& indices) {
  ordered_json obj;
  obj["id"] = doc.id();
  obj["summary_sentences"] = ordered_json::array();
  obj["indices"] = ordered_json::array();
  for (const auto i : indices) {
    obj["summary_sentences"].push_back(doc.flat_sentences()[i].raw);
    obj["indices"].push_back(i);
  }
  return obj.dump() + "\n";
}

std::vector<double> parse_grid(const std::string& text, std::string_view flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) usage_error(std::string(flag) + " is empty");
  return out;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  std::string input;
  std::string out;
  std::string records_out;
  std::string format = "json";
  unsigned workers = 0;
};

int cmd_profile(const ProfileArgs& args, std::ostream& err) {
  const std::string records_path = args.records_out.empty() ? args.out + ".records.csv" : args.records_out;
  const auto& stopwords = default_stopwords();
  ProfileAccumulator acc;
  stream_corpus<MetricRecord>(
      args.input, worker_count(args.workers), 0,
      [&](const CorpusRecord& record, std::uint64_t) { return compute_metric_record(record, stopwords); },
      [&](MetricRecord&& r, std::size_t) { acc.add(r); });
  ProfileReport report;
  try {
    report = acc.report();
  } catch (const Error& e) {
    abort_with(e, args.input);
  }
  auto records = open_output(records_path);
  records << metric_csv_header() << "\n";
  for (const auto& r : acc.records()) records << metric_csv_row(r) << "\n";
  auto out = open_output(args.out);
  out << emit_report(report, args.format);
  err << "status=ok command=profile records=" << report.record_count << " out=" << kv_quote(args.out)
      << " records_out=" << kv_quote(records_path) << "\n";
  return kOk;
}

// -------------------------------------------------------------- summarize

struct SummarizeArgs {
  std::string input;
  std::string out;
  std::string encoder = "tfidf";
  std::string embeddings;
  std::string bias = "discourse";
  std::size_t budget = 242;
  double lambda1 = 0.5;
  double lambda2 = 1.0;
  double alpha = 1.0;
  double mu1 = 1.0;
  double min_df = 0.01;
  long svd_rank = 768;
  bool document_df = false;
  bool strict_budget = false;
  std::string tune_on;
  std::string alphas = "0,0.5,0.8,1.0,1.2";
  std::string mu1s = "0.5,1.0,1.5";
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

TfidfModel fit_corpus_tfidf(const SummarizeArgs& args, std::ostream& err) {
  TfidfOptions options;
  options.min_df = args.min_df;
  options.document_level_df = args.document_df;
  TfidfBuilder builder(options);
  stream_corpus<Document>(
      args.input, 1, 0, [](const CorpusRecord& r, std::uint64_t) { return r.document; },
      [&](Document&& doc, std::size_t) { builder.add_document(doc); });
  TfidfModel model;
  try {
    model = builder.build();
  } catch (const Error& e) {
    abort_with(e, args.input);
  }
  const auto vocab = static_cast<Eigen::Index>(model.vocabulary().size());
  if (args.svd_rank > 0 && vocab > args.svd_rank) {
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::Index row = 0;
    stream_corpus<Document>(
        args.input, 1, 0, [](const CorpusRecord& r, std::uint64_t) { return r.document; },
        [&](Document&& doc, std::size_t) {
          for (const auto& s : doc.flat_sentences()) {
            const auto v = model.sparse_vector(s.tokens);
            for (Eigen::SparseVector<double>::InnerIterator it(v); it; ++it) {
              triplets.emplace_back(row, it.index(), it.value());
            }
            ++row;
          }
        });
    Eigen::SparseMatrix<double> matrix(row, vocab);
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    SvdOptions svd;
    svd.seed = args.seed;
    try {
      model.set_projection(truncated_svd(matrix, std::min<Eigen::Index>(args.svd_rank, std::min(row, vocab)), svd));
    } catch (const Error& e) {
      abort_with(e, args.input);
    }
  }
  err << "status=ok stage=tfidf vocabulary=" << vocab
      << " rank=" << (model.projection() ? model.projection()->rank() : vocab) << "\n";
  return model;
}

int cmd_summarize(const SummarizeArgs& args, std::ostream& err) {
  const bool embed = args.encoder == "embed";
  if (embed && args.embeddings.empty()) usage_error("--encoder embed requires --embeddings");
  require_file(args.input);

  CentralityConfig config;
  config.lambda1 = args.lambda1;
  config.lambda2 = args.lambda2;
  config.alpha = args.alpha;
  config.mu1 = args.mu1;
  config.budget_tokens = args.budget;
  config.bias_enabled = args.bias == "discourse";
  config.strict_budget = args.strict_budget;

  std::optional<TfidfModel> tfidf;
  std::unique_ptr<EmbeddingIndex> index;
  if (embed) {
    require_file(args.embeddings);
    try {
      index = std::make_unique<EmbeddingIndex>(args.embeddings);
    } catch (const Error& e) {
      abort_with(e, args.embeddings);
    }
  } else {
    tfidf = fit_corpus_tfidf(args, err);
  }
  // EmbeddingIndex seeks a shared stream, so lookups are serialized.
  std::mutex index_mutex;
  const SentenceEncoder encoder = [&](const Document& doc) -> SentenceMatrix {
    if (tfidf) return tfidf->encode(doc);
    DocEmbeddings emb;
    {
      std::lock_guard lock(index_mutex);
      emb = index->get(doc.id());
    }
    check_alignment(emb, doc);
    return emb.sentences;
  };

  if (!args.tune_on.empty()) {
    require_file(args.tune_on);
    std::vector<CorpusRecord> validation;
    stream_corpus<CorpusRecord>(
        args.tune_on, 1, 0, [](const CorpusRecord& r, std::uint64_t) { return r; },
        [&](CorpusRecord&& r, std::size_t) { validation.push_back(std::move(r)); });
    TuningGrid grid{parse_grid(args.alphas, "--alphas"), parse_grid(args.mu1s, "--mu1s")};
    try {
      config = tune(validation, encoder, grid, config);
    } catch (const Error& e) {
      abort_with(e, args.tune_on);
    }
    err << "status=ok stage=tune alpha=" << format_number(config.alpha) << " mu1=" << format_number(config.mu1)
        << "\n";
  }

  auto out = open_output(args.out);
  std::size_t written = 0;
  stream_corpus<std::string>(
      args.input, worker_count(args.workers), 0,
      [&](const CorpusRecord& record, std::uint64_t) {
        const auto& doc = record.document;
        std::vector<std::size_t> picked;
        try {
          picked = summarize(doc, encoder, config);
        } catch (const EmptySelection&) {
        }
        return candidate_line(doc, picked);
      },
      [&](std::string&& line, std::size_t line_number) {
        if (line.find("\"summary_sentences\":[]") != std::string::npos) {
          err << "warning=empty_selection path=" << kv_quote(args.input) << " line=" << line_number << "\n";
        }
        out << line;
        ++written;
      });
  err << "status=ok command=summarize records=" << written << " out=" << kv_quote(args.out) << "\n";
  return kOk;
}

// ----------------------------------------------------------------- oracle

struct OracleArgs {
  std::string input;
  std::string out;
  std::string rouge = "1";
  std::string order = "original";
  std::size_t budget = 3;
  std::string budget_unit = "sentences";
  bool stem = false;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

RougeVariant parse_variant(const std::string& text) {
  if (text == "1" || text == "R1") return RougeVariant::R1;
  if (text == "2" || text == "R2") return RougeVariant::R2;
  if (text == "L" || text == "RL" || text == "l") return RougeVariant::RL;
  usage_error("--rouge must be one of 1, 2, L");
}

CorpusRecord stemmed(const CorpusRecord& record) {
  std::vector<Section> sections = record.document.sections();
  for (auto& section : sections) {
    for (auto& s : section.sentences) s.tokens = stem_tokens(s.tokens);
  }
  std::vector<Sentence> ref = record.reference.sentences();
  for (auto& s : ref) s.tokens = stem_tokens(s.tokens);
  return {Document(record.document.id(), std::move(sections)), SummaryText(std::move(ref))};
}

int cmd_oracle(const OracleArgs& args, std::ostream& err) {
  OracleConfig base;
  base.rouge_variant = parse_variant(args.rouge);
  base.order_mode = args.order == "random" ? OrderMode::Randomized : OrderMode::Original;
  base.budget = args.budget;
  base.budget_unit = args.budget_unit == "tokens" ? BudgetUnit::Tokens : BudgetUnit::Sentences;
  if (base.budget == 0) usage_error("--budget must be positive");

  require_file(args.input);
  auto out = open_output(args.out);
  std::size_t written = 0;
  stream_corpus<std::string>(
      args.input, worker_count(args.workers), args.seed,
      [&](const CorpusRecord& record, std::uint64_t draw) {
        OracleConfig config = base;
        config.seed = draw;
        std::vector<std::size_t> indices;
        if (args.stem) {
          const auto stem = stemmed(record);
          indices = greedy_oracle(stem.document, stem.reference, config);
        } else {
          indices = greedy_oracle(record.document, record.reference, config);
        }
        return candidate_line(record.document, indices);
      },
      [&](std::string&& line, std::size_t) {
        out << line;
        ++written;
      });
  err << "status=ok command=oracle records=" << written << " out=" << kv_quote(args.out) << "\n";
  return kOk;
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string candidates;
  std::string input;
  std::string out;
  std::string dims = "rouge,informativeness";
  std::string nsp;
  std::string token_embeddings;
  std::string ref_token_embeddings;
  std::string format = "json";
  bool normalized_coherence = false;
  bool stem = false;
  unsigned workers = 0;
};

struct Dims {
  bool rouge = false;
  bool soft = false;
  bool informativeness = false;
  bool coherence = false;
};

Dims parse_dims(const std::string& text) {
  Dims d;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "rouge") {
      d.rouge = true;
    } else if (item == "soft") {
      d.soft = true;
    } else if (item == "informativeness") {
      d.informativeness = true;
    } else if (item == "coherence") {
      d.coherence = true;
    } else {
      usage_error("unknown dimension '" + item + "' (rouge, soft, informativeness, coherence)");
    }
  }
  return d;
}

std::map<std::string, SummaryText> load_candidates(const std::string& path) {
  require_file(path);
  std::ifstream in(path);
  std::map<std::string, SummaryText> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
      }
      const auto id = obj.find("id");
      const auto sentences = obj.find("summary_sentences");
      if (!obj.is_object() || id == obj.end() || !id->is_string() || sentences == obj.end() ||
          !sentences->is_array()) {
        throw SchemaError("expected {\"id\": string, \"summary_sentences\": [string, ...]}");
      }
      std::vector<std::string> raw;
      for (const auto& s : *sentences) {
        if (!s.is_string()) throw SchemaError("summary_sentences must be strings");
        raw.push_back(s.get<std::string>());
      }
      out.insert_or_assign(id->get<std::string>(), SummaryText::from_raw(raw));
    } catch (const Error& e) {
      abort_with(e, path, line_number);
    }
  }
  return out;
}

SentenceMatrix stack_tokens(const DocEmbeddings& emb) {
  Eigen::Index rows = 0;
  for (const auto& m : emb.tokens) rows += m.rows();
  SentenceMatrix out(rows, emb.tokens.empty() ? emb.sentences.cols() : emb.tokens.front().cols());
  Eigen::Index at = 0;
  for (const auto& m : emb.tokens) {
    out.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return out;
}

struct EvalRow {
  std::string id;
  EvalReport report;
};

ordered_json rouge_json(const RougeScore& s) {
  ordered_json o;
  o["precision"] = s.precision;
  o["recall"] = s.recall;
  o["f1"] = s.f1;
  return o;
}

ordered_json optional_json(const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }

int cmd_evaluate(const EvaluateArgs& args, std::ostream& err) {
  const Dims dims = parse_dims(args.dims);
  if (dims.coherence && args.nsp.empty()) usage_error("coherence requires --nsp");
  if (dims.soft && (args.token_embeddings.empty() || args.ref_token_embeddings.empty())) {
    usage_error("soft requires --token-embeddings and --ref-token-embeddings");
  }
  if (!report_format_from_name(args.format)) usage_error("--format must be json or csv");

  auto candidates = load_candidates(args.candidates);
  NspScores nsp;
  if (dims.coherence) {
    require_file(args.nsp);
    try {
      nsp = load_nsp_scores(args.nsp);
    } catch (const Error& e) {
      abort_with(e, args.nsp);
    }
  }
  std::unique_ptr<EmbeddingIndex> cand_index;
  std::unique_ptr<EmbeddingIndex> ref_index;
  if (dims.soft) {
    for (const auto* p : {&args.token_embeddings, &args.ref_token_embeddings}) require_file(*p);
    try {
      cand_index = std::make_unique<EmbeddingIndex>(args.token_embeddings);
    } catch (const Error& e) {
      abort_with(e, args.token_embeddings);
    }
    try {
      ref_index = std::make_unique<EmbeddingIndex>(args.ref_token_embeddings);
    } catch (const Error& e) {
      abort_with(e, args.ref_token_embeddings);
    }
  }
  std::mutex index_mutex;

  std::vector<EvalRow> rows;
  std::set<std::string> matched;
  stream_corpus<std::optional<EvalRow>>(
      args.input, worker_count(args.workers), 0,
      [&](const CorpusRecord& record, std::uint64_t) -> std::optional<EvalRow> {
        const auto it = candidates.find(record.document.id());
        if (it == candidates.end()) return std::nullopt;
        const SummaryText& cand = it->second;
        EvalRow row{it->first, {}};
        if (dims.rouge && cand.token_count() > 0) {
          row.report.relevance = relevance_rouge(cand, record.reference, args.stem);
        }
        if (dims.informativeness) row.report.informativeness = informativeness(cand, record.document);
        if (dims.coherence) {
          const auto scores = nsp.find(row.id);
          if (scores == nsp.end()) throw AlignmentError("no NSP scores for id " + row.id);
          row.report.coherence = semantic_coherence(cand, scores->second, {args.normalized_coherence});
        }
        if (dims.soft && cand.token_count() > 0) {
          DocEmbeddings ce;
          DocEmbeddings re;
          {
            std::lock_guard lock(index_mutex);
            ce = cand_index->get(row.id);
            re = ref_index->get(row.id);
          }
          check_token_alignment(ce, cand.sentences());
          check_token_alignment(re, record.reference.sentences());
          row.report.soft_overlap = relevance_soft(stack_tokens(ce), stack_tokens(re)).f1;
        }
        return row;
      },
      [&](std::optional<EvalRow>&& row, std::size_t) {
        if (!row) return;
        matched.insert(row->id);
        rows.push_back(std::move(*row));
      });

  std::vector<std::string> unmatched;
  for (const auto& [id, _] : candidates) {
    if (!matched.contains(id)) unmatched.push_back(id);
  }
  if (!unmatched.empty()) {
    std::string ids;
    for (const auto& id : unmatched) ids += (ids.empty() ? "" : ",") + id;
    throw Abort{kDataError, "error=unmatched_ids path=" + kv_quote(args.candidates) + " count=" +
                                std::to_string(unmatched.size()) + " ids=" + kv_quote(ids)};
  }

  // Means over the rows where each value is defined.
  std::map<std::string, std::pair<CompensatedSum, std::size_t>> sums;
  const auto accumulate = [&](const std::string& key, const std::optional<double>& v) {
    if (!v) return;
    auto& [s, n] = sums[key];
    s.add(*v);
    ++n;
  };
  const std::vector<std::string> columns = {"rouge1_precision", "rouge1_recall", "rouge1_f1",
                                            "rouge2_precision", "rouge2_recall", "rouge2_f1",
                                            "rougeL_precision", "rougeL_recall", "rougeL_f1",
                                            "soft_overlap",     "informativeness", "coherence"};
  const auto values = [&](const EvalReport& r) {
    std::vector<std::optional<double>> v(columns.size());
    if (dims.rouge) {
      const RougeScore* parts[] = {&r.relevance.rouge1, &r.relevance.rouge2, &r.relevance.rougeL};
      for (std::size_t k = 0; k < 3; ++k) {
        v[3 * k] = parts[k]->precision;
        v[3 * k + 1] = parts[k]->recall;
        v[3 * k + 2] = parts[k]->f1;
      }
    }
    v[9] = r.soft_overlap;
    v[10] = r.informativeness;
    v[11] = r.coherence;
    return v;
  };
  for (const auto& row : rows) {
    const auto v = values(row.report);
    for (std::size_t c = 0; c < columns.size(); ++c) accumulate(columns[c], v[c]);
  }
  std::vector<std::optional<double>> means(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (const auto it = sums.find(columns[c]); it != sums.end()) {
      means[c] = it->second.first.value() / static_cast<double>(it->second.second);
    }
  }

  auto out = open_output(args.out);
  if (args.format == "csv") {
    out << "id";
    for (const auto& c : columns) out << "," << c;
    out << "\n";
    const auto emit = [&](const std::string& id, const std::vector<std::optional<double>>& v) {
      out << id;
      for (const auto& x : v) out << "," << (x ? format_number(*x) : "");
      out << "\n";
    };
    for (const auto& row : rows) emit(row.id, values(row.report));
    emit("__mean__", means);
  } else {
    ordered_json root;
    root["candidates"] = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json o;
      o["id"] = row.id;
      if (dims.rouge) {
        o["rouge1"] = rouge_json(row.report.relevance.rouge1);
        o["rouge2"] = rouge_json(row.report.relevance.rouge2);
        o["rougeL"] = rouge_json(row.report.relevance.rougeL);
      }
      if (dims.soft) o["soft_overlap"] = optional_json(row.report.soft_overlap);
      if (dims.informativeness) o["informativeness"] = optional_json(row.report.informativeness);
      if (dims.coherence) o["coherence"] = optional_json(row.report.coherence);
      root["candidates"].push_back(std::move(o));
    }
    ordered_json mean;
    for (std::size_t c = 0; c < columns.size(); ++c) mean[columns[c]] = optional_json(means[c]);
    root["mean"] = std::move(mean);
    root["count"] = rows.size();
    out << root.dump(2) << "\n";
  }
  err << "status=ok command=evaluate candidates=" << rows.size() << " out=" << kv_quote(args.out) << "\n";
  return kOk;
}

// -------------------------------------------------------------- correlate

struct CorrelateArgs {
  std::string input;
  std::string out;
};

int cmd_correlate(const CorrelateArgs& args, std::ostream& err) {
  require_file(args.input);
  std::ifstream in(args.input);
  std::vector<MetricRecord> records;
  try {
    records = read_metric_csv(in);
    if (records.size() < 2) throw DegenerateInput("need at least two metric rows, found " + std::to_string(records.size()));
  } catch (const Error& e) {
    abort_with(e, args.input);
  }
  const auto matrix = correlation_matrix(records, kCorrelatedMetrics);
  auto out = open_output(args.out);
  out << correlation_json(matrix);
  err << "status=ok command=correlate rows=" << records.size() << " out=" << kv_quote(args.out) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-document summarization toolkit: corpus profiling, graph summarization, oracles, evaluation",
               "sumscope"};
  app.require_subcommand(1);

  ProfileArgs profile;
  auto* p = app.add_subcommand("profile", "Intrinsic corpus metrics and their correlations");
  p->add_option("--input", profile.input, "Corpus JSONL")->required();
  p->add_option("--out", profile.out, "Report file")->required();
  p->add_option("--records-out", profile.records_out, "Per-record metric CSV (default: <out>.records.csv)");
  p->add_option("--format", profile.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  p->add_option("--workers", profile.workers, "Worker threads (0 = all cores)");

  SummarizeArgs summ;
  auto* s = app.add_subcommand("summarize", "Unsupervised extractive summaries by (discourse-biased) centrality");
  s->add_option("--input", summ.input, "Corpus JSONL")->required();
  s->add_option("--out", summ.out, "Candidate JSONL")->required();
  s->add_option("--encoder", summ.encoder, "Sentence encoder")->check(CLI::IsMember({"tfidf", "embed"}));
  s->add_option("--embeddings", summ.embeddings, "Sentence embedding JSONL (for --encoder embed)");
  s->add_option("--bias", summ.bias, "Centrality bias")->check(CLI::IsMember({"none", "discourse"}));
  s->add_option("--budget", summ.budget, "Summary length budget in tokens")->check(CLI::PositiveNumber);
  s->add_option("--lambda1", summ.lambda1, "Weight of edges toward nodes no farther from a boundary");
  s->add_option("--lambda2", summ.lambda2, "Weight of edges toward nodes farther from a boundary");
  s->add_option("--alpha", summ.alpha, "Section-end weight in the boundary distance");
  s->add_option("--mu1", summ.mu1, "Inter-section centrality weight");
  s->add_option("--min-df", summ.min_df, "Tf-Idf minimum document frequency")->check(CLI::Range(1e-12, 1.0));
  s->add_option("--svd-rank", summ.svd_rank, "Tf-Idf projection rank (0 disables)");
  s->add_flag("--document-df", summ.document_df, "Count Tf-Idf document frequency over documents, not sentences");
  s->add_flag("--strict-budget", summ.strict_budget, "Stop at the first sentence that overflows the budget");
  s->add_option("--tune-on", summ.tune_on, "Validation corpus for grid-searching alpha and mu1");
  s->add_option("--alphas", summ.alphas, "Alpha grid for --tune-on");
  s->add_option("--mu1s", summ.mu1s, "Mu1 grid for --tune-on");
  s->add_option("--seed", summ.seed, "Seed for the randomized SVD");
  s->add_option("--workers", summ.workers, "Worker threads (0 = all cores)");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Greedy ROUGE oracle extraction");
  o->add_option("--input", orc.input, "Corpus JSONL")->required();
  o->add_option("--out", orc.out, "Candidate JSONL")->required();
  o->add_option("--rouge", orc.rouge, "ROUGE variant")->check(CLI::IsMember({"1", "2", "L", "R1", "R2", "RL"}));
  o->add_option("--order", orc.order, "Candidate order")->check(CLI::IsMember({"original", "random"}));
  o->add_option("--budget", orc.budget, "Selection budget")->check(CLI::PositiveNumber);
  o->add_option("--budget-unit", orc.budget_unit, "Budget unit")->check(CLI::IsMember({"sentences", "tokens"}));
  o->add_flag("--stem", orc.stem, "Porter-stem tokens before scoring");
  o->add_option("--seed", orc.seed, "Seed for --order random");
  o->add_option("--workers", orc.workers, "Worker threads (0 = all cores)");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Relevance, informativeness and coherence of candidate summaries");
  e->add_option("--candidates", ev.candidates, "Candidate JSONL")->required();
  e->add_option("--input", ev.input, "Corpus JSONL")->required();
  e->add_option("--out", ev.out, "Evaluation report")->required();
  e->add_option("--dims", ev.dims, "Comma list of rouge, soft, informativeness, coherence");
  e->add_option("--nsp", ev.nsp, "Next-sentence score JSONL (for coherence)");
  e->add_option("--token-embeddings", ev.token_embeddings, "Candidate token embedding JSONL (for soft)");
  e->add_option("--ref-token-embeddings", ev.ref_token_embeddings, "Reference token embedding JSONL (for soft)");
  e->add_option("--format", ev.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  e->add_flag("--normalized-coherence", ev.normalized_coherence, "Divide coherence by ||S|| - 1");
  e->add_flag("--stem", ev.stem, "Porter-stem tokens before ROUGE");
  e->add_option("--workers", ev.workers, "Worker threads (0 = all cores)");

  CorrelateArgs corr;
  auto* c = app.add_subcommand("correlate", "Pearson matrix over a per-record metric CSV");
  c->add_option("--input", corr.input, "Metric CSV written by profile")->required();
  c->add_option("--out", corr.out, "Correlation JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "error=usage message=" << kv_quote(ex.what()) << "\n";
    return kUsage;
  }

  try {
    if (p->parsed()) return cmd_profile(profile, err);
    if (s->parsed()) return cmd_summarize(summ, err);
    if (o->parsed()) return cmd_oracle(orc, err);
    if (e->parsed()) return cmd_evaluate(ev, err);
    if (c->parsed()) return cmd_correlate(corr, err);
  } catch (const Abort& a) {
    err << a.diagnostic << "\n";
    return a.code;
  } catch (const std::exception& ex) {
    err << "error=internal message=" << kv_quote(ex.what()) << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace sumscope::cli
