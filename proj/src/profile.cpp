#include "sumscope/profile.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "sumscope/error.hpp"

namespace sumscope {
namespace {

constexpr std::array<std::string_view, kAllMetrics.size()> kNames = {
    "doc_tokens",        "doc_sentences",    "summary_tokens", "summary_sentences", "compression_token",
    "compression_sent",  "coverage",         "density",        "redundancy",        "uniformity"};

std::size_t slot(Metric m) { return static_cast<std::size_t>(m); }

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  if (quoted) throw ParseError("line " + std::to_string(line_number) + ": unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

std::optional<double> parse_cell(const std::string& cell, std::size_t line_number) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_number) + ": bad number '" + cell + "'");
  }
  return value;
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json correlation_node(const CorrelationMatrix& matrix) {
  nlohmann::ordered_json node;
  node["metrics"] = nlohmann::ordered_json::array();
  for (const auto m : matrix.metrics) node["metrics"].push_back(metric_name(m));
  node["matrix"] = nlohmann::ordered_json::array();
  for (const auto& row : matrix.cells) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& cell : row) out.push_back(optional_json(cell));
    node["matrix"].push_back(std::move(out));
  }
  return node;
}

}  // namespace

std::string_view metric_name(Metric m) { return kNames[slot(m)]; }

std::optional<Metric> metric_from_name(std::string_view name) {
  for (const auto m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<double> MetricRecord::get(Metric m) const {
  switch (m) {
    case Metric::DocTokens:
      return static_cast<double>(stats.doc_tokens);
    case Metric::DocSentences:
      return static_cast<double>(stats.doc_sentences);
    case Metric::SummaryTokens:
      return static_cast<double>(stats.summary_tokens);
    case Metric::SummarySentences:
      return static_cast<double>(stats.summary_sentences);
    case Metric::CompressionToken:
      return metrics.compression_token;
    case Metric::CompressionSent:
      return metrics.compression_sent;
    case Metric::Coverage:
      return metrics.coverage;
    case Metric::Density:
      return metrics.density;
    case Metric::Redundancy:
      return metrics.redundancy;
    case Metric::Uniformity:
      return metrics.uniformity;
  }
  return std::nullopt;
}

MetricRecord compute_metric_record(const CorpusRecord& record, const StopwordSet& stopwords) {
  return {record.document.id(), doc_stats(record), data_metrics(record, stopwords)};
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::merge(const CompensatedSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

CorrelationMatrix correlation_matrix(const std::vector<MetricRecord>& records, std::span<const Metric> metrics) {
  CorrelationMatrix out;
  out.metrics.assign(metrics.begin(), metrics.end());
  const std::size_t k = metrics.size();
  out.cells.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& r : records) {
        const auto x = r.get(metrics[a]);
        const auto y = r.get(metrics[b]);
        if (!x || !y) continue;
        xs.push_back(*x);
        ys.push_back(*y);
      }
      std::optional<double> r;
      try {
        r = pearson(xs, ys);
        if (a == b) r = 1.0;
      } catch (const DegenerateInput&) {
      }
      out.cells[a][b] = r;
      out.cells[b][a] = r;
    }
  }
  return out;
}

void ProfileAccumulator::add(const MetricRecord& record) {
  for (const auto m : kAllMetrics) {
    if (const auto v = record.get(m)) {
      sums_[slot(m)].add(*v);
      ++counts_[slot(m)];
    }
  }
  records_.push_back(record);
}

void ProfileAccumulator::merge(const ProfileAccumulator& other) {
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    sums_[i].merge(other.sums_[i]);
    counts_[i] += other.counts_[i];
  }
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

ProfileReport ProfileAccumulator::report() const {
  if (records_.empty()) throw DegenerateInput("profile: no records");
  ProfileReport out;
  out.record_count = records_.size();
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    out.defined_counts[i] = counts_[i];
    if (counts_[i] > 0) out.means[i] = sums_[i].value() / static_cast<double>(counts_[i]);
  }
  out.correlation = correlation_matrix(records_, kCorrelatedMetrics);
  return out;
}

ProfileReport profile_corpus(const std::vector<CorpusRecord>& records, const StopwordSet& stopwords) {
  ProfileAccumulator acc;
  for (const auto& r : records) acc.add(compute_metric_record(r, stopwords));
  return acc.report();
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

std::string emit_report(const ProfileReport& report, std::string_view format) {
  const auto parsed = report_format_from_name(format);
  if (!parsed) throw FormatError("unknown report format '" + std::string(format) + "'");
  return emit_report(report, *parsed);
}

std::string emit_report(const ProfileReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json root;
    root["record_count"] = report.record_count;
    auto means = nlohmann::ordered_json::object();
    auto counts = nlohmann::ordered_json::object();
    for (const auto m : kAllMetrics) {
      means[std::string(metric_name(m))] = optional_json(report.mean(m));
      counts[std::string(metric_name(m))] = report.defined_count(m);
    }
    root["means"] = std::move(means);
    root["defined_counts"] = std::move(counts);
    root["correlation"] = correlation_node(report.correlation);
    return root.dump(2) + "\n";
  }

  // metric,defined_count,mean,<one correlation column per correlated metric>
  std::string out = "metric,defined_count,mean";
  for (const auto m : report.correlation.metrics) out += ",corr_" + std::string(metric_name(m));
  out += "\n";
  const std::size_t k = report.correlation.metrics.size();
  out += "record_count," + std::to_string(report.record_count) + "," + std::string(k, ',') + "\n";
  for (const auto m : kAllMetrics) {
    out += std::string(metric_name(m)) + "," + std::to_string(report.defined_count(m)) + "," +
           optional_number(report.mean(m));
    std::optional<std::size_t> row;
    for (std::size_t i = 0; i < k; ++i) {
      if (report.correlation.metrics[i] == m) row = i;
    }
    for (std::size_t j = 0; j < k; ++j) {
      out += ",";
      if (row) out += optional_number(report.correlation.cells[*row][j]);
    }
    out += "\n";
  }
  return out;
}

std::string correlation_json(const CorrelationMatrix& matrix) { return correlation_node(matrix).dump(2) + "\n"; }

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string metric_csv_header() {
  std::string out = "doc_id";
  for (const auto m : kAllMetrics) out += "," + std::string(metric_name(m));
  return out;
}

std::string metric_csv_row(const MetricRecord& record) {
  std::string out = csv_escape(record.doc_id);
  for (const auto m : kAllMetrics) out += "," + optional_number(record.get(m));
  return out;
}

std::vector<MetricRecord> read_metric_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  std::vector<std::size_t> column_of(kAllMetrics.size(), 0);
  bool have_header = false;
  std::size_t width = 0;
  std::vector<MetricRecord> out;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line, line_number);
    if (!have_header) {
      if (fields.empty() || fields[0] != "doc_id") throw ParseError("line 1: expected a doc_id header");
      for (const auto m : kAllMetrics) {
        std::size_t found = 0;
        for (std::size_t c = 1; c < fields.size(); ++c) {
          if (fields[c] == metric_name(m)) found = c;
        }
        if (found == 0) throw ParseError("line 1: missing column " + std::string(metric_name(m)));
        column_of[slot(m)] = found;
      }
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) {
      throw ParseError("line " + std::to_string(line_number) + ": expected " + std::to_string(width) + " fields");
    }
    MetricRecord r;
    r.doc_id = fields[0];
    const auto cell = [&](Metric m) { return parse_cell(fields[column_of[slot(m)]], line_number); };
    const auto required = [&](Metric m) {
      const auto v = cell(m);
      if (!v) throw ParseError("line " + std::to_string(line_number) + ": empty " + std::string(metric_name(m)));
      return *v;
    };
    r.stats.doc_tokens = static_cast<std::size_t>(required(Metric::DocTokens));
    r.stats.doc_sentences = static_cast<std::size_t>(required(Metric::DocSentences));
    r.stats.summary_tokens = static_cast<std::size_t>(required(Metric::SummaryTokens));
    r.stats.summary_sentences = static_cast<std::size_t>(required(Metric::SummarySentences));
    r.metrics.compression_token = required(Metric::CompressionToken);
    r.metrics.compression_sent = required(Metric::CompressionSent);
    r.metrics.coverage = required(Metric::Coverage);
    r.metrics.density = required(Metric::Density);
    r.metrics.redundancy = cell(Metric::Redundancy);
    r.metrics.uniformity = cell(Metric::Uniformity);
    out.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("empty metric CSV");
  return out;
}

}  // namespace sumscope
