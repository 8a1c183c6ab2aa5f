#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sumscope/corpus.hpp"
#include "sumscope/lexical.hpp"

namespace sumscope {

enum class Metric {
  DocTokens,
  DocSentences,
  SummaryTokens,
  SummarySentences,
  CompressionToken,
  CompressionSent,
  Coverage,
  Density,
  Redundancy,
  Uniformity,
};

inline constexpr std::array<Metric, 10> kAllMetrics = {
    Metric::DocTokens,        Metric::DocSentences,    Metric::SummaryTokens, Metric::SummarySentences,
    Metric::CompressionToken, Metric::CompressionSent, Metric::Coverage,      Metric::Density,
    Metric::Redundancy,       Metric::Uniformity};

// The six intrinsic metrics that enter the correlation matrix.
inline constexpr std::array<Metric, 6> kCorrelatedMetrics = {Metric::CompressionToken, Metric::CompressionSent,
                                                             Metric::Coverage,         Metric::Density,
                                                             Metric::Redundancy,       Metric::Uniformity};

std::string_view metric_name(Metric m);
std::optional<Metric> metric_from_name(std::string_view name);

struct MetricRecord {
  std::string doc_id;
  DocStats stats;
  DataMetrics metrics;

  std::optional<double> get(Metric m) const;
};

MetricRecord compute_metric_record(const CorpusRecord& record, const StopwordSet& stopwords = default_stopwords());

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  void merge(const CompensatedSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct CorrelationMatrix {
  std::vector<Metric> metrics;
  // cells[i][j]; nullopt where fewer than two rows are usable or a column is constant.
  std::vector<std::vector<std::optional<double>>> cells;
};

// Pairwise-deletion Pearson matrix: each cell uses the rows where both
// metrics are defined.
CorrelationMatrix correlation_matrix(const std::vector<MetricRecord>& records, std::span<const Metric> metrics);

struct ProfileReport {
  std::size_t record_count = 0;
  std::array<std::optional<double>, kAllMetrics.size()> means{};
  std::array<std::size_t, kAllMetrics.size()> defined_counts{};
  CorrelationMatrix correlation;

  std::optional<double> mean(Metric m) const { return means[static_cast<std::size_t>(m)]; }
  std::size_t defined_count(Metric m) const { return defined_counts[static_cast<std::size_t>(m)]; }
};

// Streaming aggregation; partial accumulators merge associatively.
class ProfileAccumulator {
 public:
  void add(const MetricRecord& record);
  void merge(const ProfileAccumulator& other);
  std::size_t record_count() const { return records_.size(); }
  const std::vector<MetricRecord>& records() const { return records_; }
  // Throws DegenerateInput when no record was added.
  ProfileReport report() const;

 private:
  std::array<CompensatedSum, kAllMetrics.size()> sums_{};
  std::array<std::size_t, kAllMetrics.size()> counts_{};
  std::vector<MetricRecord> records_;
};

ProfileReport profile_corpus(const std::vector<CorpusRecord>& records,
                             const StopwordSet& stopwords = default_stopwords());

enum class ReportFormat { Json, Csv };
std::optional<ReportFormat> report_format_from_name(std::string_view name);

// Deterministic serialization. Throws FormatError for an unknown format name.
std::string emit_report(const ProfileReport& report, std::string_view format);
std::string emit_report(const ProfileReport& report, ReportFormat format);

std::string correlation_json(const CorrelationMatrix& matrix);

// Shortest round-trip decimal form.
std::string format_number(double x);

// Per-record metric CSV: doc_id, the four lengths, then the six metrics;
// undefined values are empty cells.
std::string metric_csv_header();
std::string metric_csv_row(const MetricRecord& record);
// Throws ParseError with a line number on malformed input.
std::vector<MetricRecord> read_metric_csv(std::istream& in);

}  // namespace sumscope
