// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sastlong/evaluate.hpp"
#include "sastlong/rational.hpp"

namespace sastlong {

enum class Cohort { All, SuccessfulAnalyses, Detected, PositiveLeadTime };
enum class Dimension { Language, Severity, Cwe, PrecisionTier, Suite, Version };
enum class Statistic { Count, Mean, Median, Stddev };
enum class OutputFormat { Csv, Jsonl };

std::string to_string(Cohort v);
std::string to_string(Dimension v);
std::string to_string(Statistic v);

Cohort parse_cohort(std::string_view s);         // throws ConfigError
Dimension parse_dimension(std::string_view s);   // throws UnknownDimensionError
Statistic parse_statistic(std::string_view s);   // throws ConfigError
OutputFormat parse_format(std::string_view s);   // throws ConfigError

/// Cohort selection plus optional attribute filters. Cohorts nest:
/// positive_lead_time ⊆ detected ⊆ successful_analyses ⊆ all.
struct CohortFilter {
    Cohort cohort = Cohort::All;
    std::optional<Language> language;
    std::optional<std::string> cwe;
    std::optional<Severity> severity;
    std::optional<QuerySuite> suite;
    std::optional<std::string> precision_tier;
};

/// A LeadTimeResult joined with the CVE attributes the filters need, plus an
/// optional numeric value for the value statistics.
struct ReportRow {
    std::string cve_id;
    std::string version_id; // empty on per-CVE rows
    Language language = Language::Other;
    Severity severity = Severity::Unknown;
    std::vector<std::string> cwes;
    QuerySuite suite = QuerySuite::SecurityExtended;
    std::string precision_tier = "unknown";
    bool successful_analysis = false;
    bool detected = false;
    bool positive_lead_time = false;
    std::optional<long> lead_time_days;
    std::optional<double> value;
};

bool filter_matches(const CohortFilter& filter, const ReportRow& row);

/// One per-CVE row per corpus record, detection flags and lead times rolled
/// up from the evaluation results (the filter's suite restriction is applied
/// by evaluating with that suite).
std::vector<ReportRow> build_report_rows(const Corpus& corpus, const EvaluationResults& results);

struct CdfPoint {
    long lead_time_days = 0;
    Rational cumulative_fraction{0};

    bool operator==(const CdfPoint&) const = default;
};

/// CDF of lead times over the filtered detected cohort, sampled at distinct
/// values, non-decreasing and ending at 1. Throws EmptyCohortError.
std::vector<CdfPoint> leadtime_cdf(const std::vector<ReportRow>& rows, const CohortFilter& filter);

struct PercentileTable {
    std::size_t n = 0;
    std::vector<std::pair<int, long>> values; // (percentile, value)
};

/// Nearest-rank percentiles: rank = ceil(p/100 * n). Throws EmptyCohortError.
PercentileTable percentile_table(std::vector<long> counts, const std::vector<int>& percentiles);

struct GroupRow {
    std::string group;
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> stddev; // population
};

/// Groups rows along a dimension. Counts cover all rows of the group; the
/// value statistics cover rows carrying a value. Multi-valued CWE grouping
/// counts a row once per CWE ("CVE-CWE pairs"). Output is ordered by
/// descending count, then group name.
std::vector<GroupRow> group_summary(const std::vector<ReportRow>& rows, Dimension group_by,
                                    Statistic statistic);

// Rendering helpers shared by every emitter. Rationals render as decimals
// with 12 significant digits; absent optionals render empty (CSV) or null
// (JSONL).
std::string csv_escape(const std::string& field);
std::string render_rational(const Rational& r);
std::string render_double(double v);

// Row emitters (column orders are part of the CLI contract).
void write_detections_csv(std::ostream& out, const std::vector<RunEvaluation>& runs);
void write_detections_jsonl(std::ostream& out, const std::vector<RunEvaluation>& runs);
void write_leadtimes_csv(std::ostream& out, const std::vector<LeadTimeResult>& results);
void write_leadtimes_jsonl(std::ostream& out, const std::vector<LeadTimeResult>& results);
void write_locality_csv(std::ostream& out, const std::vector<RunEvaluation>& runs);
void write_locality_jsonl(std::ostream& out, const std::vector<RunEvaluation>& runs);
void write_sarif_skips_csv(std::ostream& out, const std::vector<RunEvaluation>& runs);
void write_timelines_csv(std::ostream& out, const std::vector<StabilityTimeline>& timelines);
void write_timelines_json(std::ostream& out, const std::vector<StabilityTimeline>& timelines);
void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffPoint>& points);

/// Emits the aggregate report artifacts (lead-time CDF, severity/language/
/// CWE breakdowns, alert-count percentiles, precision-tier and per-version
/// locality tables, metadata) into a directory.
void write_report_artifacts(const std::filesystem::path& out_dir, const Corpus& corpus,
                            const EvaluationResults& results, const CohortFilter& filter,
                            OutputFormat format);

} // namespace sastlong
