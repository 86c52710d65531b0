// SPDX-License-Identifier: Apache-2.0

#include "sastlong/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "fsutil.hpp"
#include "sastlong/errors.hpp"

namespace sastlong {

using nlohmann::json;

std::string to_string(Cohort v) {
    switch (v) {
    case Cohort::All: return "all";
    case Cohort::SuccessfulAnalyses: return "successful_analyses";
    case Cohort::Detected: return "detected";
    case Cohort::PositiveLeadTime: return "positive_lead_time";
    }
    return "all";
}

std::string to_string(Dimension v) {
    switch (v) {
    case Dimension::Language: return "language";
    case Dimension::Severity: return "severity";
    case Dimension::Cwe: return "cwe";
    case Dimension::PrecisionTier: return "precision_tier";
    case Dimension::Suite: return "suite";
    case Dimension::Version: return "version";
    }
    return "language";
}

std::string to_string(Statistic v) {
    switch (v) {
    case Statistic::Count: return "count";
    case Statistic::Mean: return "mean";
    case Statistic::Median: return "median";
    case Statistic::Stddev: return "stddev";
    }
    return "count";
}

Cohort parse_cohort(std::string_view s) {
    if (s == "all") return Cohort::All;
    if (s == "successful_analyses") return Cohort::SuccessfulAnalyses;
    if (s == "detected") return Cohort::Detected;
    if (s == "positive_lead_time") return Cohort::PositiveLeadTime;
    throw ConfigError("unknown cohort '" + std::string(s) + "'");
}

Dimension parse_dimension(std::string_view s) {
    if (s == "language") return Dimension::Language;
    if (s == "severity") return Dimension::Severity;
    if (s == "cwe") return Dimension::Cwe;
    if (s == "precision_tier") return Dimension::PrecisionTier;
    if (s == "suite") return Dimension::Suite;
    if (s == "version") return Dimension::Version;
    throw UnknownDimensionError("unknown dimension '" + std::string(s) + "'");
}

Statistic parse_statistic(std::string_view s) {
    if (s == "count") return Statistic::Count;
    if (s == "mean") return Statistic::Mean;
    if (s == "median") return Statistic::Median;
    if (s == "stddev") return Statistic::Stddev;
    throw ConfigError("unknown statistic '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "jsonl") return OutputFormat::Jsonl;
    throw ConfigError("unknown format '" + std::string(s) + "'");
}

bool filter_matches(const CohortFilter& filter, const ReportRow& row) {
    switch (filter.cohort) {
    case Cohort::All: break;
    case Cohort::SuccessfulAnalyses:
        if (!row.successful_analysis) return false;
        break;
    case Cohort::Detected:
        if (!row.detected) return false;
        break;
    case Cohort::PositiveLeadTime:
        if (!row.positive_lead_time) return false;
        break;
    }
    if (filter.language && row.language != *filter.language) return false;
    if (filter.severity && row.severity != *filter.severity) return false;
    if (filter.suite && row.suite != *filter.suite) return false;
    if (filter.precision_tier && row.precision_tier != *filter.precision_tier) return false;
    if (filter.cwe &&
        std::find(row.cwes.begin(), row.cwes.end(), *filter.cwe) == row.cwes.end())
        return false;
    return true;
}

std::vector<ReportRow> build_report_rows(const Corpus& corpus, const EvaluationResults& results) {
    std::map<std::string, const LeadTimeResult*> leads;
    for (const LeadTimeResult& lt : results.lead_times) leads[lt.cve_id] = &lt;

    std::map<std::string, std::set<Precision>> tiers;
    std::map<std::string, bool> tier_mixed_unknown;
    std::map<std::string, bool> successful;
    std::map<std::string, bool> detected;
    for (const RunEvaluation& run : results.runs) {
        successful[run.cve_id] = true;
        if (run.outcome.detected) {
            detected[run.cve_id] = true;
            for (const Alert& a : run.outcome.matching_alerts)
                if (a.precision != Precision::Unknown) tiers[run.cve_id].insert(a.precision);
        }
    }

    std::vector<ReportRow> rows;
    for (const CveRecord& cve : corpus.cves) {
        ReportRow row;
        row.cve_id = cve.cve_id;
        row.language = cve.language;
        row.severity = cve.severity;
        row.cwes = cve.cwes;
        if (!cve.runs.empty()) row.suite = cve.runs.front().suite;
        row.successful_analysis = successful.count(cve.cve_id) > 0;
        row.detected = detected.count(cve.cve_id) > 0;
        if (auto it = leads.find(cve.cve_id); it != leads.end()) {
            row.positive_lead_time = it->second->positive;
            row.lead_time_days = it->second->lead_time_days;
        }
        auto tier = tiers.find(cve.cve_id);
        if (tier == tiers.end() || tier->second.empty())
            row.precision_tier = "unknown";
        else if (tier->second.size() == 1)
            row.precision_tier = to_string(*tier->second.begin());
        else
            row.precision_tier = "mixed";
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const ReportRow& a, const ReportRow& b) { return a.cve_id < b.cve_id; });
    return rows;
}

std::vector<CdfPoint> leadtime_cdf(const std::vector<ReportRow>& rows, const CohortFilter& filter) {
    CohortFilter effective = filter;
    if (effective.cohort == Cohort::All || effective.cohort == Cohort::SuccessfulAnalyses)
        effective.cohort = Cohort::Detected; // a CDF needs lead times

    std::vector<long> values;
    for (const ReportRow& row : rows)
        if (filter_matches(effective, row) && row.lead_time_days) values.push_back(*row.lead_time_days);
    if (values.empty()) throw EmptyCohortError("no detected CVEs after filtering");

    std::sort(values.begin(), values.end());
    std::vector<CdfPoint> points;
    std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && values[i + 1] == values[i]) continue; // sample at distinct values
        points.push_back({values[i], Rational(static_cast<std::int64_t>(i + 1),
                                              static_cast<std::int64_t>(n))});
    }
    return points;
}

PercentileTable percentile_table(std::vector<long> counts, const std::vector<int>& percentiles) {
    if (counts.empty()) throw EmptyCohortError("percentile table over an empty cohort");
    std::sort(counts.begin(), counts.end());
    PercentileTable table;
    table.n = counts.size();
    for (int p : percentiles) {
        if (p < 1 || p > 100) throw ConfigError("percentile out of range: " + std::to_string(p));
        std::size_t rank =
            (static_cast<std::size_t>(p) * counts.size() + 99) / 100; // ceil(p/100 * n)
        if (rank < 1) rank = 1;
        table.values.emplace_back(p, counts[rank - 1]);
    }
    return table;
}

namespace {

struct Accumulator {
    std::size_t count = 0;
    std::vector<double> values;
};

std::optional<double> median_of(std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::optional<double> mean_of(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    double sum = 0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::optional<double> stddev_of(const std::vector<double>& values) {
    auto mean = mean_of(values);
    if (!mean) return std::nullopt;
    double sq = 0;
    for (double v : values) sq += (v - *mean) * (v - *mean);
    return std::sqrt(sq / static_cast<double>(values.size()));
}

} // namespace

std::vector<GroupRow> group_summary(const std::vector<ReportRow>& rows, Dimension group_by,
                                    Statistic statistic) {
    (void)statistic; // all statistics are computed; the caller picks columns
    std::map<std::string, Accumulator> groups;
    auto feed = [&](const std::string& key, const ReportRow& row) {
        Accumulator& acc = groups[key];
        ++acc.count;
        if (row.value) acc.values.push_back(*row.value);
    };

    for (const ReportRow& row : rows) {
        switch (group_by) {
        case Dimension::Language: feed(to_string(row.language), row); break;
        case Dimension::Severity: feed(to_string(row.severity), row); break;
        case Dimension::Cwe:
            for (const std::string& cwe : row.cwes) feed(cwe, row); // one per CVE-CWE pair
            break;
        case Dimension::PrecisionTier: feed(row.precision_tier, row); break;
        case Dimension::Suite: feed(to_string(row.suite), row); break;
        case Dimension::Version: feed(row.version_id, row); break;
        }
    }

    std::vector<GroupRow> out;
    for (auto& [key, acc] : groups) {
        GroupRow g;
        g.group = key;
        g.count = acc.count;
        g.mean = mean_of(acc.values);
        g.median = median_of(acc.values);
        g.stddev = stddev_of(acc.values);
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const GroupRow& a, const GroupRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.group < b.group;
    });
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_rational(const Rational& r) {
    return r.to_decimal(12);
}

std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::string render_opt_rational(const std::optional<Rational>& r) {
    return r ? render_rational(*r) : std::string();
}

std::string render_bool(bool b) {
    return b ? "true" : "false";
}

json alert_to_json(const Alert& a) {
    json j;
    j["query"] = a.query;
    j["file"] = a.file;
    j["start_line"] = a.lines.start;
    j["end_line"] = a.lines.end;
    j["fingerprints"] = a.fingerprints;
    j["precision"] = to_string(a.precision);
    return j;
}

json opt_rational_to_json(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return render_rational(*r);
}

} // namespace

void write_detections_csv(std::ostream& out, const std::vector<RunEvaluation>& runs) {
    out << "cve_id,version_id,detected,matching_alerts,location_only_matches,"
           "survived_filter_removals\n";
    for (const RunEvaluation& run : runs) {
        const DetectionOutcome& o = run.outcome;
        out << csv_escape(o.cve_id) << ',' << csv_escape(o.version_id) << ','
            << render_bool(o.detected) << ',' << o.matching_alerts.size() << ','
            << o.location_only_matches << ',' << o.survived_filter_removals << '\n';
    }
}

void write_detections_jsonl(std::ostream& out, const std::vector<RunEvaluation>& runs) {
    for (const RunEvaluation& run : runs) {
        const DetectionOutcome& o = run.outcome;
        json j;
        j["cve_id"] = o.cve_id;
        j["version_id"] = o.version_id;
        j["detected"] = o.detected;
        json alerts = json::array();
        for (const Alert& a : o.matching_alerts) alerts.push_back(alert_to_json(a));
        j["matching_alerts"] = std::move(alerts);
        j["location_only_matches"] = o.location_only_matches;
        j["survived_filter_removals"] = o.survived_filter_removals;
        out << j.dump() << '\n';
    }
}

void write_leadtimes_csv(std::ostream& out, const std::vector<LeadTimeResult>& results) {
    out << "cve_id,first_detecting_version,lead_time_days,positive\n";
    for (const LeadTimeResult& r : results) {
        out << csv_escape(r.cve_id) << ','
            << (r.first_detecting_version ? csv_escape(*r.first_detecting_version) : "") << ','
            << (r.lead_time_days ? std::to_string(*r.lead_time_days) : "") << ','
            << render_bool(r.positive) << '\n';
    }
}

void write_leadtimes_jsonl(std::ostream& out, const std::vector<LeadTimeResult>& results) {
    for (const LeadTimeResult& r : results) {
        json j;
        j["cve_id"] = r.cve_id;
        j["first_detecting_version"] =
            r.first_detecting_version ? json(*r.first_detecting_version) : json(nullptr);
        j["lead_time_days"] = r.lead_time_days ? json(*r.lead_time_days) : json(nullptr);
        j["positive"] = r.positive;
        out << j.dump() << '\n';
    }
}

void write_locality_csv(std::ostream& out, const std::vector<RunEvaluation>& runs) {
    out << "cve_id,version_id,hard_project,soft_project,hard_file,soft_file,total_alerts,"
           "alerts_in_vulnerable_files\n";
    for (const RunEvaluation& run : runs) {
        const LocalityReport& r = run.locality;
        out << csv_escape(r.cve_id) << ',' << csv_escape(r.version_id) << ','
            << render_opt_rational(r.hard_project) << ',' << render_opt_rational(r.soft_project)
            << ',' << render_opt_rational(r.hard_file) << ',' << render_opt_rational(r.soft_file)
            << ',' << r.total_alerts << ',' << r.alerts_in_vulnerable_files << '\n';
    }
}

void write_locality_jsonl(std::ostream& out, const std::vector<RunEvaluation>& runs) {
    for (const RunEvaluation& run : runs) {
        const LocalityReport& r = run.locality;
        json j;
        j["cve_id"] = r.cve_id;
        j["version_id"] = r.version_id;
        j["hard_project"] = opt_rational_to_json(r.hard_project);
        j["soft_project"] = opt_rational_to_json(r.soft_project);
        j["hard_file"] = opt_rational_to_json(r.hard_file);
        j["soft_file"] = opt_rational_to_json(r.soft_file);
        j["total_alerts"] = r.total_alerts;
        j["alerts_in_vulnerable_files"] = r.alerts_in_vulnerable_files;
        out << j.dump() << '\n';
    }
}

void write_sarif_skips_csv(std::ostream& out, const std::vector<RunEvaluation>& runs) {
    out << "cve_id,version_id,vulnerable_skipped,fixed_skipped\n";
    for (const RunEvaluation& run : runs)
        out << csv_escape(run.cve_id) << ',' << csv_escape(run.version_id) << ','
            << run.vul_skipped << ',' << run.fix_skipped << '\n';
}

void write_timelines_csv(std::ostream& out, const std::vector<StabilityTimeline>& timelines) {
    out << "cve_id,version_id,state\n";
    for (const StabilityTimeline& tl : timelines)
        for (const TimelinePoint& p : tl.points)
            out << csv_escape(tl.cve_id) << ',' << csv_escape(p.version_id) << ','
                << to_string(p.state) << '\n';
}

void write_timelines_json(std::ostream& out, const std::vector<StabilityTimeline>& timelines) {
    json root = json::array();
    for (const StabilityTimeline& tl : timelines) {
        json j;
        j["cve_id"] = tl.cve_id;
        json points = json::array();
        for (const TimelinePoint& p : tl.points)
            points.push_back({{"ordinal", p.ordinal},
                              {"version_id", p.version_id},
                              {"state", to_string(p.state)}});
        j["points"] = std::move(points);
        auto transitions = [](const std::vector<VersionTransition>& list) {
            json arr = json::array();
            for (const VersionTransition& t : list)
                arr.push_back({{"from_version", t.from_version}, {"to_version", t.to_version}});
            return arr;
        };
        j["drops"] = transitions(tl.drops);
        j["recoveries"] = transitions(tl.recoveries);
        j["permanent_drop"] = tl.permanent_drop;
        j["ever_detected"] = tl.ever_detected;
        root.push_back(std::move(j));
    }
    out << root.dump(2) << '\n';
}

void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffPoint>& points) {
    out << "version_id,cves_detected,median_alerts,is_minor\n";
    for (const TradeoffPoint& p : points)
        out << csv_escape(p.version_id) << ',' << p.cves_detected << ','
            << render_rational(p.median_alerts) << ',' << render_bool(p.is_minor) << '\n';
}

namespace {

void write_group_file(const std::filesystem::path& path, const std::vector<GroupRow>& groups,
                      const std::string& key_column, const std::string& count_column,
                      OutputFormat format, bool with_value_stats) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (format == OutputFormat::Csv) {
        out << key_column << ',' << count_column;
        if (with_value_stats) out << ",mean,median,stddev";
        out << '\n';
        for (const GroupRow& g : groups) {
            out << csv_escape(g.group) << ',' << g.count;
            if (with_value_stats)
                out << ',' << (g.mean ? render_double(*g.mean) : "") << ','
                    << (g.median ? render_double(*g.median) : "") << ','
                    << (g.stddev ? render_double(*g.stddev) : "");
            out << '\n';
        }
        return;
    }
    for (const GroupRow& g : groups) {
        json j;
        j[key_column] = g.group;
        j[count_column] = g.count;
        if (with_value_stats) {
            j["mean"] = g.mean ? json(*g.mean) : json(nullptr);
            j["median"] = g.median ? json(*g.median) : json(nullptr);
            j["stddev"] = g.stddev ? json(*g.stddev) : json(nullptr);
        }
        out << j.dump() << '\n';
    }
}

const char* ext(OutputFormat format) {
    return format == OutputFormat::Csv ? ".csv" : ".jsonl";
}

// Locality metric medians/stddevs per group of (cve, metric value) pairs.
struct MetricColumns {
    std::optional<double> median;
    std::optional<double> stddev;
};

MetricColumns metric_columns(std::vector<double>& values) {
    MetricColumns out;
    out.median = median_of(values);
    out.stddev = stddev_of(values);
    return out;
}

std::string render_opt_double(const std::optional<double>& v) {
    return v ? render_double(*v) : std::string();
}

} // namespace

void write_report_artifacts(const std::filesystem::path& out_dir, const Corpus& corpus,
                            const EvaluationResults& results, const CohortFilter& filter,
                            OutputFormat format) {
    std::filesystem::create_directories(out_dir);
    std::vector<ReportRow> rows = build_report_rows(corpus, results);

    std::vector<ReportRow> cohort_rows;
    for (const ReportRow& row : rows)
        if (filter_matches(filter, row)) cohort_rows.push_back(row);

    // Lead-time CDF over the detected subset of the cohort.
    {
        std::ofstream out(out_dir / (std::string("leadtime_cdf") + ext(format)),
                          std::ios::binary | std::ios::trunc);
        std::vector<CdfPoint> cdf;
        try {
            cdf = leadtime_cdf(rows, filter);
        } catch (const EmptyCohortError&) {
            // empty file with header below
        }
        if (format == OutputFormat::Csv) {
            out << "lead_time_days,cumulative_fraction\n";
            for (const CdfPoint& p : cdf)
                out << p.lead_time_days << ',' << render_rational(p.cumulative_fraction) << '\n';
        } else {
            for (const CdfPoint& p : cdf) {
                json j;
                j["lead_time_days"] = p.lead_time_days;
                j["cumulative_fraction"] = render_rational(p.cumulative_fraction);
                out << j.dump() << '\n';
            }
        }
    }

    write_group_file(out_dir / (std::string("severity_summary") + ext(format)),
                     group_summary(cohort_rows, Dimension::Severity, Statistic::Count), "severity",
                     "count", format, false);
    write_group_file(out_dir / (std::string("language_summary") + ext(format)),
                     group_summary(cohort_rows, Dimension::Language, Statistic::Count), "language",
                     "count", format, false);
    write_group_file(out_dir / (std::string("cwe_summary") + ext(format)),
                     group_summary(cohort_rows, Dimension::Cwe, Statistic::Count), "cwe",
                     "cve_cwe_pairs", format, false);

    // Alert-count percentiles per nested cohort, counts taken at the latest
    // ok run of each CVE.
    {
        std::map<std::string, long> latest_count;
        std::map<std::string, int> latest_ordinal;
        std::map<std::string, int> ordinals;
        for (const VersionInfo& v : corpus.versions) ordinals[v.id] = v.ordinal;
        for (const RunEvaluation& run : results.runs) {
            int ordinal = ordinals.count(run.version_id) ? ordinals[run.version_id] : -1;
            auto it = latest_ordinal.find(run.cve_id);
            if (it == latest_ordinal.end() || ordinal > it->second) {
                latest_ordinal[run.cve_id] = ordinal;
                latest_count[run.cve_id] = static_cast<long>(run.vul_alert_count);
            }
        }
        std::ofstream out(out_dir / (std::string("alert_percentiles") + ext(format)),
                          std::ios::binary | std::ios::trunc);
        if (format == OutputFormat::Csv) out << "cohort,n,p25,p50,p75,p90\n";
        for (Cohort cohort :
             {Cohort::SuccessfulAnalyses, Cohort::Detected, Cohort::PositiveLeadTime}) {
            CohortFilter sub = filter;
            sub.cohort = cohort;
            std::vector<long> counts;
            for (const ReportRow& row : rows)
                if (filter_matches(sub, row) && latest_count.count(row.cve_id))
                    counts.push_back(latest_count[row.cve_id]);
            if (counts.empty()) continue;
            PercentileTable table = percentile_table(std::move(counts), {25, 50, 75, 90});
            if (format == OutputFormat::Csv) {
                out << to_string(cohort) << ',' << table.n;
                for (const auto& [p, v] : table.values) out << ',' << v;
                out << '\n';
            } else {
                json j;
                j["cohort"] = to_string(cohort);
                j["n"] = table.n;
                for (const auto& [p, v] : table.values) j["p" + std::to_string(p)] = v;
                out << j.dump() << '\n';
            }
        }
    }

    // Locality by reported precision (per CVE, at the first detecting
    // version) and per version (CVEs detected at that version).
    std::map<std::pair<std::string, std::string>, const RunEvaluation*> run_index;
    for (const RunEvaluation& run : results.runs) run_index[{run.cve_id, run.version_id}] = &run;
    std::map<std::string, const LeadTimeResult*> leads;
    for (const LeadTimeResult& lt : results.lead_times) leads[lt.cve_id] = &lt;

    auto locality_metrics = [](const LocalityReport& r) {
        return std::array<std::optional<Rational>, 4>{r.hard_project, r.soft_project, r.hard_file,
                                                      r.soft_file};
    };
    static const char* metric_names[4] = {"hard_project", "soft_project", "hard_file", "soft_file"};

    std::size_t excluded_absent_metrics = 0;
    {
        struct TierAcc {
            std::size_t cves = 0;
            std::vector<double> values[4];
        };
        std::map<std::string, TierAcc> tier_groups;
        for (const ReportRow& row : cohort_rows) {
            if (!row.detected) continue;
            auto lead = leads.find(row.cve_id);
            if (lead == leads.end() || !lead->second->first_detecting_version) continue;
            auto run = run_index.find({row.cve_id, *lead->second->first_detecting_version});
            if (run == run_index.end()) continue;
            TierAcc& acc = tier_groups[row.precision_tier];
            ++acc.cves;
            auto metrics = locality_metrics(run->second->locality);
            for (int m = 0; m < 4; ++m) {
                if (metrics[m])
                    acc.values[m].push_back(metrics[m]->to_double());
                else
                    ++excluded_absent_metrics;
            }
        }
        std::ofstream out(out_dir / (std::string("precision_locality") + ext(format)),
                          std::ios::binary | std::ios::trunc);
        if (format == OutputFormat::Csv) {
            out << "precision_tier,cves";
            for (const char* name : metric_names)
                out << ',' << name << "_median," << name << "_stddev";
            out << '\n';
        }
        for (auto& [tier, acc] : tier_groups) {
            if (format == OutputFormat::Csv) {
                out << csv_escape(tier) << ',' << acc.cves;
                for (auto& values : acc.values) {
                    MetricColumns cols = metric_columns(values);
                    out << ',' << render_opt_double(cols.median) << ','
                        << render_opt_double(cols.stddev);
                }
                out << '\n';
            } else {
                json j;
                j["precision_tier"] = tier;
                j["cves"] = acc.cves;
                for (int m = 0; m < 4; ++m) {
                    MetricColumns cols = metric_columns(acc.values[m]);
                    j[std::string(metric_names[m]) + "_median"] =
                        cols.median ? json(*cols.median) : json(nullptr);
                    j[std::string(metric_names[m]) + "_stddev"] =
                        cols.stddev ? json(*cols.stddev) : json(nullptr);
                }
                out << j.dump() << '\n';
            }
        }
    }

    {
        std::ofstream out(out_dir / (std::string("per_version_locality") + ext(format)),
                          std::ios::binary | std::ios::trunc);
        if (format == OutputFormat::Csv) {
            out << "version_id,cves";
            for (const char* name : metric_names) out << ',' << name << "_mean," << name << "_median";
            out << '\n';
        }
        std::set<std::string> cohort_cves;
        for (const ReportRow& row : cohort_rows) cohort_cves.insert(row.cve_id);
        for (const VersionInfo& version : corpus.versions) {
            std::size_t cves = 0;
            std::vector<double> values[4];
            for (const RunEvaluation& run : results.runs) {
                if (run.version_id != version.id || !run.outcome.detected) continue;
                if (!cohort_cves.count(run.cve_id)) continue;
                ++cves;
                auto metrics = locality_metrics(run.locality);
                for (int m = 0; m < 4; ++m)
                    if (metrics[m]) values[m].push_back(metrics[m]->to_double());
            }
            if (cves == 0) continue;
            if (format == OutputFormat::Csv) {
                out << csv_escape(version.id) << ',' << cves;
                for (auto& metric_values : values) {
                    out << ',' << render_opt_double(mean_of(metric_values));
                    out << ',' << render_opt_double(median_of(metric_values));
                }
                out << '\n';
            } else {
                json j;
                j["version_id"] = version.id;
                j["cves"] = cves;
                for (int m = 0; m < 4; ++m) {
                    j[std::string(metric_names[m]) + "_mean"] =
                        mean_of(values[m]) ? json(*mean_of(values[m])) : json(nullptr);
                    j[std::string(metric_names[m]) + "_median"] =
                        median_of(values[m]) ? json(*median_of(values[m])) : json(nullptr);
                }
                out << j.dump() << '\n';
            }
        }
    }

    {
        json meta;
        meta["percentile_convention"] = "nearest_rank";
        meta["stddev_convention"] = "population";
        meta["locality_mean_basis"] = "per_cve";
        meta["alert_count_basis"] = "latest_ok_version";
        meta["cohort"] = to_string(filter.cohort);
        meta["filters"] = json::object();
        if (filter.language) meta["filters"]["language"] = to_string(*filter.language);
        if (filter.severity) meta["filters"]["severity"] = to_string(*filter.severity);
        if (filter.suite) meta["filters"]["suite"] = to_string(*filter.suite);
        if (filter.cwe) meta["filters"]["cwe"] = *filter.cwe;
        if (filter.precision_tier) meta["filters"]["precision_tier"] = *filter.precision_tier;
        meta["cohort_size"] = cohort_rows.size();
        meta["excluded_absent_metrics"] = excluded_absent_metrics;
        write_file_atomic(out_dir / "report_meta.json", meta.dump(2) + "\n");
    }
}

} // namespace sastlong
