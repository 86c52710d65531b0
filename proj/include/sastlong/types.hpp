// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sastlong/date.hpp"

namespace sastlong {

enum class Language { CCpp, Go, Java, JavaScript, Python, Ruby, Other };
enum class Severity { Low, Medium, High, Critical, Unknown };
enum class QuerySuite { Default, SecurityExtended };
enum class CommitKind { Vulnerable, Fixed };
enum class RunStatus { Ok, AnalysisError };
enum class Precision { Low, Medium, High, VeryHigh, Unknown };

std::string to_string(Language v);
std::string to_string(Severity v);
std::string to_string(QuerySuite v);
std::string to_string(CommitKind v);
std::string to_string(RunStatus v);
std::string to_string(Precision v);

Language parse_language(std::string_view s);      // throws DataError
Severity parse_severity(std::string_view s);      // throws DataError
QuerySuite parse_suite(std::string_view s);       // throws DataError
RunStatus parse_run_status(std::string_view s);   // throws DataError

/// Dotted-numeric version identifier, 2 or 3 components ("2.8" == "2.8.0").
/// A leading 'v' or 'V' is accepted and ignored.
struct ParsedVersion {
    long major = 0;
    long minor = 0;
    long patch = 0;

    bool is_minor_release() const { return patch == 0; }
    auto operator<=>(const ParsedVersion&) const = default;
};

/// Throws VersionParseError on non-numeric or wrongly shaped identifiers.
ParsedVersion parse_version(std::string_view id);

/// One analyzer release within the catalog's total order.
struct VersionInfo {
    std::string id;       // stored without the leading "v"
    Date release_date;
    int ordinal = -1;     // 0-based position after order_versions

    bool operator==(const VersionInfo&) const = default;
};

/// Inclusive 1-based line range of an alert.
struct LineRange {
    long start = 1;
    long end = 1;

    bool contains(long line) const { return start <= line && line <= end; }
    long length() const { return end - start + 1; }
    bool operator==(const LineRange&) const = default;
};

/// One analyzer finding: the (query, file, lines, fingerprints, version)
/// tuple the metrics operate on, plus the query's reported precision.
struct Alert {
    std::string query;
    std::string file;
    LineRange lines;
    std::map<std::string, std::string> fingerprints;
    std::string version_id;
    Precision precision = Precision::Unknown;

    bool operator==(const Alert&) const = default;
};

/// Multiset of alerts from one analyzer run on one commit. Duplicates are
/// retained: locality denominators count alerts, not distinct locations.
struct AlertSet {
    std::string cve_id;
    std::string version_id;
    CommitKind commit_kind = CommitKind::Vulnerable;
    QuerySuite suite = QuerySuite::SecurityExtended;
    std::vector<Alert> alerts;

    bool operator==(const AlertSet&) const = default;
};

struct FileLine {
    std::string file;
    long line = 1;

    auto operator<=>(const FileLine&) const = default;
};

/// The fix-commit delta in vulnerable-commit (pre-image) coordinates:
/// files touched and the (file, line) ground-truth locations.
struct FixDelta {
    std::set<std::string> files;
    std::set<FileLine> locations;

    bool operator==(const FixDelta&) const = default;

    /// Lines of `locations` belonging to `file`, sorted.
    std::vector<long> lines_for(const std::string& file) const;
};

struct RunEntry {
    std::string version_id;
    RunStatus status = RunStatus::Ok;
    std::string vulnerable_sarif_path; // relative to the manifest directory
    std::string fixed_sarif_path;      // empty for analysis_error runs
    QuerySuite suite = QuerySuite::SecurityExtended;

    bool operator==(const RunEntry&) const = default;
};

struct CveRecord {
    std::string cve_id;
    std::string repo_id;
    Language language = Language::Other;
    std::vector<std::string> cwes;
    Severity severity = Severity::Unknown;
    Date fix_date;
    std::string vulnerable_commit;
    std::string fix_commit;
    std::string fix_diff_path; // relative to the manifest directory
    FixDelta fix_delta;
    std::vector<RunEntry> runs;

    bool operator==(const CveRecord&) const = default;

    const RunEntry* find_run(const std::string& version_id) const;
};

} // namespace sastlong
