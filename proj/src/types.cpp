// SPDX-License-Identifier: Apache-2.0

#include "sastlong/types.hpp"

#include <algorithm>
#include <charconv>

#include "sastlong/errors.hpp"

namespace sastlong {

std::string to_string(Language v) {
    switch (v) {
    case Language::CCpp: return "c_cpp";
    case Language::Go: return "go";
    case Language::Java: return "java";
    case Language::JavaScript: return "javascript";
    case Language::Python: return "python";
    case Language::Ruby: return "ruby";
    case Language::Other: return "other";
    }
    return "other";
}

std::string to_string(Severity v) {
    switch (v) {
    case Severity::Low: return "low";
    case Severity::Medium: return "medium";
    case Severity::High: return "high";
    case Severity::Critical: return "critical";
    case Severity::Unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(QuerySuite v) {
    return v == QuerySuite::Default ? "default" : "security_extended";
}

std::string to_string(CommitKind v) {
    return v == CommitKind::Vulnerable ? "vulnerable" : "fixed";
}

std::string to_string(RunStatus v) {
    return v == RunStatus::Ok ? "ok" : "analysis_error";
}

std::string to_string(Precision v) {
    switch (v) {
    case Precision::Low: return "low";
    case Precision::Medium: return "medium";
    case Precision::High: return "high";
    case Precision::VeryHigh: return "very_high";
    case Precision::Unknown: return "unknown";
    }
    return "unknown";
}

Language parse_language(std::string_view s) {
    if (s == "c_cpp") return Language::CCpp;
    if (s == "go") return Language::Go;
    if (s == "java") return Language::Java;
    if (s == "javascript") return Language::JavaScript;
    if (s == "python") return Language::Python;
    if (s == "ruby") return Language::Ruby;
    if (s == "other") return Language::Other;
    throw DataError("unknown language '" + std::string(s) + "'");
}

Severity parse_severity(std::string_view s) {
    if (s == "low") return Severity::Low;
    if (s == "medium") return Severity::Medium;
    if (s == "high") return Severity::High;
    if (s == "critical") return Severity::Critical;
    if (s == "unknown") return Severity::Unknown;
    throw DataError("unknown severity '" + std::string(s) + "'");
}

QuerySuite parse_suite(std::string_view s) {
    if (s == "default") return QuerySuite::Default;
    if (s == "security_extended") return QuerySuite::SecurityExtended;
    throw DataError("unknown query suite '" + std::string(s) + "'");
}

RunStatus parse_run_status(std::string_view s) {
    if (s == "ok") return RunStatus::Ok;
    if (s == "analysis_error") return RunStatus::AnalysisError;
    throw DataError("unknown run status '" + std::string(s) + "'");
}

ParsedVersion parse_version(std::string_view id) {
    std::string_view rest = id;
    if (!rest.empty() && (rest.front() == 'v' || rest.front() == 'V')) rest.remove_prefix(1);

    long components[3] = {0, 0, 0};
    int n = 0;
    while (true) {
        if (n == 3)
            throw VersionParseError("version '" + std::string(id) + "' has more than 3 components");
        std::size_t dot = rest.find('.');
        std::string_view part = dot == std::string_view::npos ? rest : rest.substr(0, dot);
        if (part.empty())
            throw VersionParseError("version '" + std::string(id) + "' has an empty component");
        long value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size())
            throw VersionParseError("version '" + std::string(id) + "' has a non-numeric component '" +
                                    std::string(part) + "'");
        components[n++] = value;
        if (dot == std::string_view::npos) break;
        rest.remove_prefix(dot + 1);
    }
    if (n < 2)
        throw VersionParseError("version '" + std::string(id) + "' must have 2 or 3 dotted components");
    return ParsedVersion{components[0], components[1], components[2]};
}

std::vector<long> FixDelta::lines_for(const std::string& file) const {
    std::vector<long> out;
    auto it = locations.lower_bound(FileLine{file, 0});
    for (; it != locations.end() && it->file == file; ++it) out.push_back(it->line);
    return out;
}

const RunEntry* CveRecord::find_run(const std::string& version_id) const {
    auto it = std::find_if(runs.begin(), runs.end(),
                           [&](const RunEntry& r) { return r.version_id == version_id; });
    return it == runs.end() ? nullptr : &*it;
}

} // namespace sastlong
