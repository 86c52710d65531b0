// SPDX-License-Identifier: Apache-2.0

#include "sastlong/sarifread.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

#include "sastlong/errors.hpp"

namespace sastlong {

using nlohmann::json;

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string percent_decode(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            int hi = hex_value(s[i + 1]);
            int lo = hex_value(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += s[i];
    }
    return out;
}

Precision parse_precision(std::string_view s) {
    if (s == "low") return Precision::Low;
    if (s == "medium") return Precision::Medium;
    if (s == "high") return Precision::High;
    if (s == "very-high" || s == "very_high") return Precision::VeryHigh;
    return Precision::Unknown;
}

// Looks up the rule object for a result: driver.rules via ruleIndex or
// rule.index, then an id search over driver.rules and extensions[].rules
// (CodeQL stores its rules under tool extensions).
const json* resolve_rule(const json& run, const json& result, const std::string& rule_id) {
    const json* driver_rules = nullptr;
    if (auto tool = run.find("tool"); tool != run.end() && tool->is_object()) {
        if (auto driver = tool->find("driver"); driver != tool->end() && driver->is_object()) {
            if (auto rules = driver->find("rules"); rules != driver->end() && rules->is_array())
                driver_rules = &*rules;
        }
        long index = -1;
        if (auto ri = result.find("ruleIndex"); ri != result.end() && ri->is_number_integer())
            index = ri->get<long>();
        else if (auto rule = result.find("rule"); rule != result.end() && rule->is_object()) {
            if (auto idx = rule->find("index"); idx != rule->end() && idx->is_number_integer())
                index = idx->get<long>();
        }
        if (driver_rules && index >= 0 && index < static_cast<long>(driver_rules->size()))
            return &(*driver_rules)[static_cast<std::size_t>(index)];

        auto match_by_id = [&](const json& rules) -> const json* {
            for (const json& r : rules)
                if (r.is_object() && r.value("id", "") == rule_id) return &r;
            return nullptr;
        };
        if (driver_rules)
            if (const json* r = match_by_id(*driver_rules)) return r;
        if (auto exts = tool->find("extensions"); exts != tool->end() && exts->is_array()) {
            for (const json& ext : *exts) {
                if (!ext.is_object()) continue;
                if (auto rules = ext.find("rules"); rules != ext.end() && rules->is_array())
                    if (const json* r = match_by_id(*rules)) return r;
            }
        }
    }
    return nullptr;
}

std::string resolve_rule_id(const json& run, const json& result) {
    if (auto id = result.find("ruleId"); id != result.end() && id->is_string())
        return id->get<std::string>();
    if (auto rule = result.find("rule"); rule != result.end() && rule->is_object())
        if (auto id = rule->find("id"); id != rule->end() && id->is_string())
            return id->get<std::string>();
    if (const json* rule = resolve_rule(run, result, ""))
        if (auto id = rule->find("id"); id != rule->end() && id->is_string())
            return id->get<std::string>();
    throw SarifSyntaxError("result has no resolvable rule id");
}

struct PrimaryLocation {
    std::string file;
    long start = 0;
    long end = 0;
};

// First physical location that carries a start line; results without one
// are skipped by the caller.
std::optional<PrimaryLocation> primary_location(const json& result) {
    auto locations = result.find("locations");
    if (locations == result.end() || !locations->is_array()) return std::nullopt;
    for (const json& loc : *locations) {
        if (!loc.is_object()) continue;
        auto phys = loc.find("physicalLocation");
        if (phys == loc.end() || !phys->is_object()) continue;
        auto artifact = phys->find("artifactLocation");
        if (artifact == phys->end() || !artifact->is_object()) continue;
        auto uri = artifact->find("uri");
        if (uri == artifact->end() || !uri->is_string()) continue;
        auto region = phys->find("region");
        if (region == phys->end() || !region->is_object()) continue;
        auto start = region->find("startLine");
        if (start == region->end() || !start->is_number_integer()) continue;
        long start_line = start->get<long>();
        if (start_line < 1) continue;
        long end_line = region->value("endLine", start_line);
        PrimaryLocation out;
        out.file = normalize_sarif_uri(uri->get<std::string>());
        out.start = start_line;
        out.end = std::max(start_line, end_line);
        return out;
    }
    return std::nullopt;
}

} // namespace

std::string normalize_sarif_uri(std::string_view uri) {
    std::string decoded = percent_decode(uri);
    std::string_view view = decoded;
    if (view.substr(0, 7) == "file://") {
        view.remove_prefix(7);
        std::size_t slash = view.find('/');
        if (slash != std::string_view::npos && slash > 0) view.remove_prefix(slash);
    }
    while (!view.empty() && view.front() == '/') view.remove_prefix(1);

    std::string path(view);
    std::replace(path.begin(), path.end(), '\\', '/');

    std::vector<std::string> stack;
    std::size_t pos = 0;
    std::string_view pview = path;
    while (pos <= pview.size()) {
        std::size_t slash = pview.find('/', pos);
        std::string_view part =
            slash == std::string_view::npos ? pview.substr(pos) : pview.substr(pos, slash - pos);
        if (part == "..") {
            if (!stack.empty())
                stack.pop_back();
            else
                stack.emplace_back(part); // cannot resolve; keep, it will simply never match
        } else if (!part.empty() && part != ".") {
            stack.emplace_back(part);
        }
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
    }
    std::string out;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        if (i) out += '/';
        out += stack[i];
    }
    return out;
}

SarifDocument parse_sarif(std::string_view doc, const std::string& cve_id,
                          const std::string& version_id, CommitKind commit_kind,
                          QuerySuite suite) {
    json root = json::parse(doc, nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw SarifSyntaxError("not a valid SARIF JSON document");

    auto version = root.find("version");
    if (version == root.end() || !version->is_string())
        throw SarifSyntaxError("SARIF document has no version field");
    if (version->get<std::string>() != "2.1.0")
        throw SarifUnsupportedError("unsupported SARIF version '" + version->get<std::string>() + "'");

    auto runs = root.find("runs");
    if (runs == root.end() || !runs->is_array())
        throw SarifSyntaxError("SARIF document has no runs array");

    SarifDocument out;
    out.alert_set.cve_id = cve_id;
    out.alert_set.version_id = version_id;
    out.alert_set.commit_kind = commit_kind;
    out.alert_set.suite = suite;

    for (const json& run : *runs) {
        if (!run.is_object()) throw SarifSyntaxError("run entry is not an object");
        auto results = run.find("results");
        if (results == run.end() || !results->is_array())
            throw SarifSyntaxError("run has no results array");
        for (const json& result : *results) {
            if (!result.is_object()) throw SarifSyntaxError("result entry is not an object");

            auto loc = primary_location(result);
            if (!loc) {
                ++out.skipped;
                continue;
            }

            Alert alert;
            alert.query = resolve_rule_id(run, result);
            if (alert.query.empty()) throw SarifSyntaxError("result has an empty rule id");
            alert.file = loc->file;
            alert.lines = {loc->start, loc->end};
            alert.version_id = version_id;

            if (auto fps = result.find("partialFingerprints");
                fps != result.end() && fps->is_object()) {
                for (auto it = fps->begin(); it != fps->end(); ++it) {
                    if (!it.value().is_string())
                        throw SarifSyntaxError("partialFingerprints values must be strings");
                    alert.fingerprints.emplace(it.key(), it.value().get<std::string>());
                }
            }

            if (const json* rule = resolve_rule(run, result, alert.query)) {
                if (auto props = rule->find("properties"); props != rule->end() && props->is_object()) {
                    if (auto prec = props->find("precision"); prec != props->end() && prec->is_string())
                        alert.precision = parse_precision(prec->get<std::string>());
                }
            }

            out.alert_set.alerts.push_back(std::move(alert));
        }
    }
    return out;
}

} // namespace sastlong
