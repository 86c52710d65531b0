// SPDX-License-Identifier: Apache-2.0

#include "sastlong/detection.hpp"

#include <algorithm>
#include <map>

#include "sastlong/errors.hpp"

namespace sastlong {

namespace {

bool fingerprints_match(const Alert& a, const Alert& b) {
    bool any_common_key = false;
    for (const auto& [key, value] : a.fingerprints) {
        auto it = b.fingerprints.find(key);
        if (it == b.fingerprints.end()) continue;
        any_common_key = true;
        if (it->second == value) return true;
    }
    if (any_common_key) return false;
    // No comparable fingerprints (either side empty, or disjoint key sets):
    // fall back to file identity. Erring toward "survived" keeps the
    // detector a lower bound.
    return a.file == b.file;
}

} // namespace

bool alert_survives_fix(const Alert& alert, const AlertSet& fix_alerts) {
    return std::any_of(fix_alerts.alerts.begin(), fix_alerts.alerts.end(), [&](const Alert& b) {
        return b.query == alert.query && fingerprints_match(alert, b);
    });
}

DetectionOutcome detect(const FixDelta& fix_delta, const AlertSet& vul_alerts,
                        const AlertSet& fix_alerts) {
    if (vul_alerts.version_id != fix_alerts.version_id)
        throw VersionMismatchError("alert sets come from different versions ('" +
                                   vul_alerts.version_id + "' vs '" + fix_alerts.version_id + "')");
    if (vul_alerts.commit_kind != CommitKind::Vulnerable ||
        fix_alerts.commit_kind != CommitKind::Fixed)
        throw VersionMismatchError("detect() wants a vulnerable-commit and a fixed-commit alert set");

    // Fix lines per file, sorted for the range check.
    std::map<std::string, std::vector<long>> fix_lines;
    for (const FileLine& fl : fix_delta.locations) fix_lines[fl.file].push_back(fl.line);
    for (auto& [file, lines] : fix_lines) std::sort(lines.begin(), lines.end());

    DetectionOutcome out;
    out.cve_id = vul_alerts.cve_id;
    out.version_id = vul_alerts.version_id;

    for (const Alert& a : vul_alerts.alerts) {
        auto it = fix_lines.find(a.file);
        if (it == fix_lines.end()) continue;
        const std::vector<long>& lines = it->second;
        auto lo = std::lower_bound(lines.begin(), lines.end(), a.lines.start);
        bool location_hit = lo != lines.end() && *lo <= a.lines.end;
        if (!location_hit) continue;

        ++out.location_only_matches;
        if (alert_survives_fix(a, fix_alerts))
            ++out.survived_filter_removals;
        else
            out.matching_alerts.push_back(a);
    }
    out.detected = !out.matching_alerts.empty();
    return out;
}

LeadTimeResult lead_time(const CveRecord& cve, const std::vector<DetectionOutcome>& outcomes,
                         const std::vector<VersionInfo>& catalog) {
    std::map<std::string, const VersionInfo*> by_id;
    for (const VersionInfo& v : catalog) by_id[v.id] = &v;

    LeadTimeResult out;
    out.cve_id = cve.cve_id;

    const VersionInfo* first = nullptr;
    for (const DetectionOutcome& outcome : outcomes) {
        auto it = by_id.find(outcome.version_id);
        if (it == by_id.end())
            throw UnknownVersionError("outcome references version '" + outcome.version_id +
                                      "' which is not in the catalog");
        if (!outcome.detected) continue;
        if (!first || it->second->ordinal < first->ordinal) first = it->second;
    }
    if (first) {
        out.first_detecting_version = first->id;
        out.lead_time_days = days_between(cve.fix_date, first->release_date);
        out.positive = *out.lead_time_days > 0;
    }
    return out;
}

} // namespace sastlong
