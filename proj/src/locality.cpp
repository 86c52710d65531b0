// SPDX-License-Identifier: Apache-2.0

#include "sastlong/locality.hpp"

#include <algorithm>
#include <climits>
#include <vector>

#include "sastlong/errors.hpp"

namespace sastlong {

namespace {

std::vector<std::string_view> components(std::string_view path) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        std::size_t slash = path.find('/', pos);
        std::string_view part =
            slash == std::string_view::npos ? path.substr(pos) : path.substr(pos, slash - pos);
        if (!part.empty()) out.push_back(part);
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
    }
    return out;
}

bool in_vulnerable_file(const Alert& a, const FixDelta& delta) {
    return delta.files.count(a.file) > 0;
}

bool covers_fix_line(const Alert& a, const FixDelta& delta) {
    auto it = delta.locations.lower_bound(FileLine{a.file, a.lines.start});
    return it != delta.locations.end() && it->file == a.file && it->line <= a.lines.end;
}

// Merged inclusive intervals and their total length; keeps huge alert
// ranges cheap instead of materializing line sets.
struct IntervalSet {
    std::vector<std::pair<long, long>> merged;

    explicit IntervalSet(std::vector<std::pair<long, long>> raw) {
        std::sort(raw.begin(), raw.end());
        for (const auto& [start, end] : raw) {
            if (!merged.empty() && start <= merged.back().second + 1)
                merged.back().second = std::max(merged.back().second, end);
            else
                merged.emplace_back(start, end);
        }
    }

    long size() const {
        long total = 0;
        for (const auto& [start, end] : merged) total += end - start + 1;
        return total;
    }

    bool contains(long line) const {
        auto it = std::upper_bound(merged.begin(), merged.end(), std::make_pair(line, LONG_MAX));
        if (it == merged.begin()) return false;
        --it;
        return it->first <= line && line <= it->second;
    }
};

} // namespace

Rational tree_similarity(std::string_view p, std::string_view q) {
    auto cp = components(p);
    auto cq = components(q);
    std::size_t max_depth = std::max(cp.size(), cq.size());
    if (max_depth == 0) return Rational(1);

    std::size_t common = 0;
    while (common < cp.size() && common < cq.size() && cp[common] == cq[common]) ++common;
    return Rational(static_cast<std::int64_t>(common), static_cast<std::int64_t>(max_depth));
}

std::optional<Rational> hard_project_locality(const AlertSet& vul_alerts, const FixDelta& delta) {
    if (vul_alerts.alerts.empty()) return std::nullopt;
    std::int64_t hits = 0;
    for (const Alert& a : vul_alerts.alerts)
        if (in_vulnerable_file(a, delta)) ++hits;
    return Rational(hits, static_cast<std::int64_t>(vul_alerts.alerts.size()));
}

std::optional<Rational> soft_project_locality(const AlertSet& vul_alerts, const FixDelta& delta) {
    if (delta.files.empty())
        throw EmptyFixDeltaError("soft project locality needs a non-empty fix-file set");
    if (vul_alerts.alerts.empty()) return std::nullopt;

    Rational sum(0);
    for (const Alert& a : vul_alerts.alerts) {
        Rational best(0);
        for (const std::string& f : delta.files) best = std::max(best, tree_similarity(a.file, f));
        sum += best;
    }
    return sum / Rational(static_cast<std::int64_t>(vul_alerts.alerts.size()));
}

std::optional<Rational> hard_file_locality(const AlertSet& vul_alerts, const FixDelta& delta) {
    std::int64_t in_file = 0;
    std::int64_t overlapping = 0;
    for (const Alert& a : vul_alerts.alerts) {
        if (!in_vulnerable_file(a, delta)) continue;
        ++in_file;
        if (covers_fix_line(a, delta)) ++overlapping;
    }
    if (in_file == 0) return std::nullopt;
    return Rational(overlapping, in_file);
}

std::optional<Rational> soft_file_locality(const AlertSet& vul_alerts, const FixDelta& delta) {
    if (delta.files.empty())
        throw EmptyFixDeltaError("soft file locality needs a non-empty fix-file set");

    Rational sum(0);
    for (const std::string& f : delta.files) {
        std::vector<long> fix_lines = delta.lines_for(f);
        std::vector<std::pair<long, long>> ranges;
        for (const Alert& a : vul_alerts.alerts)
            if (a.file == f) ranges.emplace_back(a.lines.start, a.lines.end);
        IntervalSet covered(std::move(ranges));

        std::int64_t intersection = 0;
        for (long line : fix_lines)
            if (covered.contains(line)) ++intersection;
        std::int64_t uni = covered.size() + static_cast<std::int64_t>(fix_lines.size()) - intersection;
        if (uni > 0) sum += Rational(intersection, uni);
    }
    return sum / Rational(static_cast<std::int64_t>(delta.files.size()));
}

LocalityReport locality_report(const AlertSet& vul_alerts, const FixDelta& delta) {
    LocalityReport report;
    report.cve_id = vul_alerts.cve_id;
    report.version_id = vul_alerts.version_id;
    report.total_alerts = vul_alerts.alerts.size();
    for (const Alert& a : vul_alerts.alerts)
        if (in_vulnerable_file(a, delta)) ++report.alerts_in_vulnerable_files;

    report.hard_project = hard_project_locality(vul_alerts, delta);
    report.hard_file = hard_file_locality(vul_alerts, delta);
    if (!delta.files.empty()) {
        report.soft_project = soft_project_locality(vul_alerts, delta);
        report.soft_file = soft_file_locality(vul_alerts, delta);
    }
    return report;
}

} // namespace sastlong
