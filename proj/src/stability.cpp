// SPDX-License-Identifier: Apache-2.0

#include "sastlong/stability.hpp"

#include <algorithm>

#include "sastlong/errors.hpp"

namespace sastlong {

std::string to_string(DetectionState v) {
    switch (v) {
    case DetectionState::Detected: return "detected";
    case DetectionState::NotDetected: return "not_detected";
    case DetectionState::Unobserved: return "unobserved";
    }
    return "unobserved";
}

StabilityTimeline build_timeline(const std::string& cve_id,
                                 const std::vector<DetectionOutcome>& outcomes,
                                 const std::map<std::string, RunStatus>& run_statuses,
                                 const std::vector<VersionInfo>& catalog) {
    std::map<std::string, const DetectionOutcome*> by_version;
    for (const DetectionOutcome& o : outcomes) {
        if (!by_version.emplace(o.version_id, &o).second)
            throw DuplicateVersionError("cve '" + cve_id + "' has two outcomes for version '" +
                                        o.version_id + "'");
    }
    for (const auto& [version_id, outcome] : by_version) {
        (void)outcome;
        if (std::none_of(catalog.begin(), catalog.end(),
                         [&](const VersionInfo& v) { return v.id == version_id; }))
            throw UnknownVersionError("cve '" + cve_id + "' has an outcome for version '" +
                                      version_id + "' outside the catalog");
    }

    StabilityTimeline timeline;
    timeline.cve_id = cve_id;

    for (const VersionInfo& v : catalog) {
        auto status = run_statuses.find(v.id);
        if (status == run_statuses.end()) continue; // never ran at this version

        TimelinePoint point;
        point.ordinal = v.ordinal;
        point.version_id = v.id;
        if (status->second == RunStatus::AnalysisError) {
            point.state = DetectionState::Unobserved;
        } else {
            auto outcome = by_version.find(v.id);
            point.state = outcome == by_version.end() ? DetectionState::Unobserved
                          : outcome->second->detected ? DetectionState::Detected
                                                      : DetectionState::NotDetected;
        }
        timeline.points.push_back(std::move(point));
    }

    for (const TimelinePoint& p : timeline.points)
        if (p.state == DetectionState::Detected) timeline.ever_detected = true;

    for (std::size_t i = 1; i < timeline.points.size(); ++i) {
        const TimelinePoint& prev = timeline.points[i - 1];
        const TimelinePoint& cur = timeline.points[i];
        if (prev.state == DetectionState::Unobserved || cur.state == DetectionState::Unobserved)
            continue;
        if (prev.state == DetectionState::Detected && cur.state == DetectionState::NotDetected)
            timeline.drops.push_back({prev.version_id, cur.version_id});
        else if (prev.state == DetectionState::NotDetected && cur.state == DetectionState::Detected)
            timeline.recoveries.push_back({prev.version_id, cur.version_id});
    }

    const TimelinePoint* last_observed = nullptr;
    for (const TimelinePoint& p : timeline.points)
        if (p.state != DetectionState::Unobserved) last_observed = &p;
    timeline.permanent_drop = timeline.ever_detected && last_observed &&
                              last_observed->state == DetectionState::NotDetected &&
                              !timeline.drops.empty();
    return timeline;
}

std::vector<TradeoffPoint> tradeoff_points(
    const Corpus& corpus, const std::vector<DetectionOutcome>& outcomes,
    const std::map<std::pair<std::string, std::string>, std::size_t>& alert_counts) {
    std::map<std::pair<std::string, std::string>, bool> detected;
    for (const DetectionOutcome& o : outcomes) detected[{o.cve_id, o.version_id}] = o.detected;

    std::vector<TradeoffPoint> points;
    for (const VersionInfo& v : corpus.versions) {
        std::vector<std::size_t> counts;
        std::size_t cves_detected = 0;
        for (const CveRecord& cve : corpus.cves) {
            const RunEntry* run = cve.find_run(v.id);
            if (!run || run->status != RunStatus::Ok) continue;
            auto count = alert_counts.find({cve.cve_id, v.id});
            if (count == alert_counts.end())
                throw DataError("missing alert count for cve '" + cve.cve_id + "' at version '" +
                                v.id + "'");
            counts.push_back(count->second);
            auto d = detected.find({cve.cve_id, v.id});
            if (d != detected.end() && d->second) ++cves_detected;
        }
        if (counts.empty()) continue;

        std::sort(counts.begin(), counts.end());
        Rational median(0);
        std::size_t n = counts.size();
        if (n % 2 == 1)
            median = Rational(static_cast<std::int64_t>(counts[n / 2]));
        else
            median = Rational(static_cast<std::int64_t>(counts[n / 2 - 1] + counts[n / 2]), 2);

        points.push_back({v.id, cves_detected, median, parse_version(v.id).is_minor_release()});
    }
    return points;
}

} // namespace sastlong
