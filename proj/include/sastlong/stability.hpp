// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sastlong/corpus.hpp"
#include "sastlong/detection.hpp"
#include "sastlong/rational.hpp"
#include "sastlong/types.hpp"

namespace sastlong {

enum class DetectionState { Detected, NotDetected, Unobserved };

std::string to_string(DetectionState v);

struct TimelinePoint {
    int ordinal = 0;
    std::string version_id;
    DetectionState state = DetectionState::Unobserved;

    bool operator==(const TimelinePoint&) const = default;
};

struct VersionTransition {
    std::string from_version;
    std::string to_version;

    bool operator==(const VersionTransition&) const = default;
};

/// Per-CVE detection states across the ordered catalog, plus the derived
/// drop/recovery events. Events only arise between consecutive observed
/// points; an analysis_error gap swallows the transition instead of
/// manufacturing one. permanent_drop is catalog-relative: detected at some
/// point, not detected at the last observed one, with at least one drop.
struct StabilityTimeline {
    std::string cve_id;
    std::vector<TimelinePoint> points; // strictly increasing ordinals
    std::vector<VersionTransition> drops;
    std::vector<VersionTransition> recoveries;
    bool permanent_drop = false;
    bool ever_detected = false;

    bool operator==(const StabilityTimeline&) const = default;
};

/// Builds the timeline for one CVE. Versions with an analysis_error run
/// become unobserved points; versions without any run are absent from the
/// timeline. Throws DuplicateVersionError on two outcomes for one version
/// and UnknownVersionError on outcomes outside the catalog.
StabilityTimeline build_timeline(const std::string& cve_id,
                                 const std::vector<DetectionOutcome>& outcomes,
                                 const std::map<std::string, RunStatus>& run_statuses,
                                 const std::vector<VersionInfo>& catalog);

/// One utility-cost point per version: how many CVEs the version detects
/// against the median pre-fix alert count. is_minor flags vX.Y.0 releases.
struct TradeoffPoint {
    std::string version_id;
    std::size_t cves_detected = 0;
    Rational median_alerts{0};
    bool is_minor = false;

    bool operator==(const TradeoffPoint&) const = default;
};

/// Alert counts are keyed by (cve_id, version_id) and must cover every ok
/// run. One point per catalog version with at least one ok run, in ordinal
/// order; even-cardinality medians average the two middle values.
std::vector<TradeoffPoint> tradeoff_points(
    const Corpus& corpus, const std::vector<DetectionOutcome>& outcomes,
    const std::map<std::pair<std::string, std::string>, std::size_t>& alert_counts);

} // namespace sastlong
