// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sastlong/types.hpp"

namespace sastlong {

/// Result of the detection predicate for one (cve, version) pair.
/// `detected` holds exactly when `matching_alerts` is non-empty, and
/// location_only_matches = |matching_alerts| + survived_filter_removals.
struct DetectionOutcome {
    std::string cve_id;
    std::string version_id;
    bool detected = false;
    std::vector<Alert> matching_alerts;        // pass both heuristics
    std::size_t location_only_matches = 0;     // pass the location heuristic
    std::size_t survived_filter_removals = 0;  // pass location, survive the fix

    bool operator==(const DetectionOutcome&) const = default;
};

struct LeadTimeResult {
    std::string cve_id;
    std::optional<std::string> first_detecting_version;
    std::optional<long> lead_time_days; // fix date minus release date, whole days
    bool positive = false;              // strictly positive lead time only

    bool operator==(const LeadTimeResult&) const = default;
};

/// True iff some alert in the fix set carries the same query and matches on
/// fingerprints. Alerts sharing at least one fingerprint key match when any
/// common key agrees; with no common key the check falls back to (query,
/// file) equality. Total function.
bool alert_survives_fix(const Alert& alert, const AlertSet& fix_alerts);

/// The detection predicate: an alert counts iff its line range covers some
/// fix location in its own file (heuristic a) and it does not survive into
/// the fix commit (heuristic b). Filtering only removes matches, so the
/// result is a lower bound of the location-only detector.
/// Throws VersionMismatchError when the two sets disagree on version or
/// commit kind.
DetectionOutcome detect(const FixDelta& fix_delta, const AlertSet& vul_alerts,
                        const AlertSet& fix_alerts);

/// First detecting version (minimal ordinal) and the signed whole-day lead
/// time to the CVE's fix date. A same-day release yields lead time 0 and is
/// classified non-positive. Throws UnknownVersionError when an outcome
/// references a version missing from the catalog.
LeadTimeResult lead_time(const CveRecord& cve, const std::vector<DetectionOutcome>& outcomes,
                         const std::vector<VersionInfo>& catalog);

} // namespace sastlong
