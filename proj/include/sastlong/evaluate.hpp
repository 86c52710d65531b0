// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sastlong/corpus.hpp"
#include "sastlong/detection.hpp"
#include "sastlong/locality.hpp"
#include "sastlong/stability.hpp"

namespace sastlong {

/// Everything derived from one ok run: both SARIF documents parsed, the
/// detection predicate and locality metrics applied.
struct RunEvaluation {
    std::string cve_id;
    std::string version_id;
    QuerySuite suite = QuerySuite::SecurityExtended;
    DetectionOutcome outcome;
    LocalityReport locality;
    std::size_t vul_alert_count = 0;
    std::size_t vul_skipped = 0;
    std::size_t fix_skipped = 0;
    std::string precision_tier; // of the matching alerts; "unknown"/"mixed"
};

struct EvaluationResults {
    std::vector<RunEvaluation> runs;          // sorted by (cve_id, version ordinal)
    std::vector<LeadTimeResult> lead_times;   // one per CVE, sorted by cve_id
    std::vector<StabilityTimeline> timelines; // one per CVE, sorted by cve_id
    std::vector<TradeoffPoint> tradeoff;      // ordinal order
    std::map<std::pair<std::string, std::string>, std::size_t> alert_counts;

    std::vector<DetectionOutcome> outcomes_for(const std::string& cve_id) const;
};

/// Runs detection, locality, stability and trade-off analysis over every ok
/// run in the corpus. Pure function of the corpus files; (cve, version)
/// cells are independent. A suite filter restricts which runs participate.
EvaluationResults evaluate_corpus(const Corpus& corpus,
                                  std::optional<QuerySuite> suite_filter = std::nullopt);

/// Reported-precision label of a detection: the single precision of its
/// matching alerts, "mixed" when they disagree, "unknown" when absent.
std::string precision_tier_of(const DetectionOutcome& outcome);

} // namespace sastlong
