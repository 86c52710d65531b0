// SPDX-License-Identifier: Apache-2.0

#include "sastlong/evaluate.hpp"

#include <algorithm>
#include <set>

#include "fsutil.hpp"
#include "sastlong/errors.hpp"
#include "sastlong/sarifread.hpp"

namespace sastlong {

std::vector<DetectionOutcome> EvaluationResults::outcomes_for(const std::string& cve_id) const {
    std::vector<DetectionOutcome> out;
    for (const RunEvaluation& run : runs)
        if (run.cve_id == cve_id) out.push_back(run.outcome);
    return out;
}

std::string precision_tier_of(const DetectionOutcome& outcome) {
    std::set<Precision> precisions;
    for (const Alert& a : outcome.matching_alerts)
        if (a.precision != Precision::Unknown) precisions.insert(a.precision);
    if (precisions.empty()) return "unknown";
    if (precisions.size() == 1) return to_string(*precisions.begin());
    return "mixed";
}

EvaluationResults evaluate_corpus(const Corpus& corpus, std::optional<QuerySuite> suite_filter) {
    EvaluationResults results;

    std::vector<const CveRecord*> cves;
    for (const CveRecord& cve : corpus.cves) cves.push_back(&cve);
    std::sort(cves.begin(), cves.end(),
              [](const CveRecord* a, const CveRecord* b) { return a->cve_id < b->cve_id; });

    for (const CveRecord* cve : cves) {
        std::vector<DetectionOutcome> outcomes;
        std::map<std::string, RunStatus> statuses;

        for (const VersionInfo& version : corpus.versions) {
            const RunEntry* run = cve->find_run(version.id);
            if (!run) continue;
            if (suite_filter && run->suite != *suite_filter) continue;
            statuses[version.id] = run->status;
            if (run->status != RunStatus::Ok) continue;

            SarifDocument vul;
            SarifDocument fix;
            try {
                vul = parse_sarif(read_file(corpus.resolve(run->vulnerable_sarif_path)),
                                  cve->cve_id, version.id, CommitKind::Vulnerable, run->suite);
                fix = parse_sarif(read_file(corpus.resolve(run->fixed_sarif_path)), cve->cve_id,
                                  version.id, CommitKind::Fixed, run->suite);
            } catch (const SarifSyntaxError& e) {
                throw SarifSyntaxError("cve '" + cve->cve_id + "' version '" + version.id +
                                       "': " + e.what());
            } catch (const SarifUnsupportedError& e) {
                throw SarifUnsupportedError("cve '" + cve->cve_id + "' version '" + version.id +
                                            "': " + e.what());
            }

            RunEvaluation eval;
            eval.cve_id = cve->cve_id;
            eval.version_id = version.id;
            eval.suite = run->suite;
            eval.outcome = detect(cve->fix_delta, vul.alert_set, fix.alert_set);
            eval.locality = locality_report(vul.alert_set, cve->fix_delta);
            eval.vul_alert_count = vul.alert_set.alerts.size();
            eval.vul_skipped = vul.skipped;
            eval.fix_skipped = fix.skipped;
            eval.precision_tier = precision_tier_of(eval.outcome);

            results.alert_counts[{cve->cve_id, version.id}] = eval.vul_alert_count;
            outcomes.push_back(eval.outcome);
            results.runs.push_back(std::move(eval));
        }

        results.lead_times.push_back(lead_time(*cve, outcomes, corpus.versions));
        results.timelines.push_back(
            build_timeline(cve->cve_id, outcomes, statuses, corpus.versions));
    }

    std::vector<DetectionOutcome> all_outcomes;
    for (const RunEvaluation& run : results.runs) all_outcomes.push_back(run.outcome);
    results.tradeoff = tradeoff_points(corpus, all_outcomes, results.alert_counts);
    return results;
}

} // namespace sastlong
