// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "sastlong/errors.hpp"
#include "sastlong/stability.hpp"
#include "support/tempdir.hpp"

using namespace sastlong;

namespace {

std::vector<VersionInfo> catalog_of(std::size_t n) {
    std::vector<VersionInfo> catalog;
    for (std::size_t i = 0; i < n; ++i) {
        VersionInfo v;
        v.id = "2." + std::to_string(i) + ".0";
        v.release_date = Date::parse("2022-01-01");
        v.ordinal = static_cast<int>(i);
        catalog.push_back(std::move(v));
    }
    return catalog;
}

// 'T' detected, 'F' not detected, 'U' unobserved (analysis error), '.' no run
StabilityTimeline timeline_of(const std::string& states) {
    auto catalog = catalog_of(states.size());
    std::vector<DetectionOutcome> outcomes;
    std::map<std::string, RunStatus> statuses;
    for (std::size_t i = 0; i < states.size(); ++i) {
        char s = states[i];
        if (s == '.') continue;
        if (s == 'U') {
            statuses[catalog[i].id] = RunStatus::AnalysisError;
            continue;
        }
        statuses[catalog[i].id] = RunStatus::Ok;
        DetectionOutcome o;
        o.cve_id = "CVE-X";
        o.version_id = catalog[i].id;
        o.detected = s == 'T';
        if (o.detected) {
            Alert a;
            a.query = "q";
            a.file = "f";
            o.matching_alerts.push_back(a);
            o.location_only_matches = 1;
        }
        outcomes.push_back(std::move(o));
    }
    return build_timeline("CVE-X", outcomes, statuses, catalog);
}

} // namespace

TEST_CASE("drops, recoveries and permanent drops on the synthetic timeline") {
    StabilityTimeline tl = timeline_of("TTFTFF");
    CHECK(tl.drops.size() == 2);
    CHECK(tl.recoveries.size() == 1);
    CHECK(tl.permanent_drop);
    CHECK(tl.ever_detected);
    CHECK(tl.drops[0] == VersionTransition{"2.1.0", "2.2.0"});
    CHECK(tl.drops[1] == VersionTransition{"2.3.0", "2.4.0"});
    CHECK(tl.recoveries[0] == VersionTransition{"2.2.0", "2.3.0"});
}

TEST_CASE("events never span unobserved gaps") {
    StabilityTimeline tl = timeline_of("TUF");
    CHECK(tl.drops.empty());
    CHECK(tl.recoveries.empty());
    CHECK_FALSE(tl.permanent_drop); // no drop happened, only a gap
    CHECK(tl.ever_detected);
    REQUIRE(tl.points.size() == 3);
    CHECK(tl.points[1].state == DetectionState::Unobserved);
}

TEST_CASE("never-detected timelines have no events") {
    StabilityTimeline tl = timeline_of("FFF");
    CHECK_FALSE(tl.ever_detected);
    CHECK(tl.drops.empty());
    CHECK(tl.recoveries.empty());
    CHECK_FALSE(tl.permanent_drop);
}

TEST_CASE("versions without runs are absent from the timeline") {
    StabilityTimeline tl = timeline_of("T.F");
    REQUIRE(tl.points.size() == 2);
    CHECK(tl.points[0].ordinal == 0);
    CHECK(tl.points[1].ordinal == 2);
    // the two observed points are consecutive in the timeline
    CHECK(tl.drops.size() == 1);
}

TEST_CASE("a recovery after the last drop clears permanent_drop") {
    StabilityTimeline tl = timeline_of("TFT");
    CHECK(tl.drops.size() == 1);
    CHECK(tl.recoveries.size() == 1);
    CHECK_FALSE(tl.permanent_drop);
}

TEST_CASE("duplicate outcomes for one version are rejected") {
    auto catalog = catalog_of(2);
    DetectionOutcome o;
    o.cve_id = "CVE-X";
    o.version_id = "2.0.0";
    std::map<std::string, RunStatus> statuses{{"2.0.0", RunStatus::Ok}};
    CHECK_THROWS_AS(build_timeline("CVE-X", {o, o}, statuses, catalog), DuplicateVersionError);
}

TEST_CASE("outcomes outside the catalog are rejected") {
    auto catalog = catalog_of(1);
    DetectionOutcome o;
    o.cve_id = "CVE-X";
    o.version_id = "9.9.9";
    std::map<std::string, RunStatus> statuses{{"9.9.9", RunStatus::Ok}};
    CHECK_THROWS_AS(build_timeline("CVE-X", {o}, statuses, catalog), UnknownVersionError);
}

TEST_CASE("drop and recovery counts alternate on fully observed timelines") {
    // Gaps swallow transitions, so alternation is a property of timelines
    // without unobserved points.
    std::mt19937 rng(2024);
    const char* alphabet = "TF.";
    for (int i = 0; i < 1000; ++i) {
        std::string states;
        std::size_t n = 1 + rng() % 50;
        for (std::size_t k = 0; k < n; ++k) states += alphabet[rng() % 3];
        StabilityTimeline tl = timeline_of(states);
        long diff = static_cast<long>(tl.drops.size()) - static_cast<long>(tl.recoveries.size());
        CHECK(diff >= -1);
        CHECK(diff <= 1);
        if (!tl.points.empty() && tl.points.front().state == DetectionState::Detected)
            CHECK((diff == 0 || diff == 1));
    }
}

TEST_CASE("permanent drops stay consistent under gaps") {
    std::mt19937 rng(2025);
    const char* alphabet = "TFU.";
    for (int i = 0; i < 1000; ++i) {
        std::string states;
        std::size_t n = 1 + rng() % 50;
        for (std::size_t k = 0; k < n; ++k) states += alphabet[rng() % 4];
        StabilityTimeline tl = timeline_of(states);
        if (tl.permanent_drop) {
            CHECK(tl.ever_detected);
            CHECK(!tl.drops.empty());
            const TimelinePoint* last_observed = nullptr;
            for (const TimelinePoint& p : tl.points)
                if (p.state != DetectionState::Unobserved) last_observed = &p;
            REQUIRE(last_observed != nullptr);
            CHECK(last_observed->state == DetectionState::NotDetected);
        }
    }
}

TEST_CASE("restricting the catalog to a prefix never invents events") {
    std::mt19937 rng(4711);
    const char* alphabet = "TFU.";
    for (int i = 0; i < 1000; ++i) {
        std::size_t n = 1 + rng() % 50;
        std::string states;
        for (std::size_t k = 0; k < n; ++k) states += alphabet[rng() % 4];
        StabilityTimeline full = timeline_of(states);
        std::size_t cut = 1 + rng() % n;
        StabilityTimeline prefix = timeline_of(states.substr(0, cut));

        // events of the prefix = events of the full timeline within the prefix
        std::vector<VersionTransition> expected_drops;
        for (const VersionTransition& t : full.drops) {
            bool inside = false;
            for (const TimelinePoint& p : prefix.points)
                if (p.version_id == t.to_version) inside = true;
            if (inside) expected_drops.push_back(t);
        }
        CHECK(prefix.drops == expected_drops);

        std::vector<VersionTransition> expected_recoveries;
        for (const VersionTransition& t : full.recoveries) {
            bool inside = false;
            for (const TimelinePoint& p : prefix.points)
                if (p.version_id == t.to_version) inside = true;
            if (inside) expected_recoveries.push_back(t);
        }
        CHECK(prefix.recoveries == expected_recoveries);
    }
}

TEST_CASE("trade-off points use per-version medians") {
    // corpus with 3 cves at one version with counts {2, 14, 72}
    Corpus corpus;
    corpus.versions = catalog_of(2);
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    std::vector<DetectionOutcome> outcomes;
    for (int i = 0; i < 3; ++i) {
        CveRecord cve;
        cve.cve_id = "CVE-" + std::to_string(i);
        RunEntry run;
        run.version_id = "2.0.0";
        run.status = RunStatus::Ok;
        run.vulnerable_sarif_path = "x";
        run.fixed_sarif_path = "y";
        cve.runs.push_back(run);
        corpus.cves.push_back(cve);
    }
    counts[{"CVE-0", "2.0.0"}] = 2;
    counts[{"CVE-1", "2.0.0"}] = 14;
    counts[{"CVE-2", "2.0.0"}] = 72;
    DetectionOutcome detected;
    detected.cve_id = "CVE-1";
    detected.version_id = "2.0.0";
    detected.detected = true;
    outcomes.push_back(detected);

    auto points = tradeoff_points(corpus, outcomes, counts);
    REQUIRE(points.size() == 1); // version 2.1.0 has no ok runs
    CHECK(points[0].version_id == "2.0.0");
    CHECK(points[0].cves_detected == 1);
    CHECK(points[0].median_alerts == Rational(14));
    CHECK(points[0].is_minor);
}

TEST_CASE("even-cardinality medians average the middle values") {
    Corpus corpus;
    corpus.versions = catalog_of(1);
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (int i = 0; i < 2; ++i) {
        CveRecord cve;
        cve.cve_id = "CVE-" + std::to_string(i);
        RunEntry run;
        run.version_id = "2.0.0";
        run.status = RunStatus::Ok;
        run.vulnerable_sarif_path = "x";
        run.fixed_sarif_path = "y";
        cve.runs.push_back(run);
        corpus.cves.push_back(cve);
    }
    counts[{"CVE-0", "2.0.0"}] = 2;
    counts[{"CVE-1", "2.0.0"}] = 14;
    auto points = tradeoff_points(corpus, {}, counts);
    REQUIRE(points.size() == 1);
    CHECK(points[0].median_alerts == Rational(8));
    CHECK(points[0].cves_detected == 0);
}
