// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "sastlong/errors.hpp"
#include "sastlong/locality.hpp"
#include "support/microgen.hpp"
#include "support/oracles.hpp"

using namespace sastlong;
using testsupport::bf_sim;
using testsupport::bf_soft_file;

namespace {

Alert alert(const std::string& file, long start, long end) {
    Alert a;
    a.query = "q";
    a.file = file;
    a.lines = {start, end};
    a.version_id = "2.8.0";
    return a;
}

AlertSet vul_set(std::vector<Alert> alerts) {
    AlertSet s;
    s.cve_id = "CVE-X";
    s.version_id = "2.8.0";
    s.commit_kind = CommitKind::Vulnerable;
    s.alerts = std::move(alerts);
    return s;
}

// The worked instance: 6 alerts over 3 files, 3 in the vulnerable file; the
// vulnerability spans 4 lines; in-file alert lines are 6+3+3 with a 3-line
// overlap.
struct WorkedExample {
    FixDelta delta;
    AlertSet alerts;
};

WorkedExample worked_example() {
    WorkedExample ex;
    ex.delta.files = {"d1/d2/vuln.c"};
    for (long line : {10, 11, 12, 13}) ex.delta.locations.insert({"d1/d2/vuln.c", line});
    ex.alerts = vul_set({
        alert("d1/d2/vuln.c", 11, 16),  // 6 lines, 3 overlap the vulnerability
        alert("d1/d2/vuln.c", 20, 22),  // 3 lines, no overlap
        alert("d1/d2/vuln.c", 30, 32),  // 3 lines, no overlap
        alert("d1/d2/other.c", 5, 5),   // same directory
        alert("d1/up1.c", 7, 7),        // parent directory
        alert("d1/up2.c", 9, 9),        // parent directory
    });
    return ex;
}

} // namespace

TEST_CASE("tree similarity follows the worked values") {
    CHECK(tree_similarity("d1/d2/vuln.c", "d1/d2/vuln.c") == Rational(1));
    CHECK(tree_similarity("d1/d2/vuln.c", "d1/d2/other.c") == Rational(2, 3));
    CHECK(tree_similarity("d1/d2/vuln.c", "d1/other.c") == Rational(1, 3));
    CHECK(tree_similarity("a.txt", "b.txt") == Rational(0));
    CHECK(tree_similarity("a.txt", "a.txt") == Rational(1));
}

TEST_CASE("tree similarity is symmetric") {
    std::mt19937 rng(99);
    for (int i = 0; i < 500; ++i) {
        std::string p = testsupport::micro_file(rng);
        std::string q = testsupport::micro_file(rng);
        CHECK(tree_similarity(p, q) == tree_similarity(q, p));
        CHECK(tree_similarity(p, q) == bf_sim(p, q));
        CHECK(tree_similarity(p, p) == Rational(1));
    }
}

TEST_CASE("the worked example yields the four exact values") {
    WorkedExample ex = worked_example();
    CHECK(hard_project_locality(ex.alerts, ex.delta) == Rational(3, 6));
    CHECK(soft_project_locality(ex.alerts, ex.delta) == Rational(13, 18));
    CHECK(hard_file_locality(ex.alerts, ex.delta) == Rational(1, 3));
    CHECK(soft_file_locality(ex.alerts, ex.delta) == Rational(3, 13));

    LocalityReport report = locality_report(ex.alerts, ex.delta);
    CHECK(report.total_alerts == 6);
    CHECK(report.alerts_in_vulnerable_files == 3);
    CHECK(report.hard_project == Rational(1, 2));
    CHECK(report.soft_project == Rational(13, 18));
    CHECK(report.hard_file == Rational(1, 3));
    CHECK(report.soft_file == Rational(3, 13));
}

TEST_CASE("degenerate denominators yield absent metrics") {
    FixDelta delta;
    delta.files = {"f"};
    delta.locations = {{"f", 4}};

    SUBCASE("no alerts at all") {
        AlertSet empty = vul_set({});
        CHECK_FALSE(hard_project_locality(empty, delta).has_value());
        CHECK_FALSE(soft_project_locality(empty, delta).has_value());
        CHECK_FALSE(hard_file_locality(empty, delta).has_value());
        // soft file is still defined: Jaccard of fix lines against nothing
        CHECK(soft_file_locality(empty, delta) == Rational(0));
        LocalityReport r = locality_report(empty, delta);
        CHECK_FALSE(r.hard_project.has_value());
        CHECK_FALSE(r.soft_project.has_value());
        CHECK_FALSE(r.hard_file.has_value());
        CHECK(r.soft_file == Rational(0));
    }
    SUBCASE("no alerts in vulnerable files") {
        AlertSet off = vul_set({alert("elsewhere.c", 1, 2)});
        CHECK_FALSE(hard_file_locality(off, delta).has_value());
        CHECK(hard_project_locality(off, delta) == Rational(0));
    }
    SUBCASE("empty fix delta") {
        FixDelta empty_delta;
        AlertSet alerts = vul_set({alert("f", 1, 2)});
        CHECK_THROWS_AS(soft_project_locality(alerts, empty_delta), EmptyFixDeltaError);
        CHECK_THROWS_AS(soft_file_locality(alerts, empty_delta), EmptyFixDeltaError);
        LocalityReport r = locality_report(alerts, empty_delta);
        CHECK_FALSE(r.soft_project.has_value());
        CHECK_FALSE(r.soft_file.has_value());
        CHECK(r.hard_project == Rational(0));
    }
}

TEST_CASE("single alert covering the vulnerability exactly") {
    FixDelta delta;
    delta.files = {"f"};
    for (long l : {3, 4, 5}) delta.locations.insert({"f", l});
    AlertSet alerts = vul_set({alert("f", 3, 5)});
    CHECK(hard_project_locality(alerts, delta) == Rational(1));
    CHECK(soft_project_locality(alerts, delta) == Rational(1));
    CHECK(hard_file_locality(alerts, delta) == Rational(1));
    CHECK(soft_file_locality(alerts, delta) == Rational(1)); // Jaccard of equal sets
}

TEST_CASE("locality properties on random micro-instances") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 1500; ++i) {
        testsupport::MicroInstance inst = testsupport::random_micro(rng);
        if (inst.delta.files.empty()) continue;
        LocalityReport r = locality_report(inst.vul, inst.delta);

        for (const auto& metric : {r.hard_project, r.soft_project, r.hard_file, r.soft_file}) {
            if (!metric) continue;
            CHECK(*metric >= Rational(0));
            CHECK(*metric <= Rational(1));
        }
        if (r.hard_project && r.soft_project) CHECK(*r.soft_project >= *r.hard_project);

        // soft file against the set-algebra oracle
        CHECK(soft_file_locality(inst.vul, inst.delta) == bf_soft_file(inst.vul, inst.delta));

        // duplicating every alert changes nothing (exact rational equality)
        AlertSet doubled = inst.vul;
        doubled.alerts.insert(doubled.alerts.end(), inst.vul.alerts.begin(),
                              inst.vul.alerts.end());
        LocalityReport dr = locality_report(doubled, inst.delta);
        CHECK(dr.hard_project == r.hard_project);
        CHECK(dr.soft_project == r.soft_project);
        CHECK(dr.hard_file == r.hard_file);
        CHECK(dr.soft_file == r.soft_file);

        // permutation invariance
        AlertSet shuffled = inst.vul;
        std::shuffle(shuffled.alerts.begin(), shuffled.alerts.end(), rng);
        LocalityReport sr = locality_report(shuffled, inst.delta);
        CHECK(sr.hard_project == r.hard_project);
        CHECK(sr.soft_project == r.soft_project);
        CHECK(sr.hard_file == r.hard_file);
        CHECK(sr.soft_file == r.soft_file);
    }
}

TEST_CASE("adding an overlapping in-file alert never decreases hard_file") {
    std::mt19937 rng(808);
    for (int i = 0; i < 300; ++i) {
        testsupport::MicroInstance inst = testsupport::random_micro(rng);
        if (inst.delta.locations.empty()) continue;
        auto before = hard_file_locality(inst.vul, inst.delta);
        const FileLine& target = *inst.delta.locations.begin();
        AlertSet extended = inst.vul;
        extended.alerts.push_back(alert(target.file, target.line, target.line));
        auto after = hard_file_locality(extended, inst.delta);
        REQUIRE(after.has_value());
        if (before) CHECK(*after >= *before);
    }
}
