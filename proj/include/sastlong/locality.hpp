// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sastlong/rational.hpp"
#include "sastlong/types.hpp"

namespace sastlong {

/// The four locality values for one (cve, version) pair, exact rationals.
/// A metric is absent when its denominator is undefined: hard_project needs
/// alerts, hard_file needs alerts in vulnerable files, the soft metrics need
/// a non-empty fix-file set.
struct LocalityReport {
    std::string cve_id;
    std::string version_id;
    std::optional<Rational> hard_project;
    std::optional<Rational> soft_project;
    std::optional<Rational> hard_file;
    std::optional<Rational> soft_file;
    std::size_t total_alerts = 0;
    std::size_t alerts_in_vulnerable_files = 0;

    bool operator==(const LocalityReport&) const = default;
};

/// depth(LCA(p, q)) / max(depth(p), depth(q)) over path components; the
/// repository root has depth 0 and a file is its own ancestor, so
/// sim(p, p) = 1 and root-level siblings score 0.
Rational tree_similarity(std::string_view p, std::string_view q);

/// Fraction of alerts located in a vulnerable file; absent without alerts.
std::optional<Rational> hard_project_locality(const AlertSet& vul_alerts, const FixDelta& delta);

/// Mean over alerts of the tree similarity to the closest vulnerable file;
/// absent without alerts. Throws EmptyFixDeltaError when the delta has no files.
std::optional<Rational> soft_project_locality(const AlertSet& vul_alerts, const FixDelta& delta);

/// Among alerts in vulnerable files, the fraction whose line range covers a
/// fix location; absent when no alert is in a vulnerable file.
std::optional<Rational> hard_file_locality(const AlertSet& vul_alerts, const FixDelta& delta);

/// Per vulnerable file, the Jaccard index of fix lines against the lines
/// covered by alerts located in that file, averaged over files. Throws
/// EmptyFixDeltaError when the delta has no files.
std::optional<Rational> soft_file_locality(const AlertSet& vul_alerts, const FixDelta& delta);

/// All four metrics plus the counts, with absent values where undefined.
LocalityReport locality_report(const AlertSet& vul_alerts, const FixDelta& delta);

} // namespace sastlong
