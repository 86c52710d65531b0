// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sastlong/types.hpp"

namespace sastlong {

/// Outcome of ingesting one SARIF document. `skipped` counts results that
/// carry no physical location with a start line; for every document
/// |alerts| + skipped equals the total number of results across runs.
struct SarifDocument {
    AlertSet alert_set;
    std::size_t skipped = 0;
};

/// Parses a SARIF 2.1.0 document into an AlertSet.
///
/// Per result: query from ruleId (falling back to the rule object resolved
/// via ruleIndex), file from the first physical location carrying a start
/// line (URI-decoded, made repo-relative), lines from region.startLine with
/// endLine defaulting to startLine, partialFingerprints verbatim, and the
/// rule's reported precision when resolvable.
///
/// Throws SarifSyntaxError / SarifUnsupportedError.
SarifDocument parse_sarif(std::string_view doc, const std::string& cve_id,
                          const std::string& version_id, CommitKind commit_kind,
                          QuerySuite suite);

/// Strips "file://" schemes, percent-decodes, drops uriBaseId-style leading
/// slashes and "." segments; exposed for the URI-equivalence property tests.
std::string normalize_sarif_uri(std::string_view uri);

} // namespace sastlong
