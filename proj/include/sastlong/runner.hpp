// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sastlong/corpus.hpp"
#include "sastlong/types.hpp"

namespace sastlong {

/// Campaign settings. The command template runs once per (cve, commit,
/// version) cell with {repo_path}, {commit}, {version}, {suite} and
/// {output_sarif} substituted; repository checkout is the command's job.
struct CampaignConfig {
    std::string command_template;
    std::filesystem::path workdir;
    int max_parallel = 1;
    int timeout_seconds = 3600;
    int retry_limit = 0;
    QuerySuite suite = QuerySuite::SecurityExtended;
};

/// Reads a JSON config file. Throws ConfigInvalidError.
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// Validates field constraints, including the placeholder requirements
/// ({output_sarif} plus at least one of {commit}, {version}).
void validate_config(const CampaignConfig& config);

struct Cell {
    std::string cve_id;
    CommitKind commit = CommitKind::Vulnerable;
    std::string version_id;

    bool operator==(const Cell&) const = default;
};

/// One cell per (cve, commit, version) of the full catalog product that
/// lacks a cached ok result; deterministic order (cve, version ordinal,
/// vulnerable before fixed).
std::vector<Cell> plan_campaign(const Corpus& corpus, const CampaignConfig& config);

struct CampaignOutcome {
    std::size_t executed = 0;
    std::size_t succeeded = 0;
    std::size_t failed = 0; // cells still failing after retries
};

/// Runs the planned cells with at most max_parallel in flight. A cell
/// succeeds when the command exits 0 and the produced SARIF parses; the
/// (cve, version) run entry is written after both of its cells settle and
/// the manifest is rewritten atomically each time, so an interrupted
/// campaign resumes with exactly the unfinished cells. Logs live under
/// workdir/logs/<cve>/<version>/<commit>.log and the command inherits the
/// environment plus CELL_* variables naming the cell.
CampaignOutcome execute(Corpus& corpus, const std::vector<Cell>& plan,
                        const CampaignConfig& config,
                        const std::filesystem::path& manifest_path);

/// Placeholder substitution, exposed for tests.
std::string substitute_template(const std::string& command_template, const std::string& repo_path,
                                const std::string& commit, const std::string& version,
                                const std::string& suite, const std::string& output_sarif);

} // namespace sastlong
