// SPDX-License-Identifier: Apache-2.0

#include "sastlong/corpus.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "fsutil.hpp"
#include "sastlong/diffparse.hpp"
#include "sastlong/errors.hpp"

namespace sastlong {

using nlohmann::json;

namespace {

std::string strip_v(std::string id) {
    if (!id.empty() && (id.front() == 'v' || id.front() == 'V')) id.erase(0, 1);
    return id;
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ManifestSyntaxError(where + ": missing required key '" + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string())
        throw ManifestSyntaxError(where + ": key '" + key + "' must be a string");
    return v.get<std::string>();
}

void check_path_normalized(const std::string& path, const std::string& where) {
    if (path.empty())
        throw ManifestSemanticError(where + ": empty path");
    std::string normalized;
    try {
        normalized = normalize_path(path);
    } catch (const PathEscapeError& e) {
        throw ManifestSemanticError(where + ": " + e.what());
    }
    if (normalized != path)
        throw ManifestSemanticError(where + ": path '" + path + "' is not normalized (expected '" +
                                    normalized + "')");
}

void validate_fix_delta(const FixDelta& delta, const std::string& where) {
    for (const std::string& f : delta.files) check_path_normalized(f, where);
    for (const FileLine& fl : delta.locations) {
        if (fl.line < 1)
            throw ManifestSemanticError(where + ": fix location line " + std::to_string(fl.line) +
                                        " is below 1");
        if (!delta.files.count(fl.file))
            throw ManifestSemanticError(where + ": fix location file '" + fl.file +
                                        "' is not among the delta's files");
    }
}

} // namespace

const VersionInfo* Corpus::find_version(const std::string& id) const {
    auto it = std::find_if(versions.begin(), versions.end(),
                           [&](const VersionInfo& v) { return v.id == id; });
    return it == versions.end() ? nullptr : &*it;
}

bool corpus_equal(const Corpus& a, const Corpus& b) {
    return a.versions == b.versions && a.cves == b.cves;
}

std::vector<VersionInfo> order_versions(std::vector<VersionInfo> catalog) {
    std::vector<std::pair<ParsedVersion, std::size_t>> keys;
    keys.reserve(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i)
        keys.emplace_back(parse_version(catalog[i].id), i);

    std::sort(keys.begin(), keys.end(), [&](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return catalog[l.second].id < catalog[r.second].id; // "1.0" vs "1.0.0"
    });

    std::vector<VersionInfo> out;
    out.reserve(catalog.size());
    for (std::size_t ord = 0; ord < keys.size(); ++ord) {
        VersionInfo v = std::move(catalog[keys[ord].second]);
        v.ordinal = static_cast<int>(ord);
        out.push_back(std::move(v));
    }
    return out;
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
    std::string text = read_file(manifest_path);
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw ManifestSyntaxError("manifest '" + manifest_path.string() + "' is not a JSON object");

    const json& schema = require(root, "schema_version", "manifest");
    if (!schema.is_number_integer() || schema.get<long>() != 1)
        throw ManifestSemanticError("manifest: unsupported schema_version " + schema.dump());

    Corpus corpus;
    corpus.root = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                  : std::filesystem::path(".");

    const json& versions = require(root, "versions", "manifest");
    if (!versions.is_array())
        throw ManifestSyntaxError("manifest: 'versions' must be an array");
    std::set<std::string> version_ids;
    for (std::size_t i = 0; i < versions.size(); ++i) {
        const std::string where = "versions[" + std::to_string(i) + "]";
        const json& v = versions[i];
        if (!v.is_object()) throw ManifestSyntaxError(where + ": must be an object");
        VersionInfo info;
        info.id = strip_v(require_string(v, "id", where));
        try {
            parse_version(info.id);
        } catch (const VersionParseError& e) {
            throw ManifestSemanticError(where + ": " + e.what());
        }
        try {
            info.release_date = Date::parse(require_string(v, "release_date", where));
        } catch (const DataError& e) {
            throw ManifestSemanticError(where + ": " + e.what());
        }
        if (!version_ids.insert(info.id).second)
            throw ManifestSemanticError(where + ": duplicate version id '" + info.id + "'");
        corpus.versions.push_back(std::move(info));
    }
    corpus.versions = order_versions(std::move(corpus.versions));
    for (std::size_t i = 1; i < corpus.versions.size(); ++i) {
        if (corpus.versions[i].release_date < corpus.versions[i - 1].release_date)
            throw ManifestSemanticError("versions: release date of '" + corpus.versions[i].id +
                                        "' precedes that of lower version '" +
                                        corpus.versions[i - 1].id + "'");
    }

    const json& cves = require(root, "cves", "manifest");
    if (!cves.is_array())
        throw ManifestSyntaxError("manifest: 'cves' must be an array");
    std::set<std::string> cve_ids;
    for (std::size_t i = 0; i < cves.size(); ++i) {
        const json& c = cves[i];
        std::string where = "cves[" + std::to_string(i) + "]";
        if (!c.is_object()) throw ManifestSyntaxError(where + ": must be an object");

        CveRecord rec;
        rec.cve_id = require_string(c, "cve_id", where);
        where += " (" + rec.cve_id + ")";
        if (!cve_ids.insert(rec.cve_id).second)
            throw ManifestSemanticError(where + ": duplicate cve_id");
        rec.repo_id = require_string(c, "repo_id", where);
        try {
            rec.language = parse_language(require_string(c, "language", where));
            rec.severity = parse_severity(require_string(c, "severity", where));
            rec.fix_date = Date::parse(require_string(c, "fix_date", where));
        } catch (const ManifestSyntaxError&) {
            throw;
        } catch (const DataError& e) {
            throw ManifestSemanticError(where + ": " + e.what());
        }
        const json& cwes = require(c, "cwes", where);
        if (!cwes.is_array())
            throw ManifestSyntaxError(where + ": 'cwes' must be an array");
        for (const json& cwe : cwes) {
            if (!cwe.is_string())
                throw ManifestSyntaxError(where + ": cwe entries must be strings");
            rec.cwes.push_back(cwe.get<std::string>());
        }
        rec.vulnerable_commit = require_string(c, "vulnerable_commit", where);
        rec.fix_commit = require_string(c, "fix_commit", where);
        if (rec.vulnerable_commit == rec.fix_commit)
            throw ManifestSemanticError(where + ": vulnerable_commit equals fix_commit");
        rec.fix_diff_path = require_string(c, "fix_diff", where);

        std::string diff_text = read_file(corpus.resolve(rec.fix_diff_path));
        try {
            rec.fix_delta = parse_fix_diff(diff_text);
        } catch (const DataError& e) {
            throw DiffSyntaxError(where + ": fix diff '" + rec.fix_diff_path + "': " + e.what());
        }
        validate_fix_delta(rec.fix_delta, where);

        if (auto runs = c.find("runs"); runs != c.end()) {
            if (!runs->is_array())
                throw ManifestSyntaxError(where + ": 'runs' must be an array");
            std::set<std::string> run_versions;
            for (std::size_t r = 0; r < runs->size(); ++r) {
                const std::string rwhere = where + ".runs[" + std::to_string(r) + "]";
                const json& run = (*runs)[r];
                if (!run.is_object()) throw ManifestSyntaxError(rwhere + ": must be an object");
                RunEntry entry;
                entry.version_id = strip_v(require_string(run, "version_id", rwhere));
                if (!version_ids.count(entry.version_id))
                    throw ManifestSemanticError(rwhere + ": unknown version id '" +
                                                entry.version_id + "'");
                if (!run_versions.insert(entry.version_id).second)
                    throw ManifestSemanticError(rwhere + ": version '" + entry.version_id +
                                                "' appears more than once among runs");
                try {
                    entry.status = parse_run_status(require_string(run, "status", rwhere));
                    entry.suite = parse_suite(require_string(run, "suite", rwhere));
                } catch (const ManifestSyntaxError&) {
                    throw;
                } catch (const DataError& e) {
                    throw ManifestSemanticError(rwhere + ": " + e.what());
                }
                if (entry.status == RunStatus::Ok) {
                    entry.vulnerable_sarif_path = require_string(run, "vulnerable_sarif", rwhere);
                    entry.fixed_sarif_path = require_string(run, "fixed_sarif", rwhere);
                    for (const std::string& p : {entry.vulnerable_sarif_path, entry.fixed_sarif_path}) {
                        std::error_code ec;
                        if (!std::filesystem::is_regular_file(corpus.resolve(p), ec))
                            throw MissingFileError(rwhere + ": SARIF file '" + p + "' is absent");
                    }
                }
                // analysis_error runs carry no SARIF paths; they are
                // "unobserved" points in the stability analysis.
                rec.runs.push_back(std::move(entry));
            }
        }
        corpus.cves.push_back(std::move(rec));
    }
    return corpus;
}

std::string corpus_to_manifest_json(const Corpus& corpus) {
    json root;
    root["schema_version"] = 1;

    json versions = json::array();
    for (const VersionInfo& v : corpus.versions)
        versions.push_back({{"id", v.id}, {"release_date", v.release_date.to_string()}});
    root["versions"] = std::move(versions);

    json cves = json::array();
    for (const CveRecord& c : corpus.cves) {
        json rec;
        rec["cve_id"] = c.cve_id;
        rec["repo_id"] = c.repo_id;
        rec["language"] = to_string(c.language);
        rec["cwes"] = c.cwes;
        rec["severity"] = to_string(c.severity);
        rec["fix_date"] = c.fix_date.to_string();
        rec["vulnerable_commit"] = c.vulnerable_commit;
        rec["fix_commit"] = c.fix_commit;
        rec["fix_diff"] = c.fix_diff_path;
        json runs = json::array();
        for (const RunEntry& r : c.runs) {
            json run;
            run["version_id"] = r.version_id;
            run["status"] = to_string(r.status);
            run["suite"] = to_string(r.suite);
            if (r.status == RunStatus::Ok) {
                run["vulnerable_sarif"] = r.vulnerable_sarif_path;
                run["fixed_sarif"] = r.fixed_sarif_path;
            }
            runs.push_back(std::move(run));
        }
        rec["runs"] = std::move(runs);
        cves.push_back(std::move(rec));
    }
    root["cves"] = std::move(cves);
    return root.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& manifest_path) {
    write_file_atomic(manifest_path, corpus_to_manifest_json(corpus));
}

} // namespace sastlong
