// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sastlong/types.hpp"

namespace sastlong {

/// The evaluation corpus: version catalog, CVE records, and the directory
/// all relative paths resolve against. Immutable after load; safe for
/// unrestricted concurrent reads.
struct Corpus {
    std::filesystem::path root;
    std::vector<VersionInfo> versions; // ordinal order
    std::vector<CveRecord> cves;       // manifest order

    const VersionInfo* find_version(const std::string& id) const;
    std::filesystem::path resolve(const std::string& relative) const { return root / relative; }
};

/// Round-trip equality on catalog and records (the root directory is a
/// location, not content).
bool corpus_equal(const Corpus& a, const Corpus& b);

/// Sorts a version catalog by (major, minor, patch) and assigns ordinals.
/// Throws VersionParseError on ids that are not 2- or 3-component dotted
/// numerics (a leading 'v' is tolerated).
std::vector<VersionInfo> order_versions(std::vector<VersionInfo> catalog);

/// Loads and fully validates a corpus manifest. Every type invariant is
/// checked; any violation rejects the whole corpus with a diagnostic naming
/// the offending record. Fix diffs are parsed into FixDelta at load time.
/// Throws ManifestSyntaxError, ManifestSemanticError, MissingFileError
/// (and DiffSyntaxError and friends from the diff parser, with context).
Corpus load_corpus(const std::filesystem::path& manifest_path);

/// Serializes the corpus back to manifest JSON (schema_version 1) and writes
/// it atomically. load_corpus on the written file reproduces an equal corpus.
void save_corpus(const Corpus& corpus, const std::filesystem::path& manifest_path);

/// Manifest JSON text for a corpus; exposed for the runner's serialized
/// manifest writer.
std::string corpus_to_manifest_json(const Corpus& corpus);

} // namespace sastlong
