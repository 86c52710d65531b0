// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sastlong/types.hpp"

namespace sastlong {

/// One edit operation inside a hunk body.
struct HunkOp {
    enum class Kind { Context, Delete, Insert };
    Kind kind = Kind::Context;
    std::string text; // payload without the leading ' ', '-' or '+'
};

/// One "@@" hunk. For zero-length old ranges, old_start is the old line
/// number *before* the insertion point (standard unified-diff convention);
/// the same holds for new_start when new_count is zero.
struct Hunk {
    long old_start = 0;
    long old_count = 0;
    long new_start = 0;
    long new_count = 0;
    std::vector<HunkOp> ops;
};

/// Per-file slice of a unified diff, old and new paths already normalized.
/// old_path is empty for pure additions, new_path for pure deletions.
struct FileDiff {
    std::string old_path;
    std::string new_path;
    bool is_binary = false;
    std::vector<Hunk> hunks;
};

/// Normalizes a diff-header path: strips one leading "a/" or "b/", forces
/// forward slashes, collapses "." segments and resolves "..". Throws
/// PathEscapeError when the resolved path escapes the repository root.
std::string normalize_path(std::string_view raw);

/// Parses unified-diff text (git extended headers accepted) into per-file
/// hunk structures. Hunk bodies are validated against the declared counts.
/// Throws DiffSyntaxError / EmptyDiffError.
std::vector<FileDiff> parse_unified_diff(std::string_view diff_text);

/// Folds a fix-commit diff into vulnerable-commit coordinates: the old-side
/// files touched, the deleted old lines, and one anchor line per maximal
/// insertion run that has no adjacent deletion (anchor 0 clamps to 1).
FixDelta parse_fix_diff(std::string_view diff_text);

} // namespace sastlong
