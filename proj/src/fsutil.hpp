// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

namespace sastlong {

/// Reads a whole file; throws MissingFileError when unreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes content to path via a temporary sibling plus rename, so readers
/// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace sastlong
