// SPDX-License-Identifier: Apache-2.0

#include "fsutil.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sastlong/errors.hpp"

namespace sastlong {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MissingFileError("cannot read file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw MissingFileError("cannot write file '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out)
            throw MissingFileError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw MissingFileError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " +
                               ec.message());
}

} // namespace sastlong
