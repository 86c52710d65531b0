// SPDX-License-Identifier: Apache-2.0

#include "sastlong/diffparse.hpp"

#include <algorithm>
#include <charconv>

#include "sastlong/errors.hpp"

namespace sastlong {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

// Decodes a C-style quoted path as emitted by git for names with special
// characters. `s` starts at the opening quote.
std::string decode_quoted(std::string_view s, std::size_t& consumed) {
    std::string out;
    std::size_t i = 1;
    while (i < s.size() && s[i] != '"') {
        char c = s[i];
        if (c == '\\' && i + 1 < s.size()) {
            char e = s[++i];
            switch (e) {
            case '\\': out += '\\'; break;
            case '"': out += '"'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default:
                if (e >= '0' && e <= '7') {
                    int v = e - '0';
                    for (int k = 0; k < 2 && i + 1 < s.size() && s[i + 1] >= '0' && s[i + 1] <= '7'; ++k)
                        v = v * 8 + (s[++i] - '0');
                    out += static_cast<char>(v);
                } else {
                    out += e;
                }
            }
        } else {
            out += c;
        }
        ++i;
    }
    consumed = i < s.size() ? i + 1 : i;
    return out;
}

// Extracts the path from a "--- " / "+++ " header payload: handles quoting
// and drops a trailing tab-separated timestamp.
std::string header_path(std::string_view payload) {
    if (!payload.empty() && payload.front() == '"') {
        std::size_t consumed = 0;
        return decode_quoted(payload, consumed);
    }
    std::size_t tab = payload.find('\t');
    if (tab != std::string_view::npos) payload = payload.substr(0, tab);
    return std::string(payload);
}

bool is_dev_null(std::string_view path) {
    return path == "/dev/null";
}

bool parse_count(std::string_view s, std::size_t& i, long& out) {
    const char* begin = s.data() + i;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr == begin) return false;
    i += static_cast<std::size_t>(ptr - begin);
    return true;
}

// "@@ -l[,s] +l[,s] @@ ..." with counts defaulting to 1.
bool parse_hunk_header(std::string_view line, Hunk& hunk) {
    std::size_t i = 0;
    if (!starts_with(line, "@@ -")) return false;
    i = 4;
    if (!parse_count(line, i, hunk.old_start)) return false;
    hunk.old_count = 1;
    if (i < line.size() && line[i] == ',') {
        ++i;
        if (!parse_count(line, i, hunk.old_count)) return false;
    }
    if (i + 1 >= line.size() || line[i] != ' ' || line[i + 1] != '+') return false;
    i += 2;
    if (!parse_count(line, i, hunk.new_start)) return false;
    hunk.new_count = 1;
    if (i < line.size() && line[i] == ',') {
        ++i;
        if (!parse_count(line, i, hunk.new_count)) return false;
    }
    return i + 3 <= line.size() && line.substr(i, 3) == " @@";
}

// Splits "diff --git a/x b/y"; best effort for unquoted names with spaces,
// the authoritative paths come from the ---/+++ headers when present.
void parse_git_header(std::string_view payload, std::string& a_path, std::string& b_path) {
    if (!payload.empty() && payload.front() == '"') {
        std::size_t consumed = 0;
        a_path = decode_quoted(payload, consumed);
        payload.remove_prefix(std::min(consumed + 1, payload.size()));
        if (!payload.empty() && payload.front() == '"') {
            consumed = 0;
            b_path = decode_quoted(payload, consumed);
        } else {
            b_path = std::string(payload);
        }
        return;
    }
    std::size_t split = payload.find(" b/");
    if (split == std::string_view::npos) {
        split = payload.find(' ');
        if (split == std::string_view::npos) {
            a_path = std::string(payload);
            return;
        }
    }
    a_path = std::string(payload.substr(0, split));
    b_path = std::string(payload.substr(split + 1));
}

std::string strip_ab_prefix(std::string_view p) {
    if (starts_with(p, "a/") || starts_with(p, "b/")) p.remove_prefix(2);
    return std::string(p);
}

std::string normalize_components(std::string_view raw, bool strip_prefix) {
    std::string path(raw);
    std::replace(path.begin(), path.end(), '\\', '/');
    std::string_view view = path;
    if (strip_prefix && (starts_with(view, "a/") || starts_with(view, "b/"))) view.remove_prefix(2);

    std::vector<std::string_view> stack;
    std::size_t pos = 0;
    while (pos <= view.size()) {
        std::size_t slash = view.find('/', pos);
        std::string_view part =
            slash == std::string_view::npos ? view.substr(pos) : view.substr(pos, slash - pos);
        if (part == "..") {
            if (stack.empty())
                throw PathEscapeError("path '" + std::string(raw) + "' escapes the repository root");
            stack.pop_back();
        } else if (!part.empty() && part != ".") {
            stack.push_back(part);
        }
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
    }

    std::string out;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        if (i) out += '/';
        out += stack[i];
    }
    return out;
}

struct RawFileDiff {
    std::string git_a;
    std::string git_b;
    std::string old_header; // from "--- " (may be /dev/null)
    std::string new_header; // from "+++ "
    std::string rename_from;
    bool saw_headers = false;
    bool new_file = false;
    bool deleted_file = false;
    bool is_binary = false;
    std::vector<Hunk> hunks;
};

FileDiff finalize(const RawFileDiff& raw) {
    FileDiff out;
    out.is_binary = raw.is_binary;
    out.hunks = raw.hunks;

    std::string old_side;
    if (raw.saw_headers)
        old_side = is_dev_null(raw.old_header) ? "" : strip_ab_prefix(raw.old_header);
    else if (!raw.rename_from.empty())
        old_side = raw.rename_from;
    else if (!raw.git_a.empty())
        old_side = strip_ab_prefix(raw.git_a);
    if (raw.new_file) old_side.clear();
    if (!old_side.empty()) out.old_path = normalize_components(old_side, false);

    std::string new_side;
    if (raw.saw_headers)
        new_side = is_dev_null(raw.new_header) ? "" : strip_ab_prefix(raw.new_header);
    else if (!raw.git_b.empty())
        new_side = strip_ab_prefix(raw.git_b);
    if (raw.deleted_file) new_side.clear();
    if (!new_side.empty()) out.new_path = normalize_components(new_side, false);

    return out;
}

} // namespace

std::string normalize_path(std::string_view raw) {
    return normalize_components(raw, true);
}

std::vector<FileDiff> parse_unified_diff(std::string_view diff_text) {
    auto lines = split_lines(diff_text);
    std::vector<FileDiff> files;
    RawFileDiff current;
    bool in_file = false;
    bool any_hunks = false;

    auto flush = [&] {
        if (in_file) files.push_back(finalize(current));
        current = RawFileDiff{};
        in_file = false;
    };

    std::size_t i = 0;
    while (i < lines.size()) {
        std::string_view line = lines[i];

        if (starts_with(line, "diff --git ")) {
            flush();
            in_file = true;
            parse_git_header(line.substr(11), current.git_a, current.git_b);
            ++i;
            continue;
        }
        if (starts_with(line, "--- ") && i + 1 < lines.size() && starts_with(lines[i + 1], "+++ ")) {
            if (!in_file || current.saw_headers) {
                flush();
                in_file = true;
            }
            current.old_header = header_path(line.substr(4));
            current.new_header = header_path(lines[i + 1].substr(4));
            current.saw_headers = true;
            i += 2;
            continue;
        }
        if (starts_with(line, "@@")) {
            if (!in_file)
                throw DiffSyntaxError("hunk header outside any file diff: '" + std::string(line) + "'");
            Hunk hunk;
            if (!parse_hunk_header(line, hunk))
                throw DiffSyntaxError("malformed hunk header '" + std::string(line) + "'");
            ++i;
            long need_old = hunk.old_count;
            long need_new = hunk.new_count;
            while (need_old > 0 || need_new > 0) {
                if (i >= lines.size())
                    throw DiffSyntaxError("hunk body ends before declared counts are satisfied");
                std::string_view body = lines[i];
                if (!body.empty() && body[0] == '\\') { // "\ No newline at end of file"
                    ++i;
                    continue;
                }
                char tag = body.empty() ? ' ' : body[0];
                std::string payload(body.empty() ? body : body.substr(1));
                if (tag == ' ') {
                    if (--need_old < 0 || --need_new < 0)
                        throw DiffSyntaxError("hunk body does not match declared counts");
                    hunk.ops.push_back({HunkOp::Kind::Context, std::move(payload)});
                } else if (tag == '-') {
                    if (--need_old < 0)
                        throw DiffSyntaxError("hunk body does not match declared counts");
                    hunk.ops.push_back({HunkOp::Kind::Delete, std::move(payload)});
                } else if (tag == '+') {
                    if (--need_new < 0)
                        throw DiffSyntaxError("hunk body does not match declared counts");
                    hunk.ops.push_back({HunkOp::Kind::Insert, std::move(payload)});
                } else {
                    throw DiffSyntaxError("unexpected line inside hunk: '" + std::string(body) + "'");
                }
                ++i;
            }
            // trailing "\ No newline at end of file"
            while (i < lines.size() && !lines[i].empty() && lines[i][0] == '\\') ++i;
            current.hunks.push_back(std::move(hunk));
            any_hunks = true;
            continue;
        }
        if (in_file) {
            if (starts_with(line, "rename from ")) current.rename_from = std::string(line.substr(12));
            else if (starts_with(line, "copy from ")) current.rename_from = std::string(line.substr(10));
            else if (starts_with(line, "new file mode")) current.new_file = true;
            else if (starts_with(line, "deleted file mode")) current.deleted_file = true;
            else if (starts_with(line, "Binary files ") || starts_with(line, "GIT binary patch"))
                current.is_binary = true;
        }
        ++i;
    }
    flush();

    if (files.empty() && !any_hunks)
        throw EmptyDiffError("no file headers and no hunks found");
    return files;
}

FixDelta parse_fix_diff(std::string_view diff_text) {
    FixDelta delta;
    for (const FileDiff& fd : parse_unified_diff(diff_text)) {
        if (fd.old_path.empty()) continue; // pure addition: nothing exists pre-fix
        delta.files.insert(fd.old_path);

        for (const Hunk& hunk : fd.hunks) {
            long old_line = hunk.old_count == 0 ? hunk.old_start + 1 : hunk.old_start;
            std::size_t i = 0;
            while (i < hunk.ops.size()) {
                HunkOp::Kind kind = hunk.ops[i].kind;
                if (kind == HunkOp::Kind::Delete) {
                    delta.locations.insert({fd.old_path, old_line});
                    ++old_line;
                    ++i;
                } else if (kind == HunkOp::Kind::Context) {
                    ++old_line;
                    ++i;
                } else {
                    std::size_t run_start = i;
                    while (i < hunk.ops.size() && hunk.ops[i].kind == HunkOp::Kind::Insert) ++i;
                    bool prev_del = run_start > 0 && hunk.ops[run_start - 1].kind == HunkOp::Kind::Delete;
                    bool next_del = i < hunk.ops.size() && hunk.ops[i].kind == HunkOp::Kind::Delete;
                    if (!prev_del && !next_del)
                        delta.locations.insert({fd.old_path, std::max(1L, old_line - 1)});
                }
            }
        }
    }
    return delta;
}

} // namespace sastlong
