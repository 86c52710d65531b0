// SPDX-License-Identifier: Apache-2.0

// Random edit scripts rendered as unified diffs, plus the replay oracle the
// diff parser is checked against: the parsed hunks must reconstruct the
// post-image from the pre-image for every generated script.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "sastlong/diffparse.hpp"

namespace testsupport {

struct EditScript {
    std::vector<std::string> pre;                   // pre-image lines
    std::vector<bool> deleted;                      // per pre-image line
    std::vector<std::vector<std::string>> inserts;  // inserts[i]: after pre line i, i in 0..n

    bool has_changes() const {
        for (bool d : deleted)
            if (d) return true;
        for (const auto& ins : inserts)
            if (!ins.empty()) return true;
        return false;
    }
};

inline std::vector<std::string> post_image(const EditScript& script) {
    std::vector<std::string> out(script.inserts[0]);
    for (std::size_t i = 0; i < script.pre.size(); ++i) {
        if (!script.deleted[i]) out.push_back(script.pre[i]);
        for (const std::string& line : script.inserts[i + 1]) out.push_back(line);
    }
    return out;
}

inline EditScript random_script(std::mt19937& rng, std::size_t max_lines = 30) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_lines);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    std::uniform_int_distribution<int> ins_len(1, 3);

    EditScript script;
    std::size_t n = len_dist(rng);
    for (std::size_t i = 0; i < n; ++i) {
        script.pre.push_back("line" + std::to_string(i) + "_" + std::to_string(rng() % 1000));
        script.deleted.push_back(p(rng) < 0.2);
    }
    script.inserts.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (p(rng) < 0.15) {
            int k = ins_len(rng);
            for (int j = 0; j < k; ++j)
                script.inserts[i].push_back("new" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    return script;
}

// Renders the script as one git-style unified diff for `path` with the given
// amount of context. Unit counts are rendered explicitly or omitted to
// exercise the ",1" default.
inline std::string render_unified(const EditScript& script, const std::string& path, int context,
                                  bool omit_unit_counts = false) {
    struct StreamOp {
        char kind; // ' ', '-', '+'
        std::string text;
        long old_line; // for '+': the old line the insert follows
        long new_line; // for '-': the last new line emitted before it
    };
    std::vector<StreamOp> stream;
    long new_counter = 0;
    auto push = [&](char kind, const std::string& text, long old_line) {
        if (kind != '-') ++new_counter;
        // for '-' this is the last new line emitted before the deletion
        stream.push_back({kind, text, old_line, new_counter});
    };
    for (const std::string& line : script.inserts[0]) push('+', line, 0);
    for (std::size_t i = 0; i < script.pre.size(); ++i) {
        push(script.deleted[i] ? '-' : ' ', script.pre[i], static_cast<long>(i + 1));
        for (const std::string& line : script.inserts[i + 1])
            push('+', line, static_cast<long>(i + 1));
    }

    std::vector<std::size_t> changes;
    for (std::size_t i = 0; i < stream.size(); ++i)
        if (stream[i].kind != ' ') changes.push_back(i);
    if (changes.empty()) return {};

    std::string out = "diff --git a/" + path + " b/" + path + "\n--- a/" + path + "\n+++ b/" +
                      path + "\n";

    auto render_range = [&](long start, long count) {
        if (count == 1 && omit_unit_counts) return std::to_string(start);
        return std::to_string(start) + "," + std::to_string(count);
    };

    std::size_t c = 0;
    while (c < changes.size()) {
        std::size_t group_end = c;
        while (group_end + 1 < changes.size() &&
               changes[group_end + 1] - changes[group_end] - 1 <= 2 * static_cast<std::size_t>(context))
            ++group_end;

        std::size_t lo = changes[c];
        std::size_t hi = changes[group_end];
        std::size_t from = lo >= static_cast<std::size_t>(context) ? lo - context : 0;
        std::size_t to = std::min(hi + static_cast<std::size_t>(context), stream.size() - 1);

        long old_count = 0;
        long new_count = 0;
        for (std::size_t i = from; i <= to; ++i) {
            if (stream[i].kind != '+') ++old_count;
            if (stream[i].kind != '-') ++new_count;
        }
        long old_start;
        if (old_count > 0) {
            old_start = 0;
            for (std::size_t i = from; i <= to; ++i)
                if (stream[i].kind != '+') {
                    old_start = stream[i].old_line;
                    break;
                }
        } else {
            old_start = stream[from].old_line; // insert-after point, may be 0
        }
        long new_start;
        if (new_count > 0) {
            new_start = 0;
            for (std::size_t i = from; i <= to; ++i)
                if (stream[i].kind != '-') {
                    new_start = stream[i].new_line;
                    break;
                }
        } else {
            new_start = stream[from].new_line; // last new line before the deletes
        }

        out += "@@ -" + render_range(old_start, old_count) + " +" +
               render_range(new_start, new_count) + " @@\n";
        for (std::size_t i = from; i <= to; ++i) {
            out += stream[i].kind;
            out += stream[i].text;
            out += '\n';
        }
        c = group_end + 1;
    }
    return out;
}

// Replays parsed hunks against a pre-image; the parser is correct when this
// reconstructs the post-image.
inline std::vector<std::string> replay_hunks(const std::vector<sastlong::Hunk>& hunks,
                                             const std::vector<std::string>& pre) {
    std::vector<std::string> out;
    std::size_t cursor = 1; // next unconsumed pre line, 1-based
    for (const sastlong::Hunk& hunk : hunks) {
        std::size_t start =
            static_cast<std::size_t>(hunk.old_count == 0 ? hunk.old_start + 1 : hunk.old_start);
        while (cursor < start) out.push_back(pre.at(cursor++ - 1));
        for (const sastlong::HunkOp& op : hunk.ops) {
            switch (op.kind) {
            case sastlong::HunkOp::Kind::Context:
                out.push_back(pre.at(cursor++ - 1));
                break;
            case sastlong::HunkOp::Kind::Delete:
                ++cursor;
                break;
            case sastlong::HunkOp::Kind::Insert:
                out.push_back(op.text);
                break;
            }
        }
    }
    while (cursor <= pre.size()) out.push_back(pre.at(cursor++ - 1));
    return out;
}

} // namespace testsupport
