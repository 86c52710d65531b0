// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "sastlong/diffparse.hpp"
#include "sastlong/errors.hpp"
#include "support/diffgen.hpp"

using namespace sastlong;

namespace {

FixDelta delta_of(const std::string& diff) {
    return parse_fix_diff(diff);
}

bool has_location(const FixDelta& d, const std::string& file, long line) {
    return d.locations.count({file, line}) > 0;
}

} // namespace

TEST_CASE("normalize_path strips prefixes and slashes") {
    CHECK(normalize_path("a/src/main.c") == "src/main.c");
    CHECK(normalize_path("b/./lib/x.js") == "lib/x.js");
    CHECK(normalize_path("src\\win\\x.c") == "src/win/x.c");
    CHECK(normalize_path("src/../lib/x.c") == "lib/x.c");
    CHECK_THROWS_AS(normalize_path("a/../etc/passwd"), PathEscapeError);
}

TEST_CASE("deletions map to their old line numbers") {
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -9,5 +9,2 @@\n"
        " ctx9\n"
        "-old10\n"
        "-old11\n"
        "-old12\n"
        " ctx13\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"f"});
    CHECK(d.locations.size() == 3);
    CHECK(has_location(d, "f", 10));
    CHECK(has_location(d, "f", 11));
    CHECK(has_location(d, "f", 12));
}

TEST_CASE("pure insertion anchors to the preceding old line") {
    // three lines inserted after old line 7
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -7,0 +8,3 @@\n"
        "+n1\n"
        "+n2\n"
        "+n3\n";
    FixDelta d = delta_of(diff);
    CHECK(d.locations == std::set<FileLine>{{"f", 7}});

    // same edit rendered with context
    const std::string with_ctx =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -6,3 +6,6 @@\n"
        " c6\n"
        " c7\n"
        "+n1\n"
        "+n2\n"
        "+n3\n"
        " c8\n";
    CHECK(delta_of(with_ctx).locations == std::set<FileLine>{{"f", 7}});
}

TEST_CASE("insertion at the top of the file clamps the anchor to 1") {
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -0,0 +1,2 @@\n"
        "+n1\n"
        "+n2\n";
    CHECK(delta_of(diff).locations == std::set<FileLine>{{"f", 1}});
}

TEST_CASE("deletions dominate adjacent insertions") {
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -10,2 +10,3 @@\n"
        "-old10\n"
        "+new10\n"
        "+new10b\n"
        " ctx11\n";
    FixDelta d = delta_of(diff);
    CHECK(d.locations == std::set<FileLine>{{"f", 10}});
}

TEST_CASE("non-adjacent insert runs in a mixed hunk still anchor") {
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -10,4 +10,4 @@\n"
        "-old10\n"
        " ctx11\n"
        "+ins\n"
        " ctx12\n"
        " ctx13\n";
    FixDelta d = delta_of(diff);
    CHECK(has_location(d, "f", 10)); // deletion
    CHECK(has_location(d, "f", 11)); // anchor of the insert after ctx11
    CHECK(d.locations.size() == 2);
}

TEST_CASE("multiple files contribute independently") {
    const std::string diff =
        "diff --git a/a.py b/a.py\n"
        "--- a/a.py\n"
        "+++ b/a.py\n"
        "@@ -3,1 +3,0 @@\n"
        "-gone\n"
        "diff --git a/b.py b/b.py\n"
        "--- a/b.py\n"
        "+++ b/b.py\n"
        "@@ -8,1 +8,0 @@\n"
        "-gone too\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"a.py", "b.py"});
    CHECK(d.locations.size() == 2);
    CHECK(has_location(d, "a.py", 3));
    CHECK(has_location(d, "b.py", 8));
}

TEST_CASE("new files contribute nothing, deleted files everything") {
    const std::string diff =
        "diff --git a/fresh.c b/fresh.c\n"
        "new file mode 100644\n"
        "--- /dev/null\n"
        "+++ b/fresh.c\n"
        "@@ -0,0 +1,2 @@\n"
        "+x\n"
        "+y\n"
        "diff --git a/dead.c b/dead.c\n"
        "deleted file mode 100644\n"
        "--- a/dead.c\n"
        "+++ /dev/null\n"
        "@@ -1,2 +0,0 @@\n"
        "-x\n"
        "-y\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"dead.c"});
    CHECK(d.locations == std::set<FileLine>{{"dead.c", 1}, {"dead.c", 2}});
}

TEST_CASE("renames keep the old path") {
    const std::string diff =
        "diff --git a/old/name.c b/new/name.c\n"
        "similarity index 98%\n"
        "rename from old/name.c\n"
        "rename to new/name.c\n"
        "--- a/old/name.c\n"
        "+++ b/new/name.c\n"
        "@@ -4,1 +4,1 @@\n"
        "-x\n"
        "+y\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"old/name.c"});
    CHECK(has_location(d, "old/name.c", 4));
}

TEST_CASE("binary files are touched files without locations") {
    const std::string diff =
        "diff --git a/img.png b/img.png\n"
        "index 1111111..2222222 100644\n"
        "Binary files a/img.png and b/img.png differ\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"img.png"});
    CHECK(d.locations.empty());
}

TEST_CASE("malformed input raises the right errors") {
    CHECK_THROWS_AS(parse_unified_diff(""), EmptyDiffError);
    CHECK_THROWS_AS(parse_unified_diff("commit message only\nnothing else\n"), EmptyDiffError);

    const std::string bad_header =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -x,1 +1,1 @@\n"
        "-a\n"
        "+b\n";
    CHECK_THROWS_AS(parse_unified_diff(bad_header), DiffSyntaxError);

    const std::string bad_counts =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -1,3 +1,1 @@\n"
        "-a\n";
    CHECK_THROWS_AS(parse_unified_diff(bad_counts), DiffSyntaxError);

    const std::string hunk_without_file = "@@ -1,1 +1,1 @@\n-a\n+b\n";
    CHECK_THROWS_AS(parse_unified_diff(hunk_without_file), DiffSyntaxError);
}

TEST_CASE("mode and index lines are ignored") {
    const std::string diff =
        "diff --git a/f b/f\n"
        "old mode 100644\n"
        "new mode 100755\n"
        "index abc1234..def5678 100755\n"
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -1,1 +1,1 @@\n"
        "-a\n"
        "+b\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"f"});
    CHECK(has_location(d, "f", 1));
}

TEST_CASE("quoted paths decode") {
    const std::string diff =
        "diff --git \"a/sp ace.c\" \"b/sp ace.c\"\n"
        "--- \"a/sp ace.c\"\n"
        "+++ \"b/sp ace.c\"\n"
        "@@ -1,1 +1,1 @@\n"
        "-a\n"
        "+b\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"sp ace.c"});
}

TEST_CASE("every location is in files with line >= 1") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 300; ++i) {
        testsupport::EditScript script = testsupport::random_script(rng);
        if (!script.has_changes()) continue;
        std::string text = testsupport::render_unified(script, "dir/file.c", 3);
        FixDelta d = parse_fix_diff(text);
        for (const FileLine& fl : d.locations) {
            CHECK(d.files.count(fl.file) == 1);
            CHECK(fl.line >= 1);
        }
    }
}

TEST_CASE("pre-image replay reconstructs the post-image on random diffs") {
    std::mt19937 rng(987654);
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
        testsupport::EditScript script = testsupport::random_script(rng);
        if (!script.has_changes()) continue;
        int context = static_cast<int>(rng() % 4); // includes 0-context diffs
        bool omit = rng() % 2 == 0;
        std::string text = testsupport::render_unified(script, "f.c", context, omit);
        auto files = parse_unified_diff(text);
        REQUIRE(files.size() == 1);
        auto post = testsupport::replay_hunks(files[0].hunks, script.pre);
        CHECK(post == testsupport::post_image(script));
        ++tested;
    }
    CHECK(tested > 300);
}

TEST_CASE("hunk headers may carry a section heading") {
    const std::string diff =
        "--- a/f.c\n"
        "+++ b/f.c\n"
        "@@ -3,3 +3,2 @@ int main()\n"
        " a\n"
        "-b\n"
        " c\n";
    FixDelta d = delta_of(diff);
    CHECK(has_location(d, "f.c", 4));
}

TEST_CASE("commit-message preamble and CRLF endings are tolerated") {
    const std::string diff =
        "From: someone\r\n"
        "Subject: fix the thing\r\n"
        "--- this line is prose, not a header\r\n"
        "\r\n"
        "diff --git a/f.c b/f.c\r\n"
        "--- a/f.c\r\n"
        "+++ b/f.c\r\n"
        "@@ -1,1 +1,1 @@\r\n"
        "-old\r\n"
        "+new\r\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"f.c"});
    CHECK(has_location(d, "f.c", 1));
}

TEST_CASE("truly empty context lines count as context") {
    const std::string diff =
        "--- a/f\n"
        "+++ b/f\n"
        "@@ -1,3 +1,2 @@\n"
        "\n"
        "-x\n"
        " y\n";
    FixDelta d = delta_of(diff);
    CHECK(has_location(d, "f", 2));
    CHECK(d.locations.size() == 1);
}

TEST_CASE("mode-only changes touch the file without locations") {
    const std::string diff =
        "diff --git a/script.sh b/script.sh\n"
        "old mode 100644\n"
        "new mode 100755\n";
    FixDelta d = delta_of(diff);
    CHECK(d.files == std::set<std::string>{"script.sh"});
    CHECK(d.locations.empty());
}
