// SPDX-License-Identifier: Apache-2.0

#include "sastlong/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "fsutil.hpp"
#include "sastlong/errors.hpp"
#include "sastlong/sarifread.hpp"

extern char** environ;

namespace sastlong {

using nlohmann::json;

namespace {

std::string sarif_relpath(const CveRecord& cve, const std::string& version_id, CommitKind kind) {
    return "sarif/" + cve.cve_id + "_" + version_id + "_" +
           (kind == CommitKind::Vulnerable ? "vul" : "fix") + ".sarif";
}

bool cell_cached_ok(const Corpus& corpus, const CveRecord& cve, const std::string& version_id,
                    CommitKind kind) {
    const RunEntry* run = cve.find_run(version_id);
    if (!run || run->status != RunStatus::Ok) return false;
    const std::string& path =
        kind == CommitKind::Vulnerable ? run->vulnerable_sarif_path : run->fixed_sarif_path;
    if (path.empty()) return false;
    std::error_code ec;
    return std::filesystem::is_regular_file(corpus.resolve(path), ec);
}

struct ProcessResult {
    bool timed_out = false;
    int exit_code = -1;
};

// Runs `command` under /bin/sh with stdout+stderr captured into log_path,
// killing the whole process group after the timeout.
ProcessResult run_process(const std::string& command, const std::filesystem::path& log_path,
                          int timeout_seconds, const std::vector<std::string>& extra_env) {
    int log_fd = ::open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (log_fd < 0)
        throw WorkdirUnwritableError("cannot open log file '" + log_path.string() + "': " +
                                     std::strerror(errno));

    std::vector<std::string> env_storage;
    for (char** e = environ; *e; ++e) env_storage.emplace_back(*e);
    env_storage.insert(env_storage.end(), extra_env.begin(), extra_env.end());
    std::vector<char*> envp;
    for (std::string& s : env_storage) envp.push_back(s.data());
    envp.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) {
        ::close(log_fd);
        throw Error(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(log_fd, STDOUT_FILENO);
        ::dup2(log_fd, STDERR_FILENO);
        ::close(log_fd);
        ::execle("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr), envp.data());
        _exit(127);
    }
    ::close(log_fd);

    ProcessResult result;
    auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_seconds);
    int status = 0;
    while (true) {
        pid_t done = ::waitpid(pid, &status, WNOHANG);
        if (done == pid) break;
        if (done < 0 && errno != EINTR) break;
        if (std::chrono::steady_clock::now() >= deadline) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            result.timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(25));
    }
    if (!result.timed_out && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string tail_of_file(const std::filesystem::path& path, std::size_t max_bytes = 2000) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    in.seekg(0, std::ios::end);
    auto size = static_cast<std::size_t>(in.tellg());
    std::size_t from = size > max_bytes ? size - max_bytes : 0;
    in.seekg(static_cast<std::streamoff>(from));
    std::string tail(size - from, '\0');
    in.read(tail.data(), static_cast<std::streamsize>(tail.size()));
    return tail;
}

std::string replace_all(std::string text, const std::string& needle, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

} // namespace

std::string substitute_template(const std::string& command_template, const std::string& repo_path,
                                const std::string& commit, const std::string& version,
                                const std::string& suite, const std::string& output_sarif) {
    std::string out = command_template;
    out = replace_all(out, "{repo_path}", repo_path);
    out = replace_all(out, "{commit}", commit);
    out = replace_all(out, "{version}", version);
    out = replace_all(out, "{suite}", suite);
    out = replace_all(out, "{output_sarif}", output_sarif);
    return out;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const MissingFileError& e) {
        throw ConfigInvalidError(e.what());
    }
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw ConfigInvalidError("campaign config '" + path.string() + "' is not a JSON object");

    CampaignConfig config;
    if (!root.contains("command_template") || !root["command_template"].is_string())
        throw ConfigInvalidError("campaign config: 'command_template' string is required");
    config.command_template = root["command_template"].get<std::string>();
    if (!root.contains("workdir") || !root["workdir"].is_string())
        throw ConfigInvalidError("campaign config: 'workdir' string is required");
    config.workdir = root["workdir"].get<std::string>();
    config.max_parallel = root.value("max_parallel", 1);
    config.timeout_seconds = root.value("timeout_seconds", 3600);
    config.retry_limit = root.value("retry_limit", 0);
    if (root.contains("suite")) {
        try {
            config.suite = parse_suite(root["suite"].get<std::string>());
        } catch (const DataError& e) {
            throw ConfigInvalidError(std::string("campaign config: ") + e.what());
        }
    }
    validate_config(config);
    return config;
}

void validate_config(const CampaignConfig& config) {
    if (config.command_template.find("{output_sarif}") == std::string::npos)
        throw ConfigInvalidError("command_template must contain {output_sarif}");
    if (config.command_template.find("{commit}") == std::string::npos &&
        config.command_template.find("{version}") == std::string::npos)
        throw ConfigInvalidError("command_template must contain {commit} or {version}");
    if (config.max_parallel < 1)
        throw ConfigInvalidError("max_parallel must be positive");
    if (config.timeout_seconds < 1)
        throw ConfigInvalidError("timeout_seconds must be positive");
    if (config.retry_limit < 0)
        throw ConfigInvalidError("retry_limit must be non-negative");
    if (config.workdir.empty())
        throw ConfigInvalidError("workdir must be set");
}

std::vector<Cell> plan_campaign(const Corpus& corpus, const CampaignConfig& config) {
    (void)config;
    std::vector<const CveRecord*> cves;
    for (const CveRecord& cve : corpus.cves) cves.push_back(&cve);
    std::sort(cves.begin(), cves.end(),
              [](const CveRecord* a, const CveRecord* b) { return a->cve_id < b->cve_id; });

    std::vector<Cell> plan;
    for (const CveRecord* cve : cves)
        for (const VersionInfo& version : corpus.versions)
            for (CommitKind kind : {CommitKind::Vulnerable, CommitKind::Fixed})
                if (!cell_cached_ok(corpus, *cve, version.id, kind))
                    plan.push_back({cve->cve_id, kind, version.id});
    return plan;
}

CampaignOutcome execute(Corpus& corpus, const std::vector<Cell>& plan,
                        const CampaignConfig& config, const std::filesystem::path& manifest_path) {
    validate_config(config);

    std::error_code ec;
    std::filesystem::create_directories(config.workdir / "logs", ec);
    if (ec)
        throw WorkdirUnwritableError("cannot create workdir '" + config.workdir.string() + "': " +
                                     ec.message());
    std::filesystem::create_directories(corpus.root / "sarif", ec);
    if (ec)
        throw WorkdirUnwritableError("cannot create sarif directory under '" +
                                     corpus.root.string() + "': " + ec.message());

    std::map<std::string, CveRecord*> cve_index;
    for (CveRecord& cve : corpus.cves) cve_index[cve.cve_id] = &cve;
    for (const Cell& cell : plan) {
        if (!cve_index.count(cell.cve_id))
            throw DataError("plan references unknown cve '" + cell.cve_id + "'");
        if (!corpus.find_version(cell.version_id))
            throw DataError("plan references unknown version '" + cell.version_id + "'");
    }

    // Cells of one (cve, version) pair merge into a single run entry; the
    // pair is flushed to the manifest once its planned cells settle.
    struct PairState {
        int pending = 0;
        bool vul_ok = false;
        bool fix_ok = false;
    };
    std::map<std::pair<std::string, std::string>, PairState> pairs;
    for (const Cell& cell : plan) {
        PairState& st = pairs[{cell.cve_id, cell.version_id}];
        ++st.pending;
    }
    for (auto& [key, st] : pairs) {
        const CveRecord& cve = *cve_index[key.first];
        st.vul_ok = cell_cached_ok(corpus, cve, key.second, CommitKind::Vulnerable);
        st.fix_ok = cell_cached_ok(corpus, cve, key.second, CommitKind::Fixed);
    }

    std::mutex manifest_mutex; // single serialized writer
    std::ofstream failures(config.workdir / "failures.jsonl", std::ios::app);
    CampaignOutcome outcome;
    std::atomic<std::size_t> next{0};
    std::mutex state_mutex;

    auto run_cell = [&](const Cell& cell) {
        CveRecord& cve = *cve_index[cell.cve_id];
        std::string out_rel = sarif_relpath(cve, cell.version_id, cell.commit);
        std::filesystem::path out_abs = corpus.resolve(out_rel);
        std::filesystem::path log_dir = config.workdir / "logs" / cell.cve_id / cell.version_id;
        std::filesystem::create_directories(log_dir);
        std::filesystem::path log_path = log_dir / (to_string(cell.commit) + ".log");

        const std::string& commit_hash =
            cell.commit == CommitKind::Vulnerable ? cve.vulnerable_commit : cve.fix_commit;
        std::string repo_path = (config.workdir / "repos" / cve.repo_id).string();
        std::string command = substitute_template(config.command_template, repo_path, commit_hash,
                                                  cell.version_id, to_string(config.suite),
                                                  out_abs.string());
        std::vector<std::string> env = {
            "CELL_CVE=" + cell.cve_id,
            "CELL_VERSION=" + cell.version_id,
            "CELL_COMMIT=" + commit_hash,
            "CELL_COMMIT_KIND=" + to_string(cell.commit),
            "CELL_SUITE=" + to_string(config.suite),
        };

        bool ok = false;
        std::string failure_reason;
        for (int attempt = 0; attempt <= config.retry_limit && !ok; ++attempt) {
            ProcessResult result = run_process(command, log_path, config.timeout_seconds, env);
            if (result.timed_out) {
                failure_reason = "timeout after " + std::to_string(config.timeout_seconds) + "s";
                continue;
            }
            if (result.exit_code != 0) {
                failure_reason = "exit code " + std::to_string(result.exit_code);
                continue;
            }
            try {
                parse_sarif(read_file(out_abs), cell.cve_id, cell.version_id, cell.commit,
                            config.suite);
                ok = true;
            } catch (const DataError& e) {
                failure_reason = std::string("unparseable SARIF: ") + e.what();
            }
        }

        std::lock_guard<std::mutex> lock(state_mutex);
        ++outcome.executed;
        if (ok)
            ++outcome.succeeded;
        else {
            ++outcome.failed;
            json j;
            j["cve_id"] = cell.cve_id;
            j["version_id"] = cell.version_id;
            j["commit"] = to_string(cell.commit);
            j["reason"] = failure_reason;
            j["stderr_tail"] = tail_of_file(log_path);
            failures << j.dump() << "\n" << std::flush;
        }

        PairState& st = pairs[{cell.cve_id, cell.version_id}];
        if (cell.commit == CommitKind::Vulnerable)
            st.vul_ok = ok;
        else
            st.fix_ok = ok;
        if (--st.pending > 0) return;

        // Both cells settled: write the run entry and flush the manifest.
        RunEntry entry;
        entry.version_id = cell.version_id;
        entry.suite = config.suite;
        if (st.vul_ok && st.fix_ok) {
            entry.status = RunStatus::Ok;
            entry.vulnerable_sarif_path = sarif_relpath(cve, cell.version_id, CommitKind::Vulnerable);
            entry.fixed_sarif_path = sarif_relpath(cve, cell.version_id, CommitKind::Fixed);
        } else {
            entry.status = RunStatus::AnalysisError; // no SARIF paths on errors
        }
        auto existing = std::find_if(cve.runs.begin(), cve.runs.end(), [&](const RunEntry& r) {
            return r.version_id == cell.version_id;
        });
        if (existing != cve.runs.end())
            *existing = std::move(entry);
        else
            cve.runs.push_back(std::move(entry));

        std::lock_guard<std::mutex> manifest_lock(manifest_mutex);
        save_corpus(corpus, manifest_path);
    };

    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.max_parallel),
                                                std::max<std::size_t>(plan.size(), 1));
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t index = next.fetch_add(1);
                if (index >= plan.size()) return;
                try {
                    run_cell(plan[index]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return outcome;
}

} // namespace sastlong
