// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "sastlong/corpus.hpp"
#include "sastlong/errors.hpp"
#include "sastlong/evaluate.hpp"
#include "sastlong/report.hpp"
#include "sastlong/runner.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sastlong;

struct CommonOpts {
    std::string manifest;
    std::string out = "out";
    std::string format = "csv";
    std::string cohort = "all";
    std::string language;
    std::string cwe;
    std::string severity;
    std::string suite;
    std::string precision_tier;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_filters) {
    cmd->add_option("--manifest", opts.manifest, "Corpus manifest JSON")->required();
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--format", opts.format, "Output format (csv or jsonl)");
    if (with_filters) {
        cmd->add_option("--cohort", opts.cohort,
                        "Cohort: all, successful_analyses, detected, positive_lead_time");
        cmd->add_option("--language", opts.language, "Filter by language");
        cmd->add_option("--cwe", opts.cwe, "Filter by CWE id");
        cmd->add_option("--severity", opts.severity, "Filter by severity");
        cmd->add_option("--suite", opts.suite, "Filter by query suite");
        cmd->add_option("--precision-tier", opts.precision_tier, "Filter by precision tier");
    } else {
        cmd->add_option("--suite", opts.suite, "Restrict to runs of one query suite");
    }
}

CohortFilter make_filter(const CommonOpts& opts) {
    CohortFilter filter;
    filter.cohort = parse_cohort(opts.cohort);
    try {
        if (!opts.language.empty()) filter.language = parse_language(opts.language);
        if (!opts.severity.empty()) filter.severity = parse_severity(opts.severity);
        if (!opts.suite.empty()) filter.suite = parse_suite(opts.suite);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    if (!opts.cwe.empty()) filter.cwe = opts.cwe;
    if (!opts.precision_tier.empty()) {
        static const std::set<std::string> tiers = {"low",       "medium", "high",
                                                    "very_high", "mixed",  "unknown"};
        if (!tiers.count(opts.precision_tier))
            throw ConfigError("unknown precision tier '" + opts.precision_tier + "'");
        filter.precision_tier = opts.precision_tier;
    }
    return filter;
}

std::optional<QuerySuite> suite_restriction(const CommonOpts& opts) {
    if (opts.suite.empty()) return std::nullopt;
    try {
        return parse_suite(opts.suite);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write to '" + (dir / name).string() + "'");
    return out;
}

int run_validate(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    std::size_t runs = 0;
    std::size_t ok_runs = 0;
    for (const CveRecord& cve : corpus.cves) {
        runs += cve.runs.size();
        for (const RunEntry& run : cve.runs)
            if (run.status == RunStatus::Ok) ++ok_runs;
    }
    std::cout << "manifest ok: " << corpus.versions.size() << " versions, " << corpus.cves.size()
              << " cves, " << runs << " runs (" << ok_runs << " ok)\n";
    return 0;
}

int run_campaign(const CommonOpts& opts, const std::string& config_path) {
    Corpus corpus = load_corpus(opts.manifest);
    CampaignConfig config = load_campaign_config(config_path);
    std::vector<Cell> plan = plan_campaign(corpus, config);
    std::cout << "campaign: " << plan.size() << " cells to run\n";
    CampaignOutcome outcome = execute(corpus, plan, config, opts.manifest);
    std::cout << "campaign: executed " << outcome.executed << ", succeeded " << outcome.succeeded
              << ", failed " << outcome.failed << "\n";
    return outcome.failed > 0 ? 3 : 0;
}

int run_detect(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    EvaluationResults results = evaluate_corpus(corpus, suite_restriction(opts));
    OutputFormat format = parse_format(opts.format);
    if (format == OutputFormat::Csv) {
        auto detections = open_out(opts.out, "detections.csv");
        write_detections_csv(detections, results.runs);
        auto leads = open_out(opts.out, "leadtime.csv");
        write_leadtimes_csv(leads, results.lead_times);
    } else {
        auto detections = open_out(opts.out, "detections.jsonl");
        write_detections_jsonl(detections, results.runs);
        auto leads = open_out(opts.out, "leadtime.jsonl");
        write_leadtimes_jsonl(leads, results.lead_times);
    }
    auto skips = open_out(opts.out, "sarif_skips.csv");
    write_sarif_skips_csv(skips, results.runs);
    return 0;
}

int run_locality(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    EvaluationResults results = evaluate_corpus(corpus, suite_restriction(opts));
    OutputFormat format = parse_format(opts.format);
    if (format == OutputFormat::Csv) {
        auto out = open_out(opts.out, "locality.csv");
        write_locality_csv(out, results.runs);
    } else {
        auto out = open_out(opts.out, "locality.jsonl");
        write_locality_jsonl(out, results.runs);
    }
    return 0;
}

int run_stability(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    EvaluationResults results = evaluate_corpus(corpus, suite_restriction(opts));
    auto csv = open_out(opts.out, "timelines.csv");
    write_timelines_csv(csv, results.timelines);
    auto jsonl = open_out(opts.out, "timelines.json");
    write_timelines_json(jsonl, results.timelines);
    return 0;
}

int run_tradeoff(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    EvaluationResults results = evaluate_corpus(corpus, suite_restriction(opts));
    auto out = open_out(opts.out, "tradeoff.csv");
    write_tradeoff_csv(out, results.tradeoff);
    return 0;
}

int run_report(const CommonOpts& opts) {
    Corpus corpus = load_corpus(opts.manifest);
    CohortFilter filter = make_filter(opts);
    EvaluationResults results = evaluate_corpus(corpus, filter.suite);
    write_report_artifacts(opts.out, corpus, results, filter, parse_format(opts.format));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longitudinal SAST evaluation toolkit"};
    app.require_subcommand(1);

    CommonOpts validate_opts;
    CLI::App* validate = app.add_subcommand("validate", "Load and validate a corpus manifest");
    validate->add_option("--manifest", validate_opts.manifest, "Corpus manifest JSON")->required();

    CommonOpts run_opts;
    std::string config_path;
    CLI::App* runcmd = app.add_subcommand("run", "Execute the analyzer campaign");
    runcmd->add_option("--manifest", run_opts.manifest, "Corpus manifest JSON")->required();
    runcmd->add_option("--config", config_path, "Campaign config JSON")->required();

    CommonOpts detect_opts;
    CLI::App* detect = app.add_subcommand("detect", "Detection outcomes and lead times");
    add_common(detect, detect_opts, false);

    CommonOpts locality_opts;
    CLI::App* locality = app.add_subcommand("locality", "Locality metrics per (cve, version)");
    add_common(locality, locality_opts, false);

    CommonOpts stability_opts;
    CLI::App* stability = app.add_subcommand("stability", "Detection timelines and drop events");
    add_common(stability, stability_opts, false);

    CommonOpts tradeoff_opts;
    CLI::App* tradeoff = app.add_subcommand("tradeoff", "Utility-cost trade-off points");
    add_common(tradeoff, tradeoff_opts, false);

    CommonOpts report_opts;
    CLI::App* report = app.add_subcommand("report", "Aggregate summary artifacts");
    add_common(report, report_opts, true);

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return run_validate(validate_opts);
        if (runcmd->parsed()) return run_campaign(run_opts, config_path);
        if (detect->parsed()) return run_detect(detect_opts);
        if (locality->parsed()) return run_locality(locality_opts);
        if (stability->parsed()) return run_stability(stability_opts);
        if (tradeoff->parsed()) return run_tradeoff(tradeoff_opts);
        if (report->parsed()) return run_report(report_opts);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
