// Command-line front end: one subcommand per pipeline stage plus `run`.

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "reqnet/error.hpp"
#include "reqnet/pipeline.hpp"
#include "reqnet/version.hpp"

namespace pl = reqnet::pipeline;

namespace {

enum Exit { ok = 0, usage = 1, input = 2, consistency = 3 };

// Raw flag values; converted to a PipelineConfig once parsing succeeds.
struct Flags {
    std::string input;
    std::string format = "csv";
    std::string tagger = "builtin";
    std::string stopwords;
    std::size_t min_unigram = 1;
    std::size_t min_pair = 1;
    std::size_t top_k = 10;
    std::string schedule = "android-preset";
    std::string out = "out";
    std::vector<std::string> exports;
    bool keep_isolated = false;
    bool fold_plurals = false;
    std::string type = "enhancement";
    unsigned threads = 1;
};

const CLI::Validator kAtLeastOne(
    [](std::string& text) -> std::string {
        long long v = 0;
        if (!CLI::detail::lexical_cast(text, v) || v < 1) return "must be an integer >= 1, got '" + text + "'";
        return {};
    },
    "INT>=1");

pl::PipelineConfig to_config(const Flags& f) {
    pl::PipelineConfig c;
    c.input = f.input;
    c.format = *reqnet::corpus::parse_format(f.format);
    c.tagger = f.tagger == "pretagged" ? pl::TaggerKind::pretagged : pl::TaggerKind::builtin;
    if (!f.stopwords.empty()) c.stopwords = f.stopwords;
    c.min_unigram = f.min_unigram;
    c.min_pair = f.min_pair;
    c.top_k = f.top_k;
    c.schedule = f.schedule;
    c.out_dir = f.out;
    for (const auto& e : f.exports) {
        auto fmt = reqnet::graph::parse_export_format(e);
        if (!fmt) throw reqnet::UsageError("unknown export format '" + e + "'");
        c.exports.push_back(*fmt);
    }
    c.keep_isolated = f.keep_isolated;
    c.fold_plurals = f.fold_plurals;
    c.analyzed_type = *reqnet::corpus::parse_issue_type(f.type);
    c.threads = f.threads;
    return c;
}

void add_out(CLI::App* app, Flags& f) {
    app->add_option("--out", f.out, "Directory for intermediates and reports")->capture_default_str();
}
void add_input(CLI::App* app, Flags& f, bool required) {
    auto* opt = app->add_option("--input", f.input, "Tracker export (csv/jsonl) or pretagged text");
    if (required) opt->required();
    app->add_option("--format", f.format, "Input format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
}
void add_ingest(CLI::App* app, Flags& f) {
    app->add_option("--schedule", f.schedule, "Release schedule: android-preset or a CSV path")->capture_default_str();
    app->add_option("--type", f.type, "Issue type to analyze")
        ->check(CLI::IsMember({"defect", "enhancement", "other"}))
        ->capture_default_str();
}
void add_extract(CLI::App* app, Flags& f) {
    app->add_option("--tagger", f.tagger, "Part-of-speech tagger")
        ->check(CLI::IsMember({"builtin", "pretagged"}))
        ->capture_default_str();
    app->add_option("--stopwords", f.stopwords, "Stopword file replacing the builtin list")->check(CLI::ExistingFile);
    app->add_flag("--fold-plurals", f.fold_plurals, "Map plural nouns onto their singular");
    app->add_option("--threads", f.threads, "Worker threads for pair counting")->check(kAtLeastOne);
}
void add_graph(CLI::App* app, Flags& f) {
    app->add_option("--min-unigram", f.min_unigram, "Minimum document frequency of a feature")
        ->check(kAtLeastOne)
        ->capture_default_str();
    app->add_option("--min-pair", f.min_pair, "Minimum co-occurrence count of an edge")
        ->check(kAtLeastOne)
        ->capture_default_str();
    app->add_flag("--keep-isolated", f.keep_isolated, "Keep features left without edges");
}
void add_top_k(CLI::App* app, Flags& f) {
    app->add_option("--top-k", f.top_k, "Rows per tier table")->check(kAtLeastOne)->capture_default_str();
}
void add_export(CLI::App* app, Flags& f) {
    app->add_option("--export", f.exports, "Graph export formats (graphml, dot, csv)")
        ->check(CLI::IsMember({"graphml", "dot", "csv"}))
        ->delimiter(',');
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature request network analysis"};
    app.set_version_flag("--version", std::string(reqnet::kToolVersion));
    app.require_subcommand(1);
    Flags f;

    struct Sub {
        CLI::App* app;
        std::optional<pl::Stage> stage;  // empty for `run`
    };
    std::vector<Sub> subs;

    auto* ingest = app.add_subcommand("ingest", "Parse and clean records, summarize releases");
    add_input(ingest, f, true);
    add_ingest(ingest, f);
    subs.push_back({ingest, pl::Stage::ingest});

    auto* extract = app.add_subcommand("extract", "Tag nouns and count unigrams and pairs");
    add_input(extract, f, false);
    add_extract(extract, f);
    subs.push_back({extract, pl::Stage::extract});

    auto* graph = app.add_subcommand("graph", "Build the feature co-occurrence graph");
    add_graph(graph, f);
    subs.push_back({graph, pl::Stage::graph});

    subs.push_back({app.add_subcommand("metrics", "Degree, closeness and clustering per vertex"), pl::Stage::metrics});

    auto* tiers = app.add_subcommand("tiers", "Split vertices into high/medium/low tiers per metric");
    add_top_k(tiers, f);
    subs.push_back({tiers, pl::Stage::tiers});

    subs.push_back({app.add_subcommand("communities", "Greedy modularity communities"), pl::Stage::communities});
    subs.push_back({app.add_subcommand("stats", "Normality and rank tests across tiers"), pl::Stage::stats});

    auto* report = app.add_subcommand("report", "Assemble report.json and report.txt from intermediates");
    add_top_k(report, f);
    add_export(report, f);
    subs.push_back({report, pl::Stage::report});

    auto* run = app.add_subcommand("run", "Run every stage in order");
    add_input(run, f, true);
    add_ingest(run, f);
    add_extract(run, f);
    add_graph(run, f);
    add_top_k(run, f);
    add_export(run, f);
    subs.push_back({run, std::nullopt});

    for (auto& s : subs) add_out(s.app, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    std::vector<std::string> warnings;
    try {
        const auto cfg = to_config(f);
        if (extract->parsed() && cfg.tagger == pl::TaggerKind::pretagged && cfg.input.empty())
            throw reqnet::UsageError("extract: --input is required with --tagger pretagged");
        for (const auto& s : subs) {
            if (!s.app->parsed()) continue;
            if (s.stage) {
                pl::run_stage(*s.stage, cfg, warnings);
            } else {
                pl::run_pipeline(cfg, warnings);
                std::cout << "report written to " << (cfg.out_dir / "report.json").string() << '\n';
            }
        }
    } catch (const reqnet::UsageError& e) {
        print_warnings(warnings);
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    } catch (const reqnet::InputError& e) {
        print_warnings(warnings);
        std::cerr << "error: " << e.what() << '\n';
        return Exit::input;
    } catch (const std::exception& e) {
        print_warnings(warnings);
        std::cerr << "error: " << e.what() << '\n';
        return Exit::consistency;
    }
    print_warnings(warnings);
    return Exit::ok;
}
