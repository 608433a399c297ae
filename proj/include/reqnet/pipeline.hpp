#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "reqnet/corpus.hpp"
#include "reqnet/features.hpp"
#include "reqnet/graph.hpp"
#include "reqnet/stats.hpp"

namespace reqnet::pipeline {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Tiers

enum class Tier { high = 0, medium = 1, low = 2 };
inline constexpr std::array<Tier, 3> kTiers = {Tier::high, Tier::medium, Tier::low};
std::string_view to_string(Tier t);

struct TierRow {
    std::string vertex;
    double value = 0.0;

    bool operator==(const TierRow&) const = default;
};

struct TierAssignment {
    std::string metric;
    std::array<std::vector<TierRow>, 3> tiers;  // indexed by Tier

    const std::vector<TierRow>& tier(Tier t) const { return tiers[static_cast<std::size_t>(t)]; }
};

/// Sorts by value descending (ties by label ascending) and cuts into
/// high/medium/low. Sizes differ by at most one and any remainder goes to
/// the earlier tiers: 10 -> 4/3/3, 11 -> 4/4/3. Throws DomainError for
/// fewer than three vertices.
TierAssignment tertile_partition(std::string metric, std::span<const std::string> labels,
                                 std::span<const double> values);

/// First min(k, rows) rows; k must be >= 1.
std::vector<TierRow> top_k(std::span<const TierRow> rows, std::size_t k);

// ---------------------------------------------------------------------------
// Configuration and stage artifacts

enum class TaggerKind { builtin, pretagged };

struct PipelineConfig {
    std::filesystem::path input;
    corpus::Format format = corpus::Format::csv;
    TaggerKind tagger = TaggerKind::builtin;
    std::optional<std::filesystem::path> stopwords;
    std::size_t min_unigram = 1;
    std::size_t min_pair = 1;
    std::size_t top_k = 10;
    /// "android-preset" or a path to a schedule CSV.
    std::string schedule = "android-preset";
    std::filesystem::path out_dir = "out";
    std::vector<graph::ExportFormat> exports;
    bool keep_isolated = false;
    bool fold_plurals = false;
    corpus::IssueType analyzed_type = corpus::IssueType::enhancement;
    unsigned threads = 1;
};

/// Throws UsageError for out-of-range settings.
void validate(const PipelineConfig& cfg);

/// Everything the report needs from ingestion; persisted as corpus_summary.json.
struct CorpusSummary {
    std::string input_kind = "records";  // or "pretagged"
    std::string source;
    std::size_t records = 0;
    std::size_t rejects = 0;
    std::optional<corpus::TypeCounts> by_type;
    std::string analyzed_type;
    std::size_t analyzed_records = 0;
    std::optional<corpus::RoleCounts> analyzed_roles;
    std::vector<corpus::ReleaseStats> releases;
    corpus::SentinelCounts sentinels;
};

Json to_json(const CorpusSummary& s);
/// Throws InputError on a malformed document.
CorpusSummary corpus_summary_from_json(const Json& j);

struct Extraction {
    std::vector<features::DocumentFeatures> documents;
    features::UnigramCounts unigrams;
    features::PairCounts pairs;
};

/// Per-metric tiers plus per-tier statistics.
struct MetricAnalysis {
    TierAssignment tiers;
    Json tests;
};

/// All derived results for one graph.
struct GraphAnalysis {
    graph::VertexMetrics metrics;
    graph::CommunityPartition communities;
    std::optional<std::array<MetricAnalysis, 3>> by_metric;  // degree, closeness, clustering
    std::vector<std::string> notes;
};

GraphAnalysis analyze_graph(const graph::FeatureGraph& g);

// ---------------------------------------------------------------------------
// Report sections. Each is also the body of the matching subcommand's
// artifact, so a staged run and `run` produce the same numbers.

Json config_section(const PipelineConfig& cfg);
Json corpus_section(const CorpusSummary& s);
Json vocabulary_section(const Extraction& ex);
Json graph_section(const graph::FeatureGraph& g, const GraphAnalysis& a);
Json tiers_section(const graph::FeatureGraph& g, const GraphAnalysis& a, std::size_t k);
Json tests_section(const GraphAnalysis& a);
Json communities_section(const graph::FeatureGraph& g, const GraphAnalysis& a);
Json test_result_json(const stats::TestResult& r);

/// Warnings that follow from the stage outputs alone (rejects, empty
/// corpus, empty graph, records outside the schedule).
std::vector<std::string> derive_warnings(const CorpusSummary& summary, const Extraction& ex,
                                         const graph::FeatureGraph& g);

/// `config` is the echo to embed (see config_section). Throws
/// ConsistencyError when the stage outputs disagree.
Json build_report(const Json& config, const CorpusSummary& summary, const Extraction& ex,
                  const graph::FeatureGraph& g, const GraphAnalysis& a, std::size_t top_k);

/// Checks that the graph and metrics were derived from the same counts.
void check_consistency(const Extraction& ex, const graph::FeatureGraph& g, const GraphAnalysis& a);

/// Plain-text rendering of the report tables.
std::string render_text(const Json& report);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

// ---------------------------------------------------------------------------
// Stages. Each reads its inputs from cfg.input / cfg.out_dir and writes its
// artifacts into cfg.out_dir. Warnings are appended to `warnings`.

struct IngestOutput {
    corpus::CorpusSnapshot corpus;  // all parsed records
    CorpusSummary summary;
};

IngestOutput stage_ingest(const PipelineConfig& cfg, std::vector<std::string>& warnings);
Extraction stage_extract(const PipelineConfig& cfg, const corpus::CorpusSnapshot& corpus,
                         std::vector<std::string>& warnings);
/// Pretagged input bypasses ingestion: documents come straight from the file.
std::pair<CorpusSummary, Extraction> stage_extract_pretagged(const PipelineConfig& cfg,
                                                             std::vector<std::string>& warnings);
graph::FeatureGraph stage_graph(const PipelineConfig& cfg, const Extraction& ex,
                                std::vector<std::string>& warnings);
void write_exports(const PipelineConfig& cfg, const graph::FeatureGraph& g, const GraphAnalysis& a);

/// Loaders for persisted intermediates in cfg.out_dir.
corpus::CorpusSnapshot load_corpus(const PipelineConfig& cfg);
CorpusSummary load_summary(const PipelineConfig& cfg);
Extraction load_extraction(const PipelineConfig& cfg);
graph::FeatureGraph load_graph(const PipelineConfig& cfg);

enum class Stage { ingest, extract, graph, metrics, tiers, communities, stats, report };
std::string_view to_string(Stage s);

/// Runs one stage against the intermediates already in cfg.out_dir.
void run_stage(Stage stage, const PipelineConfig& cfg, std::vector<std::string>& warnings);

/// Full pipeline; returns the report that was written to report.json.
Json run_pipeline(const PipelineConfig& cfg, std::vector<std::string>& warnings);

/// Report from persisted intermediates only.
Json report_from_intermediates(const PipelineConfig& cfg, std::vector<std::string>& warnings);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace reqnet::pipeline
