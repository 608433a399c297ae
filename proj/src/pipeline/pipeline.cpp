#include <cmath>
#include <fstream>
#include <sstream>

#include "reqnet/csv.hpp"
#include "reqnet/error.hpp"
#include "reqnet/format.hpp"
#include "reqnet/pipeline.hpp"

namespace reqnet::pipeline {

namespace fs = std::filesystem;

namespace {

// Which config keys each stage decides; the rest are carried over from the
// config.json left by earlier stages.
const std::vector<std::string> kIngestKeys = {"input", "format", "analyzed_type", "schedule"};
const std::vector<std::string> kExtractKeys = {"tagger", "stopwords", "fold_plurals"};
const std::vector<std::string> kGraphKeys = {"min_unigram", "min_pair", "keep_isolated"};
const std::vector<std::string> kReportKeys = {"top_k", "exports"};

template <class F>
auto in_stage(std::string_view stage, F&& f) -> decltype(f()) {
    const std::string prefix = std::string(stage) + ": ";
    try {
        return f();
    } catch (const UsageError& e) {
        throw UsageError(prefix + e.what());
    } catch (const InputError& e) {
        throw InputError(prefix + e.what());
    } catch (const ConsistencyError& e) {
        throw ConsistencyError(prefix + e.what());
    } catch (const DomainError& e) {
        throw ConsistencyError(prefix + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(prefix + e.what());
    }
}

fs::path artifact(const PipelineConfig& cfg, std::string_view name) { return cfg.out_dir / name; }

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

Json read_json(const fs::path& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<corpus::ReleaseWindow> load_schedule(const PipelineConfig& cfg) {
    if (cfg.schedule == "android-preset") return corpus::android_schedule();
    auto in = open_in(cfg.schedule);
    return corpus::read_schedule(in);
}

void write_rejects(const fs::path& input, const std::vector<corpus::Reject>& rejects) {
    if (rejects.empty()) return;
    std::ostringstream out;
    corpus::write_rejects_jsonl(out, rejects);
    write_file(fs::path(input.string() + ".rejects.jsonl"), out.str());
}

Json merge_config(const PipelineConfig& cfg, const std::vector<std::string>& owned) {
    Json base = config_section(cfg);
    const fs::path path = artifact(cfg, "config.json");
    if (fs::exists(path)) {
        const Json prior = read_json(path);
        for (auto& [key, value] : base.items()) {
            if (std::find(owned.begin(), owned.end(), key) == owned.end() && prior.contains(key)) value = prior[key];
        }
    }
    write_file(path, dump(base));
    return base;
}

void write_release_csv(const fs::path& path, const CorpusSummary& s) {
    std::ostringstream out;
    csv::write_row(out, {"name", "start_date", "end_date", "days", "total_requests", "mean_per_day"});
    for (const auto& r : s.releases) {
        csv::write_row(out, {r.window.name, corpus::format_date(r.window.start_date),
                             corpus::format_date(r.window.end_date), std::to_string(r.days),
                             std::to_string(r.total_requests), format_real(r.mean_per_day, 17)});
    }
    write_file(path, out.str());
}

void write_documents(const fs::path& path, const std::vector<features::DocumentFeatures>& docs) {
    std::ostringstream out;
    for (const auto& d : docs) {
        Json j;
        j["doc_id"] = d.doc_id;
        j["features"] = d.features;
        out << j.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
    }
    write_file(path, out.str());
}

std::vector<features::DocumentFeatures> read_documents(const fs::path& path) {
    auto in = open_in(path);
    std::vector<features::DocumentFeatures> docs;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            const Json j = Json::parse(line);
            features::DocumentFeatures d;
            d.doc_id = j.at("doc_id").get<std::string>();
            for (const auto& f : j.at("features")) d.features.insert(f.get<std::string>());
            docs.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(n) + ": " + e.what());
        }
    }
    return docs;
}

void write_metrics_csv(const fs::path& path, const graph::FeatureGraph& g, const graph::VertexMetrics& m) {
    std::ostringstream out;
    csv::write_row(out, {"feature", "degree", "closeness", "clustering", "component"});
    for (graph::VertexId v = 0; v < g.vertex_count(); ++v) {
        csv::write_row(out, {g.label(v), std::to_string(m.degree[v]), format_real(m.closeness[v], 17),
                             format_real(m.clustering[v], 17), std::to_string(m.component[v])});
    }
    write_file(path, out.str());
}

// A metrics.csv left by an earlier `metrics` run must describe this graph.
void check_metrics_csv(const fs::path& path, const graph::FeatureGraph& g, const graph::VertexMetrics& m) {
    if (!fs::exists(path)) return;
    auto in = open_in(path);
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || header->fields.size() != 5 || header->fields[0] != "feature")
        throw InputError(path.string() + " has an unexpected header");
    graph::VertexId v = 0;
    while (auto row = reader.next()) {
        if (row->fields.size() != 5) throw InputError(path.string() + " line " + std::to_string(row->line) + " is malformed");
        if (v >= g.vertex_count() || row->fields[0] != g.label(v))
            throw ConsistencyError("metrics.csv lists a different vertex set than the graph");
        const bool same = row->fields[1] == std::to_string(m.degree[v]) &&
                          std::fabs(std::strtod(row->fields[2].c_str(), nullptr) - m.closeness[v]) <= 1e-12 &&
                          std::fabs(std::strtod(row->fields[3].c_str(), nullptr) - m.clustering[v]) <= 1e-12;
        if (!same) throw ConsistencyError("metrics.csv disagrees with the graph at vertex '" + g.label(v) + "'");
        ++v;
    }
    if (v != g.vertex_count()) throw ConsistencyError("metrics.csv lists a different vertex set than the graph");
}

std::unique_ptr<features::Tagger> make_tagger(const PipelineConfig& cfg) {
    if (cfg.tagger == TaggerKind::pretagged) return std::make_unique<features::PretaggedTagger>();
    auto lex = features::Lexicon::builtin();
    if (cfg.stopwords) {
        auto in = open_in(*cfg.stopwords);
        lex.stopwords = features::read_wordlist(in);
    }
    return std::make_unique<features::HeuristicTagger>(std::move(lex));
}

Extraction count(const PipelineConfig& cfg, std::vector<features::DocumentFeatures> docs) {
    Extraction ex;
    ex.documents = std::move(docs);
    ex.unigrams = features::unigram_document_frequency(ex.documents);
    ex.pairs = features::pair_document_frequency(ex.documents, cfg.threads);
    return ex;
}

void persist_extraction(const PipelineConfig& cfg, const Extraction& ex) {
    write_documents(artifact(cfg, "documents.jsonl"), ex.documents);
    std::ostringstream u, p;
    features::write_unigrams_csv(u, ex.unigrams);
    features::write_pairs_csv(p, ex.pairs);
    write_file(artifact(cfg, "unigrams.csv"), u.str());
    write_file(artifact(cfg, "pairs.csv"), p.str());
}

void persist_analysis(const PipelineConfig& cfg, const graph::FeatureGraph& g, const GraphAnalysis& a) {
    write_metrics_csv(artifact(cfg, "metrics.csv"), g, a.metrics);
    write_file(artifact(cfg, "tiers.json"), dump(tiers_section(g, a, cfg.top_k)));
    write_file(artifact(cfg, "communities.json"), dump(communities_section(g, a)));
    write_file(artifact(cfg, "stats.json"), dump(tests_section(a)));
}

void finish_report(const PipelineConfig& cfg, const Json& report, const graph::FeatureGraph& g,
                   const GraphAnalysis& a) {
    write_file(artifact(cfg, "report.json"), dump(report));
    write_file(artifact(cfg, "report.txt"), render_text(report));
    write_exports(cfg, g, a);
}

Json summary_counts(const corpus::TypeCounts& t) {
    return Json{{"defect", t.defect}, {"enhancement", t.enhancement}, {"other", t.other}};
}

}  // namespace

// ---------------------------------------------------------------------------

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw InputError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("error writing " + path.string());
}

std::string read_file(const fs::path& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void validate(const PipelineConfig& cfg) {
    if (cfg.min_unigram < 1) throw UsageError("--min-unigram must be at least 1");
    if (cfg.min_pair < 1) throw UsageError("--min-pair must be at least 1");
    if (cfg.top_k < 1) throw UsageError("--top-k must be at least 1");
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
    if (cfg.out_dir.empty()) throw UsageError("--out must not be empty");
}

Json to_json(const CorpusSummary& s) {
    Json j;
    j["input_kind"] = s.input_kind;
    j["source"] = s.source;
    j["records"] = s.records;
    j["rejects"] = s.rejects;
    j["by_type"] = s.by_type ? summary_counts(*s.by_type) : Json(nullptr);
    j["analyzed_type"] = s.analyzed_type;
    j["analyzed_records"] = s.analyzed_records;
    j["reporter_roles"] = s.analyzed_roles ? Json{{"developer", s.analyzed_roles->developer},
                                                  {"user", s.analyzed_roles->user},
                                                  {"anonymous", s.analyzed_roles->anonymous}}
                                           : Json(nullptr);
    Json rel = Json::array();
    for (const auto& r : s.releases) {
        rel.push_back(Json{{"name", r.window.name},
                           {"start_date", corpus::format_date(r.window.start_date)},
                           {"end_date", corpus::format_date(r.window.end_date)},
                           {"days", r.days},
                           {"total_requests", r.total_requests},
                           {"mean_per_day", round_significant(r.mean_per_day)}});
    }
    j["releases"] = std::move(rel);
    j["sentinels"] = Json{{"before_first", s.sentinels.before_first},
                          {"between_windows", s.sentinels.between_windows},
                          {"after_last", s.sentinels.after_last}};
    return j;
}

CorpusSummary corpus_summary_from_json(const Json& j) {
    try {
        CorpusSummary s;
        s.input_kind = j.at("input_kind").get<std::string>();
        s.source = j.at("source").get<std::string>();
        s.records = j.at("records").get<std::size_t>();
        s.rejects = j.at("rejects").get<std::size_t>();
        if (!j.at("by_type").is_null()) {
            const auto& t = j["by_type"];
            s.by_type = corpus::TypeCounts{t.at("defect").get<std::size_t>(), t.at("enhancement").get<std::size_t>(),
                                           t.at("other").get<std::size_t>()};
        }
        s.analyzed_type = j.at("analyzed_type").get<std::string>();
        s.analyzed_records = j.at("analyzed_records").get<std::size_t>();
        if (!j.at("reporter_roles").is_null()) {
            const auto& r = j["reporter_roles"];
            s.analyzed_roles = corpus::RoleCounts{r.at("developer").get<std::size_t>(), r.at("user").get<std::size_t>(),
                                                  r.at("anonymous").get<std::size_t>()};
        }
        for (const auto& r : j.at("releases")) {
            corpus::ReleaseStats st;
            st.window.name = r.at("name").get<std::string>();
            auto start = corpus::parse_date(r.at("start_date").get<std::string>());
            auto end = corpus::parse_date(r.at("end_date").get<std::string>());
            if (!start || !end) throw InputError("corpus summary has a bad release date");
            st.window.start_date = *start;
            st.window.end_date = *end;
            st.days = r.at("days").get<std::int64_t>();
            st.total_requests = r.at("total_requests").get<std::size_t>();
            st.mean_per_day = r.at("mean_per_day").get<double>();
            s.releases.push_back(std::move(st));
        }
        const auto& sn = j.at("sentinels");
        s.sentinels.before_first = sn.at("before_first").get<std::size_t>();
        s.sentinels.between_windows = sn.at("between_windows").get<std::size_t>();
        s.sentinels.after_last = sn.at("after_last").get<std::size_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed corpus summary: ") + e.what());
    }
}

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::ingest: return "ingest";
        case Stage::extract: return "extract";
        case Stage::graph: return "graph";
        case Stage::metrics: return "metrics";
        case Stage::tiers: return "tiers";
        case Stage::communities: return "communities";
        case Stage::stats: return "stats";
        case Stage::report: return "report";
    }
    return "report";
}

// ---------------------------------------------------------------------------
// Stages

IngestOutput stage_ingest(const PipelineConfig& cfg, std::vector<std::string>& warnings) {
    return in_stage("ingest", [&] {
        if (cfg.tagger == TaggerKind::pretagged)
            throw UsageError("pretagged input skips ingestion; start from 'extract' or use 'run'");
        auto in = open_in(cfg.input);
        auto parsed = corpus::parse_records(in, cfg.format, cfg.input.filename().string());
        const auto schedule = load_schedule(cfg);

        IngestOutput out;
        out.corpus = std::move(parsed.corpus);
        auto& s = out.summary;
        s.source = cfg.input.filename().string();
        s.records = out.corpus.records.size();
        s.rejects = parsed.rejects.size();
        s.by_type = corpus::count_by_type(out.corpus);
        s.analyzed_type = std::string(corpus::to_string(cfg.analyzed_type));
        const auto analyzed = corpus::filter_by_type(out.corpus, cfg.analyzed_type);
        s.analyzed_records = analyzed.records.size();
        s.analyzed_roles = corpus::count_by_role(analyzed);
        auto partition = corpus::partition_by_release(analyzed, schedule);
        s.releases = std::move(partition.stats);
        s.sentinels = partition.sentinels;

        if (!parsed.rejects.empty()) {
            warnings.push_back(std::to_string(parsed.rejects.size()) + " records rejected, see " +
                               cfg.input.string() + ".rejects.jsonl");
        }
        write_rejects(cfg.input, parsed.rejects);

        std::ostringstream records;
        corpus::write_records(records, out.corpus, corpus::Format::jsonl);
        write_file(artifact(cfg, "corpus.jsonl"), records.str());
        write_file(artifact(cfg, "corpus_summary.json"), dump(to_json(s)));
        write_release_csv(artifact(cfg, "release_stats.csv"), s);
        return out;
    });
}

Extraction stage_extract(const PipelineConfig& cfg, const corpus::CorpusSnapshot& corpus,
                         std::vector<std::string>& warnings) {
    return in_stage("extract", [&] {
        if (cfg.tagger == TaggerKind::pretagged)
            throw UsageError("the pretagged tagger reads its own input file, not an ingested corpus");
        const auto tagger = make_tagger(cfg);
        const features::ExtractOptions opts{cfg.fold_plurals};
        std::vector<features::DocumentFeatures> docs;
        for (const auto& r : corpus.records) {
            if (r.issue_type != cfg.analyzed_type) continue;
            const auto tokens = features::tokenize(r.summary);
            const auto tagged = features::tag_tokens(tokens, *tagger);
            docs.push_back(features::extract_features(tagged, r.issue_id, opts));
        }
        Extraction ex = count(cfg, std::move(docs));
        if (!ex.documents.empty() && ex.unigrams.counts.empty()) warnings.push_back("no noun features were extracted");
        persist_extraction(cfg, ex);
        return ex;
    });
}

std::pair<CorpusSummary, Extraction> stage_extract_pretagged(const PipelineConfig& cfg,
                                                             std::vector<std::string>& warnings) {
    return in_stage("extract", [&] {
        if (cfg.stopwords) warnings.push_back("--stopwords has no effect with the pretagged tagger");
        auto in = open_in(cfg.input);
        auto input = features::read_pretagged(in);
        const features::PretaggedTagger tagger;
        const features::ExtractOptions opts{cfg.fold_plurals};
        std::vector<features::DocumentFeatures> docs;
        for (const auto& d : input.documents)
            docs.push_back(features::extract_features(tagger.tag(d.tokens), d.doc_id, opts));

        CorpusSummary s;
        s.input_kind = "pretagged";
        s.source = cfg.input.filename().string();
        s.records = input.documents.size();
        s.rejects = input.rejects.size();
        s.analyzed_type = "pretagged";
        s.analyzed_records = input.documents.size();
        if (!input.rejects.empty()) {
            warnings.push_back(std::to_string(input.rejects.size()) + " documents rejected, see " +
                               cfg.input.string() + ".rejects.jsonl");
        }
        write_rejects(cfg.input, input.rejects);
        write_file(artifact(cfg, "corpus_summary.json"), dump(to_json(s)));

        Extraction ex = count(cfg, std::move(docs));
        persist_extraction(cfg, ex);
        return std::pair{std::move(s), std::move(ex)};
    });
}

graph::FeatureGraph stage_graph(const PipelineConfig& cfg, const Extraction& ex, std::vector<std::string>& warnings) {
    return in_stage("graph", [&] {
        auto g = graph::build_graph(ex.pairs, ex.unigrams, {cfg.min_unigram, cfg.min_pair, cfg.keep_isolated});
        if (g.vertex_count() == 0) warnings.push_back("feature graph is empty");
        else if (g.vertex_count() < 3) warnings.push_back("feature graph has fewer than 3 vertices; tiers will be skipped");
        std::ostringstream v, e;
        graph::write_vertices_csv(v, g);
        graph::export_graph(e, g, graph::ExportFormat::csv);
        write_file(artifact(cfg, "vertices.csv"), v.str());
        write_file(artifact(cfg, "edges.csv"), e.str());
        return g;
    });
}

void write_exports(const PipelineConfig& cfg, const graph::FeatureGraph& g, const GraphAnalysis& a) {
    const graph::ExportAttributes attrs{&a.metrics, &a.communities.assignment};
    for (auto f : cfg.exports) {
        std::ostringstream out;
        graph::export_graph(out, g, f, attrs);
        write_file(artifact(cfg, "graph." + std::string(graph::to_string(f))), out.str());
    }
}

// ---------------------------------------------------------------------------
// Loaders

corpus::CorpusSnapshot load_corpus(const PipelineConfig& cfg) {
    const auto path = artifact(cfg, "corpus.jsonl");
    auto in = open_in(path);
    auto parsed = corpus::parse_records(in, corpus::Format::jsonl, cfg.input.filename().string());
    if (!parsed.rejects.empty())
        throw ConsistencyError(path.string() + " line " + std::to_string(parsed.rejects.front().line) + ": " +
                               parsed.rejects.front().reason);
    return std::move(parsed.corpus);
}

CorpusSummary load_summary(const PipelineConfig& cfg) {
    return corpus_summary_from_json(read_json(artifact(cfg, "corpus_summary.json")));
}

Extraction load_extraction(const PipelineConfig& cfg) {
    Extraction ex;
    ex.documents = read_documents(artifact(cfg, "documents.jsonl"));
    auto u = open_in(artifact(cfg, "unigrams.csv"));
    auto p = open_in(artifact(cfg, "pairs.csv"));
    ex.unigrams = features::read_unigrams_csv(u, ex.documents.size());
    ex.pairs = features::read_pairs_csv(p, ex.documents.size());
    return ex;
}

graph::FeatureGraph load_graph(const PipelineConfig& cfg) {
    auto v = open_in(artifact(cfg, "vertices.csv"));
    auto e = open_in(artifact(cfg, "edges.csv"));
    return graph::read_graph_csv(v, e);
}

// ---------------------------------------------------------------------------

void run_stage(Stage stage, const PipelineConfig& cfg, std::vector<std::string>& warnings) {
    validate(cfg);
    switch (stage) {
        case Stage::ingest:
            stage_ingest(cfg, warnings);
            in_stage("ingest", [&] { merge_config(cfg, kIngestKeys); });
            return;
        case Stage::extract: {
            if (cfg.tagger == TaggerKind::pretagged) {
                stage_extract_pretagged(cfg, warnings);
                auto owned = kExtractKeys;
                owned.insert(owned.end(), kIngestKeys.begin(), kIngestKeys.end());
                in_stage("extract", [&] { merge_config(cfg, owned); });
                return;
            }
            auto [corpus, type] = in_stage("extract", [&] {
                const auto summary = load_summary(cfg);
                auto t = corpus::parse_issue_type(summary.analyzed_type);
                if (!t) throw ConsistencyError("corpus summary names unknown type '" + summary.analyzed_type + "'");
                return std::pair{load_corpus(cfg), *t};
            });
            PipelineConfig c = cfg;
            c.analyzed_type = type;
            stage_extract(c, corpus, warnings);
            in_stage("extract", [&] { merge_config(cfg, kExtractKeys); });
            return;
        }
        case Stage::graph: {
            const auto ex = in_stage("graph", [&] { return load_extraction(cfg); });
            stage_graph(cfg, ex, warnings);
            in_stage("graph", [&] { merge_config(cfg, kGraphKeys); });
            return;
        }
        case Stage::metrics:
        case Stage::tiers:
        case Stage::communities:
        case Stage::stats: {
            in_stage(to_string(stage), [&] {
                const auto g = load_graph(cfg);
                GraphAnalysis a;
                if (stage == Stage::metrics) {
                    a.metrics = graph::compute_metrics(g);
                    write_metrics_csv(artifact(cfg, "metrics.csv"), g, a.metrics);
                    return;
                }
                a = analyze_graph(g);
                if (stage == Stage::tiers) write_file(artifact(cfg, "tiers.json"), dump(tiers_section(g, a, cfg.top_k)));
                if (stage == Stage::communities) write_file(artifact(cfg, "communities.json"), dump(communities_section(g, a)));
                if (stage == Stage::stats) write_file(artifact(cfg, "stats.json"), dump(tests_section(a)));
                for (const auto& n : a.notes) {
                    if (n.starts_with("tier partition")) warnings.push_back(n);
                }
            });
            return;
        }
        case Stage::report:
            report_from_intermediates(cfg, warnings);
            return;
    }
}

Json run_pipeline(const PipelineConfig& cfg, std::vector<std::string>& warnings) {
    validate(cfg);
    CorpusSummary summary;
    Extraction ex;
    if (cfg.tagger == TaggerKind::pretagged) {
        std::tie(summary, ex) = stage_extract_pretagged(cfg, warnings);
    } else {
        auto ingest = stage_ingest(cfg, warnings);
        summary = std::move(ingest.summary);
        if (summary.records == 0) warnings.push_back("input contains no records");
        ex = stage_extract(cfg, ingest.corpus, warnings);
    }
    const auto g = stage_graph(cfg, ex, warnings);
    const auto a = in_stage("metrics", [&] { return analyze_graph(g); });
    return in_stage("report", [&] {
        persist_analysis(cfg, g, a);
        const Json config = config_section(cfg);
        write_file(artifact(cfg, "config.json"), dump(config));
        Json report = build_report(config, summary, ex, g, a, cfg.top_k);
        finish_report(cfg, report, g, a);
        return report;
    });
}

Json report_from_intermediates(const PipelineConfig& cfg, std::vector<std::string>& warnings) {
    validate(cfg);
    return in_stage("report", [&] {
        const auto summary = load_summary(cfg);
        const auto ex = load_extraction(cfg);
        const auto g = load_graph(cfg);
        const auto a = analyze_graph(g);
        check_metrics_csv(artifact(cfg, "metrics.csv"), g, a.metrics);
        const Json config = merge_config(cfg, kReportKeys);
        Json report = build_report(config, summary, ex, g, a, cfg.top_k);
        for (const auto& w : report["warnings"]) warnings.push_back(w.get<std::string>());
        finish_report(cfg, report, g, a);
        return report;
    });
}

}  // namespace reqnet::pipeline
