#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "reqnet/error.hpp"
#include "reqnet/format.hpp"
#include "reqnet/pipeline.hpp"
#include "reqnet/version.hpp"

namespace reqnet::pipeline {

namespace {

constexpr std::array<std::string_view, 3> kMetricNames = {"degree", "closeness", "clustering"};
constexpr std::size_t kCommunityExamples = 5;
constexpr std::size_t kTopUnigrams = 10;

Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    const double r = round_significant(v);
    return r == 0.0 ? 0.0 : r;
}

std::vector<double> metric_values(const graph::VertexMetrics& m, std::size_t which) {
    if (which == 0) return {m.degree.begin(), m.degree.end()};
    return which == 1 ? m.closeness : m.clustering;
}

Json descriptive_json(std::span<const double> values) {
    Json j;
    if (values.empty()) {
        j["n"] = 0;
        j["mean"] = 0.0;
        j["median"] = 0.0;
        j["sd"] = 0.0;
        return j;
    }
    const auto d = stats::descriptive(values);
    j["n"] = d.n;
    j["mean"] = num(d.mean);
    j["median"] = num(d.median);
    j["sd"] = num(d.std_dev);
    return j;
}

Json skipped(std::string_view status, std::string_view reason) {
    Json j;
    j["status"] = status;
    j["reason"] = reason;
    return j;
}

std::vector<double> row_values(const std::vector<TierRow>& rows) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.value);
    return v;
}

Json tier_tests(const TierAssignment& tiers) {
    Json out;
    Json sw;
    for (Tier t : kTiers) {
        const auto v = row_values(tiers.tier(t));
        try {
            sw[std::string(to_string(t))] = test_result_json(stats::shapiro_wilk(v));
        } catch (const DegenerateSampleError& e) {
            sw[std::string(to_string(t))] = skipped("degenerate", e.what());
        } catch (const DomainError& e) {
            sw[std::string(to_string(t))] = skipped("not_applicable", e.what());
        }
    }
    out["shapiro_wilk"] = std::move(sw);

    std::vector<stats::Sample> groups;
    for (Tier t : kTiers) groups.push_back({row_values(tiers.tier(t)), std::string(to_string(t))});
    try {
        out["kruskal_wallis"] = test_result_json(stats::kruskal_wallis(groups));
    } catch (const DomainError& e) {
        out["kruskal_wallis"] = skipped("not_applicable", e.what());
    }

    Json mw;
    constexpr std::array<std::pair<Tier, Tier>, 3> kPairs = {
        std::pair{Tier::high, Tier::medium}, std::pair{Tier::high, Tier::low}, std::pair{Tier::medium, Tier::low}};
    for (auto [a, b] : kPairs) {
        const std::string key = std::string(to_string(a)) + "_vs_" + std::string(to_string(b));
        try {
            mw[key] = test_result_json(
                stats::mann_whitney(groups[static_cast<std::size_t>(a)].values, groups[static_cast<std::size_t>(b)].values));
        } catch (const DomainError& e) {
            mw[key] = skipped("not_applicable", e.what());
        }
    }
    out["mann_whitney"] = std::move(mw);
    return out;
}

Json rows_json(std::span<const TierRow> rows) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(Json{{"vertex", r.vertex}, {"value", num(r.value)}});
    return arr;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string json_number_text(const Json& j) {
    if (j.is_null()) return "-";
    if (j.is_number_integer() || j.is_number_unsigned()) return std::to_string(j.get<long long>());
    return format_real(j.get<double>(), 6);
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

GraphAnalysis analyze_graph(const graph::FeatureGraph& g) {
    GraphAnalysis a;
    a.metrics = graph::compute_metrics(g);
    a.communities = graph::detect_communities_cnm(g);
    if (g.vertex_count() < 3) {
        a.notes.push_back("tier partition and tests skipped: graph has " + std::to_string(g.vertex_count()) +
                          " vertices, at least 3 are needed");
        return a;
    }
    std::array<MetricAnalysis, 3> by_metric;
    for (std::size_t m = 0; m < 3; ++m) {
        const auto values = metric_values(a.metrics, m);
        by_metric[m].tiers = tertile_partition(std::string(kMetricNames[m]), g.labels(), values);
        by_metric[m].tests = tier_tests(by_metric[m].tiers);
    }
    a.by_metric = std::move(by_metric);
    a.notes.push_back("tests use every graph vertex, split by tier");
    return a;
}

Json test_result_json(const stats::TestResult& r) {
    Json j;
    j["status"] = "ok";
    j["statistic_name"] = r.statistic_name;
    j["statistic"] = num(r.statistic);
    j["p_value"] = num(r.p_value);
    Json extras = Json::object();
    for (const auto& [k, v] : r.extras) extras[k] = num(v);
    j["extras"] = std::move(extras);
    if (!r.mean_ranks.empty()) {
        Json ranks;
        for (std::size_t i = 0; i < r.mean_ranks.size() && i < kTiers.size(); ++i)
            ranks[std::string(to_string(kTiers[i]))] = num(r.mean_ranks[i]);
        j["mean_ranks"] = std::move(ranks);
    }
    return j;
}

Json config_section(const PipelineConfig& cfg) {
    Json j;
    j["input"] = cfg.input.filename().string();
    j["format"] = cfg.format == corpus::Format::csv ? "csv" : "jsonl";
    j["tagger"] = cfg.tagger == TaggerKind::builtin ? "builtin" : "pretagged";
    j["stopwords"] = cfg.stopwords ? cfg.stopwords->filename().string() : std::string("builtin");
    j["fold_plurals"] = cfg.fold_plurals;
    j["analyzed_type"] = corpus::to_string(cfg.analyzed_type);
    j["schedule"] = cfg.schedule == "android-preset"
                        ? cfg.schedule
                        : std::filesystem::path(cfg.schedule).filename().string();
    j["min_unigram"] = cfg.min_unigram;
    j["min_pair"] = cfg.min_pair;
    j["keep_isolated"] = cfg.keep_isolated;
    j["top_k"] = cfg.top_k;
    Json ex = Json::array();
    for (auto f : cfg.exports) ex.push_back(graph::to_string(f));
    j["exports"] = std::move(ex);
    return j;
}

Json corpus_section(const CorpusSummary& s) { return to_json(s); }

Json vocabulary_section(const Extraction& ex) {
    Json j;
    std::size_t with_features = 0;
    for (const auto& d : ex.documents) with_features += !d.features.empty();
    j["documents"] = ex.documents.size();
    j["documents_with_features"] = with_features;
    j["unique_features"] = ex.unigrams.counts.size();
    j["unique_pairs"] = ex.pairs.counts.size();

    std::vector<std::pair<std::string, std::size_t>> top(ex.unigrams.counts.begin(), ex.unigrams.counts.end());
    std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (top.size() > kTopUnigrams) top.resize(kTopUnigrams);
    Json arr = Json::array();
    for (const auto& [f, c] : top) arr.push_back(Json{{"feature", f}, {"documents", c}});
    j["top_features"] = std::move(arr);
    return j;
}

Json graph_section(const graph::FeatureGraph& g, const GraphAnalysis& a) {
    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    std::size_t total_weight = 0;
    for (const auto& e : g.edges()) total_weight += e.weight;
    j["total_weight"] = total_weight;
    std::set<std::size_t> comps(a.metrics.component.begin(), a.metrics.component.end());
    j["components"] = comps.size();
    std::size_t isolated = 0;
    for (auto d : a.metrics.degree) isolated += d == 0;
    j["isolated_vertices"] = isolated;
    const double n = static_cast<double>(g.vertex_count());
    j["density"] = n > 1 ? num(2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0))) : Json(0.0);
    Json metrics;
    for (std::size_t m = 0; m < 3; ++m) metrics[std::string(kMetricNames[m])] = descriptive_json(metric_values(a.metrics, m));
    j["metrics"] = std::move(metrics);
    return j;
}

Json tiers_section(const graph::FeatureGraph& g, const GraphAnalysis& a, std::size_t k) {
    if (!a.by_metric) {
        return skipped("skipped", "graph has " + std::to_string(g.vertex_count()) + " vertices, at least 3 are needed");
    }
    Json j;
    j["status"] = "ok";
    j["population"] = "all graph vertices";
    j["top_k"] = k;
    for (std::size_t m = 0; m < 3; ++m) {
        const auto& tiers = (*a.by_metric)[m].tiers;
        Json mj;
        Json sizes = Json::array();
        for (Tier t : kTiers) sizes.push_back(tiers.tier(t).size());
        mj["sizes"] = std::move(sizes);
        Json summary, top, members;
        for (Tier t : kTiers) {
            const std::string name(to_string(t));
            summary[name] = descriptive_json(row_values(tiers.tier(t)));
            top[name] = rows_json(top_k(tiers.tier(t), k));
            members[name] = rows_json(tiers.tier(t));
        }
        mj["summary"] = std::move(summary);
        mj["top"] = std::move(top);
        mj["members"] = std::move(members);
        j[std::string(kMetricNames[m])] = std::move(mj);
    }
    return j;
}

Json tests_section(const GraphAnalysis& a) {
    if (!a.by_metric) return skipped("skipped", "no tiers to compare");
    Json j;
    j["status"] = "ok";
    for (std::size_t m = 0; m < 3; ++m) j[std::string(kMetricNames[m])] = (*a.by_metric)[m].tests;
    return j;
}

Json communities_section(const graph::FeatureGraph& g, const GraphAnalysis& a) {
    const auto& p = a.communities;
    Json j;
    j["algorithm"] = "cnm";
    j["count"] = p.community_count;
    j["modularity"] = num(p.modularity);
    j["initial_modularity"] = num(p.initial_q);
    j["cut_step"] = p.cut_step;

    std::vector<std::vector<graph::VertexId>> members(p.community_count);
    for (graph::VertexId v = 0; v < p.assignment.size(); ++v) members[p.assignment[v]].push_back(v);
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return members[x].size() > members[y].size(); });

    Json table = Json::array();
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        auto vs = members[order[rank]];
        std::stable_sort(vs.begin(), vs.end(),
                         [&](graph::VertexId x, graph::VertexId y) { return g.degree(x) > g.degree(y); });
        Json row;
        row["rank"] = rank + 1;
        row["community"] = order[rank];
        row["size"] = vs.size();
        Json examples = Json::array();
        for (std::size_t i = 0; i < vs.size() && i < kCommunityExamples; ++i) examples.push_back(g.label(vs[i]));
        row["examples"] = std::move(examples);
        Json all = Json::array();
        for (auto v : members[order[rank]]) all.push_back(g.label(v));
        row["members"] = std::move(all);
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);

    Json dendro = Json::array();
    for (const auto& s : p.dendrogram) {
        dendro.push_back(Json{{"step", s.step},
                              {"kept", s.kept},
                              {"merged", s.merged},
                              {"delta_q", num(s.delta_q)},
                              {"q_after", num(s.q_after)}});
    }
    j["dendrogram"] = std::move(dendro);
    return j;
}

std::vector<std::string> derive_warnings(const CorpusSummary& s, const Extraction& ex, const graph::FeatureGraph& g) {
    std::vector<std::string> w;
    if (s.rejects > 0) w.push_back(std::to_string(s.rejects) + " input records rejected");
    if (s.records == 0) w.push_back("input contains no records");
    else if (s.analyzed_records == 0) w.push_back("no " + s.analyzed_type + " records to analyze");
    if (s.sentinels.total() > 0)
        w.push_back(std::to_string(s.sentinels.total()) + " analyzed records fall outside the release schedule");
    if (!ex.documents.empty() && ex.unigrams.counts.empty()) w.push_back("no noun features were extracted");
    if (g.vertex_count() == 0) w.push_back("feature graph is empty");
    return w;
}

void check_consistency(const Extraction& ex, const graph::FeatureGraph& g, const GraphAnalysis& a) {
    const std::size_t n = g.vertex_count();
    if (a.metrics.degree.size() != n || a.metrics.closeness.size() != n || a.metrics.clustering.size() != n ||
        a.communities.assignment.size() != n)
        throw ConsistencyError("metric vectors do not cover the graph's vertex set");
    if (ex.unigrams.n_docs != ex.documents.size() || ex.pairs.n_docs != ex.documents.size())
        throw ConsistencyError("count tables were built from a different document set");
    for (const auto& label : g.labels()) {
        if (!ex.unigrams.counts.contains(label))
            throw ConsistencyError("graph vertex '" + label + "' is missing from the unigram counts");
    }
    for (const auto& e : g.edges()) {
        if (ex.pairs.count(g.label(e.u), g.label(e.v)) != e.weight)
            throw ConsistencyError("edge " + g.label(e.u) + "--" + g.label(e.v) + " disagrees with the pair counts");
    }
    if (a.by_metric) {
        for (const auto& m : *a.by_metric) {
            std::size_t total = 0;
            for (const auto& t : m.tiers.tiers) total += t.size();
            if (total != n) throw ConsistencyError("tiers for " + m.tiers.metric + " do not partition the vertices");
        }
    }
}

Json build_report(const Json& config, const CorpusSummary& summary, const Extraction& ex,
                  const graph::FeatureGraph& g, const GraphAnalysis& a, std::size_t k) {
    check_consistency(ex, g, a);
    Json r;
    r["schema_version"] = kReportSchemaVersion;
    r["tool_version"] = kToolVersion;
    r["config"] = config;
    r["corpus"] = corpus_section(summary);
    r["vocabulary"] = vocabulary_section(ex);
    r["graph"] = graph_section(g, a);
    r["tiers"] = tiers_section(g, a, k);
    r["tests"] = tests_section(a);
    r["communities"] = communities_section(g, a);
    r["notes"] = a.notes;
    r["warnings"] = derive_warnings(summary, ex, g);
    return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Text rendering

std::string render_text(const Json& r) {
    std::string out;
    auto line = [&](const std::string& s) { out += s + "\n"; };

    line(fmt("Feature request network report (tool %s, schema %d)",
             r["tool_version"].get<std::string>().c_str(), r["schema_version"].get<int>()));
    const auto& cfg = r["config"];
    line(fmt("Input %s (%s, %s tagger), thresholds unigram>=%zu pair>=%zu",
             cfg["input"].get<std::string>().c_str(), cfg["format"].get<std::string>().c_str(),
             cfg["tagger"].get<std::string>().c_str(), cfg["min_unigram"].get<std::size_t>(),
             cfg["min_pair"].get<std::size_t>()));
    line("");

    const auto& c = r["corpus"];
    line("Corpus");
    line(fmt("  records %zu, rejected %zu, analyzed %zu (%s)", c["records"].get<std::size_t>(),
             c["rejects"].get<std::size_t>(), c["analyzed_records"].get<std::size_t>(),
             c["analyzed_type"].get<std::string>().c_str()));
    if (!c["by_type"].is_null()) {
        line(fmt("  defect %zu, enhancement %zu, other %zu", c["by_type"]["defect"].get<std::size_t>(),
                 c["by_type"]["enhancement"].get<std::size_t>(), c["by_type"]["other"].get<std::size_t>()));
    }
    if (!c["releases"].empty()) {
        line("");
        line("  " + pad("Release", 32) + "Last release    Days  Requests  Mean/day");
        for (const auto& rel : c["releases"]) {
            line(fmt("  %-30s  %-12s  %6lld  %8zu  %8.4f", rel["name"].get<std::string>().c_str(),
                     rel["end_date"].get<std::string>().c_str(), rel["days"].get<long long>(),
                     rel["total_requests"].get<std::size_t>(), rel["mean_per_day"].get<double>()));
        }
        const auto& s = c["sentinels"];
        line(fmt("  outside schedule: before %zu, between %zu, after %zu", s["before_first"].get<std::size_t>(),
                 s["between_windows"].get<std::size_t>(), s["after_last"].get<std::size_t>()));
    }
    line("");

    const auto& v = r["vocabulary"];
    line(fmt("Vocabulary: %zu documents (%zu with features), %zu features, %zu pairs",
             v["documents"].get<std::size_t>(), v["documents_with_features"].get<std::size_t>(),
             v["unique_features"].get<std::size_t>(), v["unique_pairs"].get<std::size_t>()));
    const auto& g = r["graph"];
    line(fmt("Graph: %zu vertices, %zu edges, %zu components", g["vertices"].get<std::size_t>(),
             g["edges"].get<std::size_t>(), g["components"].get<std::size_t>()));
    for (const auto& [name, d] : g["metrics"].items()) {
        line(fmt("  %-10s  mean %-10s median %-10s sd %s", name.c_str(), json_number_text(d["mean"]).c_str(),
                 json_number_text(d["median"]).c_str(), json_number_text(d["sd"]).c_str()));
    }
    line("");

    const auto& tiers = r["tiers"];
    if (tiers["status"] == "ok") {
        for (std::string_view metric : kMetricNames) {
            const auto& m = tiers[std::string(metric)];
            line(fmt("Top %zu vertices by %s (tier sizes %zu/%zu/%zu)", tiers["top_k"].get<std::size_t>(),
                     std::string(metric).c_str(), m["sizes"][0].get<std::size_t>(),
                     m["sizes"][1].get<std::size_t>(), m["sizes"][2].get<std::size_t>()));
            line("  " + pad("High", 26) + pad("Medium", 26) + "Low");
            std::size_t rows = 0;
            for (Tier t : kTiers) rows = std::max(rows, m["top"][std::string(to_string(t))].size());
            for (std::size_t i = 0; i < rows; ++i) {
                std::string row = "  ";
                for (Tier t : kTiers) {
                    const auto& col = m["top"][std::string(to_string(t))];
                    std::string cell;
                    if (i < col.size())
                        cell = pad(col[i]["vertex"].get<std::string>(), 16) + json_number_text(col[i]["value"]);
                    row += t == Tier::low ? cell : pad(cell, 26);
                }
                while (!row.empty() && row.back() == ' ') row.pop_back();
                line(row);
            }

            const auto& tests = r["tests"][std::string(metric)];
            std::string sw = "  Shapiro-Wilk p:";
            for (Tier t : kTiers) {
                const auto& res = tests["shapiro_wilk"][std::string(to_string(t))];
                sw += " " + std::string(to_string(t)) + "=" +
                      (res["status"] == "ok" ? json_number_text(res["p_value"]) : res["status"].get<std::string>());
            }
            line(sw);
            const auto& kw = tests["kruskal_wallis"];
            if (kw["status"] == "ok") {
                line(fmt("  Kruskal-Wallis H=%s p=%s, mean ranks %s/%s/%s", json_number_text(kw["statistic"]).c_str(),
                         json_number_text(kw["p_value"]).c_str(), json_number_text(kw["mean_ranks"]["high"]).c_str(),
                         json_number_text(kw["mean_ranks"]["medium"]).c_str(),
                         json_number_text(kw["mean_ranks"]["low"]).c_str()));
            } else {
                line("  Kruskal-Wallis: " + kw["reason"].get<std::string>());
            }
            std::string mw = "  Mann-Whitney p:";
            for (const auto& [pair, res] : tests["mann_whitney"].items()) {
                mw += " " + pair + "=" +
                      (res["status"] == "ok" ? json_number_text(res["p_value"]) : res["status"].get<std::string>());
            }
            line(mw);
            line("");
        }
    } else {
        line("Tiers skipped: " + tiers["reason"].get<std::string>());
        line("");
    }

    const auto& com = r["communities"];
    line(fmt("Communities: %zu, modularity %s", com["count"].get<std::size_t>(),
             json_number_text(com["modularity"]).c_str()));
    line("  Rank  Size  Examples");
    for (const auto& row : com["table"]) {
        std::string ex;
        for (const auto& e : row["examples"]) ex += (ex.empty() ? "" : ", ") + e.get<std::string>();
        line(fmt("  %4zu  %4zu  %s", row["rank"].get<std::size_t>(), row["size"].get<std::size_t>(), ex.c_str()));
    }

    if (!r["notes"].empty() || !r["warnings"].empty()) line("");
    for (const auto& n : r["notes"]) line("Note: " + n.get<std::string>());
    for (const auto& w : r["warnings"]) line("Warning: " + w.get<std::string>());
    return out;
}

}  // namespace reqnet::pipeline
