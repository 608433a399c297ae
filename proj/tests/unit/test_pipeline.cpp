#include <fstream>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "reqnet/error.hpp"
#include "reqnet/pipeline.hpp"

using namespace reqnet;
using namespace reqnet::pipeline;

namespace {

const std::filesystem::path kSample = REQNET_SOURCE_DIR "/data/sample/requests.csv";
const std::filesystem::path kGolden = REQNET_GOLDEN_DIR "/sample_report.json";

std::vector<std::string> labels_for(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(fixture::vertex_name(i));
    return l;
}

PipelineConfig sample_config(const std::filesystem::path& out) {
    PipelineConfig cfg;
    cfg.input = kSample;
    cfg.out_dir = out;
    return cfg;
}

std::filesystem::path write_input(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
    const auto p = dir / name;
    write_file(p, text);
    return p;
}

}  // namespace

TEST_SUITE("tiers") {
    TEST_CASE("sizes put the remainder on the earlier tiers") {
        for (auto [n, h, m, l] : std::vector<std::array<std::size_t, 4>>{
                 {218, 73, 73, 72}, {9, 3, 3, 3}, {10, 4, 3, 3}, {11, 4, 4, 3}, {3, 1, 1, 1}}) {
            const auto labels = labels_for(n);
            const std::vector<double> values(n, 1.0);
            const auto t = tertile_partition("degree", labels, values);
            CHECK(t.tier(Tier::high).size() == h);
            CHECK(t.tier(Tier::medium).size() == m);
            CHECK(t.tier(Tier::low).size() == l);
        }
    }

    TEST_CASE("sorted by value descending with label ties ascending") {
        const std::vector<std::string> labels = {"e", "b", "d", "a", "c", "f"};
        const std::vector<double> values = {1, 5, 3, 5, 3, 0};
        const auto t = tertile_partition("x", labels, values);
        CHECK(t.tier(Tier::high) == std::vector<TierRow>{{"a", 5}, {"b", 5}});
        CHECK(t.tier(Tier::medium) == std::vector<TierRow>{{"c", 3}, {"d", 3}});
        CHECK(t.tier(Tier::low) == std::vector<TierRow>{{"e", 1}, {"f", 0}});
    }

    TEST_CASE("partition property for 3..300 vertices") {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<int> v(0, 20);
        for (std::size_t n = 3; n <= 300; ++n) {
            const auto labels = labels_for(n);
            std::vector<double> values(n);
            for (auto& x : values) x = v(rng);
            const auto t = tertile_partition("m", labels, values);
            const auto h = t.tier(Tier::high).size(), m = t.tier(Tier::medium).size(), l = t.tier(Tier::low).size();
            CHECK(h + m + l == n);
            CHECK(h >= m);
            CHECK(m >= l);
            CHECK(h - l <= 1);
            std::set<std::string> seen;
            double prev = 1e300;
            for (const auto& tier : t.tiers)
                for (const auto& row : tier) {
                    CHECK(seen.insert(row.vertex).second);
                    CHECK(row.value <= prev);
                    prev = row.value;
                }
            CHECK(seen.size() == n);
        }
    }

    TEST_CASE("fewer than three vertices") {
        const auto labels = labels_for(2);
        CHECK_THROWS_AS(tertile_partition("m", labels, std::vector<double>{1, 2}), DomainError);
        CHECK_THROWS_AS(tertile_partition("m", labels, std::vector<double>{1}), ConsistencyError);
    }

    TEST_CASE("top k truncates") {
        std::vector<TierRow> rows;
        for (int i = 0; i < 73; ++i) rows.push_back({fixture::vertex_name(static_cast<std::size_t>(i)), 1.0});
        CHECK(top_k(rows, 10).size() == 10);
        CHECK(top_k(std::span(rows).first(4), 10).size() == 4);
        CHECK(top_k(rows, 10).front() == rows.front());
        CHECK_THROWS_AS(top_k(rows, 0), UsageError);
    }

    TEST_CASE("friendship fixture degree tiers report three mean ranks") {
        const auto g = fixture::friends();
        const auto a = analyze_graph(g);
        REQUIRE(a.by_metric);
        const auto& kw = (*a.by_metric)[0].tests["kruskal_wallis"];
        CHECK(kw["status"] == "ok");
        CHECK(kw["mean_ranks"].size() == 3);
        CHECK(kw["mean_ranks"]["high"].get<double>() > kw["mean_ranks"]["low"].get<double>());
    }
}

TEST_SUITE("pipeline") {
    TEST_CASE("sample corpus reproduces the golden report") {
        fixture::TempDir dir("golden");
        std::vector<std::string> warnings;
        run_pipeline(sample_config(dir.path()), warnings);
        CHECK(read_file(dir.path() / "report.json") == read_file(kGolden));
        CHECK(warnings.empty());
    }

    TEST_CASE("staged subcommands reproduce the one-shot run") {
        fixture::TempDir one("one"), staged("staged");
        auto cfg = sample_config(one.path());
        cfg.exports = {graph::ExportFormat::graphml, graph::ExportFormat::dot};
        std::vector<std::string> w;
        run_pipeline(cfg, w);
        cfg.out_dir = staged.path();
        for (auto s : {Stage::ingest, Stage::extract, Stage::graph, Stage::metrics, Stage::tiers, Stage::communities,
                       Stage::stats, Stage::report})
            run_stage(s, cfg, w);
        for (const char* f : {"report.json", "report.txt", "metrics.csv", "tiers.json", "stats.json",
                              "communities.json", "pairs.csv", "unigrams.csv", "graph.graphml", "graph.dot"}) {
            CAPTURE(f);
            CHECK(read_file(one.path() / f) == read_file(staged.path() / f));
        }
    }

    TEST_CASE("graph rebuilt from the pairs CSV equals the original") {
        fixture::TempDir dir("rebuild");
        const auto cfg = sample_config(dir.path());
        std::vector<std::string> w;
        run_pipeline(cfg, w);
        const auto ex = load_extraction(cfg);
        const auto g = graph::build_graph(ex.pairs, ex.unigrams, {cfg.min_unigram, cfg.min_pair, cfg.keep_isolated});
        CHECK(g == load_graph(cfg));
    }

    TEST_CASE("report invariants on the sample") {
        fixture::TempDir dir("invariants");
        std::vector<std::string> w;
        const auto r = run_pipeline(sample_config(dir.path()), w);
        CHECK(r["corpus"]["analyzed_records"] == 30);
        const std::size_t n = r["graph"]["vertices"];
        for (const char* metric : {"degree", "closeness", "clustering"}) {
            const auto& m = r["tiers"][metric];
            std::map<std::string, std::string> tier_of;
            std::size_t total = 0;
            for (const char* t : {"high", "medium", "low"}) {
                total += m["members"][t].size();
                for (const auto& row : m["members"][t]) CHECK(tier_of.emplace(row["vertex"], t).second);
            }
            CHECK(total == n);
            for (const char* t : {"high", "medium", "low"}) {
                CHECK(m["top"][t].size() <= 10);
                for (const auto& row : m["top"][t]) CHECK(tier_of.at(row["vertex"]) == t);
            }
        }
        std::size_t members = 0;
        for (const auto& row : r["communities"]["table"]) members += row["size"].get<std::size_t>();
        CHECK(members == n);
    }

    TEST_CASE("empty corpus gives a zeroed report and a warning") {
        fixture::TempDir dir("empty");
        auto cfg = sample_config(dir.path() / "out");
        cfg.input = write_input(dir.path(), "empty.csv", "issue_id,type,summary,open_date\n");
        std::vector<std::string> w;
        const auto r = run_pipeline(cfg, w);
        CHECK(r["corpus"]["records"] == 0);
        CHECK(r["graph"]["vertices"] == 0);
        CHECK(r["graph"]["metrics"]["degree"]["mean"] == 0.0);
        CHECK(r["tiers"]["status"] == "skipped");
        CHECK(r["tests"]["status"] == "skipped");
        CHECK(r["communities"]["count"] == 0);
        CHECK_FALSE(r["warnings"].empty());
        CHECK_FALSE(w.empty());
    }

    TEST_CASE("tiny graph skips tiers and says so") {
        fixture::TempDir dir("tiny");
        auto cfg = sample_config(dir.path() / "out");
        cfg.input = write_input(dir.path(), "one.csv", "issue_id,type,summary,open_date\n1,enhancement,GPS screen,2010-01-01\n");
        std::vector<std::string> w;
        const auto r = run_pipeline(cfg, w);
        CHECK(r["graph"]["vertices"] == 2);
        CHECK(r["tiers"]["status"] == "skipped");
        CHECK(r["notes"][0].get<std::string>().find("skipped") != std::string::npos);
        CHECK(r["communities"]["table"].size() == 1);
    }

    TEST_CASE("rejects land next to the input") {
        fixture::TempDir dir("rejects");
        auto cfg = sample_config(dir.path() / "out");
        cfg.input = write_input(dir.path(), "in.csv",
                                "issue_id,type,summary,open_date\n1,enhancement,GPS map,2010-01-01\n2,bogus,x,2010-01-01\n");
        std::vector<std::string> w;
        const auto r = run_pipeline(cfg, w);
        CHECK(r["corpus"]["rejects"] == 1);
        CHECK(std::filesystem::exists(dir.path() / "in.csv.rejects.jsonl"));
    }

    TEST_CASE("pretagged input bypasses ingestion") {
        fixture::TempDir dir("pretagged");
        auto cfg = sample_config(dir.path() / "out");
        cfg.tagger = TaggerKind::pretagged;
        cfg.input = write_input(dir.path(), "tagged.txt",
                                "#doc 1\nsearch_NN the_DT map_NN\n#doc 2\nadd_VB map_NN search_NN results_NNS\n"
                                "#doc 3\nsms_NN backup_NN\n#doc 4\nbroken\n");
        std::vector<std::string> w;
        const auto r = run_pipeline(cfg, w);
        CHECK(r["corpus"]["input_kind"] == "pretagged");
        CHECK(r["corpus"]["rejects"] == 1);
        CHECK(r["vocabulary"]["documents"] == 3);
        const auto ex = load_extraction(cfg);
        CHECK(ex.pairs.count("map", "search") == 2);
        CHECK_THROWS_AS(run_stage(Stage::ingest, cfg, w), UsageError);
    }

    TEST_CASE("tampered intermediates are a consistency error") {
        fixture::TempDir dir("tamper");
        const auto cfg = sample_config(dir.path());
        std::vector<std::string> w;
        run_pipeline(cfg, w);
        auto pairs = read_file(dir.path() / "pairs.csv");
        const auto header_end = pairs.find('\n') + 1;
        const auto line_end = pairs.find('\n', header_end);
        pairs.erase(header_end, line_end - header_end + 1);
        write_file(dir.path() / "pairs.csv", pairs);
        CHECK_THROWS_AS(report_from_intermediates(cfg, w), ConsistencyError);
    }

    TEST_CASE("stale metrics are a consistency error") {
        fixture::TempDir dir("stale");
        const auto cfg = sample_config(dir.path());
        std::vector<std::string> w;
        run_pipeline(cfg, w);
        auto m = read_file(dir.path() / "metrics.csv");
        const auto pos = m.find('\n') + 1;
        m.insert(pos, "zzz,1,0.5,0,0\n");
        write_file(dir.path() / "metrics.csv", m);
        CHECK_THROWS_AS(report_from_intermediates(cfg, w), ConsistencyError);
    }

    TEST_CASE("errors are labeled with their stage") {
        fixture::TempDir dir("labels");
        auto cfg = sample_config(dir.path());
        cfg.input = dir.path() / "missing.csv";
        std::vector<std::string> w;
        try {
            run_pipeline(cfg, w);
            FAIL("expected an input error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).rfind("ingest: ", 0) == 0);
        }
        cfg = sample_config(dir.path());
        try {
            run_stage(Stage::graph, cfg, w);
            FAIL("expected an input error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).rfind("graph: ", 0) == 0);
        }
    }

    TEST_CASE("config validation") {
        PipelineConfig cfg;
        cfg.top_k = 0;
        CHECK_THROWS_AS(validate(cfg), UsageError);
        cfg = {};
        cfg.min_pair = 0;
        CHECK_THROWS_AS(validate(cfg), UsageError);
    }

    TEST_CASE("custom schedule file") {
        fixture::TempDir dir("schedule");
        auto cfg = sample_config(dir.path() / "out");
        cfg.schedule = write_input(dir.path(), "sched.csv", "name,start_date,end_date\nall,2007-01-01,2014-01-01\n").string();
        std::vector<std::string> w;
        const auto r = run_pipeline(cfg, w);
        REQUIRE(r["corpus"]["releases"].size() == 1);
        CHECK(r["corpus"]["releases"][0]["total_requests"] == 30);
        CHECK(r["config"]["schedule"] == "sched.csv");
    }
}
