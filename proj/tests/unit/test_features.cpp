#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "reqnet/error.hpp"
#include "reqnet/features.hpp"

using namespace reqnet;
using namespace reqnet::features;

namespace {

using Strings = std::vector<std::string>;

DocumentFeatures doc(std::string id, std::set<std::string> f) { return {std::move(id), std::move(f)}; }

std::set<std::string> nouns_of(const std::string& text) {
    const HeuristicTagger tagger;
    const auto tokens = tokenize(text);
    return extract_features(tagger.tag(tokens), "d").features;
}

std::vector<DocumentFeatures> random_docs(std::mt19937_64& rng, std::size_t n_docs, std::size_t vocab) {
    std::vector<DocumentFeatures> docs;
    std::uniform_int_distribution<std::size_t> pick(0, vocab - 1), size(0, 8);
    for (std::size_t i = 0; i < n_docs; ++i) {
        DocumentFeatures d{"doc" + std::to_string(i), {}};
        for (std::size_t k = size(rng); k > 0; --k) d.features.insert("f" + std::to_string(pick(rng)));
        docs.push_back(std::move(d));
    }
    return docs;
}

}  // namespace

TEST_SUITE("tokenize") {
    TEST_CASE("examples") {
        CHECK(tokenize("the Search feature freezes") == Strings{"the", "search", "feature", "freezes"});
        CHECK(tokenize("").empty());
        CHECK(tokenize("GPS v2 fix-it 99") == Strings{"gps", "v2", "fix-it"});
    }

    TEST_CASE("separators, short and numeric tokens") {
        CHECK(tokenize("a,b;mp3/wifi!! 2013 x_y") == Strings{"mp3", "wifi", "x_y"});
        CHECK(tokenize("I  O") .empty());
    }

    TEST_CASE("every token is a valid surface") {
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> ch(32, 126);
        for (int t = 0; t < 500; ++t) {
            std::string s;
            for (int i = 0; i < 40; ++i) s.push_back(static_cast<char>(ch(rng)));
            for (const auto& tok : tokenize(s)) {
                CHECK(is_valid_surface(tok));
                CHECK(tok.size() >= 2);
            }
        }
    }
}

TEST_SUITE("taggers") {
    TEST_CASE("builtin heuristic") {
        const HeuristicTagger t;
        const Strings in = {"search", "freezes"};
        const auto out = t.tag(in);
        REQUIRE(out.size() == 2);
        CHECK(out[0] == TaggedToken{"search", PosTag::nn});
        CHECK(out[1].tag == PosTag::other);
        CHECK(t.tag(Strings{}).empty());
    }

    TEST_CASE("builtin rules") {
        const HeuristicTagger t;
        CHECK(t.tag_one("the") == PosTag::other);
        CHECK(t.tag_one("crashing") == PosTag::other);
        CHECK(t.tag_one("slowly") == PosTag::other);
        CHECK(t.tag_one("setting") == PosTag::nn);
        CHECK(t.tag_one("contacts") == PosTag::nns);
        CHECK(t.tag_one("gps") == PosTag::nn);
        CHECK(t.tag_one("screen") == PosTag::nn);
    }

    TEST_CASE("custom stopwords override the builtin list") {
        auto lex = Lexicon::builtin();
        std::istringstream in("# comment\nScreen\n\n");
        lex.stopwords = read_wordlist(in);
        const HeuristicTagger t(lex);
        CHECK(t.tag_one("screen") == PosTag::other);
        CHECK(t.tag_one("the") == PosTag::nn);
    }

    TEST_CASE("pretagged passthrough") {
        const PretaggedTagger t;
        const auto out = t.tag(Strings{"gps_NN", "fails_VBZ"});
        REQUIRE(out.size() == 2);
        CHECK(out[0] == TaggedToken{"gps", PosTag::nn});
        CHECK(out[1] == TaggedToken{"fails", PosTag::other});
        CHECK(PretaggedTagger::parse_pair("fix_it_NNS") == TaggedToken{"fix_it", PosTag::nns});
        CHECK(PretaggedTagger::parse_pair("Android_NNP") == TaggedToken{"android", PosTag::nnp});
        CHECK_THROWS_AS(PretaggedTagger::parse_pair("gps"), TagFormatError);
        CHECK_THROWS_AS(PretaggedTagger::parse_pair("_NN"), TagFormatError);
        CHECK_THROWS_AS(PretaggedTagger::parse_pair("gps_"), TagFormatError);
    }

    TEST_CASE("pretagged reader rejects bad documents and keeps going") {
        std::istringstream in(
            "stray_NN\n"
            "#doc a\n"
            "gps_NN fails_VBZ\n"
            "map_NN\n"
            "#doc b\n"
            "broken\n"
            "#doc a\n"
            "dup_NN\n"
            "#doc c\n"
            "\n");
        const auto r = read_pretagged(in);
        REQUIRE(r.documents.size() == 2);
        CHECK(r.documents[0].doc_id == "a");
        CHECK(r.documents[0].tokens == Strings{"gps_NN", "fails_VBZ", "map_NN"});
        CHECK(r.documents[1].doc_id == "c");
        CHECK(r.documents[1].tokens.empty());
        CHECK(r.rejects.size() == 3);
    }
}

TEST_SUITE("extract_features") {
    TEST_CASE("dedup and noun filter") {
        const std::vector<TaggedToken> t = {{"search", PosTag::nn}, {"map", PosTag::nn}, {"search", PosTag::nn}};
        CHECK(extract_features(t, "1").features == std::set<std::string>{"search", "map"});
        const std::vector<TaggedToken> none = {{"run", PosTag::other}, {"fast", PosTag::other}};
        CHECK(extract_features(none, "2").features.empty());
    }

    TEST_CASE("twelve-token sentence against a hand tagging") {
        const std::string text = "Users want to share calendar events and contacts with the GPS map";
        REQUIRE(tokenize(text).size() == 12);
        CHECK(nouns_of(text) == std::set<std::string>{"users", "calendar", "events", "contacts", "gps", "map"});
    }

    TEST_CASE("re-tokenizing the extracted features is a fixed point") {
        for (const char* text : {"Users want to share calendar events and contacts with the GPS map",
                                 "Offline map cache for GPS navigation", "Battery usage per application in settings"}) {
            const auto f = nouns_of(text);
            std::string joined;
            for (const auto& w : f) joined += w + " ";
            CHECK(nouns_of(joined) == f);
        }
    }

    TEST_CASE("plural folding is opt-in") {
        const std::vector<TaggedToken> t = {{"contacts", PosTag::nns}, {"contact", PosTag::nn}, {"boxes", PosTag::nns}};
        CHECK(extract_features(t, "1").features.size() == 3);
        CHECK(extract_features(t, "1", {true}).features == std::set<std::string>{"contact", "box"});
        CHECK(singular_stem("batteries") == "battery");
        CHECK(singular_stem("gps") == "gps");
        CHECK(singular_stem("address") == "address");
    }
}

TEST_SUITE("counting") {
    TEST_CASE("a feature in 20 of 25 documents counts 20") {
        std::vector<DocumentFeatures> docs;
        for (int i = 0; i < 25; ++i) {
            std::set<std::string> f = {"screen"};
            if (i < 20) f.insert("sms");
            docs.push_back(doc(std::to_string(i), f));
        }
        const auto u = unigram_document_frequency(docs);
        CHECK(u.count("sms") == 20);
        CHECK(u.count("screen") == 25);
        CHECK(u.n_docs == 25);
        CHECK(u.counts.count("absent") == 0);
    }

    TEST_CASE("two documents mentioning search and map") {
        const HeuristicTagger tagger;
        std::vector<DocumentFeatures> docs;
        for (const char* text : {"Search results should appear on the map", "Add a map to the search screen"}) {
            const auto tokens = tokenize(text);
            docs.push_back(extract_features(tagger.tag(tokens), std::to_string(docs.size())));
        }
        const auto p = pair_document_frequency(docs);
        const auto u = unigram_document_frequency(docs);
        CHECK(p.count("search", "map") == 2);
        CHECK(p.count("map", "search") == 2);
        CHECK(u.count("search") == 2);
        CHECK(u.count("map") == 2);
    }

    TEST_CASE("single-feature documents contribute no pairs") {
        const std::vector<DocumentFeatures> docs = {doc("1", {"gps"}), doc("2", {})};
        CHECK(pair_document_frequency(docs).counts.empty());
    }

    TEST_CASE("duplicate document ids are refused") {
        const std::vector<DocumentFeatures> docs = {doc("1", {"a"}), doc("1", {"b"})};
        CHECK_THROWS_AS(unigram_document_frequency(docs), DomainError);
    }

    TEST_CASE("random corpora agree with brute-force scans") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const auto docs = random_docs(rng, trial % 2 ? 50 : 30, 25);
            const auto u = unigram_document_frequency(docs);
            const auto p = pair_document_frequency(docs);
            std::set<std::string> vocab;
            for (const auto& d : docs) vocab.insert(d.features.begin(), d.features.end());
            for (const auto& f : vocab) {
                std::size_t n = 0;
                for (const auto& d : docs) n += d.features.count(f);
                CHECK(u.count(f) == n);
            }
            std::size_t nonzero = 0;
            for (const auto& a : vocab)
                for (const auto& b : vocab) {
                    if (!(a < b)) continue;
                    std::size_t n = 0;
                    for (const auto& d : docs) n += d.features.count(a) && d.features.count(b);
                    CHECK(p.count(a, b) == n);
                    CHECK(p.count(a, b) <= std::min(u.count(a), u.count(b)));
                    nonzero += n > 0;
                }
            CHECK(p.counts.size() == nonzero);
            for (const auto& [key, c] : p.counts) {
                CHECK(key.first < key.second);
                CHECK(c >= 1);
            }
        }
    }

    TEST_CASE("threaded pair counting matches the single-threaded count") {
        std::mt19937_64 rng(23);
        const auto docs = random_docs(rng, 400, 60);
        const auto one = pair_document_frequency(docs, 1);
        for (unsigned t : {2u, 3u, 8u}) CHECK(pair_document_frequency(docs, t) == one);
    }

    TEST_CASE("count tables round-trip through CSV") {
        std::mt19937_64 rng(29);
        const auto docs = random_docs(rng, 60, 30);
        const auto u = unigram_document_frequency(docs);
        const auto p = pair_document_frequency(docs);
        std::stringstream us, ps;
        write_unigrams_csv(us, u);
        write_pairs_csv(ps, p);
        CHECK(us.str().rfind("feature,count\n", 0) == 0);
        CHECK(ps.str().rfind("feature_a,feature_b,count\n", 0) == 0);
        CHECK(read_unigrams_csv(us, u.n_docs) == u);
        CHECK(read_pairs_csv(ps, p.n_docs) == p);
    }

    TEST_CASE("malformed count CSV is an input error") {
        std::istringstream bad("feature,count\nsms,abc\n");
        CHECK_THROWS_AS(read_unigrams_csv(bad), InputError);
        std::istringstream self("feature_a,feature_b,count\nsms,sms,2\n");
        CHECK_THROWS_AS(read_pairs_csv(self), InputError);
    }
}

TEST_SUITE("pmi") {
    PairCounts pairs_of(std::size_t n, std::size_t ab) {
        PairCounts p;
        p.n_docs = n;
        p.counts[{"a", "b"}] = ab;
        return p;
    }
    UnigramCounts unigrams_of(std::size_t n, std::size_t a, std::size_t b) {
        UnigramCounts u;
        u.n_docs = n;
        u.counts = {{"a", a}, {"b", b}};
        return u;
    }

    TEST_CASE("direct formula") {
        CHECK(pmi_score(pairs_of(4, 2), unigrams_of(4, 2, 2)).at({"a", "b"}) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(pmi_score(pairs_of(4, 1), unigrams_of(4, 4, 4)).at({"a", "b"}) == doctest::Approx(-2.0).epsilon(1e-15));
    }

    TEST_CASE("independence gives zero") {
        // p(a,b) = 2/8 = (4/8)(4/8)
        CHECK(std::fabs(pmi_score(pairs_of(8, 2), unigrams_of(8, 4, 4)).at({"a", "b"})) < 1e-15);
    }

    TEST_CASE("zero-count pairs are absent") {
        CHECK(pmi_score(pairs_of(4, 0), unigrams_of(4, 2, 2)).empty());
    }

    TEST_CASE("symmetric in its arguments") {
        std::mt19937_64 rng(31);
        const auto docs = random_docs(rng, 80, 20);
        const auto u = unigram_document_frequency(docs);
        const auto p = pair_document_frequency(docs);
        const auto s = pmi_score(p, u);
        for (const auto& [key, v] : s) {
            const double expect = std::log2((static_cast<double>(p.count(key.second, key.first)) / 80.0) /
                                            ((static_cast<double>(u.count(key.second)) / 80.0) *
                                             (static_cast<double>(u.count(key.first)) / 80.0)));
            CHECK(v == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}
