#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "reqnet/corpus.hpp"
#include "reqnet/error.hpp"

namespace reqnet::features {

/// Penn noun tags survive; every other part of speech collapses to `other`.
enum class PosTag { nn, nns, nnp, nnps, other };

std::string_view to_string(PosTag t);
/// Maps a Penn tag such as `NNS` or `VBZ`; anything that is not a noun tag is `other`.
PosTag parse_pos_tag(std::string_view penn);
inline bool is_noun(PosTag t) { return t != PosTag::other; }

struct TaggedToken {
    std::string surface;  // lowercase, [a-z0-9_-]+
    PosTag tag = PosTag::other;

    bool operator==(const TaggedToken&) const = default;
};

/// True when `s` is non-empty and only holds [a-z0-9_-].
bool is_valid_surface(std::string_view s);

/// Lowercases and splits on anything outside [a-zA-Z0-9_-]. Tokens shorter
/// than two characters and all-digit tokens are dropped; mixed tokens such
/// as `v2` or `mp3` are kept.
std::vector<std::string> tokenize(std::string_view text);

/// Raised for a malformed `token_TAG` pair. The caller rejects the
/// enclosing document and carries on.
class TagFormatError : public InputError {
public:
    using InputError::InputError;
};

class Tagger {
public:
    virtual ~Tagger() = default;
    /// Exactly one TaggedToken per input token, same order.
    virtual std::vector<TaggedToken> tag(std::span<const std::string> tokens) const = 0;
};

/// Word lists behind the builtin tagger.
struct Lexicon {
    std::unordered_set<std::string> stopwords;
    std::unordered_set<std::string> non_nouns;    // verbs (with inflections), adjectives, adverbs
    std::unordered_set<std::string> noun_exceptions;  // nouns that look like -ing/-ed forms

    /// Builtin lists; `stopwords` equals data/stopwords.txt.
    static Lexicon builtin();
};

/// Rule-based stand-in for a statistical tagger:
///   stopword or known non-noun          -> other
///   -ing/-ed/-ly/-ous/-ful suffix hint  -> other (unless a listed noun)
///   plural -s/-es whose stem is a noun  -> NNS
///   everything else                     -> NN
class HeuristicTagger final : public Tagger {
public:
    HeuristicTagger() : HeuristicTagger(Lexicon::builtin()) {}
    explicit HeuristicTagger(Lexicon lexicon) : lex_(std::move(lexicon)) {}

    std::vector<TaggedToken> tag(std::span<const std::string> tokens) const override;
    PosTag tag_one(std::string_view word) const;

private:
    bool noun_like(std::string_view word) const;

    Lexicon lex_;
};

/// Reads tokens already written as `token_TAG`. The split is at the last
/// underscore, so `fix_it_NN` is the surface `fix_it` tagged NN.
class PretaggedTagger final : public Tagger {
public:
    std::vector<TaggedToken> tag(std::span<const std::string> tokens) const override;
    static TaggedToken parse_pair(std::string_view pair);
};

inline std::vector<TaggedToken> tag_tokens(std::span<const std::string> tokens, const Tagger& tagger) {
    return tagger.tag(tokens);
}

struct PretaggedDocument {
    std::string doc_id;
    std::vector<std::string> tokens;  // raw `token_TAG` pairs
};

struct PretaggedInput {
    std::vector<PretaggedDocument> documents;
    std::vector<corpus::Reject> rejects;
};

/// `#doc <id>` sentinel lines open a document; the whitespace-separated
/// pairs on the following lines belong to it. Documents with a malformed
/// pair, a duplicate id, or text before the first sentinel are rejected.
PretaggedInput read_pretagged(std::istream& in);

/// One word per line; blank lines and `#` comments ignored; lowercased.
std::unordered_set<std::string> read_wordlist(std::istream& in);

// ---------------------------------------------------------------------------
// Counting

struct DocumentFeatures {
    std::string doc_id;
    std::set<std::string> features;
};

struct ExtractOptions {
    /// Map plural nouns onto their singular stem. Off by default so that
    /// distinct surface forms stay distinct features.
    bool fold_plurals = false;
};

DocumentFeatures extract_features(std::span<const TaggedToken> tagged, std::string doc_id,
                                  const ExtractOptions& options = {});

/// Singular stem used by plural folding (`contacts` -> `contact`, `boxes` -> `box`).
std::string singular_stem(std::string_view plural);

struct UnigramCounts {
    std::map<std::string, std::size_t> counts;  // feature -> document frequency
    std::size_t n_docs = 0;

    std::size_t count(const std::string& f) const {
        auto it = counts.find(f);
        return it == counts.end() ? 0 : it->second;
    }
    bool operator==(const UnigramCounts&) const = default;
};

using FeaturePair = std::pair<std::string, std::string>;  // first < second

/// Orders the two labels lexicographically. Throws DomainError on a self-pair.
FeaturePair make_pair_key(std::string a, std::string b);

struct PairCounts {
    std::map<FeaturePair, std::size_t> counts;  // canonical keys only
    std::size_t n_docs = 0;

    /// Order-insensitive lookup; 0 when absent or a == b.
    std::size_t count(const std::string& a, const std::string& b) const;
    bool operator==(const PairCounts&) const = default;
};

/// Throws DomainError when two documents share an id.
UnigramCounts unigram_document_frequency(std::span<const DocumentFeatures> docs);

/// Each document contributes one to every unordered pair of distinct
/// features it contains. With `threads > 1` documents are split into
/// contiguous chunks whose partial counts are merged; the result is
/// identical to the single-threaded count.
PairCounts pair_document_frequency(std::span<const DocumentFeatures> docs, unsigned threads = 1);

/// log2(p(a,b) / (p(a) p(b))) with document-level probabilities. Pairs with
/// zero count are absent from the result.
std::map<FeaturePair, double> pmi_score(const PairCounts& pairs, const UnigramCounts& unigrams);

/// `feature,count` with header, features ascending.
void write_unigrams_csv(std::ostream& out, const UnigramCounts& u);
/// `feature_a,feature_b,count` with header, pairs in lexicographic order.
void write_pairs_csv(std::ostream& out, const PairCounts& p);
/// n_docs is not part of the CSV format; callers pass it along.
UnigramCounts read_unigrams_csv(std::istream& in, std::size_t n_docs = 0);
PairCounts read_pairs_csv(std::istream& in, std::size_t n_docs = 0);

}  // namespace reqnet::features
