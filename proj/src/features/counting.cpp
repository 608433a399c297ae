#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "reqnet/csv.hpp"
#include "reqnet/features.hpp"

namespace reqnet::features {

namespace {

void require_unique_ids(std::span<const DocumentFeatures> docs) {
    std::unordered_set<std::string_view> ids;
    for (const auto& d : docs) {
        if (!ids.insert(d.doc_id).second) throw DomainError("duplicate document id '" + d.doc_id + "'");
    }
}

using PairTally = std::unordered_map<std::uint64_t, std::size_t>;

/// Counts pairs for docs[begin, end). Feature ids are ranks in the sorted
/// vocabulary, so `a * V + b` with a < b sorts like the label pair.
void tally_pairs(const std::vector<std::vector<std::uint32_t>>& ids, std::size_t begin, std::size_t end,
                 std::uint64_t vocab, PairTally& out) {
    for (std::size_t d = begin; d < end; ++d) {
        const auto& f = ids[d];
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) ++out[f[i] * vocab + f[j]];
    }
}

std::size_t parse_size(const std::string& s, std::size_t line) {
    std::size_t v = 0;
    try {
        std::size_t used = 0;
        v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line) + ": count '" + s + "' is not an integer");
    }
    return v;
}

}  // namespace

DocumentFeatures extract_features(std::span<const TaggedToken> tagged, std::string doc_id,
                                  const ExtractOptions& options) {
    DocumentFeatures out{std::move(doc_id), {}};
    for (const auto& t : tagged) {
        if (!is_noun(t.tag)) continue;
        if (options.fold_plurals && (t.tag == PosTag::nns || t.tag == PosTag::nnps))
            out.features.insert(singular_stem(t.surface));
        else
            out.features.insert(t.surface);
    }
    return out;
}

FeaturePair make_pair_key(std::string a, std::string b) {
    if (a == b) throw DomainError("self-pair '" + a + "'");
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

std::size_t PairCounts::count(const std::string& a, const std::string& b) const {
    if (a == b) return 0;
    auto it = a < b ? counts.find({a, b}) : counts.find({b, a});
    return it == counts.end() ? 0 : it->second;
}

UnigramCounts unigram_document_frequency(std::span<const DocumentFeatures> docs) {
    require_unique_ids(docs);
    UnigramCounts out;
    out.n_docs = docs.size();
    for (const auto& d : docs)
        for (const auto& f : d.features) ++out.counts[f];
    return out;
}

PairCounts pair_document_frequency(std::span<const DocumentFeatures> docs, unsigned threads) {
    require_unique_ids(docs);
    std::set<std::string> vocab_set;
    for (const auto& d : docs) vocab_set.insert(d.features.begin(), d.features.end());
    const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());

    // Re-express each document as ascending feature ids.
    std::vector<std::vector<std::uint32_t>> ids;
    ids.reserve(docs.size());
    for (const auto& d : docs) {
        std::vector<std::uint32_t> row;
        row.reserve(d.features.size());
        for (const auto& f : d.features) {
            auto pos = std::lower_bound(vocab.begin(), vocab.end(), f) - vocab.begin();
            row.push_back(static_cast<std::uint32_t>(pos));
        }
        ids.push_back(std::move(row));  // std::set iteration keeps ids ascending
    }

    const std::uint64_t v = vocab.size();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, docs.size()))));
    std::vector<PairTally> partial(threads);
    if (threads == 1) {
        tally_pairs(ids, 0, ids.size(), v, partial[0]);
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (ids.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(ids.size(), t * chunk);
            const std::size_t end = std::min(ids.size(), begin + chunk);
            workers.emplace_back([&, t, begin, end] { tally_pairs(ids, begin, end, v, partial[t]); });
        }
        for (auto& w : workers) w.join();
    }

    std::vector<std::pair<std::uint64_t, std::size_t>> merged;
    {
        PairTally total = std::move(partial[0]);
        for (unsigned t = 1; t < threads; ++t)
            for (const auto& [k, c] : partial[t]) total[k] += c;
        merged.assign(total.begin(), total.end());
    }
    std::sort(merged.begin(), merged.end());

    PairCounts out;
    out.n_docs = docs.size();
    auto hint = out.counts.end();
    for (const auto& [key, c] : merged)
        hint = out.counts.emplace_hint(hint, FeaturePair{vocab[key / v], vocab[key % v]}, c);
    return out;
}

std::map<FeaturePair, double> pmi_score(const PairCounts& pairs, const UnigramCounts& unigrams) {
    if (unigrams.n_docs == 0) throw DomainError("PMI needs at least one document");
    const double n = static_cast<double>(unigrams.n_docs);
    std::map<FeaturePair, double> out;
    for (const auto& [key, joint] : pairs.counts) {
        if (joint == 0) continue;
        const auto ca = unigrams.count(key.first);
        const auto cb = unigrams.count(key.second);
        if (ca == 0 || cb == 0)
            throw DomainError("pair (" + key.first + ", " + key.second + ") has a feature without a unigram count");
        const double pab = static_cast<double>(joint) / n;
        const double pa = static_cast<double>(ca) / n;
        const double pb = static_cast<double>(cb) / n;
        out.emplace(key, std::log2(pab / (pa * pb)));
    }
    return out;
}

void write_unigrams_csv(std::ostream& out, const UnigramCounts& u) {
    csv::write_row(out, {"feature", "count"});
    for (const auto& [f, c] : u.counts) csv::write_row(out, {f, std::to_string(c)});
}

void write_pairs_csv(std::ostream& out, const PairCounts& p) {
    csv::write_row(out, {"feature_a", "feature_b", "count"});
    for (const auto& [k, c] : p.counts) csv::write_row(out, {k.first, k.second, std::to_string(c)});
}

UnigramCounts read_unigrams_csv(std::istream& in, std::size_t n_docs) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"feature", "count"})
        throw InputError("unigram CSV must start with header 'feature,count'");
    UnigramCounts out;
    out.n_docs = n_docs;
    while (auto row = reader.next()) {
        if (!reader.error().empty() || row->fields.size() != 2)
            throw InputError("unigram CSV line " + std::to_string(row->line) + " is malformed");
        out.counts[row->fields[0]] = parse_size(row->fields[1], row->line);
    }
    return out;
}

PairCounts read_pairs_csv(std::istream& in, std::size_t n_docs) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"feature_a", "feature_b", "count"})
        throw InputError("pair CSV must start with header 'feature_a,feature_b,count'");
    PairCounts out;
    out.n_docs = n_docs;
    while (auto row = reader.next()) {
        if (!reader.error().empty() || row->fields.size() != 3 || row->fields[0] == row->fields[1])
            throw InputError("pair CSV line " + std::to_string(row->line) + " is malformed");
        out.counts[make_pair_key(row->fields[0], row->fields[1])] = parse_size(row->fields[2], row->line);
    }
    return out;
}

}  // namespace reqnet::features
