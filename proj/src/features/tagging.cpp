#include <cctype>
#include <istream>
#include <sstream>

#include "reqnet/features.hpp"

namespace reqnet::features {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_token_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(PosTag t) {
    switch (t) {
        case PosTag::nn: return "NN";
        case PosTag::nns: return "NNS";
        case PosTag::nnp: return "NNP";
        case PosTag::nnps: return "NNPS";
        case PosTag::other: return "OTHER";
    }
    return "OTHER";
}

PosTag parse_pos_tag(std::string_view penn) {
    if (penn == "NN") return PosTag::nn;
    if (penn == "NNS") return PosTag::nns;
    if (penn == "NNP") return PosTag::nnp;
    if (penn == "NNPS") return PosTag::nnps;
    return PosTag::other;
}

bool is_valid_surface(std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char c : s) {
        if (!(std::islower(c) || std::isdigit(c) || c == '_' || c == '-')) return false;
    }
    return true;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        const bool all_digits = std::all_of(cur.begin(), cur.end(),
                                            [](unsigned char c) { return std::isdigit(c); });
        if (cur.size() >= 2 && !all_digits) out.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (is_token_char(c))
            cur.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();
    return out;
}

std::string singular_stem(std::string_view w) {
    if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
    for (auto suffix : {"sses", "ches", "shes", "xes", "zes"}) {
        if (ends_with(w, suffix)) return std::string(w.substr(0, w.size() - 2));
    }
    // Three-letter words ending in s are mostly acronyms (gps, sms) or singular (bus).
    if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is"))
        return std::string(w.substr(0, w.size() - 1));
    return std::string(w);
}

bool HeuristicTagger::noun_like(std::string_view w) const {
    const std::string word(w);
    if (lex_.stopwords.contains(word) || lex_.non_nouns.contains(word)) return false;
    if (lex_.noun_exceptions.contains(word)) return true;
    for (auto suffix : {"ing", "ed", "ly", "ous", "ful"}) {
        const std::string_view sfx(suffix);
        // Short words such as "red" or "fly" are too ambiguous to judge by suffix.
        if (ends_with(w, sfx) && w.size() > sfx.size() + 2) {
            if (sfx == "ed" && ends_with(w, "eed")) continue;
            return false;
        }
    }
    return true;
}

PosTag HeuristicTagger::tag_one(std::string_view word) const {
    if (!noun_like(word)) return PosTag::other;
    const std::string stem = singular_stem(word);
    if (stem != word && stem.size() >= 2 && noun_like(stem)) return PosTag::nns;
    return PosTag::nn;
}

std::vector<TaggedToken> HeuristicTagger::tag(std::span<const std::string> tokens) const {
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back({t, tag_one(t)});
    return out;
}

TaggedToken PretaggedTagger::parse_pair(std::string_view pair) {
    const auto cut = pair.rfind('_');
    if (cut == std::string_view::npos || cut == 0 || cut + 1 == pair.size())
        throw TagFormatError("malformed token_TAG pair '" + std::string(pair) + "'");
    std::string surface(pair.substr(0, cut));
    for (auto& c : surface) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!is_valid_surface(surface))
        throw TagFormatError("token '" + std::string(pair.substr(0, cut)) +
                             "' has characters outside [a-z0-9_-]");
    const auto tag = pair.substr(cut + 1);
    for (unsigned char c : tag) {
        if (!(std::isupper(c) || c == '$' || c == '.' || c == ',' || c == ':'))
            throw TagFormatError("malformed tag in '" + std::string(pair) + "'");
    }
    return {std::move(surface), parse_pos_tag(tag)};
}

std::vector<TaggedToken> PretaggedTagger::tag(std::span<const std::string> tokens) const {
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(parse_pair(t));
    return out;
}

PretaggedInput read_pretagged(std::istream& in) {
    PretaggedInput result;
    std::unordered_set<std::string> seen;
    std::optional<PretaggedDocument> current;
    std::size_t current_line = 0;
    std::string current_raw;
    std::string stray;  // token text before the first sentinel
    std::size_t stray_line = 0;

    auto finish = [&] {
        if (!current) return;
        try {
            PretaggedTagger{}.tag(current->tokens);
        } catch (const TagFormatError& e) {
            result.rejects.push_back({current_line, e.what(), current_raw});
            current.reset();
            return;
        }
        if (!seen.insert(current->doc_id).second) {
            result.rejects.push_back({current_line, "duplicate doc id '" + current->doc_id + "'",
                                      current_raw});
        } else {
            result.documents.push_back(std::move(*current));
        }
        current.reset();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto body = trim(line);
        if (body.empty()) continue;
        if (body.starts_with("#doc")) {
            finish();
            const auto id = trim(body.substr(4));
            if (id.empty() || (body.size() > 4 && !std::isspace(static_cast<unsigned char>(body[4])))) {
                result.rejects.push_back({lineno, "malformed #doc sentinel", line});
                continue;
            }
            current = PretaggedDocument{std::string(id), {}};
            current_line = lineno;
            current_raw = line;
            continue;
        }
        if (!current) {
            if (stray.empty()) stray_line = lineno;
            stray += (stray.empty() ? "" : "\n") + line;
            continue;
        }
        current_raw += "\n" + line;
        std::istringstream words{std::string(body)};
        std::string w;
        while (words >> w) current->tokens.push_back(w);
    }
    finish();
    if (!stray.empty())
        result.rejects.insert(result.rejects.begin(),
                              {stray_line, "tokens before the first #doc sentinel", stray});
    return result;
}

std::unordered_set<std::string> read_wordlist(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto w = trim(line);
        if (w.empty() || w.front() == '#') continue;
        std::string s(w);
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(std::move(s));
    }
    return words;
}

}  // namespace reqnet::features
