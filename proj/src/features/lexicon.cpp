#include <array>
#include <sstream>
#include <string_view>

#include "reqnet/features.hpp"

namespace reqnet::features {

// Generated from data/stopwords.txt at configure time.
extern const char* const kBuiltinStopwords;

namespace {

// Verbs that rarely name a product feature. Words that are just as often
// nouns in tracker summaries ("search", "call", "update", "share") are
// deliberately absent.
constexpr std::string_view kVerbs[] = {
    "accept",  "add",      "allow",    "appear",   "apply",   "ask",      "avoid",   "become",
    "begin",   "believe",  "bring",    "change",   "choose",  "come",     "consider", "contain",
    "continue", "crash",   "create",   "decide",   "delete",  "disable",  "disappear", "drop",
    "enable",  "ensure",   "expect",   "fail",     "find",    "fix",      "follow",  "force",
    "freeze",  "get",      "give",     "go",       "happen",  "hate",     "hide",    "implement",
    "improve", "include",  "increase", "install",  "keep",    "know",     "launch",  "learn",
    "leave",   "let",      "like",     "look",     "lose",    "love",     "make",    "mean",
    "miss",    "move",     "need",     "offer",    "optimize", "perform", "prefer",  "prevent",
    "provide", "put",      "reduce",   "remember", "remove",  "replace",  "require", "restart",
    "return",  "run",      "say",      "see",      "seem",    "select",   "send",    "share",   "show",
    "solve",   "start",    "stop",     "suggest",  "suppose", "take",     "tell",    "think",
    "try",     "turn",     "understand", "use",    "wait",    "want",     "wish",    "work",
};

constexpr std::string_view kIrregular[] = {
    "am",      "became",  "began",   "begun",  "brought", "came",   "chose",  "chosen",
    "found",   "gave",    "given",   "goes",   "gone",    "got",    "gotten", "had",
    "hid",     "hidden",  "kept",    "knew",   "known",   "left",   "let",    "lost",
    "made",    "meant",   "put",     "ran",    "said",    "saw",    "seen",   "sent",
    "shown",   "taken",   "told",    "thought", "took",   "went",   "froze",  "frozen",
    "broke",   "broken",  "understood", "wrote", "written", "says",  "able",   "unable",
    "new",     "old",     "good",    "bad",    "better",  "best",   "worse",  "worst",
    "easy",    "easier",  "hard",    "great",  "nice",    "many",   "several", "possible",
    "impossible", "available", "unavailable", "sure", "really", "maybe",
};

constexpr std::string_view kAdjectives[] = {
    "current", "default", "different", "empty",   "full",     "higher", "large",    "larger",
    "long",    "longer",  "low",       "lower",   "main",     "multiple", "native", "necessary",
    "next",    "only",    "own",       "previous", "quick",   "real",   "separate", "short",
    "similar", "simple",  "single",    "slow",    "small",    "smaller", "specific", "whole",
    "wrong",   "annoying",
};

// Nouns with an -ing/-ed/-ly/-ous/-ful tail that the suffix hint would
// otherwise throw away.
constexpr std::string_view kNounExceptions[] = {
    "string",   "thing",    "ring",     "ringtone", "king",     "ping",    "wing",     "setting",
    "building", "morning",  "evening",  "warning",  "meeting",  "booking", "recording", "mapping",
    "roaming",  "tethering", "streaming", "padding", "encoding", "logging", "spelling", "ceiling",
    "bed",      "feed",     "speed",    "seed",     "weed",     "shed",    "embed",    "red",
    "family",   "reply",    "supply",   "assembly", "anomaly",  "bluetooth", "forwarding", "thread",
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

void add_inflections(std::unordered_set<std::string>& out, std::string_view base) {
    const std::string b(base);
    out.insert(b);
    // third person singular
    if (ends_with(b, "s") || ends_with(b, "x") || ends_with(b, "z") || ends_with(b, "ch") ||
        ends_with(b, "sh") || b == "go")
        out.insert(b + "es");
    else if (ends_with(b, "y") && b.size() > 1 && !is_vowel(b[b.size() - 2]))
        out.insert(b.substr(0, b.size() - 1) + "ies");
    else
        out.insert(b + "s");
    // past tense
    if (ends_with(b, "e"))
        out.insert(b + "d");
    else if (ends_with(b, "y") && b.size() > 1 && !is_vowel(b[b.size() - 2]))
        out.insert(b.substr(0, b.size() - 1) + "ied");
    else
        out.insert(b + "ed");
    // present participle
    if (ends_with(b, "e") && !ends_with(b, "ee"))
        out.insert(b.substr(0, b.size() - 1) + "ing");
    else
        out.insert(b + "ing");
    // consonant doubling for short CVC verbs: stop -> stopped, run -> running
    if (b.size() >= 3 && !is_vowel(b[b.size() - 1]) && is_vowel(b[b.size() - 2]) &&
        !is_vowel(b[b.size() - 3]) && b.back() != 'w' && b.back() != 'x' && b.back() != 'y') {
        out.insert(b + b.back() + "ed");
        out.insert(b + b.back() + "ing");
    }
}

}  // namespace

Lexicon Lexicon::builtin() {
    Lexicon lex;
    std::istringstream in(kBuiltinStopwords);
    lex.stopwords = read_wordlist(in);
    for (auto v : kVerbs) add_inflections(lex.non_nouns, v);
    for (auto w : kIrregular) lex.non_nouns.insert(std::string(w));
    for (auto w : kAdjectives) lex.non_nouns.insert(std::string(w));
    for (auto w : kNounExceptions) lex.noun_exceptions.insert(std::string(w));
    return lex;
}

}  // namespace reqnet::features
