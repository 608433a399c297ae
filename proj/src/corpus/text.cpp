#include "reqnet/corpus.hpp"

namespace reqnet::corpus {

namespace {

bool is_ascii_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

std::string clean_text(std::string_view text) {
    // Tag spans first: `<` up to the next `>`.
    std::string untagged;
    untagged.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '<') {
            const auto close = text.find('>', i + 1);
            if (close != std::string_view::npos) {
                untagged.push_back(' ');
                i = close;
                continue;
            }
        }
        untagged.push_back(text[i]);
    }

    std::string out;
    out.reserve(untagged.size());
    bool pending_space = false;
    for (unsigned char c : untagged) {
        if (is_ascii_space(c)) {
            pending_space = !out.empty();
        } else if (c >= 0x21 && c <= 0x7E) {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(c));
        }
        // anything else is a foreign byte and vanishes without a trace
    }
    return out;
}

}  // namespace reqnet::corpus
