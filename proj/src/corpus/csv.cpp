#include "reqnet/csv.hpp"

#include <istream>
#include <ostream>

namespace reqnet::csv {

std::optional<Row> Reader::next() {
    error_.clear();
    std::string physical;
    while (true) {
        if (!std::getline(in_, physical)) return std::nullopt;
        ++line_;
        if (!physical.empty() && physical.back() == '\r') physical.pop_back();
        if (!physical.empty()) break;
    }

    Row row;
    row.line = line_;
    std::string field;
    bool quoted = false;      // inside a quoted section
    bool was_quoted = false;  // current field started with a quote
    std::size_t i = 0;
    while (true) {
        if (i == physical.size()) {
            if (quoted) {
                // Quoted field continues on the next physical line.
                std::string more;
                if (!std::getline(in_, more)) {
                    error_ = "unterminated quoted field";
                    row.fields.push_back(std::move(field));
                    return row;
                }
                ++line_;
                if (!more.empty() && more.back() == '\r') more.pop_back();
                field.push_back('\n');
                physical = std::move(more);
                i = 0;
                continue;
            }
            row.fields.push_back(std::move(field));
            return row;
        }
        const char c = physical[i++];
        if (quoted) {
            if (c == '"') {
                if (i < physical.size() && physical[i] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == ',') {
            row.fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '"') {
            if (!field.empty() || was_quoted) {
                if (error_.empty()) error_ = "stray quote inside unquoted field";
                field.push_back(c);
            } else {
                quoted = true;
                was_quoted = true;
            }
        } else {
            if (was_quoted && error_.empty()) error_ = "text after closing quote";
            field.push_back(c);
        }
    }
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace reqnet::csv
