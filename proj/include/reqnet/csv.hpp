#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reqnet::csv {

/// One logical CSV record. `line` is the 1-based physical line the record
/// starts on; a quoted field may span several physical lines.
struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// RFC-4180 reader: comma separator, `"` quoting, `""` as an escaped quote,
/// CRLF or LF line endings. Quote errors are reported per row through
/// `error` rather than thrown so a caller can reject one row and continue.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Blank lines are skipped.
    std::optional<Row> next();

    /// Non-empty when the last row returned had a quoting problem.
    const std::string& error() const { return error_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
    std::string error_;
};

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace reqnet::csv
