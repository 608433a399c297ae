#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reqnet::corpus {

using Date = std::chrono::year_month_day;

/// Strict `YYYY-MM-DD`; nullopt when malformed or not a real calendar date.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);
/// Signed day count `to - from`.
std::int64_t days_between(Date from, Date to);

enum class IssueType { defect, enhancement, other };
enum class ReporterRole { developer, user, anonymous };

inline constexpr std::array<IssueType, 3> kIssueTypes = {IssueType::defect, IssueType::enhancement,
                                                         IssueType::other};

std::string_view to_string(IssueType t);
std::string_view to_string(ReporterRole r);
/// Case-insensitive.
std::optional<IssueType> parse_issue_type(std::string_view text);
std::optional<ReporterRole> parse_reporter_role(std::string_view text);

struct IssueRecord {
    std::string issue_id;
    IssueType issue_type = IssueType::other;
    std::string summary;  // always the output of clean_text
    std::uint64_t stars = 0;
    Date open_date{};
    std::string reporter;
    ReporterRole reporter_role = ReporterRole::anonymous;
    std::optional<std::string> os_version;

    bool operator==(const IssueRecord&) const = default;
};

struct CorpusSnapshot {
    std::vector<IssueRecord> records;
    std::string source_label;
};

enum class Format { csv, jsonl };
std::optional<Format> parse_format(std::string_view text);

/// A row that could not become an IssueRecord.
struct Reject {
    std::size_t line = 0;
    std::string reason;
    std::string raw;
};

struct ParseResult {
    CorpusSnapshot corpus;
    std::vector<Reject> rejects;
};

/// Strip `<...>` spans, drop bytes outside printable ASCII, collapse
/// whitespace runs and trim. A `<` with no closing `>` stays literal.
/// Each removed tag leaves a space so adjacent words do not fuse.
std::string clean_text(std::string_view text);

/// Reads a tracker export. Malformed rows land in `rejects` and parsing
/// continues; a missing required CSV column throws InputError.
ParseResult parse_records(std::istream& in, Format format, std::string source_label = {});

void write_records(std::ostream& out, const CorpusSnapshot& corpus, Format format);
void write_rejects_jsonl(std::ostream& out, const std::vector<Reject>& rejects);

CorpusSnapshot filter_by_type(const CorpusSnapshot& corpus, IssueType type);

struct TypeCounts {
    std::size_t defect = 0;
    std::size_t enhancement = 0;
    std::size_t other = 0;
    std::size_t total() const { return defect + enhancement + other; }
};
TypeCounts count_by_type(const CorpusSnapshot& corpus);

struct RoleCounts {
    std::size_t developer = 0;
    std::size_t user = 0;
    std::size_t anonymous = 0;
};
RoleCounts count_by_role(const CorpusSnapshot& corpus);

// ---------------------------------------------------------------------------
// Release partitioning

/// Covers the half-open date interval (start_date, end_date].
struct ReleaseWindow {
    std::string name;
    Date start_date{};
    Date end_date{};

    bool operator==(const ReleaseWindow&) const = default;
};

struct ReleaseStats {
    ReleaseWindow window;
    std::int64_t days = 0;
    std::size_t total_requests = 0;
    double mean_per_day = 0.0;
};

/// Records outside every window.
struct SentinelCounts {
    std::size_t before_first = 0;
    std::size_t between_windows = 0;
    std::size_t after_last = 0;
    std::size_t total() const { return before_first + between_windows + after_last; }
};

struct ReleasePartition {
    std::vector<ReleaseStats> stats;
    std::vector<std::vector<IssueRecord>> window_records;  // parallel to stats
    SentinelCounts sentinels;
    std::vector<IssueRecord> before_first;
    std::vector<IssueRecord> between_windows;
    std::vector<IssueRecord> after_last;
};

/// Throws InputError unless every window has start < end and windows are
/// ordered without overlap.
void validate_schedule(const std::vector<ReleaseWindow>& schedule);

ReleasePartition partition_by_release(const CorpusSnapshot& corpus,
                                      const std::vector<ReleaseWindow>& schedule);

/// Android major releases from the first beta (2007-11-16) to KitKat.
std::vector<ReleaseWindow> android_schedule();

/// CSV with header `name,start_date,end_date`.
std::vector<ReleaseWindow> read_schedule(std::istream& in);
void write_schedule(std::ostream& out, const std::vector<ReleaseWindow>& schedule);

}  // namespace reqnet::corpus
