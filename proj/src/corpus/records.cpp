#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "reqnet/corpus.hpp"
#include "reqnet/csv.hpp"
#include "reqnet/error.hpp"

namespace reqnet::corpus {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 8> kColumns = {
    "issue_id", "type", "summary", "stars", "open_date", "reporter", "reporter_role", "os_version"};
constexpr std::array<std::string_view, 4> kRequired = {"issue_id", "type", "summary", "open_date"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::uint64_t> parse_count(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

/// Raw field values keyed by column name; absent optional columns are
/// simply missing from the map.
using FieldMap = std::map<std::string, std::string, std::less<>>;

/// Shared validation for both input formats. Returns the reject reason in
/// `reason` when the fields do not make a valid record.
std::optional<IssueRecord> build_record(const FieldMap& f, std::string& reason) {
    auto get = [&](std::string_view key) -> std::optional<std::string_view> {
        auto it = f.find(key);
        if (it == f.end()) return std::nullopt;
        return std::string_view(it->second);
    };

    IssueRecord rec;
    for (auto key : kRequired) {
        if (!get(key)) {
            reason = "missing required field '" + std::string(key) + "'";
            return std::nullopt;
        }
    }
    rec.issue_id = std::string(trim(*get("issue_id")));
    if (rec.issue_id.empty()) {
        reason = "empty issue_id";
        return std::nullopt;
    }
    auto type = parse_issue_type(trim(*get("type")));
    if (!type) {
        reason = "unknown type '" + std::string(*get("type")) + "'";
        return std::nullopt;
    }
    rec.issue_type = *type;
    rec.summary = clean_text(*get("summary"));

    auto date = parse_date(trim(*get("open_date")));
    if (!date) {
        reason = "unparseable open_date '" + std::string(*get("open_date")) + "'";
        return std::nullopt;
    }
    rec.open_date = *date;

    if (auto stars = get("stars"); stars && !trim(*stars).empty()) {
        auto v = parse_count(*stars);
        if (!v) {
            reason = "stars is not a non-negative integer: '" + std::string(*stars) + "'";
            return std::nullopt;
        }
        rec.stars = *v;
    }
    if (auto reporter = get("reporter")) rec.reporter = std::string(trim(*reporter));
    if (auto role = get("reporter_role"); role && !trim(*role).empty()) {
        auto r = parse_reporter_role(trim(*role));
        if (!r) {
            reason = "unknown reporter_role '" + std::string(*role) + "'";
            return std::nullopt;
        }
        rec.reporter_role = *r;
    }
    if (auto os = get("os_version"); os && !trim(*os).empty()) rec.os_version = std::string(trim(*os));
    return rec;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::ostringstream out;
    csv::write_row(out, fields);
    std::string s = out.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

void parse_csv(std::istream& in, ParseResult& result,
               const std::function<void(IssueRecord&&, std::size_t, std::string)>& accept) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) return;  // empty stream: empty corpus

    std::vector<std::string> names;
    for (auto& h : header->fields) names.push_back(lower(trim(h)));
    for (auto key : kRequired) {
        if (std::find(names.begin(), names.end(), key) == names.end())
            throw InputError("CSV header is missing required column '" + std::string(key) + "'");
    }

    while (auto row = reader.next()) {
        const std::string raw = join_csv(row->fields);
        if (!reader.error().empty()) {
            result.rejects.push_back({row->line, reader.error(), raw});
            continue;
        }
        if (row->fields.size() != names.size()) {
            result.rejects.push_back({row->line,
                                      "expected " + std::to_string(names.size()) + " fields, got " +
                                          std::to_string(row->fields.size()),
                                      raw});
            continue;
        }
        FieldMap fields;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (std::find(kColumns.begin(), kColumns.end(), names[i]) != kColumns.end())
                fields[names[i]] = row->fields[i];
        }
        std::string reason;
        if (auto rec = build_record(fields, reason))
            accept(std::move(*rec), row->line, raw);
        else
            result.rejects.push_back({row->line, reason, raw});
    }
}

void parse_jsonl(std::istream& in, ParseResult& result,
                 const std::function<void(IssueRecord&&, std::size_t, std::string)>& accept) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.rejects.push_back({lineno, "line is not a JSON object", line});
            continue;
        }
        FieldMap fields;
        std::string reason;
        for (auto key : kColumns) {
            auto it = obj.find(std::string(key));
            if (it == obj.end() || it->is_null()) continue;
            if (it->is_string()) {
                fields[std::string(key)] = it->get<std::string>();
            } else if (it->is_number_unsigned() || it->is_number_integer()) {
                fields[std::string(key)] = it->dump();
            } else {
                reason = "field '" + std::string(key) + "' has unsupported JSON type";
                break;
            }
        }
        if (!reason.empty()) {
            result.rejects.push_back({lineno, reason, line});
            continue;
        }
        if (auto rec = build_record(fields, reason))
            accept(std::move(*rec), lineno, line);
        else
            result.rejects.push_back({lineno, reason, line});
    }
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto [p, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
        if (ec != std::errc{} || p != text.data() + pos + len) return std::nullopt;
        return v;
    };
    auto y = num(0, 4), m = num(5, 2), d = num(8, 2);
    if (!y || !m || !d) return std::nullopt;
    Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
              std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::int64_t days_between(Date from, Date to) {
    return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

std::string_view to_string(IssueType t) {
    switch (t) {
        case IssueType::defect: return "defect";
        case IssueType::enhancement: return "enhancement";
        case IssueType::other: return "other";
    }
    return "other";
}

std::string_view to_string(ReporterRole r) {
    switch (r) {
        case ReporterRole::developer: return "developer";
        case ReporterRole::user: return "user";
        case ReporterRole::anonymous: return "anonymous";
    }
    return "anonymous";
}

std::optional<IssueType> parse_issue_type(std::string_view text) {
    const auto s = lower(text);
    if (s == "defect") return IssueType::defect;
    if (s == "enhancement") return IssueType::enhancement;
    if (s == "other") return IssueType::other;
    return std::nullopt;
}

std::optional<ReporterRole> parse_reporter_role(std::string_view text) {
    const auto s = lower(text);
    if (s == "developer") return ReporterRole::developer;
    if (s == "user") return ReporterRole::user;
    if (s == "anonymous") return ReporterRole::anonymous;
    return std::nullopt;
}

std::optional<Format> parse_format(std::string_view text) {
    const auto s = lower(text);
    if (s == "csv") return Format::csv;
    if (s == "jsonl") return Format::jsonl;
    return std::nullopt;
}

ParseResult parse_records(std::istream& in, Format format, std::string source_label) {
    ParseResult result;
    result.corpus.source_label = std::move(source_label);
    std::unordered_set<std::string> seen;
    auto accept = [&](IssueRecord&& rec, std::size_t line, std::string raw) {
        if (!seen.insert(rec.issue_id).second) {
            result.rejects.push_back({line, "duplicate issue_id '" + rec.issue_id + "'", std::move(raw)});
            return;
        }
        result.corpus.records.push_back(std::move(rec));
    };
    if (format == Format::csv)
        parse_csv(in, result, accept);
    else
        parse_jsonl(in, result, accept);
    return result;
}

void write_records(std::ostream& out, const CorpusSnapshot& corpus, Format format) {
    if (format == Format::csv) {
        csv::write_row(out, {kColumns.begin(), kColumns.end()});
        for (const auto& r : corpus.records) {
            csv::write_row(out, {r.issue_id, std::string(to_string(r.issue_type)), r.summary,
                                 std::to_string(r.stars), format_date(r.open_date), r.reporter,
                                 std::string(to_string(r.reporter_role)), r.os_version.value_or("")});
        }
        return;
    }
    for (const auto& r : corpus.records) {
        ordered_json j;
        j["issue_id"] = r.issue_id;
        j["type"] = to_string(r.issue_type);
        j["summary"] = r.summary;
        j["stars"] = r.stars;
        j["open_date"] = format_date(r.open_date);
        j["reporter"] = r.reporter;
        j["reporter_role"] = to_string(r.reporter_role);
        if (r.os_version) j["os_version"] = *r.os_version;
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

void write_rejects_jsonl(std::ostream& out, const std::vector<Reject>& rejects) {
    for (const auto& r : rejects) {
        ordered_json j;
        j["line"] = r.line;
        j["reason"] = r.reason;
        j["raw"] = r.raw;
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

CorpusSnapshot filter_by_type(const CorpusSnapshot& corpus, IssueType type) {
    CorpusSnapshot out;
    out.source_label = corpus.source_label;
    std::copy_if(corpus.records.begin(), corpus.records.end(), std::back_inserter(out.records),
                 [type](const IssueRecord& r) { return r.issue_type == type; });
    return out;
}

TypeCounts count_by_type(const CorpusSnapshot& corpus) {
    TypeCounts c;
    for (const auto& r : corpus.records) {
        switch (r.issue_type) {
            case IssueType::defect: ++c.defect; break;
            case IssueType::enhancement: ++c.enhancement; break;
            case IssueType::other: ++c.other; break;
        }
    }
    return c;
}

RoleCounts count_by_role(const CorpusSnapshot& corpus) {
    RoleCounts c;
    for (const auto& r : corpus.records) {
        switch (r.reporter_role) {
            case ReporterRole::developer: ++c.developer; break;
            case ReporterRole::user: ++c.user; break;
            case ReporterRole::anonymous: ++c.anonymous; break;
        }
    }
    return c;
}

}  // namespace reqnet::corpus
