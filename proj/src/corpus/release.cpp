#include <algorithm>
#include <istream>
#include <ostream>

#include "reqnet/corpus.hpp"
#include "reqnet/csv.hpp"
#include "reqnet/error.hpp"

namespace reqnet::corpus {

namespace {

Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

}  // namespace

void validate_schedule(const std::vector<ReleaseWindow>& schedule) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& w = schedule[i];
        if (!(w.start_date < w.end_date))
            throw InputError("release window '" + w.name + "' does not end after it starts");
        if (i > 0 && w.start_date < schedule[i - 1].end_date)
            throw InputError("release window '" + w.name + "' overlaps or precedes '" +
                             schedule[i - 1].name + "'");
    }
}

ReleasePartition partition_by_release(const CorpusSnapshot& corpus,
                                      const std::vector<ReleaseWindow>& schedule) {
    validate_schedule(schedule);
    ReleasePartition part;
    part.window_records.resize(schedule.size());

    for (const auto& rec : corpus.records) {
        const Date d = rec.open_date;
        if (schedule.empty() || d <= schedule.front().start_date) {
            part.before_first.push_back(rec);
            continue;
        }
        if (d > schedule.back().end_date) {
            part.after_last.push_back(rec);
            continue;
        }
        // First window whose end is on or after d; membership also needs d > start.
        auto it = std::lower_bound(schedule.begin(), schedule.end(), d,
                                   [](const ReleaseWindow& w, Date x) { return w.end_date < x; });
        if (it != schedule.end() && d > it->start_date)
            part.window_records[static_cast<std::size_t>(it - schedule.begin())].push_back(rec);
        else
            part.between_windows.push_back(rec);
    }

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        ReleaseStats s;
        s.window = schedule[i];
        s.days = days_between(schedule[i].start_date, schedule[i].end_date);
        s.total_requests = part.window_records[i].size();
        s.mean_per_day = static_cast<double>(s.total_requests) / static_cast<double>(s.days);
        part.stats.push_back(std::move(s));
    }
    part.sentinels = {part.before_first.size(), part.between_windows.size(), part.after_last.size()};
    return part;
}

std::vector<ReleaseWindow> android_schedule() {
    return {
        {"Early versions (1.0, 1.1)", ymd(2007, 11, 16), ymd(2009, 2, 9)},
        {"Cupcake (1.5)", ymd(2009, 2, 9), ymd(2009, 4, 30)},
        {"Donut (1.6)", ymd(2009, 4, 30), ymd(2009, 9, 15)},
        {"Eclair (2.0, 2.01, 2.1)", ymd(2009, 9, 15), ymd(2010, 1, 12)},
        {"Froyo (2.2)", ymd(2010, 1, 12), ymd(2010, 5, 20)},
        {"Gingerbread (2.3, 2.37)", ymd(2010, 5, 20), ymd(2011, 2, 9)},
        {"Honeycomb (3.0, 3.1, 3.2)", ymd(2011, 2, 9), ymd(2011, 7, 15)},
        {"Ice Cream Sandwich (4.0, 4.03)", ymd(2011, 7, 15), ymd(2011, 12, 16)},
        {"Jellybean (4.1, 4.2, 4.3)", ymd(2011, 12, 16), ymd(2013, 7, 24)},
        {"KitKat (4.4)", ymd(2013, 7, 24), ymd(2013, 10, 31)},
    };
}

std::vector<ReleaseWindow> read_schedule(std::istream& in) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"name", "start_date", "end_date"})
        throw InputError("schedule file must start with header 'name,start_date,end_date'");
    std::vector<ReleaseWindow> out;
    while (auto row = reader.next()) {
        if (!reader.error().empty() || row->fields.size() != 3)
            throw InputError("schedule line " + std::to_string(row->line) + " is malformed");
        auto start = parse_date(row->fields[1]);
        auto end = parse_date(row->fields[2]);
        if (!start || !end)
            throw InputError("schedule line " + std::to_string(row->line) + " has a bad date");
        out.push_back({row->fields[0], *start, *end});
    }
    validate_schedule(out);
    return out;
}

void write_schedule(std::ostream& out, const std::vector<ReleaseWindow>& schedule) {
    csv::write_row(out, {"name", "start_date", "end_date"});
    for (const auto& w : schedule)
        csv::write_row(out, {w.name, format_date(w.start_date), format_date(w.end_date)});
}

}  // namespace reqnet::corpus
