#pragma once

// Metrics reduction and CSV output.
//
// CSV files use RFC 4180 quoting, LF line endings, '.' decimals and the
// shortest round-trip representation for doubles. Undefined values (no
// deliveries yet, no death, nothing transmitted) are written as empty fields.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace wbasn {

// Delivered share of transmitted packets, in percent.
inline double throughput_pct(long long received, long long transmitted) {
    if (transmitted == 0) throw UndefinedThroughput();
    if (received < 0 || transmitted < 0 || received > transmitted)
        throw Error("throughput requires 0 <= received <= transmitted");
    return 100.0 * static_cast<double>(received) / static_cast<double>(transmitted);
}

inline std::optional<double> throughput_or_blank(long long received, long long transmitted) {
    if (transmitted == 0) return std::nullopt;
    return throughput_pct(received, transmitted);
}

struct ReportRow {
    int round = 0;
    int alive = 0;
    long long sent_cum = 0;
    long long dropped_cum = 0;
    long long received_cum = 0;
    double residual_total_j = 0.0;
    std::optional<double> mean_delay_s; // over all deliveries so far

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline std::vector<ReportRow> report_rows(const MetricsLog& log) {
    std::vector<ReportRow> rows;
    rows.reserve(log.rounds.size());
    ReportRow acc;
    double delay_sum = 0.0;
    long long delay_n = 0;
    for (const auto& r : log.rounds) {
        acc.round = r.round;
        acc.alive = r.alive;
        acc.sent_cum += r.sent;
        acc.dropped_cum += r.dropped;
        acc.received_cum += r.received;
        acc.residual_total_j = r.residual_j();
        for (double d : r.delays) delay_sum += d;
        delay_n += static_cast<long long>(r.delays.size());
        acc.mean_delay_s = delay_n > 0 ? std::optional(delay_sum / static_cast<double>(delay_n)) : std::nullopt;
        rows.push_back(acc);
    }
    return rows;
}

struct Totals {
    long long triggered = 0;
    long long sent = 0;
    long long dropped = 0;
    long long received = 0;
    long long routing_failed = 0;
    long long delays = 0;
    double delay_sum = 0.0;
};

inline Totals totals(const MetricsLog& log) {
    Totals t;
    for (const auto& r : log.rounds) {
        t.triggered += r.triggered;
        t.sent += r.sent;
        t.dropped += r.dropped;
        t.received += r.received;
        t.routing_failed += r.routing_failed;
        for (double d : r.delays) t.delay_sum += d;
        t.delays += static_cast<long long>(r.delays.size());
    }
    return t;
}

struct RunSummary {
    ProtocolName protocol = ProtocolName::TheFame;
    std::uint64_t seed = 0;
    std::optional<int> stability_period;
    std::optional<double> throughput_pct; // received / per-hop transmissions
    std::optional<double> delivery_pct;   // received / packets generated
    std::optional<double> mean_delay_s;
    Totals totals;
    double final_residual_j = 0.0;
};

inline RunSummary summarize(const MatchResult& r) {
    RunSummary s;
    s.protocol = r.protocol;
    s.seed = r.seed;
    s.stability_period = stability_period(r.log);
    s.totals = totals(r.log);
    s.throughput_pct = throughput_or_blank(s.totals.received, s.totals.sent);
    s.delivery_pct = throughput_or_blank(s.totals.received, s.totals.triggered);
    if (s.totals.delays > 0) s.mean_delay_s = s.totals.delay_sum / static_cast<double>(s.totals.delays);
    s.final_residual_j = r.log.rounds.empty() ? 0.0 : r.log.rounds.back().residual_j();
    return s;
}

// ---- CSV primitives ----

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename T>
std::string format_optional(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) return format_double(*v);
    else return std::to_string(*v);
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

// ---- timeseries.csv ----

inline constexpr std::string_view timeseries_header =
    "round,alive,sent_cum,dropped_cum,received_cum,residual_total_J,mean_delay_s";

inline std::string timeseries_csv(const std::vector<ReportRow>& rows) {
    std::string out(timeseries_header);
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.round) + ',' + std::to_string(r.alive) + ',' + std::to_string(r.sent_cum) + ',' +
               std::to_string(r.dropped_cum) + ',' + std::to_string(r.received_cum) + ',' +
               format_double(r.residual_total_j) + ',' + format_optional(r.mean_delay_s) + '\n';
    }
    return out;
}

inline std::vector<ReportRow> parse_timeseries_csv(std::string_view text) {
    std::vector<ReportRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != timeseries_header) throw Error("timeseries.csv: unexpected header");
    auto to_ll = [](const std::string& f) {
        long long v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || p != f.data() + f.size()) throw Error("timeseries.csv: bad integer '" + f + "'");
        return v;
    };
    auto to_d = [](const std::string& f) {
        double v = 0;
        auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || p != f.data() + f.size()) throw Error("timeseries.csv: bad number '" + f + "'");
        return v;
    };
    while (std::getline(in, line)) {
        auto f = split_csv_line(line);
        if (f.size() != 7) throw Error("timeseries.csv: expected 7 columns");
        ReportRow r;
        r.round = static_cast<int>(to_ll(f[0]));
        r.alive = static_cast<int>(to_ll(f[1]));
        r.sent_cum = to_ll(f[2]);
        r.dropped_cum = to_ll(f[3]);
        r.received_cum = to_ll(f[4]);
        r.residual_total_j = to_d(f[5]);
        if (!f[6].empty()) r.mean_delay_s = to_d(f[6]);
        rows.push_back(r);
    }
    return rows;
}

// ---- events.csv ----

inline constexpr std::string_view events_header = "player_id,time_s,cause,value,unit,value_mg_dl";

inline std::string events_csv(const std::vector<FatigueEvent>& events) {
    std::string out(events_header);
    out += '\n';
    for (const auto& e : events) {
        bool lactate = e.cause == FatigueCause::Lactate;
        out += std::to_string(e.player_id) + ',' + format_double(e.time_s) + ',' + std::string(to_string(e.cause)) +
               ',' + format_double(e.value) + ',' + csv_field(lactate ? "mmol/L" : "km") + ',' +
               (lactate ? format_double(units::mmol_l_to_mg_dl(e.value)) : std::string()) + '\n';
    }
    return out;
}

// ---- trajectory.csv (optional) ----

inline constexpr std::string_view trajectory_header = "player_id,t,x,y,mode,lactate";

inline std::string trajectory_csv(const std::vector<TraceRow>& rows) {
    std::string out(trajectory_header);
    out += '\n';
    for (const auto& r : rows)
        out += std::to_string(r.player_id) + ',' + std::to_string(r.t) + ',' + format_double(r.x) + ',' +
               format_double(r.y) + ',' + std::string(to_string(r.mode)) + ',' + format_double(r.lactate) + '\n';
    return out;
}

// ---- summary.csv ----

inline constexpr std::string_view summary_header =
    "protocol,seed,stability_period,throughput_pct,delivery_pct,mean_delay_s,triggered,sent,received,dropped,"
    "routing_failed,final_residual_J,stability_ratio";

inline std::string summary_line(const RunSummary& s) {
    const Totals& t = s.totals;
    return std::string(to_string(s.protocol)) + ',' + std::to_string(s.seed) + ',' +
           format_optional(s.stability_period) + ',' + format_optional(s.throughput_pct) + ',' +
           format_optional(s.delivery_pct) + ',' + format_optional(s.mean_delay_s) + ',' +
           std::to_string(t.triggered) + ',' + std::to_string(t.sent) + ',' + std::to_string(t.received) + ',' +
           std::to_string(t.dropped) + ',' + std::to_string(t.routing_failed) + ',' +
           format_double(s.final_residual_j) + ",\n";
}

// THE-FAME minus WSTM for one seed; stability_ratio is THE-FAME / WSTM.
inline std::string delta_line(const RunSummary& fame, const RunSummary& wstm) {
    auto diff = [](const auto& a, const auto& b) -> std::string {
        if (!a || !b) return {};
        return format_optional(std::optional(*a - *b));
    };
    std::string ratio;
    if (fame.stability_period && wstm.stability_period && *wstm.stability_period > 0)
        ratio = format_double(static_cast<double>(*fame.stability_period) / *wstm.stability_period);
    const Totals& a = fame.totals;
    const Totals& b = wstm.totals;
    return "delta," + std::to_string(fame.seed) + ',' + diff(fame.stability_period, wstm.stability_period) + ',' +
           diff(fame.throughput_pct, wstm.throughput_pct) + ',' + diff(fame.delivery_pct, wstm.delivery_pct) + ',' +
           diff(fame.mean_delay_s, wstm.mean_delay_s) + ',' + std::to_string(a.triggered - b.triggered) + ',' +
           std::to_string(a.sent - b.sent) + ',' + std::to_string(a.received - b.received) + ',' +
           std::to_string(a.dropped - b.dropped) + ',' + std::to_string(a.routing_failed - b.routing_failed) + ',' +
           format_double(fame.final_residual_j - wstm.final_residual_j) + ',' + ratio + '\n';
}

inline std::string summary_csv(const std::vector<RunSummary>& runs) {
    std::string out(summary_header);
    out += '\n';
    for (const auto& r : runs) out += summary_line(r);
    // pair up by seed, in the order THE-FAME runs appear
    for (const auto& fame : runs) {
        if (fame.protocol != ProtocolName::TheFame) continue;
        for (const auto& wstm : runs)
            if (wstm.protocol == ProtocolName::Wstm && wstm.seed == fame.seed) out += delta_line(fame, wstm);
    }
    return out;
}

// ---- files ----

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for '" + path.string() + "'");
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Per-run files go to `run_dir`; the summary covering every run goes to
// `summary_dir`.
inline void emit_run_files(const MatchResult& r, const std::filesystem::path& run_dir) {
    write_file(run_dir / "timeseries.csv", timeseries_csv(report_rows(r.log)));
    write_file(run_dir / "events.csv", events_csv(r.events));
    if (!r.trace.empty()) write_file(run_dir / "trajectory.csv", trajectory_csv(r.trace));
}

inline void emit_reports(const std::vector<MatchResult>& runs, const std::filesystem::path& out_dir) {
    if (runs.empty()) throw Error("emit_reports: no completed runs");
    std::vector<RunSummary> summaries;
    if (runs.size() == 1) {
        emit_run_files(runs.front(), out_dir);
    } else {
        for (const auto& r : runs)
            emit_run_files(r, out_dir / std::string(to_string(r.protocol)) / ("seed_" + std::to_string(r.seed)));
    }
    for (const auto& r : runs) summaries.push_back(summarize(r));
    write_file(out_dir / "summary.csv", summary_csv(summaries));
}

} // namespace wbasn
