#pragma once

// Command-line front end.
//
//   run      --scenario <file> [--seed <n>] [--out <dir>] [--trace]
//   compare  --scenario <file> --seeds <n..m> [--out <dir>]
//   validate --scenario <file>
//
// Exit codes: 0 success, 1 invalid scenario, 2 runtime failure, 64 usage error.

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "scenario.hpp"

namespace wbasn {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_runtime = 2;
inline constexpr int exit_usage = 64;

inline constexpr const char* out_dir_env = "WBASN_OUT_DIR";

struct SeedRange {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
};

// "7" or "0..9" (inclusive).
inline std::optional<SeedRange> parse_seed_range(std::string_view text) {
    auto parse = [](std::string_view s) -> std::optional<std::uint64_t> {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
        return v;
    };
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        auto v = parse(text);
        if (!v) return std::nullopt;
        return SeedRange{*v, *v};
    }
    auto a = parse(text.substr(0, dots));
    auto b = parse(text.substr(dots + 2));
    if (!a || !b || *a > *b) return std::nullopt;
    return SeedRange{*a, *b};
}

namespace detail {

inline std::string default_out_dir() {
    const char* env = std::getenv(out_dir_env);
    return env != nullptr && *env != '\0' ? std::string(env) : std::string("out");
}

inline Scenario load(const std::string& path) { return path.empty() ? parse_scenario_text("") : parse_scenario(path); }

inline void print_summary(std::ostream& out, const RunSummary& s) {
    auto show = [](const auto& v, int precision = 2) {
        std::ostringstream o;
        if (v) o << std::fixed << std::setprecision(precision) << *v;
        else o << "-";
        return o.str();
    };
    out << std::left << std::setw(8) << to_string(s.protocol) << " seed " << std::setw(4) << s.seed
        << " stability " << std::setw(6) << show(s.stability_period, 0) << " throughput% " << std::setw(7)
        << show(s.throughput_pct) << " delivery% " << std::setw(7) << show(s.delivery_pct) << " delay_ms "
        << std::setw(7) << show(s.mean_delay_s ? std::optional(*s.mean_delay_s * 1e3) : std::nullopt, 3)
        << " sent " << std::setw(6) << s.totals.sent << " residual_J " << show(std::optional(s.final_residual_j), 4)
        << '\n';
}

} // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Body-area sensor network simulator for soccer fatigue telemetry", "wbasn_sim"};
    app.require_subcommand(1, 1);

    std::string scenario_path;
    std::string out_dir = detail::default_out_dir();
    std::optional<std::uint64_t> seed;
    std::string seeds_text;
    bool trace = false;

    auto* run = app.add_subcommand("run", "Run one match and write CSV reports");
    run->add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--out", out_dir, "Output directory (env WBASN_OUT_DIR, else ./out)");
    run->add_flag("--trace", trace, "Also write per-round trajectory.csv");

    auto* compare = app.add_subcommand("compare", "Run THE-FAME and WSTM on paired seeds");
    compare->add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");
    compare->add_option("--seeds", seeds_text, "Seed or inclusive range n..m")->required();
    compare->add_option("--out", out_dir, "Output directory (env WBASN_OUT_DIR, else ./out)");

    auto* check = app.add_subcommand("validate", "Parse and validate a scenario file");
    check->add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        Scenario base = detail::load(scenario_path);

        if (check->parsed()) {
            out << "ok: " << to_string(base.protocol.name) << ", " << base.players << " players, " << base.rounds
                << " rounds, " << base.field.sinks.size() << " sinks (" << to_string(base.field.placement) << ")\n";
            return exit_ok;
        }

        if (run->parsed()) {
            if (seed) base.seed = *seed;
            MatchResult r = run_match(base, RunOptions{trace});
            emit_reports({r}, out_dir);
            detail::print_summary(out, summarize(r));
            return exit_ok;
        }

        auto range = parse_seed_range(seeds_text);
        if (!range) {
            err << "usage error: --seeds expects n or n..m, got '" << seeds_text << "'\n";
            return exit_usage;
        }
        std::vector<Scenario> plan;
        for (std::uint64_t s = range->first;; ++s) {
            for (ProtocolName p : {ProtocolName::TheFame, ProtocolName::Wstm}) {
                plan.push_back(with_protocol(base, p));
                plan.back().seed = s;
            }
            if (s == range->last) break;
        }
        // independent runs, at most one per hardware thread at a time
        std::size_t width = std::max(1u, std::thread::hardware_concurrency());
        std::vector<MatchResult> results;
        for (std::size_t i = 0; i < plan.size(); i += width) {
            std::vector<std::future<MatchResult>> batch;
            for (std::size_t j = i; j < std::min(plan.size(), i + width); ++j)
                batch.push_back(std::async(std::launch::async, [&sc = plan[j]] { return run_match(sc); }));
            for (auto& f : batch) results.push_back(f.get());
        }
        emit_reports(results, out_dir);
        for (const auto& r : results) detail::print_summary(out, summarize(r));
        out << results.size() << " runs written to " << out_dir << '\n';
        return exit_ok;
    } catch (const ParseError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return exit_invalid;
    } catch (const ValidationError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}

} // namespace wbasn
