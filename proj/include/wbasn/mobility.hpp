#pragma once

// Reference Point Group Mobility for two soccer teams.
//
// Each team follows a group reference point (the team centroid) doing random
// waypoint motion inside a central box of the pitch. A player's anchor is the
// reference plus a fixed formation offset; the player chases a local waypoint
// drawn uniformly in a disc of `deviation_radius` around that anchor, never
// moving faster than the speed of its current mode.
//
// Modes follow a sprint/recovery schedule: sprints start as a Poisson process
// during free play, last 2-5 s and are always followed by a walking recovery of
// `rest_per_work` times the sprint length. Free play alternates Run and Walk
// episodes.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "rng.hpp"
#include "units.hpp"

namespace wbasn {

enum class SpeedMode { Rest, Walk, Run, Sprint };

inline std::string_view to_string(SpeedMode m) {
    switch (m) {
    case SpeedMode::Rest: return "rest";
    case SpeedMode::Walk: return "walk";
    case SpeedMode::Run: return "run";
    case SpeedMode::Sprint: return "sprint";
    }
    return "?";
}

struct MobilityParams {
    double v_walk_kmh = 6.0;
    double v_run_min_kmh = 10.3;
    double v_run_max_kmh = 12.9;
    double v_sprint_kmh = 25.0;
    double sprint_min_s = 2.0;
    double sprint_max_s = 5.0;
    double sprints_per_match = 100.0;
    double match_duration_s = 5400.0;
    double rest_per_work = 2.0; // work:rest 1:2
    double run_probability = 0.5;
    double episode_min_s = 5.0;
    double episode_max_s = 30.0;
    double deviation_radius = 5.0;  // yards
    double group_ref_speed_kmh = 4.0;
};

inline void validate(const MobilityParams& p) {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be > 0");
    };
    auto non_negative = [](double v, const char* key) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be >= 0");
    };
    positive(p.v_walk_kmh, "mobility.v_walk");
    positive(p.v_run_min_kmh, "mobility.v_run_min");
    positive(p.v_run_max_kmh, "mobility.v_run_max");
    positive(p.v_sprint_kmh, "mobility.v_sprint");
    positive(p.sprint_min_s, "mobility.sprint_min");
    positive(p.sprint_max_s, "mobility.sprint_max");
    non_negative(p.sprints_per_match, "mobility.sprints_per_match");
    positive(p.match_duration_s, "mobility.match_duration");
    non_negative(p.rest_per_work, "mobility.rest_per_work");
    non_negative(p.deviation_radius, "mobility.deviation_radius");
    non_negative(p.group_ref_speed_kmh, "mobility.group_ref_speed");
    positive(p.episode_min_s, "mobility.episode_min");
    positive(p.episode_max_s, "mobility.episode_max");
    if (p.run_probability < 0.0 || p.run_probability > 1.0)
        throw ValidationError("mobility.run_probability", "must lie in [0, 1]");
    if (!(p.v_walk_kmh < p.v_run_min_kmh)) throw ValidationError("mobility.v_walk", "must be < v_run_min");
    if (p.v_run_min_kmh > p.v_run_max_kmh) throw ValidationError("mobility.v_run_min", "must be <= v_run_max");
    if (!(p.v_run_max_kmh < p.v_sprint_kmh)) throw ValidationError("mobility.v_run_max", "must be < v_sprint");
    if (p.sprint_min_s > p.sprint_max_s) throw ValidationError("mobility.sprint_min", "must be <= sprint_max");
    if (p.episode_min_s > p.episode_max_s) throw ValidationError("mobility.episode_min", "must be <= episode_max");
    double busy = p.sprints_per_match * (1.0 + p.rest_per_work) * 0.5 * (p.sprint_min_s + p.sprint_max_s);
    if (busy >= p.match_duration_s)
        throw ValidationError("mobility.sprints_per_match", "sprints and recoveries exceed the match duration");
}

// Per-second sprint onset rate during free play, chosen so that a renewal
// cycle (wait + sprint + recovery) repeats `sprints_per_match` times per match.
inline double sprint_onset_rate(const MobilityParams& p) {
    if (p.sprints_per_match <= 0.0) return 0.0;
    double mean_sprint = 0.5 * (p.sprint_min_s + p.sprint_max_s);
    double free_time = p.match_duration_s - p.sprints_per_match * (1.0 + p.rest_per_work) * mean_sprint;
    return p.sprints_per_match / free_time;
}

struct PlayerKinematics {
    int player_id = 0;
    int team = 0;
    Point position;
    Point formation_offset;
    Point deviation; // current local waypoint, relative to the anchor
    SpeedMode mode = SpeedMode::Walk;
    double speed_kmh = 0.0;
    double mode_time_left = 0.0; // seconds
    bool recovering = false;
    double cumulative_distance_km = 0.0;
    int sprint_count = 0;
    double last_sprint_s = 0.0;
};

inline double mode_speed_yards_per_s(const PlayerKinematics& k) {
    return k.mode == SpeedMode::Rest ? 0.0 : units::kmh_to_yards_per_s(k.speed_kmh);
}

// Axis-aligned box the group reference wanders in.
struct Box {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

inline Point random_point(const Box& b, Rng& rng) {
    return {rng.uniform(b.x_min, b.x_max), rng.uniform(b.y_min, b.y_max)};
}

// Central band of the pitch: 30-70 % of the length, 35-65 % of the width.
inline Box reference_box(const FieldConfig& f) {
    return {0.30 * f.length, 0.70 * f.length, 0.35 * f.width, 0.65 * f.width};
}

struct GroupReference {
    Point position;
    Point waypoint;
    Box box;
};

inline GroupReference make_group_reference(const FieldConfig& field, Rng& rng) {
    Box box = reference_box(field);
    Point start = random_point(box, rng);
    return {start, random_point(box, rng), box};
}

// Random waypoint step. A new waypoint is drawn once the current one is reached.
inline Point step_group_reference(GroupReference& g, const MobilityParams& params, double dt,
                                  const FieldConfig& field, Rng& rng) {
    double reach = units::kmh_to_yards_per_s(params.group_ref_speed_kmh) * dt;
    Point to = g.waypoint - g.position;
    double gap = std::hypot(to.x, to.y);
    if (gap <= reach) {
        g.position = g.waypoint;
        g.waypoint = random_point(g.box, rng);
    } else {
        g.position = g.position + (reach / gap) * to;
    }
    g.position = clamp_to_field(g.position, field);
    return g.position;
}

inline Point random_in_disc(double radius, Rng& rng) {
    double r = radius * std::sqrt(rng.uniform());
    double theta = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

inline Point anchor_of(const PlayerKinematics& k, Point ref, const FieldConfig& field) {
    return clamp_to_field(ref + k.formation_offset, field);
}

// Moves the player toward its local waypoint, capped at the mode speed. Returns
// the displacement in yards.
inline double step_player(PlayerKinematics& k, Point ref, const MobilityParams& params, double dt,
                          const FieldConfig& field, Rng& rng) {
    double reach = mode_speed_yards_per_s(k) * dt;
    if (reach <= 0.0) return 0.0;
    Point target = clamp_to_field(anchor_of(k, ref, field) + k.deviation, field);
    Point to = target - k.position;
    double gap = std::hypot(to.x, to.y);
    Point next;
    if (gap <= reach) {
        next = target;
        k.deviation = random_in_disc(params.deviation_radius, rng);
    } else {
        next = k.position + (reach / gap) * to;
    }
    next = clamp_to_field(next, field);
    double moved = distance(k.position, next);
    k.position = next;
    k.cumulative_distance_km += units::yards_to_km(moved);
    return moved;
}

// Quantises a duration to a whole number of steps (at least one).
inline double quantise(double seconds, double dt) { return std::max(1.0, std::round(seconds / dt)) * dt; }

inline void start_free_episode(PlayerKinematics& k, const MobilityParams& p, double dt, Rng& rng) {
    k.recovering = false;
    if (rng.bernoulli(p.run_probability)) {
        k.mode = SpeedMode::Run;
        k.speed_kmh = rng.uniform(p.v_run_min_kmh, p.v_run_max_kmh);
    } else {
        k.mode = SpeedMode::Walk;
        k.speed_kmh = p.v_walk_kmh;
    }
    k.mode_time_left = quantise(rng.uniform(p.episode_min_s, p.episode_max_s), dt);
}

// Picks the mode for the coming step and consumes `dt` of it.
inline SpeedMode schedule_mode(PlayerKinematics& k, const MobilityParams& p, double dt, Rng& rng) {
    constexpr double eps = 1e-9;
    if (k.mode_time_left <= eps) {
        if (k.mode == SpeedMode::Sprint && p.rest_per_work > 0.0) {
            k.recovering = true;
            k.mode = SpeedMode::Walk;
            k.speed_kmh = p.v_walk_kmh;
            // rounded up so the recovery is never shorter than rest_per_work x sprint
            k.mode_time_left = std::ceil(p.rest_per_work * k.last_sprint_s / dt - eps) * dt;
        } else {
            start_free_episode(k, p, dt, rng);
        }
    }
    if (!k.recovering && k.mode != SpeedMode::Sprint) {
        double rate = sprint_onset_rate(p);
        if (rate > 0.0 && rng.bernoulli(1.0 - std::exp(-rate * dt))) {
            k.mode = SpeedMode::Sprint;
            k.speed_kmh = p.v_sprint_kmh;
            k.mode_time_left = quantise(rng.uniform(p.sprint_min_s, p.sprint_max_s), dt);
            k.last_sprint_s = k.mode_time_left;
            ++k.sprint_count;
        }
    }
    k.mode_time_left -= dt;
    return k.mode;
}

// Formation offsets relative to the team centroid for a side defending x = 0:
// a keeper behind three outfield lines (roughly 40/40/20 split). Team 1 is the
// mirror image.
inline std::vector<Point> formation_offsets(int team_size, int team) {
    std::vector<Point> out;
    if (team_size <= 0) return out;
    double sign = team == 0 ? 1.0 : -1.0;
    out.push_back({sign * -40.0, 0.0});
    int outfield = team_size - 1;
    int defenders = static_cast<int>(std::lround(0.4 * outfield));
    int attackers = static_cast<int>(std::lround(0.2 * outfield));
    int midfield = outfield - defenders - attackers;
    auto line = [&](int count, double x) {
        for (int i = 0; i < count; ++i) {
            double y = count == 1 ? 0.0 : -24.0 + 48.0 * i / (count - 1);
            out.push_back({sign * x, y});
        }
    };
    line(defenders, -22.0);
    line(midfield, 0.0);
    line(attackers, 18.0);
    return out;
}

struct Teams {
    std::vector<GroupReference> references; // one per team
    std::vector<PlayerKinematics> players;  // ids 0..n-1, team 0 first
};

// Splits `player_count` across two teams (team 0 gets the extra player when
// odd) and places every player on its local waypoint.
inline Teams make_teams(int player_count, const FieldConfig& field, const MobilityParams& params, Rng& rng) {
    Teams t;
    int sizes[2] = {(player_count + 1) / 2, player_count / 2};
    int next_id = 0;
    for (int team = 0; team < 2; ++team) {
        t.references.push_back(make_group_reference(field, rng));
        for (Point offset : formation_offsets(sizes[team], team)) {
            PlayerKinematics k;
            k.player_id = next_id++;
            k.team = team;
            k.formation_offset = offset;
            k.deviation = random_in_disc(params.deviation_radius, rng);
            k.position = clamp_to_field(anchor_of(k, t.references[team].position, field) + k.deviation, field);
            t.players.push_back(k);
        }
    }
    return t;
}

} // namespace wbasn
