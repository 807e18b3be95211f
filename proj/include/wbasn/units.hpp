#pragma once

// Lengths are yards everywhere inside the model; speeds are configured in km/h.

namespace wbasn::units {

inline constexpr double meters_per_yard = 0.9144;
inline constexpr double seconds_per_hour = 3600.0;

// Blood lactate: 19.8 mg/dL == 2.2 mmol/L.
inline constexpr double mg_dl_per_mmol_l = 9.0;

constexpr double kmh_to_yards_per_s(double kmh) { return kmh * 1000.0 / seconds_per_hour / meters_per_yard; }
constexpr double yards_to_km(double yd) { return yd * meters_per_yard / 1000.0; }
constexpr double km_to_yards(double km) { return km * 1000.0 / meters_per_yard; }
constexpr double yards_to_meters(double yd) { return yd * meters_per_yard; }
constexpr double mmol_l_to_mg_dl(double mmol) { return mmol * mg_dl_per_mmol_l; }

// Speed of light in yards per second.
inline constexpr double light_speed_yards_per_s = 299'792'458.0 / meters_per_yard;

} // namespace wbasn::units
