#pragma once

namespace fwe {

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kEps0 = 8.8541878128e-12;         // F/m
inline constexpr double kMilToMeter = 2.54e-5;
inline constexpr double kInchToMeter = 0.0254;

/// One inch of free-space flight time, in picoseconds (~84.7253).
inline constexpr double kVacuumDelayPsPerInch = kInchToMeter / kSpeedOfLight * 1e12;

}  // namespace fwe
