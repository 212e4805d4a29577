// Shared primitive types and unit helpers for the HetNet simulator.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hetsim {

using CellId = int;
using UeId = int;

// Simulation step: one LTE TTI.
inline constexpr int kTtiMs = 1;

inline constexpr double kSpeedOfLightMps = 2.99792458e8;

enum class Tier { macro_cell, pico_cell };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const = default;
  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  return a;
}

// Wraps an angle into (-pi, pi]; used for antenna bearings.
inline double wrap_angle_pi(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

}  // namespace hetsim
