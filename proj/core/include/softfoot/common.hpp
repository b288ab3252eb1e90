#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace softfoot {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kGravity = 9.80665;  // standard gravity [m/s^2]

/// Thrown when input values violate a documented precondition.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numeric routine cannot produce a valid result
/// (non-convergence, singular system, degenerate geometry).
class solve_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("SOFTFOOT_LOG");
    if (!env) return LogLevel::quiet;
    const std::string v(env);
    if (v == "debug" || v == "2") return LogLevel::debug;
    if (v == "info" || v == "1") return LogLevel::info;
    return LogLevel::quiet;
  }();
  return level;
}

}  // namespace detail

inline void log_info(const std::string& msg) {
  if (detail::log_level() >= detail::LogLevel::info) std::cerr << "[softfoot] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
  if (detail::log_level() >= detail::LogLevel::debug) std::cerr << "[softfoot] " << msg << "\n";
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input(msg);
}

}  // namespace softfoot
