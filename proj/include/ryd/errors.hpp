#pragma once

#include <stdexcept>
#include <string>

namespace ryd {

// Exact integer/rational intermediates exceeded the configured budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive refinement failed to reach the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error_(achieved) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// Missing or inconsistent configuration (e.g. quantum defect not set).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Structural misuse: non-degenerate basis, non-Hermitian input, dimension
// mismatch.
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

// A coupling channel sits too close to resonance for a second-order
// estimate to mean anything. Carries the channel identity.
class ResonanceAlarm : public std::runtime_error {
 public:
  ResonanceAlarm(const std::string& what, std::string channel)
      : std::runtime_error(what), channel_(std::move(channel)) {}
  const std::string& channel() const { return channel_; }

 private:
  std::string channel_;
};

// Two pulses overlap in time on the same target.
class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ryd
