#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pcrange::cli {

enum class ExitCode : int { ok = 0, usage = 2, numeric = 3, infeasible = 4 };

enum class SweepVariable { snr_db, delta_r_m, range_m, pulse_duration_s };
enum class SweepScale { linear, log };

/// "start:stop:points[:lin|:log]".
struct SweepSpec {
  SweepVariable variable = SweepVariable::snr_db;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 0;
  SweepScale scale = SweepScale::linear;

  static SweepSpec parse(std::string_view text, SweepVariable variable, SweepScale default_scale);
  /// Throws DomainError unless points >= 2, start < stop and log endpoints
  /// are positive.
  void validate() const;
  std::vector<double> values() const;
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcrange::cli
