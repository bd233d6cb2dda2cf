#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fermidiscord {

/// Inclusive range start, start + step, ..., up to stop (within 1e-9 steps).
struct GridRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static GridRange single(double x) { return {x, x, 1.0}; }

  /// Parses "start:stop:step" or a single number. Throws InvalidInput.
  static GridRange parse(const std::string& text);

  /// Grid points as start + k * step; throws InvalidInput if empty or invalid.
  std::vector<double> values() const;
};

/// Runs body(k) for k in [0, count) on up to `threads` workers (<= 0 means all
/// hardware threads). Each index is visited exactly once; the first exception
/// thrown by any worker is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace fermidiscord
