// Copyright 2026 The cachelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CACHELAB_CLOCK_HPP_
#define CACHELAB_CLOCK_HPP_

#include <atomic>
#include <chrono>

namespace cachelab {

using Duration = std::chrono::nanoseconds;
using Instant = std::chrono::time_point<std::chrono::steady_clock, Duration>;

/// Monotonic time source. Every expiry decision and every duration measured
/// by the library goes through one of these, so tests can substitute a
/// simulated clock and get bit-for-bit reproducible outcomes.
class Clock {
 public:
  virtual ~Clock() = default;

  /// Successive readings are non-decreasing.
  virtual Instant now() const = 0;

  /// Blocks until now() >= deadline. A simulated clock jumps forward instead.
  virtual void sleep_until(Instant deadline) = 0;

  void sleep_for(Duration d) { sleep_until(now() + d); }
};

/// std::chrono::steady_clock.
class SteadyClock final : public Clock {
 public:
  Instant now() const override;
  void sleep_until(Instant deadline) override;

  /// Process-wide instance; stateless, so sharing it is fine.
  static SteadyClock& instance();
};

/// Manually driven clock. Time moves only through advance(), set() or
/// sleep_until(); it starts at Instant{} (zero since epoch).
class SimulatedClock final : public Clock {
 public:
  SimulatedClock() = default;
  explicit SimulatedClock(Instant start) : now_(start.time_since_epoch().count()) {}

  Instant now() const override;
  void sleep_until(Instant deadline) override;

  void advance(Duration d);
  /// Moves to t. Moving backwards is ignored to keep readings monotone.
  void set(Instant t);

 private:
  std::atomic<Duration::rep> now_{0};
};

/// Whole milliseconds of d, truncated toward zero.
inline std::int64_t to_millis(Duration d) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
}

/// Fractional milliseconds of d.
inline double to_millis_f(Duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

/// Instant at `ms` milliseconds after the simulated epoch.
inline Instant at_ms(std::int64_t ms) { return Instant{std::chrono::milliseconds(ms)}; }

}  // namespace cachelab

#endif  // CACHELAB_CLOCK_HPP_
