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

#include "cachelab/clock.hpp"

#include <thread>

namespace cachelab {

Instant SteadyClock::now() const {
  return std::chrono::time_point_cast<Duration>(std::chrono::steady_clock::now());
}

void SteadyClock::sleep_until(Instant deadline) {
  // sleep_until may wake marginally early on some platforms; loop until the
  // deadline has really passed so callers can rely on the lower bound.
  while (now() < deadline) {
    std::this_thread::sleep_until(deadline);
  }
}

SteadyClock& SteadyClock::instance() {
  static SteadyClock clock;
  return clock;
}

Instant SimulatedClock::now() const {
  return Instant{Duration{now_.load(std::memory_order_acquire)}};
}

void SimulatedClock::sleep_until(Instant deadline) { set(deadline); }

void SimulatedClock::advance(Duration d) {
  if (d.count() > 0) now_.fetch_add(d.count(), std::memory_order_acq_rel);
}

void SimulatedClock::set(Instant t) {
  auto target = t.time_since_epoch().count();
  auto cur = now_.load(std::memory_order_acquire);
  while (cur < target && !now_.compare_exchange_weak(cur, target, std::memory_order_acq_rel)) {
  }
}

}  // namespace cachelab
