// Copyright 2026 The Accord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCORD_EVAL_INL_H_
#define ACCORD_EVAL_INL_H_

#include <algorithm>
#include <cmath>
#include <random>

namespace accord::eval {

inline double quantile_sorted(const std::vector<double> &sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

template <typename Stat>
Interval bootstrap_interval(std::vector<double> values, Stat stat, std::uint64_t seed,
                            int resamples) {
  Interval out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  out.estimate = stat(values);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(std::max(resamples, 0)));
  std::vector<double> sample(values.size());
  for (int r = 0; r < resamples; ++r) {
    for (auto &s : sample) s = values[pick(rng)];
    stats.push_back(stat(sample));
  }
  std::sort(stats.begin(), stats.end());
  out.low = quantile_sorted(stats, 0.025);
  out.high = quantile_sorted(stats, 0.975);
  if (stats.empty()) out.low = out.high = out.estimate;
  return out;
}

}  // namespace accord::eval

#endif  // ACCORD_EVAL_INL_H_
