/*
 * Copyright 2026 The moralfair Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "moralfair/resampling.hpp"

#include <cmath>

namespace mfair {

void BootstrapSpec::validate() const {
  if (n_resamples < 1) throw ValidationError("bootstrap: n_resamples must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("bootstrap: level must lie in (0, 1)");
}

void resample_indices(std::size_t n, std::uint64_t seed, std::size_t r, std::span<std::size_t> out) {
  Engine eng(derive_seed(seed, r));
  for (auto& i : out) i = static_cast<std::size_t>(uniform_below(eng, n));
}

std::pair<double, double> percentile_bounds(std::span<double> values, double level) {
  std::sort(values.begin(), values.end());
  const auto m = static_cast<double>(values.size());
  const double q = (1.0 - level) / 2.0;
  // The epsilon absorbs representation error in q (0.025 * 1000 = 25.000...02).
  auto rank = [&](double p) {
    const double k = std::ceil(p * m - 1e-9);
    return static_cast<std::size_t>(std::clamp(k, 1.0, m)) - 1;
  };
  return {values[rank(q)], values[rank(1.0 - q)]};
}

MaybeInterval interval_from_replicates(std::optional<double> point,
                                       const std::vector<std::vector<std::optional<double>>>& reps,
                                       std::size_t k, double level) {
  if (!point) return std::nullopt;
  std::vector<double> values;
  values.reserve(reps.size());
  for (const auto& row : reps) {
    if (row[k]) values.push_back(*row[k]);
  }
  if (values.empty()) return std::nullopt;
  IntervalEstimate est;
  est.point = *point;
  est.n_skipped = reps.size() - values.size();
  std::tie(est.lo, est.hi) = percentile_bounds(values, level);
  return est;
}

}  // namespace mfair
