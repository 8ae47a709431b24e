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

#pragma once

// Percentile bootstrap with per-resample sub-seeds.
//
// Resample r draws |records| indices with replacement from
// mt19937_64(derive_seed(seed, r)), so results do not depend on how
// resamples are spread over threads. Bounds are nearest-rank percentiles of
// the sorted defined replicate values: lo is element ceil(q m) and hi is
// element ceil((1 - q) m) (1-based), q = (1 - level) / 2, m = defined count.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "moralfair/labels.hpp"
#include "moralfair/random.hpp"

namespace mfair {

struct BootstrapSpec {
  std::size_t n_resamples = 1000;
  double level = 0.95;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()

  void validate() const;
};

struct IntervalEstimate {
  double point = 0.0;  // full-sample statistic
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n_skipped = 0;  // resamples where the statistic was undefined

  friend bool operator==(const IntervalEstimate&, const IntervalEstimate&) = default;
};

using MaybeInterval = std::optional<IntervalEstimate>;

void resample_indices(std::size_t n, std::uint64_t seed, std::size_t r, std::span<std::size_t> out);

// Nearest-rank bounds of `values`, which is sorted in place. values non-empty.
std::pair<double, double> percentile_bounds(std::span<double> values, double level);

// Replicate matrix: out[r][k] is statistic k on resample r (nullopt when
// undefined). `stat(indices, out)` must be thread-safe and write `width` slots.
template <typename Stat>
std::vector<std::vector<std::optional<double>>> bootstrap_replicates(std::size_t n,
                                                                     std::size_t width, Stat&& stat,
                                                                     const BootstrapSpec& spec) {
  spec.validate();
  if (n == 0) throw ValidationError("bootstrap: empty record list");
  std::vector<std::vector<std::optional<double>>> out(spec.n_resamples,
                                                      std::vector<std::optional<double>>(width));
  unsigned threads = spec.threads ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.n_resamples));

  auto worker = [&](unsigned w) {
    std::vector<std::size_t> idx(n);
    for (std::size_t r = w; r < spec.n_resamples; r += threads) {
      resample_indices(n, spec.seed, r, idx);
      stat(std::span<const std::size_t>(idx), std::span<std::optional<double>>(out[r]));
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  return out;
}

// Interval for column k of a replicate matrix; nullopt when the point is
// undefined or no resample produced a value.
MaybeInterval interval_from_replicates(std::optional<double> point,
                                       const std::vector<std::vector<std::optional<double>>>& reps,
                                       std::size_t k, double level);

// Many statistics over the same resamples.
template <typename Stat>
std::vector<MaybeInterval> bootstrap_many(std::size_t n, std::span<const std::optional<double>> points,
                                          Stat&& stat, const BootstrapSpec& spec) {
  const auto reps = bootstrap_replicates(n, points.size(), std::forward<Stat>(stat), spec);
  std::vector<MaybeInterval> out;
  out.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.push_back(interval_from_replicates(points[k], reps, k, spec.level));
  }
  return out;
}

// One statistic over materialized resamples. `statistic` maps a span of
// records to double or std::optional<double>. Throws ValidationError when the
// full-sample statistic or every resample is undefined.
template <typename T, typename Statistic>
IntervalEstimate bootstrap_ci(Statistic&& statistic, std::span<const T> records,
                              const BootstrapSpec& spec) {
  auto eval = [&](std::span<const T> sample) -> std::optional<double> {
    return std::optional<double>(statistic(sample));
  };
  const std::optional<double> point = records.empty() ? std::nullopt : eval(records);
  if (!point) throw ValidationError("bootstrap: statistic undefined on the full sample");
  const auto reps = bootstrap_replicates(
      records.size(), 1,
      [&](std::span<const std::size_t> idx, std::span<std::optional<double>> out) {
        std::vector<T> sample;
        sample.reserve(idx.size());
        for (std::size_t i : idx) sample.push_back(records[i]);
        out[0] = eval(std::span<const T>(sample));
      },
      spec);
  auto ci = interval_from_replicates(point, reps, 0, spec.level);
  if (!ci) throw ValidationError("bootstrap: statistic undefined on every resample");
  return *ci;
}

}  // namespace mfair
