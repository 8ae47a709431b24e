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

// Multi-label performance metrics: confusion counts, micro-F1, exact match
// ratio, per-label precision/recall/F1 and the mean BCE-with-logits loss.
//
// The counting functions accept any input range of PredictionRecord so
// callers can pass a resample as an index view without copying records.
// Zero denominators yield 0 throughout.

#include <cmath>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>

#include "moralfair/labels.hpp"
#include "moralfair/predio.hpp"

namespace mfair {

struct LabelCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  LabelCounts& operator+=(const LabelCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct ConfusionCounts {
  PerLabel<LabelCounts> per_label{};
  std::int64_t n_records = 0;

  void add(const LabelSet& gold, const LabelSet& predicted) {
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      LabelCounts& c = per_label[i];
      const bool g = gold[i];
      const bool p = predicted[i];
      c.tp += g && p;
      c.fp += !g && p;
      c.fn += g && !p;
      c.tn += !g && !p;
    }
    ++n_records;
  }

  // Shards merge by addition.
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    for (std::size_t i = 0; i < kNumLabels; ++i) per_label[i] += o.per_label[i];
    n_records += o.n_records;
    return *this;
  }

  LabelCounts total() const {
    LabelCounts t;
    for (const auto& c : per_label) t += c;
    return t;
  }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

template <typename R>
concept RecordRange =
    std::ranges::input_range<R> &&
    std::convertible_to<std::ranges::range_reference_t<R>, const PredictionRecord&>;

template <RecordRange R>
ConfusionCounts confusion(R&& records) {
  ConfusionCounts c;
  for (const PredictionRecord& r : records) c.add(r.gold, r.predicted);
  if (c.n_records == 0) throw ValidationError("confusion: empty record list");
  return c;
}

double micro_f1(const ConfusionCounts& counts);

template <RecordRange R>
double exact_match_ratio(R&& records) {
  std::int64_t n = 0;
  std::int64_t exact = 0;
  for (const PredictionRecord& r : records) {
    ++n;
    exact += r.gold == r.predicted;
  }
  if (n == 0) throw ValidationError("exact_match_ratio: empty record list");
  return static_cast<double>(exact) / static_cast<double>(n);
}

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf prf(const LabelCounts& c);
PerLabel<Prf> per_label_prf(const ConfusionCounts& counts);

// log(1 + e^z) without overflow.
inline double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// -(1/L) sum[y log s(z) + (1-y) log(1 - s(z))] written as softplus(z) - y z.
double bce_with_logits(const Logits& z, const LabelSet& gold);
double bce_with_logits(std::span<const Logits> logits, std::span<const LabelSet> golds);

template <RecordRange R>
double bce_with_logits(R&& records) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (const PredictionRecord& r : records) {
    if (!r.logits) throw ValidationError("bce: record '" + r.id + "' has no logits");
    sum += bce_with_logits(*r.logits, r.gold);
    ++n;
  }
  if (n == 0) throw ValidationError("bce: empty record list");
  return sum / static_cast<double>(n);
}

// Absolute drop in percentage points.
double degradation(double in_domain_f1, double cross_domain_f1);

struct MetricReport {
  std::optional<double> loss;  // present when every record carries logits
  double micro_f1 = 0.0;
  double emr = 0.0;
  PerLabel<Prf> per_label{};
  ConfusionCounts counts;
};

MetricReport evaluate(std::span<const PredictionRecord> records);

}  // namespace mfair
