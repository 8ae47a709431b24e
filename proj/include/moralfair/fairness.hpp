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

// Group fairness across the platform attribute: per-label demographic
// parity difference, equalized odds difference, and Moral Fairness
// Consistency (one minus the gap in per-label detection rates between the
// two cross-domain directions).

#include <array>
#include <map>
#include <optional>
#include <span>

#include "moralfair/labels.hpp"
#include "moralfair/metrics.hpp"
#include "moralfair/predio.hpp"
#include "moralfair/resampling.hpp"

namespace mfair {

struct RateCounts {
  std::int64_t n = 0;
  std::int64_t predicted_pos = 0;
  std::int64_t gold_pos = 0;
  std::int64_t true_pos = 0;   // gold 1, predicted 1
  std::int64_t false_pos = 0;  // gold 0, predicted 1
};

// Rates are nullopt when their conditioning set is empty.
struct LabelRates {
  std::optional<double> positive_rate;
  std::optional<double> tpr;
  std::optional<double> fpr;
};

struct GroupRates {
  std::array<PerLabel<RateCounts>, 2> counts{};  // indexed by Platform
  std::array<PerLabel<LabelRates>, 2> rates{};

  const LabelRates& at(Platform g, Label l) const {
    return rates[static_cast<std::size_t>(g)][index(l)];
  }
  std::int64_t group_size(Platform g) const { return counts[static_cast<std::size_t>(g)][0].n; }
};

GroupRates rates_from_counts(const std::array<PerLabel<RateCounts>, 2>& counts);

template <RecordRange R>
GroupRates group_rates(R&& records) {
  std::array<PerLabel<RateCounts>, 2> counts{};
  for (const PredictionRecord& r : records) {
    auto& g = counts[static_cast<std::size_t>(r.group)];
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      const bool gold = r.gold[i];
      const bool pred = r.predicted[i];
      RateCounts& c = g[i];
      ++c.n;
      c.predicted_pos += pred;
      c.gold_pos += gold;
      c.true_pos += gold && pred;
      c.false_pos += !gold && pred;
    }
  }
  return rates_from_counts(counts);
}

struct DpDifference {
  double signed_diff = 0.0;  // twitter rate - reddit rate
  double abs_diff = 0.0;
};

std::optional<DpDifference> dp_difference(const GroupRates& rates, Label label);

// max(|TPR_tw - TPR_rd|, |FPR_tw - FPR_rd|)
std::optional<double> eo_difference(const GroupRates& rates, Label label);

struct MfcResult {
  PerLabel<double> diff{};
  PerLabel<double> per_label{};  // 1 - diff
  double aggregate = 0.0;        // mean of per_label
};

MfcResult mfc_from_diffs(const PerLabel<double>& diffs);

// Needs the two cross-domain directions (MFRC->MFTC and MFTC->MFRC), each
// mapped to its per-label predicted-positive rate.
MfcResult mfc(const std::map<Direction, PerLabel<double>>& per_direction_rates);

// Per-label predicted-positive rate of each direction found in a pooled
// cross-domain record set: twitter rows are MFRC->MFTC, reddit rows
// MFTC->MFRC. Directions with no rows are absent.
std::map<Direction, PerLabel<double>> direction_rates(const GroupRates& rates);

struct LabelFairness {
  std::optional<double> dp_signed;
  std::optional<double> dp_abs;
  std::optional<double> eo;
  std::optional<double> mfc;
};

struct FairnessPoint {
  GroupRates rates;
  PerLabel<LabelFairness> per_label{};
  std::optional<double> mfc_aggregate;  // needs all five per-label values
};

FairnessPoint fairness_point(const GroupRates& rates);

template <RecordRange R>
FairnessPoint fairness_point(R&& records) {
  return fairness_point(group_rates(std::forward<R>(records)));
}

struct LabelFairnessCi {
  MaybeInterval dp_signed;
  MaybeInterval dp_abs;
  MaybeInterval eo;
  MaybeInterval mfc;
};

struct FairnessReport {
  FairnessPoint point;
  PerLabel<LabelFairnessCi> per_label{};
  MaybeInterval mfc_aggregate;
  std::size_t n_records = 0;
};

// Point estimates plus bootstrap intervals over pooled cross-domain records.
FairnessReport fairness_report(std::span<const PredictionRecord> records, const BootstrapSpec& spec);

}  // namespace mfair
