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

#include "moralfair/fairness.hpp"

#include <cmath>
#include <numeric>

namespace mfair {
namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

constexpr std::size_t kTwitter = static_cast<std::size_t>(Platform::kTwitter);
constexpr std::size_t kReddit = static_cast<std::size_t>(Platform::kReddit);

// Per label: dp_signed, dp_abs, eo, mfc. Then the aggregate.
constexpr std::size_t kStatsPerLabel = 4;
constexpr std::size_t kStatWidth = kStatsPerLabel * kNumLabels + 1;

void flatten(const FairnessPoint& fp, std::span<std::optional<double>> out) {
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const auto& f = fp.per_label[i];
    out[kStatsPerLabel * i + 0] = f.dp_signed;
    out[kStatsPerLabel * i + 1] = f.dp_abs;
    out[kStatsPerLabel * i + 2] = f.eo;
    out[kStatsPerLabel * i + 3] = f.mfc;
  }
  out[kStatWidth - 1] = fp.mfc_aggregate;
}

}  // namespace

GroupRates rates_from_counts(const std::array<PerLabel<RateCounts>, 2>& counts) {
  GroupRates gr;
  gr.counts = counts;
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      const RateCounts& c = counts[g][i];
      LabelRates& r = gr.rates[g][i];
      r.positive_rate = ratio(c.predicted_pos, c.n);
      r.tpr = ratio(c.true_pos, c.gold_pos);
      r.fpr = ratio(c.false_pos, c.n - c.gold_pos);
    }
  }
  return gr;
}

std::optional<DpDifference> dp_difference(const GroupRates& rates, Label label) {
  const auto& tw = rates.at(Platform::kTwitter, label).positive_rate;
  const auto& rd = rates.at(Platform::kReddit, label).positive_rate;
  if (!tw || !rd) return std::nullopt;
  const double s = *tw - *rd;
  return DpDifference{s, std::abs(s)};
}

std::optional<double> eo_difference(const GroupRates& rates, Label label) {
  const LabelRates& tw = rates.at(Platform::kTwitter, label);
  const LabelRates& rd = rates.at(Platform::kReddit, label);
  if (!tw.tpr || !rd.tpr || !tw.fpr || !rd.fpr) return std::nullopt;
  return std::max(std::abs(*tw.tpr - *rd.tpr), std::abs(*tw.fpr - *rd.fpr));
}

MfcResult mfc_from_diffs(const PerLabel<double>& diffs) {
  MfcResult out;
  out.diff = diffs;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (!(diffs[i] >= 0.0 && diffs[i] <= 1.0)) {
      throw ValidationError("mfc: difference for " + std::string(kLabelNames[i]) +
                            " outside [0, 1]");
    }
    out.per_label[i] = 1.0 - diffs[i];
  }
  out.aggregate = std::accumulate(out.per_label.begin(), out.per_label.end(), 0.0) /
                  static_cast<double>(kNumLabels);
  return out;
}

MfcResult mfc(const std::map<Direction, PerLabel<double>>& per_direction_rates) {
  const auto r2t = per_direction_rates.find(Direction::kMfrcToMftc);
  const auto t2r = per_direction_rates.find(Direction::kMftcToMfrc);
  if (r2t == per_direction_rates.end()) throw ValidationError("mfc: missing direction MFRC->MFTC");
  if (t2r == per_direction_rates.end()) throw ValidationError("mfc: missing direction MFTC->MFRC");
  PerLabel<double> diffs{};
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    diffs[i] = std::abs(r2t->second[i] - t2r->second[i]);
  }
  return mfc_from_diffs(diffs);
}

std::map<Direction, PerLabel<double>> direction_rates(const GroupRates& rates) {
  std::map<Direction, PerLabel<double>> out;
  auto take = [&](std::size_t g, Direction d) {
    if (rates.counts[g][0].n == 0) return;
    PerLabel<double> v{};
    for (std::size_t i = 0; i < kNumLabels; ++i) v[i] = *rates.rates[g][i].positive_rate;
    out.emplace(d, v);
  };
  take(kTwitter, Direction::kMfrcToMftc);
  take(kReddit, Direction::kMftcToMfrc);
  return out;
}

FairnessPoint fairness_point(const GroupRates& rates) {
  FairnessPoint fp;
  fp.rates = rates;
  const auto dirs = direction_rates(rates);
  std::optional<MfcResult> m;
  if (dirs.size() == 2) m = mfc(dirs);
  for (Label l : kAllLabels) {
    LabelFairness& f = fp.per_label[index(l)];
    if (auto dp = dp_difference(rates, l)) {
      f.dp_signed = dp->signed_diff;
      f.dp_abs = dp->abs_diff;
    }
    f.eo = eo_difference(rates, l);
    if (m) f.mfc = m->per_label[index(l)];
  }
  if (m) fp.mfc_aggregate = m->aggregate;
  return fp;
}

FairnessReport fairness_report(std::span<const PredictionRecord> records, const BootstrapSpec& spec) {
  FairnessReport rep;
  rep.n_records = records.size();
  rep.point = fairness_point(records);

  std::vector<std::optional<double>> points(kStatWidth);
  flatten(rep.point, points);
  const auto cis = bootstrap_many(
      records.size(), points,
      [&](std::span<const std::size_t> idx, std::span<std::optional<double>> out) {
        auto view = idx | std::views::transform(
                              [&](std::size_t i) -> const PredictionRecord& { return records[i]; });
        flatten(fairness_point(view), out);
      },
      spec);
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    LabelFairnessCi& c = rep.per_label[i];
    c.dp_signed = cis[kStatsPerLabel * i + 0];
    c.dp_abs = cis[kStatsPerLabel * i + 1];
    c.eo = cis[kStatsPerLabel * i + 2];
    c.mfc = cis[kStatsPerLabel * i + 3];
  }
  rep.mfc_aggregate = cis[kStatWidth - 1];
  return rep;
}

}  // namespace mfair
