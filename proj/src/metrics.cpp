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

#include "moralfair/metrics.hpp"

#include <algorithm>

namespace mfair {
namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double micro_f1(const ConfusionCounts& counts) {
  const LabelCounts t = counts.total();
  return ratio(2 * t.tp, 2 * t.tp + t.fp + t.fn);
}

Prf prf(const LabelCounts& c) {
  Prf out;
  out.precision = ratio(c.tp, c.tp + c.fp);
  out.recall = ratio(c.tp, c.tp + c.fn);
  // Same value as the harmonic mean of precision and recall, from integers.
  out.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return out;
}

PerLabel<Prf> per_label_prf(const ConfusionCounts& counts) {
  PerLabel<Prf> out{};
  for (std::size_t i = 0; i < kNumLabels; ++i) out[i] = prf(counts.per_label[i]);
  return out;
}

double bce_with_logits(const Logits& z, const LabelSet& gold) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    sum += softplus(z[i]) - (gold[i] ? z[i] : 0.0);
  }
  return sum / static_cast<double>(kNumLabels);
}

double bce_with_logits(std::span<const Logits> logits, std::span<const LabelSet> golds) {
  if (logits.size() != golds.size()) throw ValidationError("bce: logits and golds misaligned");
  if (logits.empty()) throw ValidationError("bce: empty record list");
  double sum = 0.0;
  for (std::size_t r = 0; r < logits.size(); ++r) sum += bce_with_logits(logits[r], golds[r]);
  return sum / static_cast<double>(logits.size());
}

double degradation(double in_domain_f1, double cross_domain_f1) {
  return (in_domain_f1 - cross_domain_f1) * 100.0;
}

MetricReport evaluate(std::span<const PredictionRecord> records) {
  MetricReport rep;
  rep.counts = confusion(records);
  rep.micro_f1 = micro_f1(rep.counts);
  rep.emr = exact_match_ratio(records);
  rep.per_label = per_label_prf(rep.counts);
  if (std::all_of(records.begin(), records.end(), [](const auto& r) { return r.logits; })) {
    rep.loss = bce_with_logits(records);
  }
  return rep;
}

}  // namespace mfair
