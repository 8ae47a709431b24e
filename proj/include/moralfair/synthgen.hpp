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

// Synthetic prediction sets with known group rates. Each label is drawn
// independently: gold ~ Bernoulli(base_rate), then predicted ~
// Bernoulli(tpr) when gold is 1 and Bernoulli(fpr) when gold is 0.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "moralfair/labels.hpp"
#include "moralfair/predio.hpp"

namespace mfair {

struct GroupSynth {
  PerLabel<double> base_rate{};
  PerLabel<double> tpr{};
  PerLabel<double> fpr{};
  std::size_t n = 0;  // 0 means the group is not generated
};

struct SynthConfig {
  std::array<GroupSynth, 2> groups{};  // indexed by Platform
  std::uint64_t seed = 42;
  std::string model = "synthetic";
  Direction direction = Direction::kCrossPooled;
  bool logits = false;  // emit logits consistent with the 0.5 threshold

  GroupSynth& group(Platform p) { return groups[static_cast<std::size_t>(p)]; }
  const GroupSynth& group(Platform p) const { return groups[static_cast<std::size_t>(p)]; }

  void validate() const;
};

// Records are numbered tw-NNNNNN then rd-NNNNNN; record i draws from its own
// stream mt19937_64(derive_seed(seed, i)).
PredictionSet generate(const SynthConfig& config);

struct ExpectedMetrics {
  std::array<PerLabel<double>, 2> positive_rate{};
  std::array<PerLabel<double>, 2> tpr{};
  std::array<PerLabel<double>, 2> fpr{};
  PerLabel<double> dp_signed{};
  PerLabel<double> dp_abs{};
  PerLabel<double> eo{};
  PerLabel<double> mfc{};
  double mfc_aggregate = 0.0;
};

// Closed form: positive_rate = base * tpr + (1 - base) * fpr per group.
// Requires both groups.
ExpectedMetrics expected_metrics(const SynthConfig& config);

// JSON config:
//   {"seed": 7, "model": "synthetic", "direction": "MFTC<->MFRC", "logits": false,
//    "groups": {"twitter": {"n": 1000, "base_rate": 0.3, "tpr": [..5..], "fpr": 0.1},
//               "reddit": {...}}}
// Rate fields take a scalar (all labels) or a five-element array.
SynthConfig parse_synth_config(std::string_view json_text);
std::string format_synth_config(const SynthConfig& config);

}  // namespace mfair
