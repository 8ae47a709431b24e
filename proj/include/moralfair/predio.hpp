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

// Prediction-file wire format linking classifiers to the audit core.
//
//   mfpred<TAB>1<TAB>model=NAME<TAB>direction=SRC->TGT<TAB>threshold=T<TAB>seed=S
//   id<TAB>group<TAB>gold bits<TAB>predicted bits[<TAB>z1,z2,z3,z4,z5]
//
// Bits are five '0'/'1' chars in label order authority, care, fairness,
// loyalty, non-moral. Reals use the shortest round-trip decimal form.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralfair/labels.hpp"

namespace mfair {

using Logits = std::array<double, kNumLabels>;

// Evaluation scenario named by a direction tag. kCrossPooled holds both
// cross-domain runs in one file: twitter rows came from MFRC->MFTC, reddit
// rows from MFTC->MFRC.
enum class Direction { kMftcToMftc, kMfrcToMfrc, kMftcToMfrc, kMfrcToMftc, kCrossPooled };

inline constexpr std::array<Direction, 5> kAllDirections = {
    Direction::kMftcToMftc, Direction::kMfrcToMfrc, Direction::kMftcToMfrc,
    Direction::kMfrcToMftc, Direction::kCrossPooled};

std::string_view tag(Direction d);  // "MFTC->MFRC", pooled is "MFTC<->MFRC"
std::optional<Direction> direction_from_tag(std::string_view s);
bool is_cross_domain(Direction d);
// Group every record must carry; nullopt for the pooled tag.
std::optional<Platform> target_group(Direction d);

struct PredictionRecord {
  std::string id;
  Platform group = Platform::kTwitter;
  LabelSet gold;
  LabelSet predicted;
  std::optional<Logits> logits;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

struct PredictionMeta {
  std::string model;
  Direction direction = Direction::kMftcToMfrc;
  double threshold = 0.5;
  std::string seed;  // free-form provenance, may be empty

  friend bool operator==(const PredictionMeta&, const PredictionMeta&) = default;
};

struct PredictionSet {
  PredictionMeta meta;
  std::vector<PredictionRecord> records;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kMagic = "mfpred";

double sigmoid(double z);
// Predicted bit implied by a logit under the threshold: sigmoid(z) >= t.
bool logit_positive(double z, double threshold);

// Checks every record and set invariant; throws ValidationError or
// ConsistencyError (logits disagreeing with predicted bits).
void validate(const PredictionSet& set);

PredictionSet parse_predictions(std::string_view text);
std::string format_predictions(const PredictionSet& set);

PredictionSet read_predictions(const std::filesystem::path& path);
void write_predictions(const PredictionSet& set, const std::filesystem::path& path);

// Recomputes predicted bits from logits at a new threshold. Records without
// logits are refused.
PredictionSet rethreshold(const PredictionSet& set, double threshold);

}  // namespace mfair
