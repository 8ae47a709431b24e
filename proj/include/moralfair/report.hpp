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

// Audit assembly and rendering. An audit takes any mix of prediction files
// (one per scenario, or a pooled cross-domain file), groups them by model
// and produces performance, degradation, fairness/MFC and correlation
// sections. Missing inputs leave explicit gaps rather than zeros.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralfair/corpus.hpp"
#include "moralfair/correlation.hpp"
#include "moralfair/fairness.hpp"
#include "moralfair/metrics.hpp"
#include "moralfair/predio.hpp"
#include "moralfair/resampling.hpp"

namespace mfair {

inline constexpr std::string_view kToolName = "moralfair";
inline constexpr std::string_view kToolVersion = MORALFAIR_VERSION;

enum class Format { kStructured, kCsv, kMarkdown };
std::optional<Format> format_from_name(std::string_view s);  // structured | csv | markdown-table

struct InputFile {
  std::string path;
  std::string sha256;
  PredictionSet set;
};

InputFile load_input(const std::filesystem::path& path);

struct PrfIntervals {
  MaybeInterval precision;
  MaybeInterval recall;
  MaybeInterval f1;
};

struct ScenarioReport {
  Direction direction = Direction::kMftcToMftc;
  std::size_t n_records = 0;
  MetricReport point;
  MaybeInterval loss;
  MaybeInterval micro_f1;
  MaybeInterval emr;
  PerLabel<PrfIntervals> per_label{};
};

ScenarioReport evaluate_scenario(Direction direction, std::span<const PredictionRecord> records,
                                 const BootstrapSpec& spec);

struct DegradationEntry {
  Platform source = Platform::kTwitter;
  double in_domain_f1 = 0.0;
  double cross_domain_f1 = 0.0;
  double points = 0.0;
};

struct ModelAudit {
  std::string model;
  std::map<Direction, ScenarioReport> scenarios;  // single-direction keys only
  std::vector<DegradationEntry> degradation;
  std::optional<FairnessReport> fairness;
  std::optional<CorrelationReport> correlation;
  std::vector<std::string> gaps;
};

struct Sections {
  bool performance = true;
  bool fairness = true;
  bool correlation = true;
};

struct AuditOptions {
  BootstrapSpec boot;
  CorrelationMode corr_mode = CorrelationMode::kPerLabel;
  std::optional<double> threshold;  // re-threshold logits when it differs from a file's
  Sections sections;
};

struct InputSummary {
  std::string path;
  std::string sha256;
  PredictionMeta meta;
  std::size_t n_records = 0;
};

struct AuditReport {
  AuditOptions options;
  std::vector<InputSummary> inputs;
  std::vector<ModelAudit> models;  // ordered by model name
};

AuditReport audit(const std::vector<InputFile>& inputs, const AuditOptions& options);

// Per-label metric vectors over pooled cross-domain records, keyed as
// validate_mfc expects. nullopt if any value is undefined.
std::optional<std::map<std::string, std::vector<double>>> per_label_metric_vectors(
    std::span<const PredictionRecord> pooled_cross);

std::string render(const AuditReport& report, Format format);
std::string render(const MfcResult& result, Format format);
std::string render(const CorrelationReport& report, Format format);
std::string render(const CorpusStats& stats, Format format);

}  // namespace mfair
