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

// Corpus ingestion: parse the raw Twitter (nested JSON) and Reddit (CSV)
// corpora, aggregate annotator votes, clean text, map the source label
// schemas onto the shared five labels, and split deterministically.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralfair/labels.hpp"

namespace mfair {

/// One annotator's label list for one text. `labels` holds source-schema
/// names in canonical spelling; names outside the schema are kept verbatim.
struct RawAnnotation {
  std::string text_id;
  std::string annotator_id;
  std::vector<std::string> labels;
  // At least one label does not map onto the five target labels
  // (vices, Purity, Thin Morality, nm, nh, or an unknown name).
  bool non_schema = false;

  friend bool operator==(const RawAnnotation&, const RawAnnotation&) = default;
};

struct ParsedText {
  std::string text_id;
  std::string text;
  std::vector<RawAnnotation> annotations;
};

struct ParseResult {
  Platform platform = Platform::kTwitter;
  std::vector<ParsedText> texts;  // ordered by text_id
  std::size_t n_annotations = 0;
  std::map<std::string, std::size_t> non_target_labels;  // name -> occurrences
  std::map<std::string, std::size_t> unknown_labels;     // name -> occurrences
  std::vector<std::string> warnings;
};

// Nested corpus format: [{"Corpus": ..., "Tweets": [{"tweet_id", "tweet_text",
// "annotations": [{"annotator", "annotation": "care,harm"}]}]}].
ParseResult parse_mftc(std::string_view raw);

// CSV with one row per (text, annotator). Required columns: text, annotator,
// annotation (comma-separated label names). Optional column: id. Without an
// id column, texts are numbered mfrc-NNNNNN in order of first appearance.
ParseResult parse_mfrc(std::string_view raw);

enum class LabelClass { kTarget, kNonTarget, kUnknown };

struct SourceLabel {
  std::string canonical;
  LabelClass cls = LabelClass::kUnknown;
  std::optional<Label> target;
};

// Case-insensitive lookup in the platform's declared source schema.
SourceLabel lookup_source_label(std::string_view name, Platform platform);

// Retained character class after lowercasing. Everything else is removed.
inline constexpr std::string_view kRetainedPunctuation = ".,'?!";
inline constexpr std::string_view kRetainedClassDescription =
    "ascii letters, digits, space, and . , ' ? !";

std::string clean_text(std::string_view s);

// Labels whose vote share (distinct annotators naming the label / annotators)
// is at least `threshold`. Throws ValidationError on an empty list.
std::set<std::string> aggregate_annotations(std::span<const RawAnnotation> annotations,
                                            double threshold);

struct Harmonization {
  LabelSet labels;
  std::vector<std::string> dropped;  // source labels with no shared target
  bool excluded() const { return labels.empty(); }
};

// Throws ValidationError naming the label when a name is not in the schema.
Harmonization harmonize(const std::set<std::string>& source_labels, Platform platform);

// nullopt means the instance is excluded (no shared label survives).
std::optional<LabelSet> harmonize_labels(const std::set<std::string>& source_labels,
                                         Platform platform);

struct CanonicalInstance {
  std::string id;
  Platform platform = Platform::kTwitter;
  std::string text;
  LabelSet gold;
  std::size_t n_annotators = 0;

  friend bool operator==(const CanonicalInstance&, const CanonicalInstance&) = default;
};

struct Exclusion {
  std::string id;
  Platform platform = Platform::kTwitter;
  std::string reason;  // "empty_text" or "no_shared_labels"
  std::vector<std::string> dropped;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct CanonicalDataset {
  Platform platform = Platform::kTwitter;
  std::vector<CanonicalInstance> instances;
  std::vector<Exclusion> excluded;
};

inline constexpr double kDefaultAgreement = 0.5;

CanonicalDataset build_canonical(const ParseResult& parsed, double threshold = kDefaultAgreement);

struct SplitSpec {
  std::array<double, 3> ratios = {0.8, 0.1, 0.1};
  std::uint64_t seed = 42;

  void validate() const;
};

struct SplitResult {
  std::vector<CanonicalInstance> train;
  std::vector<CanonicalInstance> val;
  std::vector<CanonicalInstance> test;
};

// Instances are ordered by id, shuffled with mt19937_64(seed), then cut into
// val = floor(n * r_val), test = floor(n * r_test), train = the rest.
SplitResult split_in_domain(std::span<const CanonicalInstance> dataset, const SplitSpec& spec);

struct WordStats {
  std::size_t min = 0;
  double median = 0.0;
  double mean = 0.0;
  std::size_t max = 0;
};

struct CorpusStats {
  std::size_t n_instances = 0;
  PerLabel<std::size_t> label_counts{};
  std::optional<WordStats> words;  // absent for an empty dataset
};

CorpusStats corpus_stats(std::span<const CanonicalInstance> dataset);

// Line-delimited records, fields in order id, platform, text, gold, n_annotators.
std::string to_jsonl(std::span<const CanonicalInstance> instances);
std::string to_jsonl(std::span<const Exclusion> exclusions);
std::vector<CanonicalInstance> read_canonical_jsonl(std::string_view text);

}  // namespace mfair
