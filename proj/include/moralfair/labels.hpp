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

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfair {

// Error idiom shared by every module.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The five harmonized labels. Enumerator order is the fixed bit order used
// everywhere (alphabetical, so serialized names come out sorted too).
enum class Label : std::uint8_t { kAuthority = 0, kCare, kFairness, kLoyalty, kNonMoral };

inline constexpr std::size_t kNumLabels = 5;

inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kAuthority, Label::kCare, Label::kFairness, Label::kLoyalty, Label::kNonMoral};

inline constexpr std::array<std::string_view, kNumLabels> kLabelNames = {
    "authority", "care", "fairness", "loyalty", "non-moral"};

constexpr std::size_t index(Label l) { return static_cast<std::size_t>(l); }
constexpr std::string_view name(Label l) { return kLabelNames[index(l)]; }
std::optional<Label> label_from_name(std::string_view s);

// Per-label quantity in fixed label order.
template <typename T>
using PerLabel = std::array<T, kNumLabels>;

// The sensitive attribute: platform of origin.
enum class Platform : std::uint8_t { kTwitter = 0, kReddit = 1 };

std::string_view name(Platform p);
// Corpus short name: MFTC for twitter, MFRC for reddit.
std::string_view corpus_name(Platform p);
std::optional<Platform> platform_from_name(std::string_view s);
std::optional<Platform> platform_from_corpus(std::string_view s);

// Fixed-order presence vector over the five labels.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<Label> labels) {
    for (Label l : labels) set(l);
  }

  bool has(Label l) const { return bits_.test(index(l)); }
  bool operator[](std::size_t i) const { return bits_.test(i); }
  LabelSet& set(Label l, bool v = true) {
    bits_.set(index(l), v);
    return *this;
  }
  LabelSet& set(std::size_t i, bool v = true) {
    bits_.set(i, v);
    return *this;
  }

  bool empty() const { return bits_.none(); }
  std::size_t count() const { return bits_.count(); }
  std::uint8_t mask() const { return static_cast<std::uint8_t>(bits_.to_ulong()); }
  static LabelSet from_mask(std::uint8_t m);

  // "01000" style, one char per label in fixed order.
  std::string bits() const;
  static std::optional<LabelSet> from_bits(std::string_view s);

  // Label names of set bits, alphabetical.
  std::vector<std::string> names() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::bitset<kNumLabels> bits_;
};

}  // namespace mfair
