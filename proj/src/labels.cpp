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

#include "moralfair/labels.hpp"

namespace mfair {

std::optional<Label> label_from_name(std::string_view s) {
  for (Label l : kAllLabels) {
    if (name(l) == s) return l;
  }
  return std::nullopt;
}

std::string_view name(Platform p) { return p == Platform::kTwitter ? "twitter" : "reddit"; }

std::string_view corpus_name(Platform p) { return p == Platform::kTwitter ? "MFTC" : "MFRC"; }

std::optional<Platform> platform_from_name(std::string_view s) {
  if (s == "twitter") return Platform::kTwitter;
  if (s == "reddit") return Platform::kReddit;
  return std::nullopt;
}

std::optional<Platform> platform_from_corpus(std::string_view s) {
  if (s == "MFTC") return Platform::kTwitter;
  if (s == "MFRC") return Platform::kReddit;
  return std::nullopt;
}

LabelSet LabelSet::from_mask(std::uint8_t m) {
  LabelSet out;
  for (std::size_t i = 0; i < kNumLabels; ++i) out.set(i, (m >> i) & 1U);
  return out;
}

std::string LabelSet::bits() const {
  std::string s(kNumLabels, '0');
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (bits_.test(i)) s[i] = '1';
  }
  return s;
}

std::optional<LabelSet> LabelSet::from_bits(std::string_view s) {
  if (s.size() != kNumLabels) return std::nullopt;
  LabelSet out;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (s[i] == '1') {
      out.set(i);
    } else if (s[i] != '0') {
      return std::nullopt;
    }
  }
  return out;
}

std::vector<std::string> LabelSet::names() const {
  std::vector<std::string> out;
  for (Label l : kAllLabels) {
    if (has(l)) out.emplace_back(name(l));
  }
  return out;
}

}  // namespace mfair
