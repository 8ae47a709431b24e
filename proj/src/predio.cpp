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

#include "moralfair/predio.hpp"

#include <cmath>
#include <set>

#include "moralfair/io.hpp"
#include "text_util.hpp"

namespace mfair {
namespace {

using detail::format_real;
using detail::parse_real;
using detail::split;

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
}

void check_record(const PredictionRecord& r, const PredictionMeta& meta, const std::string& where) {
  if (r.id.empty()) throw ValidationError(where + "empty id");
  if (r.id.find_first_of("\t\r\n") != std::string::npos) {
    throw ValidationError(where + "id contains a tab or newline");
  }
  if (auto g = target_group(meta.direction); g && *g != r.group) {
    throw ValidationError(where + "group " + std::string(name(r.group)) +
                          " does not match direction " + std::string(tag(meta.direction)));
  }
  if (!r.logits) return;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const double z = (*r.logits)[i];
    if (!std::isfinite(z)) throw ValidationError(where + "non-finite logit");
    if (logit_positive(z, meta.threshold) != r.predicted[i]) {
      throw ConsistencyError(where + "predicted bit for " + std::string(kLabelNames[i]) +
                             " disagrees with logit " + format_real(z) + " at threshold " +
                             format_real(meta.threshold));
    }
  }
}

void check_meta(const PredictionMeta& meta) {
  if (meta.model.empty()) throw ValidationError("header: empty model name");
  auto bad = [](const std::string& s) { return s.find_first_of("\t\r\n") != std::string::npos; };
  if (bad(meta.model) || bad(meta.seed)) {
    throw ValidationError("header: values may not contain tabs or newlines");
  }
  check_threshold(meta.threshold);
}

}  // namespace

std::string_view tag(Direction d) {
  switch (d) {
    case Direction::kMftcToMftc: return "MFTC->MFTC";
    case Direction::kMfrcToMfrc: return "MFRC->MFRC";
    case Direction::kMftcToMfrc: return "MFTC->MFRC";
    case Direction::kMfrcToMftc: return "MFRC->MFTC";
    case Direction::kCrossPooled: return "MFTC<->MFRC";
  }
  return "";
}

std::optional<Direction> direction_from_tag(std::string_view s) {
  for (Direction d : kAllDirections) {
    if (tag(d) == s) return d;
  }
  return std::nullopt;
}

bool is_cross_domain(Direction d) {
  return d == Direction::kMftcToMfrc || d == Direction::kMfrcToMftc || d == Direction::kCrossPooled;
}

std::optional<Platform> target_group(Direction d) {
  switch (d) {
    case Direction::kMftcToMftc:
    case Direction::kMfrcToMftc: return Platform::kTwitter;
    case Direction::kMfrcToMfrc:
    case Direction::kMftcToMfrc: return Platform::kReddit;
    case Direction::kCrossPooled: return std::nullopt;
  }
  return std::nullopt;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

bool logit_positive(double z, double threshold) { return sigmoid(z) >= threshold; }

void validate(const PredictionSet& set) {
  check_meta(set.meta);
  if (set.records.empty()) throw ValidationError("prediction set has no records");
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    const auto& r = set.records[i];
    const std::string where = "record " + std::to_string(i) + ": ";
    check_record(r, set.meta, where);
    if (!ids.insert(r.id).second) throw ValidationError(where + "duplicate id '" + r.id + "'");
  }
}

PredictionSet parse_predictions(std::string_view text) {
  PredictionSet set;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::set<std::string> ids;

  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = line_prefix(line_no);
    const auto fields = split(line, '\t');

    if (!have_header) {
      if (fields.size() < 2 || fields[0] != kMagic) {
        throw ParseError(where + "missing '" + std::string(kMagic) + "' header");
      }
      if (fields[1] != std::to_string(kFormatVersion)) {
        throw ParseError(where + "unsupported format version " + std::string(fields[1]));
      }
      bool model = false, direction = false, threshold = false;
      for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(where + "header field without '=': " + std::string(fields[i]));
        }
        const std::string_view key = fields[i].substr(0, eq);
        const std::string_view value = fields[i].substr(eq + 1);
        if (key == "model") {
          set.meta.model = std::string(value);
          model = true;
        } else if (key == "direction") {
          auto d = direction_from_tag(value);
          if (!d) throw ParseError(where + "unknown direction tag '" + std::string(value) + "'");
          set.meta.direction = *d;
          direction = true;
        } else if (key == "threshold") {
          auto t = parse_real(value);
          if (!t) throw ParseError(where + "bad threshold '" + std::string(value) + "'");
          set.meta.threshold = *t;
          threshold = true;
        } else if (key == "seed") {
          set.meta.seed = std::string(value);
        } else {
          throw ParseError(where + "unknown header field '" + std::string(key) + "'");
        }
      }
      if (!model) throw ParseError(where + "missing header field model");
      if (!direction) throw ParseError(where + "missing header field direction");
      if (!threshold) throw ParseError(where + "missing header field threshold");
      check_meta(set.meta);
      have_header = true;
      continue;
    }

    static constexpr const char* kFieldNames[] = {"id", "group", "gold", "predicted", "logits"};
    if (fields.size() < 4) {
      throw ParseError(where + "missing field " + kFieldNames[fields.size()]);
    }
    if (fields.size() > 5) throw ParseError(where + "too many fields");

    PredictionRecord r;
    r.id = std::string(fields[0]);
    auto group = platform_from_name(fields[1]);
    if (!group) throw ParseError(where + "unknown group '" + std::string(fields[1]) + "'");
    r.group = *group;
    auto bits = [&](std::string_view field, const char* what) {
      if (field.size() != kNumLabels) {
        throw ParseError(where + what + " arity " + std::to_string(field.size()));
      }
      auto ls = LabelSet::from_bits(field);
      if (!ls) throw ParseError(where + what + " bits must be 0 or 1");
      return *ls;
    };
    r.gold = bits(fields[2], "gold");
    r.predicted = bits(fields[3], "predicted");
    if (fields.size() == 5) {
      const auto parts = split(fields[4], ',');
      if (parts.size() != kNumLabels) {
        throw ParseError(where + "logits arity " + std::to_string(parts.size()));
      }
      Logits z{};
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        auto v = parse_real(parts[i]);
        if (!v) throw ParseError(where + "bad logit '" + std::string(parts[i]) + "'");
        z[i] = *v;
      }
      r.logits = z;
    }
    check_record(r, set.meta, where);
    if (!ids.insert(r.id).second) throw ValidationError(where + "duplicate id '" + r.id + "'");
    set.records.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("line 1: missing '" + std::string(kMagic) + "' header");
  if (set.records.empty()) throw ValidationError("prediction file has no records");
  return set;
}

std::string format_predictions(const PredictionSet& set) {
  validate(set);
  std::string out;
  out += kMagic;
  out += '\t' + std::to_string(kFormatVersion);
  out += "\tmodel=" + set.meta.model;
  out += "\tdirection=" + std::string(tag(set.meta.direction));
  out += "\tthreshold=" + format_real(set.meta.threshold);
  out += "\tseed=" + set.meta.seed;
  out += '\n';
  for (const auto& r : set.records) {
    out += r.id;
    out += '\t';
    out += name(r.group);
    out += '\t' + r.gold.bits() + '\t' + r.predicted.bits();
    if (r.logits) {
      out += '\t';
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        if (i) out += ',';
        out += format_real((*r.logits)[i]);
      }
    }
    out += '\n';
  }
  return out;
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_predictions(text);
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_predictions(const PredictionSet& set, const std::filesystem::path& path) {
  write_file(path, format_predictions(set));
}

PredictionSet rethreshold(const PredictionSet& set, double threshold) {
  check_threshold(threshold);
  PredictionSet out = set;
  out.meta.threshold = threshold;
  for (auto& r : out.records) {
    if (!r.logits) throw ValidationError("rethreshold: record '" + r.id + "' has no logits");
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      r.predicted.set(i, logit_positive((*r.logits)[i], threshold));
    }
  }
  return out;
}

}  // namespace mfair
