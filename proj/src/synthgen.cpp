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

#include "moralfair/synthgen.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "moralfair/random.hpp"

namespace mfair {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_rates(const PerLabel<double>& v, std::string_view what, Platform g) {
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw ValidationError("synth: " + std::string(name(g)) + " " + std::string(what) + " for " +
                            std::string(kLabelNames[i]) + " outside [0, 1]");
    }
  }
}

PerLabel<double> read_rates(const json& j, std::string_view key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing '" + std::string(key) + "'");
  PerLabel<double> out{};
  if (it->is_number()) {
    out.fill(it->get<double>());
  } else if (it->is_array() && it->size() == kNumLabels) {
    for (std::size_t i = 0; i < kNumLabels; ++i) out[i] = (*it)[i].get<double>();
  } else {
    throw ValidationError(where + "." + std::string(key) + ": expected a number or 5 numbers");
  }
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  const GroupSynth& tw = group(Platform::kTwitter);
  const GroupSynth& rd = group(Platform::kReddit);
  if (tw.n == 0 && rd.n == 0) throw ValidationError("synth: no group has records");
  for (Platform p : {Platform::kTwitter, Platform::kReddit}) {
    const GroupSynth& g = group(p);
    if (g.n == 0) continue;
    check_rates(g.base_rate, "base_rate", p);
    check_rates(g.tpr, "tpr", p);
    check_rates(g.fpr, "fpr", p);
  }
  if (auto target = target_group(direction)) {
    const Platform other = *target == Platform::kTwitter ? Platform::kReddit : Platform::kTwitter;
    if (group(*target).n == 0 || group(other).n != 0) {
      throw ValidationError("synth: direction " + std::string(tag(direction)) +
                            " needs records for the " + std::string(name(*target)) +
                            " group only");
    }
  }
  if (model.empty()) throw ValidationError("synth: empty model name");
}

PredictionSet generate(const SynthConfig& config) {
  config.validate();
  PredictionSet set;
  set.meta.model = config.model;
  set.meta.direction = config.direction;
  set.meta.threshold = 0.5;
  set.meta.seed = std::to_string(config.seed);

  std::uint64_t stream = 0;
  for (Platform p : {Platform::kTwitter, Platform::kReddit}) {
    const GroupSynth& g = config.group(p);
    for (std::size_t k = 0; k < g.n; ++k, ++stream) {
      Engine eng(derive_seed(config.seed, stream));
      PredictionRecord r;
      char id[32];
      std::snprintf(id, sizeof id, "%s-%06zu", p == Platform::kTwitter ? "tw" : "rd", k);
      r.id = id;
      r.group = p;
      Logits z{};
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        const bool gold = uniform01(eng) < g.base_rate[i];
        const bool pred = uniform01(eng) < (gold ? g.tpr[i] : g.fpr[i]);
        r.gold.set(i, gold);
        r.predicted.set(i, pred);
        if (config.logits) {
          // Positive logits predict 1, strictly negative ones predict 0.
          const double mag = 4.0 * uniform01(eng);
          z[i] = pred ? mag : -(mag + 1e-3);
        }
      }
      if (config.logits) r.logits = z;
      set.records.push_back(std::move(r));
    }
  }
  return set;
}

ExpectedMetrics expected_metrics(const SynthConfig& config) {
  config.validate();
  if (config.group(Platform::kTwitter).n == 0 || config.group(Platform::kReddit).n == 0) {
    throw ValidationError("synth: expected metrics need both groups");
  }
  ExpectedMetrics e;
  for (std::size_t g = 0; g < 2; ++g) {
    const GroupSynth& gs = config.groups[g];
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      e.positive_rate[g][i] = gs.base_rate[i] * gs.tpr[i] + (1.0 - gs.base_rate[i]) * gs.fpr[i];
      e.tpr[g][i] = gs.tpr[i];
      e.fpr[g][i] = gs.fpr[i];
    }
  }
  constexpr std::size_t tw = static_cast<std::size_t>(Platform::kTwitter);
  constexpr std::size_t rd = static_cast<std::size_t>(Platform::kReddit);
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    e.dp_signed[i] = e.positive_rate[tw][i] - e.positive_rate[rd][i];
    e.dp_abs[i] = std::abs(e.dp_signed[i]);
    e.eo[i] = std::max(std::abs(e.tpr[tw][i] - e.tpr[rd][i]), std::abs(e.fpr[tw][i] - e.fpr[rd][i]));
    e.mfc[i] = 1.0 - e.dp_abs[i];
    sum += e.mfc[i];
  }
  e.mfc_aggregate = sum / static_cast<double>(kNumLabels);
  return e;
}

SynthConfig parse_synth_config(std::string_view json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("synth config: not a JSON object");
  SynthConfig c;
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("logits")) c.logits = j.at("logits").get<bool>();
    if (j.contains("direction")) {
      const auto t = j.at("direction").get<std::string>();
      auto d = direction_from_tag(t);
      if (!d) throw ValidationError("synth config: unknown direction '" + t + "'");
      c.direction = *d;
    }
    const json& groups = j.at("groups");
    for (const auto& [key, gj] : groups.items()) {
      auto p = platform_from_name(key);
      if (!p) throw ValidationError("synth config: unknown group '" + key + "'");
      const std::string where = "synth config: groups." + key;
      GroupSynth& g = c.group(*p);
      g.n = gj.at("n").get<std::size_t>();
      if (g.n == 0) throw ValidationError(where + ".n must be positive");
      g.base_rate = read_rates(gj, "base_rate", where);
      g.tpr = read_rates(gj, "tpr", where);
      g.fpr = read_rates(gj, "fpr", where);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string format_synth_config(const SynthConfig& config) {
  ordered_json j;
  j["seed"] = config.seed;
  j["model"] = config.model;
  j["direction"] = tag(config.direction);
  j["logits"] = config.logits;
  ordered_json groups = ordered_json::object();
  for (Platform p : {Platform::kTwitter, Platform::kReddit}) {
    const GroupSynth& g = config.group(p);
    if (g.n == 0) continue;
    groups[std::string(name(p))] = {{"n", g.n},
                                    {"base_rate", g.base_rate},
                                    {"tpr", g.tpr},
                                    {"fpr", g.fpr}};
  }
  j["groups"] = groups;
  return j.dump(2) + "\n";
}

}  // namespace mfair
