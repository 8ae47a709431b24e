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

#include "moralfair/report.hpp"

#include <cstdio>
#include <ranges>

#include "json.hpp"
#include "moralfair/io.hpp"
#include "text_util.hpp"

namespace mfair {
namespace {

using nlohmann::ordered_json;

constexpr std::array<Direction, 4> kScenarioOrder = {
    Direction::kMftcToMftc, Direction::kMfrcToMfrc, Direction::kMftcToMfrc,
    Direction::kMfrcToMftc};

// Scenario replicate layout: loss, micro_f1, emr, then precision/recall/f1 per label.
constexpr std::size_t kScenarioWidth = 3 + 3 * kNumLabels;

template <RecordRange R>
void scenario_stats(R&& records, bool with_loss, std::span<std::optional<double>> out) {
  ConfusionCounts counts;
  std::int64_t exact = 0;
  double loss = 0.0;
  for (const PredictionRecord& r : records) {
    counts.add(r.gold, r.predicted);
    exact += r.gold == r.predicted;
    if (with_loss) loss += bce_with_logits(*r.logits, r.gold);
  }
  const auto n = static_cast<double>(counts.n_records);
  out[0] = with_loss ? std::optional<double>(loss / n) : std::nullopt;
  out[1] = micro_f1(counts);
  out[2] = static_cast<double>(exact) / n;
  const auto prfs = per_label_prf(counts);
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    out[3 + 3 * i + 0] = prfs[i].precision;
    out[3 + 3 * i + 1] = prfs[i].recall;
    out[3 + 3 * i + 2] = prfs[i].f1;
  }
}

// mfc, f1, precision, recall, dp, eo, in validate_mfc key order.
constexpr std::array<std::string_view, 6> kVectorKeys = {"mfc", "f1", "precision",
                                                          "recall", "dp", "eo"};
using MetricVectors = std::array<PerLabel<double>, kVectorKeys.size()>;

template <RecordRange R>
std::optional<MetricVectors> metric_vectors(R&& records) {
  ConfusionCounts counts;
  std::array<PerLabel<RateCounts>, 2> rate_counts{};
  for (const PredictionRecord& r : records) {
    counts.add(r.gold, r.predicted);
    auto& g = rate_counts[static_cast<std::size_t>(r.group)];
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      const bool gold = r.gold[i];
      const bool pred = r.predicted[i];
      ++g[i].n;
      g[i].predicted_pos += pred;
      g[i].gold_pos += gold;
      g[i].true_pos += gold && pred;
      g[i].false_pos += !gold && pred;
    }
  }
  const FairnessPoint fp = fairness_point(rates_from_counts(rate_counts));
  const auto prfs = per_label_prf(counts);
  MetricVectors v{};
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const LabelFairness& f = fp.per_label[i];
    if (!f.mfc || !f.dp_abs || !f.eo) return std::nullopt;
    v[0][i] = *f.mfc;
    v[1][i] = prfs[i].f1;
    v[2][i] = prfs[i].precision;
    v[3][i] = prfs[i].recall;
    v[4][i] = *f.dp_abs;
    v[5][i] = *f.eo;
  }
  return v;
}

auto index_view(std::span<const PredictionRecord> records, std::span<const std::size_t> idx) {
  return idx | std::views::transform(
                   [records](std::size_t i) -> const PredictionRecord& { return records[i]; });
}

std::string scenario_gap(Direction d) {
  return "performance: scenario " + std::string(tag(d)) + " absent";
}

CorrelationReport pooled_correlation(std::span<const PredictionRecord> pooled,
                                     const BootstrapSpec& spec) {
  constexpr std::size_t width = kVectorKeys.size() * kNumLabels;
  const auto reps = bootstrap_replicates(
      pooled.size(), width,
      [&](std::span<const std::size_t> idx, std::span<std::optional<double>> out) {
        auto v = metric_vectors(index_view(pooled, idx));
        for (std::size_t k = 0; k < kVectorKeys.size(); ++k) {
          for (std::size_t i = 0; i < kNumLabels; ++i) {
            out[k * kNumLabels + i] = v ? std::optional<double>(v->at(k)[i]) : std::nullopt;
          }
        }
      },
      spec);
  std::map<std::string, std::vector<double>> vectors;
  for (const auto& row : reps) {
    if (!row[0]) continue;  // the whole row is undefined together
    for (std::size_t k = 0; k < kVectorKeys.size(); ++k) {
      auto& dst = vectors[std::string(kVectorKeys[k])];
      for (std::size_t i = 0; i < kNumLabels; ++i) dst.push_back(*row[k * kNumLabels + i]);
    }
  }
  if (vectors.empty()) throw ValidationError("correlation: no resample defined every metric");
  return validate_mfc(vectors, CorrelationMode::kBootstrapPooled);
}

ModelAudit audit_model(const std::string& model,
                       const std::map<Direction, std::vector<PredictionRecord>>& by_direction,
                       const AuditOptions& opt) {
  ModelAudit ma;
  ma.model = model;
  auto records_for = [&](Direction d) -> const std::vector<PredictionRecord>* {
    auto it = by_direction.find(d);
    return it == by_direction.end() || it->second.empty() ? nullptr : &it->second;
  };

  if (opt.sections.performance) {
    for (Direction d : kScenarioOrder) {
      if (const auto* recs = records_for(d)) {
        ma.scenarios.emplace(d, evaluate_scenario(d, *recs, opt.boot));
      } else {
        ma.gaps.push_back(scenario_gap(d));
      }
    }
    const std::pair<Platform, std::pair<Direction, Direction>> pairs[] = {
        {Platform::kTwitter, {Direction::kMftcToMftc, Direction::kMftcToMfrc}},
        {Platform::kReddit, {Direction::kMfrcToMfrc, Direction::kMfrcToMftc}}};
    for (const auto& [source, dirs] : pairs) {
      auto in = ma.scenarios.find(dirs.first);
      auto cross = ma.scenarios.find(dirs.second);
      if (in == ma.scenarios.end() || cross == ma.scenarios.end()) {
        ma.gaps.push_back("degradation: " + std::string(corpus_name(source)) +
                          " needs both its in-domain and cross-domain scenario");
        continue;
      }
      const double a = in->second.point.micro_f1;
      const double b = cross->second.point.micro_f1;
      ma.degradation.push_back({source, a, b, degradation(a, b)});
    }
  }

  if (!opt.sections.fairness && !opt.sections.correlation) return ma;
  const auto* r2t = records_for(Direction::kMfrcToMftc);
  const auto* t2r = records_for(Direction::kMftcToMfrc);
  if (!r2t || !t2r) {
    ma.gaps.push_back("fairness: needs both cross-domain directions (MFRC->MFTC and MFTC->MFRC)");
    return ma;
  }
  std::vector<PredictionRecord> pooled(*r2t);
  pooled.insert(pooled.end(), t2r->begin(), t2r->end());

  if (opt.sections.fairness) ma.fairness = fairness_report(pooled, opt.boot);
  if (opt.sections.correlation) {
    if (opt.corr_mode == CorrelationMode::kPerLabel) {
      auto vectors = per_label_metric_vectors(pooled);
      if (vectors) {
        ma.correlation = validate_mfc(*vectors, CorrelationMode::kPerLabel);
      } else {
        ma.gaps.push_back("correlation: a per-label fairness value is undefined");
      }
    } else {
      ma.correlation = pooled_correlation(pooled, opt.boot);
    }
  }
  return ma;
}

// ---- formatting helpers ----

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fixed4(*v) : "n/a"; }

std::string fmt(const MaybeInterval& v) {
  if (!v) return "n/a";
  return fixed4(v->point) + " (" + fixed4(v->lo) + "-" + fixed4(v->hi) + ")";
}

std::string percent(double level) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%g%%", level * 100.0);
  return buf;
}

ordered_json to_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json to_json(const MaybeInterval& v) {
  if (!v) return nullptr;
  ordered_json j;
  j["point"] = v->point;
  j["lo"] = v->lo;
  j["hi"] = v->hi;
  j["skipped"] = v->n_skipped;
  return j;
}

ordered_json to_json(const ScenarioReport& s) {
  ordered_json j;
  j["direction"] = tag(s.direction);
  j["n"] = s.n_records;
  j["loss"] = to_json(s.loss);
  j["micro_f1"] = to_json(s.micro_f1);
  j["emr"] = to_json(s.emr);
  ordered_json per = ordered_json::object();
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const LabelCounts& c = s.point.counts.per_label[i];
    ordered_json l;
    l["precision"] = to_json(s.per_label[i].precision);
    l["recall"] = to_json(s.per_label[i].recall);
    l["f1"] = to_json(s.per_label[i].f1);
    l["tp"] = c.tp;
    l["fp"] = c.fp;
    l["fn"] = c.fn;
    l["tn"] = c.tn;
    per[std::string(kLabelNames[i])] = l;
  }
  j["per_label"] = per;
  return j;
}

ordered_json to_json(const FairnessReport& f) {
  ordered_json j;
  j["n"] = f.n_records;
  ordered_json groups = ordered_json::object();
  for (Platform p : {Platform::kTwitter, Platform::kReddit}) {
    ordered_json g;
    g["n"] = f.point.rates.group_size(p);
    ordered_json per = ordered_json::object();
    for (Label l : kAllLabels) {
      const LabelRates& r = f.point.rates.at(p, l);
      per[std::string(name(l))] = {{"positive_rate", to_json(r.positive_rate)},
                                   {"tpr", to_json(r.tpr)},
                                   {"fpr", to_json(r.fpr)}};
    }
    g["per_label"] = per;
    groups[std::string(name(p))] = g;
  }
  j["groups"] = groups;
  ordered_json per = ordered_json::object();
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const LabelFairnessCi& c = f.per_label[i];
    per[std::string(kLabelNames[i])] = {{"dp_signed", to_json(c.dp_signed)},
                                        {"dp_abs", to_json(c.dp_abs)},
                                        {"eo", to_json(c.eo)},
                                        {"mfc", to_json(c.mfc)}};
  }
  j["per_label"] = per;
  j["mfc_aggregate"] = to_json(f.mfc_aggregate);
  return j;
}

std::string_view p_method(PValueMode m) {
  return m == PValueMode::kExact ? "exact-permutation" : "student-t";
}

ordered_json to_json(const CorrelationReport& c) {
  ordered_json j;
  j["mode"] = name(c.mode);
  j["p_value_method"] = p_method(c.p_mode);
  ordered_json entries = ordered_json::array();
  for (const auto& e : c.entries) {
    entries.push_back({{"metric", e.metric},
                       {"rho", to_json(e.rho)},
                       {"p_value", to_json(e.p_value)},
                       {"n", e.n}});
  }
  j["entries"] = entries;
  return j;
}

ordered_json to_json(const AuditReport& rep) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  const AuditOptions& o = rep.options;
  j["settings"] = {{"seed", o.boot.seed},
                   {"boot_n", o.boot.n_resamples},
                   {"boot_level", o.boot.level},
                   {"percentile", "nearest-rank"},
                   {"threshold", to_json(o.threshold)},
                   {"corr_mode", name(o.corr_mode)}};
  ordered_json inputs = ordered_json::array();
  for (const auto& in : rep.inputs) {
    inputs.push_back({{"path", in.path},
                      {"sha256", in.sha256},
                      {"model", in.meta.model},
                      {"direction", tag(in.meta.direction)},
                      {"threshold", in.meta.threshold},
                      {"seed", in.meta.seed},
                      {"records", in.n_records}});
  }
  j["inputs"] = inputs;
  ordered_json models = ordered_json::array();
  for (const auto& m : rep.models) {
    ordered_json mj;
    mj["model"] = m.model;
    if (o.sections.performance) {
      ordered_json sc = ordered_json::object();
      for (Direction d : kScenarioOrder) {
        auto it = m.scenarios.find(d);
        sc[std::string(tag(d))] = it == m.scenarios.end() ? ordered_json(nullptr) : to_json(it->second);
      }
      mj["scenarios"] = sc;
      ordered_json deg = ordered_json::array();
      for (const auto& d : m.degradation) {
        deg.push_back({{"source", corpus_name(d.source)},
                       {"in_domain_f1", d.in_domain_f1},
                       {"cross_domain_f1", d.cross_domain_f1},
                       {"points", d.points}});
      }
      mj["degradation"] = deg;
    }
    if (o.sections.fairness) mj["fairness"] = m.fairness ? to_json(*m.fairness) : ordered_json(nullptr);
    if (o.sections.correlation) {
      mj["correlation"] = m.correlation ? to_json(*m.correlation) : ordered_json(nullptr);
    }
    mj["gaps"] = m.gaps;
    models.push_back(mj);
  }
  j["models"] = models;
  return j;
}

std::string dump(const ordered_json& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

// ---- csv ----

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter() { out_ = "model,section,scenario,label,metric,point,lo,hi\n"; }

  void row(std::string_view model, std::string_view section, std::string_view scenario,
           std::string_view label, std::string_view metric, const MaybeInterval& v) {
    prefix(model, section, scenario, label, metric);
    if (v) {
      out_ += detail::format_real(v->point) + "," + detail::format_real(v->lo) + "," +
              detail::format_real(v->hi) + "\n";
    } else {
      out_ += "n/a,n/a,n/a\n";
    }
  }

  void row(std::string_view model, std::string_view section, std::string_view scenario,
           std::string_view label, std::string_view metric, const std::optional<double>& v) {
    prefix(model, section, scenario, label, metric);
    out_ += (v ? detail::format_real(*v) : "n/a") + ",,\n";
  }

  std::string take() && { return std::move(out_); }

 private:
  void prefix(std::string_view model, std::string_view section, std::string_view scenario,
              std::string_view label, std::string_view metric) {
    for (std::string_view f : {model, section, scenario, label, metric}) {
      out_ += csv_escape(f);
      out_ += ',';
    }
  }

  std::string out_;
};

std::string render_csv(const AuditReport& rep) {
  CsvWriter w;
  for (const auto& m : rep.models) {
    for (const auto& [d, s] : m.scenarios) {
      const std::string_view sc = tag(d);
      w.row(m.model, "performance", sc, "", "loss", s.loss);
      w.row(m.model, "performance", sc, "", "micro_f1", s.micro_f1);
      w.row(m.model, "performance", sc, "", "emr", s.emr);
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        w.row(m.model, "performance", sc, kLabelNames[i], "precision", s.per_label[i].precision);
        w.row(m.model, "performance", sc, kLabelNames[i], "recall", s.per_label[i].recall);
        w.row(m.model, "performance", sc, kLabelNames[i], "f1", s.per_label[i].f1);
      }
    }
    for (const auto& d : m.degradation) {
      w.row(m.model, "degradation", corpus_name(d.source), "", "points",
            std::optional<double>(d.points));
    }
    if (m.fairness) {
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        const auto& c = m.fairness->per_label[i];
        w.row(m.model, "fairness", "cross", kLabelNames[i], "dp_signed", c.dp_signed);
        w.row(m.model, "fairness", "cross", kLabelNames[i], "dp_abs", c.dp_abs);
        w.row(m.model, "fairness", "cross", kLabelNames[i], "eo", c.eo);
        w.row(m.model, "fairness", "cross", kLabelNames[i], "mfc", c.mfc);
      }
      w.row(m.model, "fairness", "cross", "", "mfc_aggregate", m.fairness->mfc_aggregate);
    }
    if (m.correlation) {
      for (const auto& e : m.correlation->entries) {
        w.row(m.model, "correlation", name(m.correlation->mode), e.metric, "rho", e.rho);
        w.row(m.model, "correlation", name(m.correlation->mode), e.metric, "p_value", e.p_value);
      }
    }
  }
  return std::move(w).take();
}

// ---- markdown ----

std::string md_row(const std::vector<std::string>& cells) {
  std::string s = "|";
  for (const auto& c : cells) s += " " + c + " |";
  return s + "\n";
}

std::string md_header(const std::vector<std::string>& cells) {
  std::string s = md_row(cells) + "|";
  for (std::size_t i = 0; i < cells.size(); ++i) s += "---|";
  return s + "\n";
}

std::string md_mfc_table(const FairnessReport& f, const std::string& ci) {
  std::string out = md_header({"Label", "MFC (" + ci + " CI)"});
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    out += md_row({std::string(kLabelNames[i]), fmt(f.per_label[i].mfc)});
  }
  out += md_row({"aggregate", fmt(f.mfc_aggregate)});
  return out;
}

std::string md_correlation(const CorrelationReport& c) {
  std::string out = "Mode: " + std::string(name(c.mode)) + ", p-value: " +
                    std::string(p_method(c.p_mode)) + "\n\n";
  out += md_header({"Metric", "rho", "p-value", "n"});
  for (const auto& e : c.entries) {
    out += md_row({e.metric, fmt(e.rho), fmt(e.p_value), std::to_string(e.n)});
  }
  return out;
}

std::string render_markdown(const AuditReport& rep) {
  const std::string ci = percent(rep.options.boot.level);
  std::string out = "# Fairness audit\n\n";
  out += "Bootstrap: " + std::to_string(rep.options.boot.n_resamples) + " resamples, " + ci +
         " nearest-rank percentile intervals, seed " + std::to_string(rep.options.boot.seed) +
         "\n";
  for (const auto& m : rep.models) {
    out += "\n## Model: " + m.model + "\n";
    if (rep.options.sections.performance) {
      out += "\n### Overall performance (" + ci + " CI)\n\n";
      out += md_header({"Scenario", "n", "Loss", "micro-F1", "EMR"});
      for (Direction d : kScenarioOrder) {
        auto it = m.scenarios.find(d);
        if (it == m.scenarios.end()) {
          out += md_row({std::string(tag(d)), "absent", "absent", "absent", "absent"});
          continue;
        }
        const ScenarioReport& s = it->second;
        out += md_row({std::string(tag(d)), std::to_string(s.n_records), fmt(s.loss),
                       fmt(s.micro_f1), fmt(s.emr)});
      }
      out += "\n### Cross-domain degradation\n\n";
      out += md_header({"Source", "In-domain micro-F1", "Cross-domain micro-F1", "Drop (pp)"});
      for (const auto& d : m.degradation) {
        out += md_row({std::string(corpus_name(d.source)), fixed4(d.in_domain_f1),
                       fixed4(d.cross_domain_f1), fixed4(d.points)});
      }
      const std::pair<const char*, MaybeInterval PrfIntervals::*> tables[] = {
          {"F1", &PrfIntervals::f1},
          {"Recall", &PrfIntervals::recall},
          {"Precision", &PrfIntervals::precision}};
      for (const auto& [title, member] : tables) {
        out += "\n### Per-label " + std::string(title) + " (" + ci + " CI)\n\n";
        std::vector<std::string> head = {"Label"};
        for (Direction d : kScenarioOrder) head.emplace_back(tag(d));
        out += md_header(head);
        for (std::size_t i = 0; i < kNumLabels; ++i) {
          std::vector<std::string> row = {std::string(kLabelNames[i])};
          for (Direction d : kScenarioOrder) {
            auto it = m.scenarios.find(d);
            row.push_back(it == m.scenarios.end() ? "absent"
                                                  : fmt(it->second.per_label[i].*member));
          }
          out += md_row(row);
        }
      }
    }
    if (m.fairness) {
      out += "\n### Cross-domain fairness (" + ci + " CI)\n\n";
      out += md_header({"Label", "DP difference", "EO difference"});
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        const auto& c = m.fairness->per_label[i];
        out += md_row({std::string(kLabelNames[i]), fmt(c.dp_abs), fmt(c.eo)});
      }
      out += "\n### Moral Fairness Consistency\n\n" + md_mfc_table(*m.fairness, ci);
    } else if (rep.options.sections.fairness) {
      out += "\n### Cross-domain fairness\n\nabsent\n";
    }
    if (m.correlation) {
      out += "\n### Spearman correlation with MFC\n\n" + md_correlation(*m.correlation);
    } else if (rep.options.sections.correlation) {
      out += "\n### Spearman correlation with MFC\n\nabsent\n";
    }
    if (!m.gaps.empty()) {
      out += "\n### Gaps\n\n";
      for (const auto& g : m.gaps) out += "- " + g + "\n";
    }
  }
  return out;
}

}  // namespace

std::optional<Format> format_from_name(std::string_view s) {
  if (s == "structured") return Format::kStructured;
  if (s == "csv") return Format::kCsv;
  if (s == "markdown-table") return Format::kMarkdown;
  return std::nullopt;
}

InputFile load_input(const std::filesystem::path& path) {
  InputFile in;
  in.path = path.string();
  const std::string bytes = read_file(path);
  in.sha256 = sha256_hex(bytes);
  try {
    in.set = parse_predictions(bytes);
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(in.path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(in.path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(in.path + ": " + e.what());
  }
  return in;
}

ScenarioReport evaluate_scenario(Direction direction, std::span<const PredictionRecord> records,
                                 const BootstrapSpec& spec) {
  ScenarioReport s;
  s.direction = direction;
  s.n_records = records.size();
  s.point = evaluate(records);
  const bool with_loss = s.point.loss.has_value();

  std::vector<std::optional<double>> points(kScenarioWidth);
  scenario_stats(records, with_loss, points);
  const auto cis = bootstrap_many(
      records.size(), points,
      [&](std::span<const std::size_t> idx, std::span<std::optional<double>> out) {
        scenario_stats(index_view(records, idx), with_loss, out);
      },
      spec);
  s.loss = cis[0];
  s.micro_f1 = cis[1];
  s.emr = cis[2];
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    s.per_label[i] = {cis[3 + 3 * i], cis[3 + 3 * i + 1], cis[3 + 3 * i + 2]};
  }
  return s;
}

std::optional<std::map<std::string, std::vector<double>>> per_label_metric_vectors(
    std::span<const PredictionRecord> pooled_cross) {
  auto v = metric_vectors(pooled_cross);
  if (!v) return std::nullopt;
  std::map<std::string, std::vector<double>> out;
  for (std::size_t k = 0; k < kVectorKeys.size(); ++k) {
    out[std::string(kVectorKeys[k])] = std::vector<double>(v->at(k).begin(), v->at(k).end());
  }
  return out;
}

AuditReport audit(const std::vector<InputFile>& inputs, const AuditOptions& options) {
  options.boot.validate();
  if (inputs.empty()) throw ValidationError("audit: no prediction files given");
  AuditReport rep;
  rep.options = options;

  std::map<std::string, std::map<Direction, std::vector<PredictionRecord>>> by_model;
  for (const InputFile& in : inputs) {
    PredictionSet set = in.set;
    if (options.threshold && *options.threshold != set.meta.threshold) {
      set = rethreshold(set, *options.threshold);
    }
    rep.inputs.push_back({in.path, in.sha256, set.meta, set.records.size()});

    auto& dirs = by_model[set.meta.model];
    auto claim = [&](Direction d) -> std::vector<PredictionRecord>& {
      auto& slot = dirs[d];
      if (!slot.empty()) {
        throw ValidationError("audit: model '" + set.meta.model +
                              "' has more than one input for " + std::string(tag(d)));
      }
      return slot;
    };
    if (set.meta.direction == Direction::kCrossPooled) {
      std::vector<PredictionRecord> tw, rd;
      for (auto& r : set.records) (r.group == Platform::kTwitter ? tw : rd).push_back(std::move(r));
      if (!tw.empty()) claim(Direction::kMfrcToMftc) = std::move(tw);
      if (!rd.empty()) claim(Direction::kMftcToMfrc) = std::move(rd);
    } else {
      claim(set.meta.direction) = std::move(set.records);
    }
  }
  for (const auto& [model, dirs] : by_model) rep.models.push_back(audit_model(model, dirs, options));
  return rep;
}

std::string render(const AuditReport& report, Format format) {
  switch (format) {
    case Format::kStructured: return dump(to_json(report));
    case Format::kCsv: return render_csv(report);
    case Format::kMarkdown: return render_markdown(report);
  }
  return {};
}

std::string render(const MfcResult& result, Format format) {
  switch (format) {
    case Format::kStructured: {
      ordered_json j;
      ordered_json per = ordered_json::object();
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        per[std::string(kLabelNames[i])] = {{"diff", result.diff[i]}, {"mfc", result.per_label[i]}};
      }
      j["per_label"] = per;
      j["mfc_aggregate"] = result.aggregate;
      return dump(j);
    }
    case Format::kCsv: {
      std::string out = "label,diff,mfc\n";
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        out += std::string(kLabelNames[i]) + "," + detail::format_real(result.diff[i]) + "," +
               detail::format_real(result.per_label[i]) + "\n";
      }
      return out + "aggregate,," + detail::format_real(result.aggregate) + "\n";
    }
    case Format::kMarkdown: {
      std::string out = md_header({"Label", "Diff", "MFC"});
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        out += md_row({std::string(kLabelNames[i]), fixed4(result.diff[i]),
                       fixed4(result.per_label[i])});
      }
      return out + md_row({"aggregate", "", fixed4(result.aggregate)});
    }
  }
  return {};
}

std::string render(const CorrelationReport& report, Format format) {
  switch (format) {
    case Format::kStructured: return dump(to_json(report));
    case Format::kCsv: {
      std::string out = "metric,rho,p_value,n,mode,p_value_method\n";
      for (const auto& e : report.entries) {
        out += e.metric + "," + (e.rho ? detail::format_real(*e.rho) : "n/a") + "," +
               (e.p_value ? detail::format_real(*e.p_value) : "n/a") + "," +
               std::to_string(e.n) + "," + std::string(name(report.mode)) + "," +
               std::string(p_method(report.p_mode)) + "\n";
      }
      return out;
    }
    case Format::kMarkdown: return md_correlation(report);
  }
  return {};
}

std::string render(const CorpusStats& stats, Format format) {
  switch (format) {
    case Format::kStructured: {
      ordered_json j;
      j["n_instances"] = stats.n_instances;
      ordered_json counts = ordered_json::object();
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        counts[std::string(kLabelNames[i])] = stats.label_counts[i];
      }
      j["label_counts"] = counts;
      if (stats.words) {
        j["words"] = {{"min", stats.words->min},
                      {"median", stats.words->median},
                      {"mean", stats.words->mean},
                      {"max", stats.words->max}};
      } else {
        j["words"] = nullptr;
      }
      return dump(j);
    }
    case Format::kCsv: {
      std::string out = "field,value\nn_instances," + std::to_string(stats.n_instances) + "\n";
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        out += "count_" + std::string(kLabelNames[i]) + "," +
               std::to_string(stats.label_counts[i]) + "\n";
      }
      auto w = [&](const char* k, std::optional<double> v) {
        out += std::string("words_") + k + "," + (v ? detail::format_real(*v) : "n/a") + "\n";
      };
      const auto& ws = stats.words;
      w("min", ws ? std::optional<double>(static_cast<double>(ws->min)) : std::nullopt);
      w("median", ws ? std::optional<double>(ws->median) : std::nullopt);
      w("mean", ws ? std::optional<double>(ws->mean) : std::nullopt);
      w("max", ws ? std::optional<double>(static_cast<double>(ws->max)) : std::nullopt);
      return out;
    }
    case Format::kMarkdown: {
      std::string out = md_header({"Label", "Count"});
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        out += md_row({std::string(kLabelNames[i]), std::to_string(stats.label_counts[i])});
      }
      out += "\n" + md_header({"Instances", "Min words", "Median", "Mean", "Max words"});
      const auto& ws = stats.words;
      out += md_row({std::to_string(stats.n_instances),
                     ws ? std::to_string(ws->min) : "n/a", ws ? fixed4(ws->median) : "n/a",
                     ws ? fixed4(ws->mean) : "n/a", ws ? std::to_string(ws->max) : "n/a"});
      return out;
    }
  }
  return {};
}

}  // namespace mfair
