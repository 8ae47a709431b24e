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

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moralfair/corpus.hpp"
#include "moralfair/correlation.hpp"
#include "moralfair/fairness.hpp"
#include "moralfair/io.hpp"
#include "moralfair/predio.hpp"
#include "moralfair/report.hpp"
#include "moralfair/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalFlags {
  std::uint64_t seed = 42;
  std::size_t boot_n = 1000;
  double boot_level = 0.95;
  std::optional<double> threshold;
  std::string corr_mode = "per-label";
  std::string format = "structured";

  mfair::BootstrapSpec boot() const {
    mfair::BootstrapSpec spec;
    spec.n_resamples = boot_n;
    spec.level = boot_level;
    spec.seed = seed;
    spec.validate();
    return spec;
  }

  mfair::Format fmt() const {
    auto f = mfair::format_from_name(format);
    if (!f) throw mfair::ValidationError("unknown format '" + format + "'");
    return *f;
  }

  mfair::CorrelationMode mode() const {
    auto m = mfair::correlation_mode_from_name(corr_mode);
    if (!m) throw mfair::ValidationError("unknown correlation mode '" + corr_mode + "'");
    return *m;
  }
};

void emit(const std::string& bytes, const std::string& out) {
  if (out.empty()) {
    std::cout << bytes;
  } else {
    mfair::write_file(out, bytes);
  }
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw mfair::ValidationError(flag + ": '" + item + "' is not a number");
    }
  }
  if (v.size() != n) {
    throw mfair::ValidationError(flag + ": expected " + std::to_string(n) + " values, got " +
                                 std::to_string(v.size()));
  }
  return v;
}

mfair::PerLabel<double> per_label(const std::string& s, const std::string& flag) {
  const auto v = parse_list(s, mfair::kNumLabels, flag);
  mfair::PerLabel<double> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

std::vector<mfair::InputFile> load_inputs(const std::vector<std::string>& paths) {
  std::vector<mfair::InputFile> inputs;
  for (const auto& p : paths) inputs.push_back(mfair::load_input(p));
  return inputs;
}

mfair::AuditOptions audit_options(const GlobalFlags& g, mfair::Sections sections) {
  mfair::AuditOptions opt;
  opt.boot = g.boot();
  opt.corr_mode = g.mode();
  opt.threshold = g.threshold;
  opt.sections = sections;
  return opt;
}

// ---- ingest ----

struct IngestArgs {
  std::string mftc;
  std::string mfrc;
  std::string out;
  std::string ratios = "0.8,0.1,0.1";
  double agreement = mfair::kDefaultAgreement;
};

ordered_json counts_json(const std::map<std::string, std::size_t>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

ordered_json ingest_one(const fs::path& raw_path, mfair::Platform platform, const fs::path& out,
                        const mfair::SplitSpec& split, double agreement) {
  const std::string raw = mfair::read_file(raw_path);
  mfair::ParseResult parsed;
  try {
    parsed = platform == mfair::Platform::kTwitter ? mfair::parse_mftc(raw) : mfair::parse_mfrc(raw);
  } catch (const mfair::ParseError& e) {
    throw mfair::ParseError(raw_path.string() + ": " + e.what());
  }
  const mfair::CanonicalDataset ds = mfair::build_canonical(parsed, agreement);
  const std::string stem(mfair::corpus_name(platform));
  std::string lower;
  for (char c : stem) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  mfair::write_file(out / (lower + ".canonical.jsonl"), mfair::to_jsonl(ds.instances));
  mfair::write_file(out / (lower + ".excluded.jsonl"), mfair::to_jsonl(ds.excluded));
  ordered_json splits = ordered_json::object();
  if (ds.instances.size() >= 3) {
    const mfair::SplitResult parts = mfair::split_in_domain(ds.instances, split);
    const std::pair<const char*, const std::vector<mfair::CanonicalInstance>*> named[] = {
        {"train", &parts.train}, {"val", &parts.val}, {"test", &parts.test}};
    for (const auto& [n, v] : named) {
      mfair::write_file(out / (lower + "." + n + ".jsonl"), mfair::to_jsonl(*v));
      splits[n] = v->size();
    }
  } else {
    parsed.warnings.push_back("fewer than 3 instances, no splits written");
  }

  ordered_json j;
  j["source"] = raw_path.string();
  j["sha256"] = mfair::sha256_hex(raw);
  j["texts"] = parsed.texts.size();
  j["annotations"] = parsed.n_annotations;
  j["instances"] = ds.instances.size();
  j["excluded"] = ds.excluded.size();
  j["splits"] = splits;
  j["non_target_labels"] = counts_json(parsed.non_target_labels);
  j["unknown_labels"] = counts_json(parsed.unknown_labels);
  j["warnings"] = parsed.warnings;
  return j;
}

int cmd_ingest(const GlobalFlags& g, const IngestArgs& a) {
  if (a.mftc.empty() && a.mfrc.empty()) {
    throw mfair::ValidationError("ingest: give --mftc and/or --mfrc");
  }
  mfair::SplitSpec split;
  const auto r = parse_list(a.ratios, 3, "--ratios");
  split.ratios = {r[0], r[1], r[2]};
  split.seed = g.seed;
  split.validate();
  if (!(a.agreement > 0.0 && a.agreement <= 1.0)) {
    throw mfair::ValidationError("--agreement must lie in (0, 1]");
  }
  const fs::path out(a.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw mfair::ValidationError(out.string() + ": " + ec.message());

  ordered_json meta;
  meta["tool"] = mfair::kToolName;
  meta["version"] = mfair::kToolVersion;
  meta["seed"] = g.seed;
  meta["prng"] = "mt19937_64";
  meta["ratios"] = split.ratios;
  meta["agreement"] = a.agreement;
  meta["retained_characters"] = mfair::kRetainedClassDescription;
  ordered_json corpora = ordered_json::object();
  if (!a.mftc.empty()) {
    corpora["MFTC"] = ingest_one(a.mftc, mfair::Platform::kTwitter, out, split, a.agreement);
  }
  if (!a.mfrc.empty()) {
    corpora["MFRC"] = ingest_one(a.mfrc, mfair::Platform::kReddit, out, split, a.agreement);
  }
  meta["corpora"] = corpora;
  mfair::write_file(out / "ingest_meta.json", meta.dump(2) + "\n");
  return 0;
}

// ---- mfc ----

struct MfcArgs {
  std::vector<std::string> files;
  std::string r2t;
  std::string t2r;
  std::string diffs;
  std::string out;
};

int cmd_mfc(const GlobalFlags& g, const MfcArgs& a) {
  const int sources = !a.files.empty() + !a.diffs.empty() + (!a.r2t.empty() || !a.t2r.empty());
  if (sources != 1) {
    throw mfair::ValidationError("mfc: give prediction files, --diffs, or --r2t with --t2r");
  }
  mfair::MfcResult result;
  if (!a.diffs.empty()) {
    result = mfair::mfc_from_diffs(per_label(a.diffs, "--diffs"));
  } else if (!a.r2t.empty() || !a.t2r.empty()) {
    if (a.r2t.empty() || a.t2r.empty()) throw mfair::ValidationError("mfc: --r2t needs --t2r");
    result = mfair::mfc({{mfair::Direction::kMfrcToMftc, per_label(a.r2t, "--r2t")},
                         {mfair::Direction::kMftcToMfrc, per_label(a.t2r, "--t2r")}});
  } else {
    std::vector<mfair::PredictionRecord> pooled;
    for (const auto& in : load_inputs(a.files)) {
      mfair::PredictionSet set = in.set;
      if (g.threshold && *g.threshold != set.meta.threshold) {
        set = mfair::rethreshold(set, *g.threshold);
      }
      if (!mfair::is_cross_domain(set.meta.direction)) {
        throw mfair::ValidationError(in.path + ": mfc needs cross-domain files, got " +
                                     std::string(mfair::tag(set.meta.direction)));
      }
      pooled.insert(pooled.end(), set.records.begin(), set.records.end());
    }
    result = mfair::mfc(mfair::direction_rates(mfair::group_rates(pooled)));
  }
  emit(mfair::render(result, g.fmt()), a.out);
  return 0;
}

// ---- correlate ----

struct CorrelateArgs {
  std::vector<std::string> files;
  std::string vectors;
  std::string out;
};

int cmd_correlate(const GlobalFlags& g, const CorrelateArgs& a) {
  if (a.files.empty() == a.vectors.empty()) {
    throw mfair::ValidationError("correlate: give either prediction files or --vectors");
  }
  if (!a.vectors.empty()) {
    std::map<std::string, std::vector<double>> metrics;
    try {
      const auto j = nlohmann::json::parse(mfair::read_file(a.vectors));
      metrics = j.get<std::map<std::string, std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw mfair::ParseError(a.vectors + ": " + e.what());
    }
    emit(mfair::render(mfair::validate_mfc(metrics, mfair::CorrelationMode::kPerLabel), g.fmt()),
         a.out);
    return 0;
  }
  const auto rep = mfair::audit(load_inputs(a.files), audit_options(g, {false, false, true}));
  emit(mfair::render(rep, g.fmt()), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-platform fairness audit for moral foundation classifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(mfair::kToolVersion));

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for splits, bootstrap and synthesis")->capture_default_str();
  app.add_option("--boot-n", g.boot_n, "Bootstrap resamples")->capture_default_str();
  app.add_option("--boot-level", g.boot_level, "Confidence level")->capture_default_str();
  app.add_option("--threshold", g.threshold, "Re-threshold logits before scoring");
  app.add_option("--corr-mode", g.corr_mode, "per-label | bootstrap-pooled")->capture_default_str();
  app.add_option("--format", g.format, "structured | csv | markdown-table")->capture_default_str();

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Build canonical datasets and splits");
  c_ingest->add_option("--mftc", ingest.mftc, "Raw Twitter corpus (nested JSON)");
  c_ingest->add_option("--mfrc", ingest.mfrc, "Raw Reddit corpus (CSV)");
  c_ingest->add_option("--out", ingest.out, "Output directory")->required();
  c_ingest->add_option("--ratios", ingest.ratios, "train,val,test")->capture_default_str();
  c_ingest->add_option("--agreement", ingest.agreement, "Annotator vote share to keep a label")
      ->capture_default_str();

  std::vector<std::string> audit_files;
  std::string audit_out;
  auto* c_audit = app.add_subcommand("audit", "Full report from prediction files");
  c_audit->add_option("files", audit_files, "Prediction files")->required();
  c_audit->add_option("--out", audit_out, "Write the report here instead of stdout");

  std::vector<std::string> fair_files;
  std::string fair_out;
  auto* c_fair = app.add_subcommand("fairness", "DP, EO and MFC over cross-domain files");
  c_fair->add_option("files", fair_files, "Prediction files")->required();
  c_fair->add_option("--out", fair_out, "Output path");

  MfcArgs mfc_args;
  auto* c_mfc = app.add_subcommand("mfc", "Moral Fairness Consistency");
  c_mfc->add_option("files", mfc_args.files, "Cross-domain prediction files");
  c_mfc->add_option("--r2t", mfc_args.r2t, "MFRC->MFTC detection rates, five values");
  c_mfc->add_option("--t2r", mfc_args.t2r, "MFTC->MFRC detection rates, five values");
  c_mfc->add_option("--diffs", mfc_args.diffs, "Per-label rate gaps, five values");
  c_mfc->add_option("--out", mfc_args.out, "Output path");

  CorrelateArgs corr_args;
  auto* c_corr = app.add_subcommand("correlate", "Spearman of MFC against baseline metrics");
  c_corr->add_option("files", corr_args.files, "Prediction files");
  c_corr->add_option("--vectors", corr_args.vectors, "JSON object of per-label metric vectors");
  c_corr->add_option("--out", corr_args.out, "Output path");

  std::string synth_config, synth_out;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic prediction file");
  c_synth->add_option("--config", synth_config, "JSON config")->required();
  c_synth->add_option("--out", synth_out, "Prediction file to write")->required();

  std::string stats_file, stats_out;
  auto* c_stats = app.add_subcommand("stats", "Label counts and word statistics");
  c_stats->add_option("file", stats_file, "Canonical JSONL file")->required();
  c_stats->add_option("--out", stats_out, "Output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_ingest->parsed()) return cmd_ingest(g, ingest);
    if (c_audit->parsed()) {
      const auto rep = mfair::audit(load_inputs(audit_files), audit_options(g, {}));
      emit(mfair::render(rep, g.fmt()), audit_out);
      return 0;
    }
    if (c_fair->parsed()) {
      const auto rep = mfair::audit(load_inputs(fair_files), audit_options(g, {false, true, false}));
      emit(mfair::render(rep, g.fmt()), fair_out);
      return 0;
    }
    if (c_mfc->parsed()) return cmd_mfc(g, mfc_args);
    if (c_corr->parsed()) return cmd_correlate(g, corr_args);
    if (c_synth->parsed()) {
      mfair::SynthConfig cfg;
      try {
        cfg = mfair::parse_synth_config(mfair::read_file(synth_config));
      } catch (const mfair::ParseError& e) {
        throw mfair::ParseError(synth_config + ": " + e.what());
      }
      if (app.get_option("--seed")->count() > 0) cfg.seed = g.seed;
      mfair::write_predictions(mfair::generate(cfg), synth_out);
      return 0;
    }
    if (c_stats->parsed()) {
      std::vector<mfair::CanonicalInstance> ds;
      try {
        ds = mfair::read_canonical_jsonl(mfair::read_file(stats_file));
      } catch (const mfair::ParseError& e) {
        throw mfair::ParseError(stats_file + ": " + e.what());
      }
      emit(mfair::render(mfair::corpus_stats(ds), g.fmt()), stats_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "moralfair: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
