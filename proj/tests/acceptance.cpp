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

// Acceptance gate: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "moralfair/corpus.hpp"
#include "moralfair/correlation.hpp"
#include "moralfair/fairness.hpp"
#include "moralfair/io.hpp"
#include "moralfair/metrics.hpp"
#include "moralfair/resampling.hpp"
#include "moralfair/synthgen.hpp"
#include "test_support.hpp"

namespace {

using namespace mfair;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome mfc_dp_identity() {
  Outcome o;
  std::mt19937 eng(2718);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  std::uniform_int_distribution<std::size_t> n(30, 500);
  int spearman_checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    SynthConfig c;
    c.seed = 1000 + static_cast<std::uint64_t>(rep);
    for (Platform p : {Platform::kTwitter, Platform::kReddit}) {
      GroupSynth& g = c.group(p);
      for (std::size_t i = 0; i < kNumLabels; ++i) {
        g.base_rate[i] = u(eng);
        g.tpr[i] = u(eng);
        g.fpr[i] = u(eng);
      }
      g.n = n(eng);
    }
    const auto fp = fairness_point(generate(c).records);
    std::vector<double> mfc, dp;
    bool defined = true;
    for (const auto& l : fp.per_label) {
      if (!l.dp_abs || !l.mfc) {
        defined = false;
        continue;
      }
      o.check(std::abs(*l.mfc - (1.0 - *l.dp_abs)) <= 1e-12,
              fmt("set %.0f: mfc != 1 - dp_abs", rep));
      mfc.push_back(*l.mfc);
      dp.push_back(*l.dp_abs);
    }
    if (!defined) continue;
    const auto rho = spearman(mfc, dp);
    if (!rho) continue;  // all five gaps equal: correlation undefined
    ++spearman_checked;
    o.check(*rho == -1.0, fmt("set %.0f: spearman %.17g", rep, *rho));
  }
  if (o.ok) o.detail = std::to_string(spearman_checked) + "/100 sets with rho = -1 exactly";
  return o;
}

Outcome mfc_from_published_dp() {
  Outcome o;
  const PerLabel<double> dp = {0.22, 0.04, 0.05, 0.03, 0.08};
  const PerLabel<double> published = {0.7781, 0.9556, 0.9499, 0.9666, 0.9205};
  const auto m = mfc_from_diffs(dp);
  double worst = 0.0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    worst = std::max(worst, std::abs(m.per_label[i] - published[i]));
    o.check(std::abs(m.per_label[i] - published[i]) <= 0.01, std::string(kLabelNames[i]));
  }
  if (o.ok) o.detail = fmt("max |diff| %.4f", worst);
  return o;
}

Outcome eo_correlation_and_exact_p() {
  Outcome o;
  const std::vector<double> mfc = {0.7781, 0.9556, 0.9499, 0.9666, 0.9205};
  const std::vector<double> eo = {0.40, 0.26, 0.22, 0.20, 0.34};
  const auto rho = spearman(mfc, eo);
  o.check(rho && std::abs(*rho + 0.9) <= 1e-3, "eo rho");
  const double p = spearman_p(-1.0, 5, PValueMode::kExact);
  o.check(std::abs(p - 2.0 / 120.0) <= 1e-15, fmt("exact p %.17g", p));
  if (o.ok) o.detail = fmt("rho %.4f, exact p(rho=-1, n=5) = %.6f", *rho, p);
  return o;
}

Outcome metric_oracle() {
  Outcome o;
  const auto r = testing::random_records(1000, 31337, false, 0.3, 0.35);
  const testing::FlatOracle f(r);
  const auto rep = evaluate(r);
  o.check(rep.micro_f1 == f.micro_f1(), "micro-F1");
  o.check(rep.emr == f.emr(), "EMR");
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    o.check(rep.per_label[i].precision == f.precision(i), "precision " + std::string(kLabelNames[i]));
    o.check(rep.per_label[i].recall == f.recall(i), "recall " + std::string(kLabelNames[i]));
    o.check(rep.per_label[i].f1 == f.f1(i), "f1 " + std::string(kLabelNames[i]));
  }
  if (o.ok) o.detail = fmt("micro-F1 %.6f, EMR %.6f", rep.micro_f1, rep.emr);
  return o;
}

Outcome bce_check() {
  Outcome o;
  const std::vector<Logits> z(50, Logits{});
  std::vector<LabelSet> y;
  for (unsigned m = 0; m < 50; ++m) y.push_back(LabelSet::from_mask(static_cast<std::uint8_t>(m % 32)));
  const double zero = bce_with_logits(z, y);
  o.check(std::abs(zero - std::numbers::ln2) <= 1e-12, fmt("zero logits %.17g", zero));

  const double sp_m1 = std::log1p(std::exp(-1.0));
  const double a = bce_with_logits(Logits{-1, 0, 0, 0, 0}, LabelSet{});
  o.check(std::abs(a - (sp_m1 + 4 * std::numbers::ln2) / 5) <= 1e-9, "spot (-1,0,0,0,0)");
  const Logits spot{2.0, -3.0, 0.5, 10.0, -0.25};
  const LabelSet gold{Label::kAuthority, Label::kFairness, Label::kNonMoral};
  double direct = 0.0;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const double s = 1.0 / (1.0 + std::exp(-spot[i]));
    direct -= gold[i] ? std::log(s) : std::log1p(-s);
  }
  o.check(std::abs(bce_with_logits(spot, gold) - direct / 5) <= 1e-9, "spot mixed");
  if (o.ok) o.detail = fmt("zero-logit loss %.15f", zero);
  return o;
}

Outcome bootstrap_check() {
  Outcome o;
  auto mean = [](std::span<const double> s) {
    return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  };
  std::mt19937 eng(99);
  std::bernoulli_distribution coin(0.3);
  std::vector<double> x(400);
  for (double& v : x) v = coin(eng);
  const auto ref = bootstrap_ci<double>(mean, x, {1000, 0.95, 42, 1});
  for (unsigned threads : {1U, 4U, 0U}) {
    const auto again = bootstrap_ci<double>(mean, x, {1000, 0.95, 42, threads});
    o.check(again == ref, "CI differs with " + std::to_string(threads) + " threads");
  }
  int covered = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(200);
    for (double& v : s) v = coin(eng);
    const auto ci =
        bootstrap_ci<double>(mean, s, {1000, 0.95, static_cast<std::uint64_t>(trial), 0});
    covered += ci.lo <= 0.3 && 0.3 <= ci.hi;
  }
  o.check(covered >= 176, fmt("coverage %.0f/200", covered));
  if (o.ok) o.detail = fmt("coverage %.1f%% over 200 trials, bit-identical CIs", covered / 2.0);
  return o;
}

Outcome degradation_claim() {
  Outcome o;
  const double a = degradation(0.772, 0.623);
  const double b = degradation(0.687, 0.672);
  o.check(std::abs(a - 14.9) <= 1e-9, fmt("MFTC %.17g", a));
  o.check(std::abs(b - 1.5) <= 1e-9, fmt("MFRC %.17g", b));
  if (o.ok) o.detail = fmt("%.1f and %.1f points", a, b);
  return o;
}

Outcome ingestion_golden() {
  Outcome o;
  const std::string dir = MORALFAIR_TEST_DATA;
  const auto tw = build_canonical(parse_mftc(read_file(dir + "/mftc_fixture.json")));
  const auto rd = build_canonical(parse_mfrc(read_file(dir + "/mfrc_fixture.csv")));
  o.check(to_jsonl(tw.instances) == read_file(dir + "/mftc_expected.canonical.jsonl"), "MFTC canonical");
  o.check(to_jsonl(tw.excluded) == read_file(dir + "/mftc_expected.excluded.jsonl"), "MFTC excluded");
  o.check(to_jsonl(rd.instances) == read_file(dir + "/mfrc_expected.canonical.jsonl"), "MFRC canonical");
  o.check(to_jsonl(rd.excluded) == read_file(dir + "/mfrc_expected.excluded.jsonl"), "MFRC excluded");
  if (o.ok) {
    o.detail = std::to_string(tw.instances.size()) + "+" + std::to_string(rd.instances.size()) +
               " records, " + std::to_string(tw.excluded.size() + rd.excluded.size()) + " exclusions";
  }
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"mfc-dp-identity", 10.0, mfc_dp_identity},
      {"mfc-from-published-dp", 0.0, mfc_from_published_dp},
      {"eo-correlation-and-exact-p", 0.0, eo_correlation_and_exact_p},
      {"metric-oracle-equivalence", 5.0, metric_oracle},
      {"bce-check", 0.0, bce_check},
      {"bootstrap-determinism-and-coverage", 60.0, bootstrap_check},
      {"degradation-claim", 0.0, degradation_claim},
      {"ingestion-golden-files", 0.0, ingestion_golden},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.check(false, fmt("runtime %.2fs over %.0fs", secs, c.budget_s));
    failed += !o.ok;
    std::printf("%s %-36s %7.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
