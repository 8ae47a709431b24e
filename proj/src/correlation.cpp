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

#include "moralfair/correlation.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "moralfair/labels.hpp"

namespace mfair {
namespace {

// Tolerance for comparing permutation statistics against the observed one.
constexpr double kRhoTol = 1e-12;

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void check_exact_n(std::size_t n) {
  if (n < 3) throw ValidationError("spearman: need at least 3 points");
  if (n > kMaxExactN) {
    throw ValidationError("spearman: exact p-value limited to n <= " + std::to_string(kMaxExactN));
  }
}

// Share of arrangements of `ry` against fixed `rx` whose |rho| reaches `rho_abs`.
double permutation_share(std::span<const double> rx, std::vector<double> ry, double rho_abs) {
  std::sort(ry.begin(), ry.end());
  std::size_t hits = 0;
  std::size_t total = 0;
  // With tied ranks next_permutation visits each distinct arrangement once;
  // every tie group has the same multiplicity, so the ratio is unchanged.
  do {
    const double r = pearson(rx, ry).value_or(0.0);
    hits += std::abs(r) >= rho_abs - kRhoTol;
    ++total;
  } while (std::next_permutation(ry.begin(), ry.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
  if (x.size() < 3) throw ValidationError("spearman: need at least 3 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double spearman_p(double rho, std::size_t n, PValueMode mode) {
  if (n < 3) throw ValidationError("spearman_p: need n >= 3");
  if (mode == PValueMode::kAsymptotic) {
    if (std::abs(rho) >= 1.0) return 0.0;
    const double df = static_cast<double>(n - 2);
    const double t = rho * std::sqrt(df / ((1.0 - rho) * (1.0 + rho)));
    boost::math::students_t_distribution<double> dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  check_exact_n(n);
  std::vector<double> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  return permutation_share(ranks, ranks, std::abs(rho));
}

double spearman_p_exact(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
  check_exact_n(x.size());
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const auto observed = pearson(rx, ry);
  if (!observed) throw ValidationError("spearman: constant input has no p-value");
  return permutation_share(rx, ry, std::abs(*observed));
}

std::string_view name(CorrelationMode m) {
  return m == CorrelationMode::kPerLabel ? "per-label" : "bootstrap-pooled";
}

std::optional<CorrelationMode> correlation_mode_from_name(std::string_view s) {
  if (s == "per-label") return CorrelationMode::kPerLabel;
  if (s == "bootstrap-pooled") return CorrelationMode::kBootstrapPooled;
  return std::nullopt;
}

CorrelationReport validate_mfc(const std::map<std::string, std::vector<double>>& metrics,
                               CorrelationMode mode) {
  auto get = [&](std::string_view key) -> const std::vector<double>& {
    auto it = metrics.find(std::string(key));
    if (it == metrics.end()) {
      throw ValidationError("validate_mfc: missing metric vector '" + std::string(key) + "'");
    }
    return it->second;
  };
  const auto& mfc = get(kMfcKey);
  if (mode == CorrelationMode::kPerLabel && mfc.size() != kNumLabels) {
    throw ValidationError("validate_mfc: per-label mode needs 5 values per metric");
  }

  CorrelationReport rep;
  rep.mode = mode;
  rep.p_mode = mode == CorrelationMode::kPerLabel ? PValueMode::kExact : PValueMode::kAsymptotic;
  for (std::string_view key : kBaselineKeys) {
    const auto& base = get(key);
    if (base.size() != mfc.size()) {
      throw ValidationError("validate_mfc: '" + std::string(key) + "' has " +
                            std::to_string(base.size()) + " values, mfc has " +
                            std::to_string(mfc.size()));
    }
    CorrelationEntry e;
    e.metric = std::string(key);
    e.n = mfc.size();
    e.rho = spearman(mfc, base);
    if (e.rho) {
      e.p_value = rep.p_mode == PValueMode::kExact ? spearman_p_exact(mfc, base)
                                                   : spearman_p(*e.rho, e.n, rep.p_mode);
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace mfair
