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

#include "moralfair/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "csv.hpp"
#include "json.hpp"
#include "moralfair/random.hpp"

namespace mfair {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct SchemaEntry {
  std::string_view name;
  std::optional<Label> target;
};

// Declared source schemas. The target column is the harmonization map.
constexpr SchemaEntry kTwitterSchema[] = {
    {"Care", Label::kCare},         {"Harm", std::nullopt},
    {"Fairness", Label::kFairness}, {"Cheating", std::nullopt},
    {"Loyalty", Label::kLoyalty},   {"Betrayal", std::nullopt},
    {"Authority", Label::kAuthority}, {"Subversion", std::nullopt},
    {"Purity", std::nullopt},       {"Degradation", std::nullopt},
    {"Non-Moral", Label::kNonMoral}, {"nm", std::nullopt},
    {"nh", std::nullopt},
};

constexpr SchemaEntry kRedditSchema[] = {
    {"Care", Label::kCare},
    {"Equality", Label::kFairness},
    {"Proportionality", Label::kFairness},
    {"Fairness", Label::kFairness},
    {"Loyalty", Label::kLoyalty},
    {"Authority", Label::kAuthority},
    {"Purity", std::nullopt},
    {"Thin Morality", std::nullopt},
    {"Non-Moral", Label::kNonMoral},
};

char lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](char x, char y) { return lower_ascii(x) == lower_ascii(y); });
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string dump_line(const ordered_json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

// Accumulates (text, annotator) rows from either corpus format.
class Collector {
 public:
  explicit Collector(Platform platform) { result_.platform = platform; }

  void add(const std::string& where, const std::string& text_id, const std::string& text,
           const std::string& annotator, std::string_view annotation) {
    if (text_id.empty()) throw ValidationError(where + ": empty text id");
    if (annotator.empty()) throw ValidationError(where + ": empty annotator id");
    if (!seen_.emplace(text_id, annotator).second) {
      throw ValidationError(where + ": duplicate annotation by '" + annotator + "' for text '" +
                            text_id + "'");
    }

    RawAnnotation ann{text_id, annotator, {}, false};
    std::string_view rest = annotation;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view piece = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (piece.empty()) continue;
      SourceLabel sl = lookup_source_label(piece, result_.platform);
      if (std::find(ann.labels.begin(), ann.labels.end(), sl.canonical) != ann.labels.end()) {
        continue;
      }
      if (sl.cls == LabelClass::kNonTarget) {
        ++result_.non_target_labels[sl.canonical];
        ann.non_schema = true;
      } else if (sl.cls == LabelClass::kUnknown) {
        ++result_.unknown_labels[sl.canonical];
        ann.non_schema = true;
      }
      ann.labels.push_back(std::move(sl.canonical));
    }
    if (ann.labels.empty()) throw ValidationError(where + ": empty annotation label list");

    auto [it, inserted] = by_id_.try_emplace(text_id);
    ParsedText& pt = it->second;
    if (inserted) {
      pt.text_id = text_id;
      pt.text = text;
    } else if (pt.text != text) {
      result_.warnings.push_back(where + ": text for id '" + text_id +
                                 "' differs from an earlier occurrence; keeping the first");
    }
    pt.annotations.push_back(std::move(ann));
    ++result_.n_annotations;
  }

  ParseResult finish() && {
    result_.texts.reserve(by_id_.size());
    for (auto& [id, pt] : by_id_) result_.texts.push_back(std::move(pt));
    for (const auto& [label, count] : result_.unknown_labels) {
      result_.warnings.push_back("unknown label '" + label + "' seen " + std::to_string(count) +
                                 " time(s)");
    }
    return std::move(result_);
  }

 private:
  ParseResult result_;
  std::map<std::string, ParsedText> by_id_;
  std::set<std::pair<std::string, std::string>> seen_;
};

// SAX handler that builds the DOM while tracking the current JSON path, so a
// syntax error can name the record being read.
class TrackingDomBuilder {
 public:
  explicit TrackingDomBuilder(json& root) : root_(root) {}

  bool null() { return put(nullptr), true; }
  bool boolean(bool v) { return put(v), true; }
  bool number_integer(json::number_integer_t v) { return put(v), true; }
  bool number_unsigned(json::number_unsigned_t v) { return put(v), true; }
  bool number_float(json::number_float_t v, const json::string_t&) { return put(v), true; }
  bool string(json::string_t& v) {
    if (!frames_.empty() && !frames_.back().is_array && frames_.back().key == "tweet_id") {
      last_tweet_id_ = v;
    }
    return put(v), true;
  }
  bool binary(json::binary_t& v) { return put(json::binary(v)), true; }
  bool start_object(std::size_t) { return open(json::object(), false), true; }
  bool key(json::string_t& k) { return frames_.back().key = k, true; }
  bool end_object() { return close(), true; }
  bool start_array(std::size_t) { return open(json::array(), true), true; }
  bool end_array() { return close(), true; }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    std::ostringstream msg;
    msg << "MFTC: malformed input at byte " << position << " in " << path();
    if (!last_tweet_id_.empty()) msg << " (last tweet_id '" << last_tweet_id_ << "')";
    msg << ": " << ex.what();
    error_ = msg.str();
    return false;
  }

  const std::string& error() const { return error_; }

 private:
  struct Frame {
    bool is_array = false;
    std::size_t count = 0;
    std::string key;
  };

  json* put(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    json& parent = *stack_.back();
    Frame& f = frames_.back();
    ++f.count;
    if (parent.is_array()) {
      parent.push_back(std::move(v));
      return &parent.back();
    }
    json& slot = parent[f.key];
    slot = std::move(v);
    return &slot;
  }

  void open(json v, bool is_array) {
    stack_.push_back(put(std::move(v)));
    frames_.push_back(Frame{is_array, 0, {}});
  }

  void close() {
    stack_.pop_back();
    frames_.pop_back();
  }

  std::string path() const {
    std::string p = "$";
    for (std::size_t i = 0; i < frames_.size(); ++i) {
      const Frame& f = frames_[i];
      if (f.is_array) {
        // Enclosing arrays point at the open element, the innermost at the next slot.
        const bool innermost = i + 1 == frames_.size();
        const std::size_t idx = innermost ? f.count : f.count - 1;
        p += "[" + std::to_string(idx) + "]";
      } else if (!f.key.empty()) {
        p += "." + f.key;
      }
    }
    return p;
  }

  json& root_;
  std::vector<json*> stack_;
  std::vector<Frame> frames_;
  std::string last_tweet_id_;
  std::string error_;
};

const json& require(const json& obj, std::string_view key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError("MFTC: " + where + ": missing field '" + std::string(key) + "'");
  }
  return *it;
}

std::string require_string(const json& obj, std::string_view key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ParseError("MFTC: " + where + "." + std::string(key) + ": expected a string");
}

}  // namespace

SourceLabel lookup_source_label(std::string_view raw_name, Platform platform) {
  const std::string_view n = trim(raw_name);
  auto search = [&](std::span<const SchemaEntry> schema) -> std::optional<SourceLabel> {
    for (const SchemaEntry& e : schema) {
      if (iequals(e.name, n)) {
        return SourceLabel{std::string(e.name),
                           e.target ? LabelClass::kTarget : LabelClass::kNonTarget, e.target};
      }
    }
    return std::nullopt;
  };
  auto found = platform == Platform::kTwitter ? search(kTwitterSchema) : search(kRedditSchema);
  if (found) return *found;
  return SourceLabel{std::string(n), LabelClass::kUnknown, std::nullopt};
}

ParseResult parse_mftc(std::string_view raw) {
  json root;
  TrackingDomBuilder builder(root);
  if (!json::sax_parse(raw.begin(), raw.end(), &builder)) throw ParseError(builder.error());

  if (!root.is_array()) throw ParseError("MFTC: $: expected an array of corpora");
  Collector collector(Platform::kTwitter);
  for (std::size_t c = 0; c < root.size(); ++c) {
    const json& corpus = root[c];
    const std::string cpath = "$[" + std::to_string(c) + "]";
    if (!corpus.is_object()) throw ParseError("MFTC: " + cpath + ": expected an object");
    const json& tweets = require(corpus, "Tweets", cpath);
    if (!tweets.is_array()) throw ParseError("MFTC: " + cpath + ".Tweets: expected an array");
    for (std::size_t t = 0; t < tweets.size(); ++t) {
      const json& tweet = tweets[t];
      const std::string tpath = cpath + ".Tweets[" + std::to_string(t) + "]";
      if (!tweet.is_object()) throw ParseError("MFTC: " + tpath + ": expected an object");
      const std::string id = require_string(tweet, "tweet_id", tpath);
      const std::string text = require_string(tweet, "tweet_text", tpath);
      const json& anns = require(tweet, "annotations", tpath);
      if (!anns.is_array()) {
        throw ParseError("MFTC: " + tpath + ".annotations: expected an array");
      }
      for (std::size_t a = 0; a < anns.size(); ++a) {
        const std::string apath = tpath + ".annotations[" + std::to_string(a) + "]";
        if (!anns[a].is_object()) throw ParseError("MFTC: " + apath + ": expected an object");
        collector.add("MFTC: " + apath, id, text, require_string(anns[a], "annotator", apath),
                      require_string(anns[a], "annotation", apath));
      }
    }
  }
  return std::move(collector).finish();
}

ParseResult parse_mfrc(std::string_view raw) {
  Collector collector(Platform::kReddit);
  const auto rows = detail::read_csv(raw);
  if (rows.empty()) {
    ParseResult empty = std::move(collector).finish();
    empty.warnings.push_back("MFRC: input is empty");
    return empty;
  }

  const auto& header = rows.front().fields;
  auto column = [&](std::string_view col, bool required) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == col) return i;
    }
    if (required) throw ParseError("MFRC: missing required column '" + std::string(col) + "'");
    return std::nullopt;
  };
  const std::size_t text_col = *column("text", true);
  const std::size_t annotator_col = *column("annotator", true);
  const std::size_t annotation_col = *column("annotation", true);
  const std::optional<std::size_t> id_col = column("id", false);

  std::map<std::string, std::string> derived_ids;  // text -> generated id
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "MFRC: line " + std::to_string(row.line);
    if (row.fields.size() != header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                       std::to_string(row.fields.size()));
    }
    const std::string& text = row.fields[text_col];
    std::string id;
    if (id_col) {
      id = std::string(trim(row.fields[*id_col]));
    } else {
      auto [it, inserted] = derived_ids.try_emplace(text);
      if (inserted) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "mfrc-%06zu", derived_ids.size() - 1);
        it->second = buf;
      }
      id = it->second;
    }
    collector.add(where, id, text, std::string(trim(row.fields[annotator_col])),
                  row.fields[annotation_col]);
  }
  return std::move(collector).finish();
}

std::string clean_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (const char raw : s) {
    const char c = lower_ascii(raw);
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    if (space) {
      pending_space = !out.empty();
      continue;
    }
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                      kRetainedPunctuation.find(c) != std::string_view::npos;
    if (!keep) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::set<std::string> aggregate_annotations(std::span<const RawAnnotation> annotations,
                                            double threshold) {
  if (annotations.empty()) throw ValidationError("aggregate: empty annotation list");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("aggregate: threshold must be in (0, 1]");
  }
  std::map<std::string, std::size_t> votes;
  for (const RawAnnotation& a : annotations) {
    if (a.text_id != annotations.front().text_id) {
      throw ValidationError("aggregate: annotations span texts '" + annotations.front().text_id +
                            "' and '" + a.text_id + "'");
    }
    const std::set<std::string> distinct(a.labels.begin(), a.labels.end());
    for (const auto& l : distinct) ++votes[l];
  }
  const auto n = static_cast<double>(annotations.size());
  std::set<std::string> out;
  for (const auto& [label, v] : votes) {
    // Tolerance keeps exact ties (2 of 4 at 0.5) on the passing side.
    if (static_cast<double>(v) / n >= threshold - 1e-12) out.insert(label);
  }
  return out;
}

Harmonization harmonize(const std::set<std::string>& source_labels, Platform platform) {
  Harmonization h;
  for (const auto& raw : source_labels) {
    const SourceLabel sl = lookup_source_label(raw, platform);
    switch (sl.cls) {
      case LabelClass::kTarget:
        h.labels.set(*sl.target);
        break;
      case LabelClass::kNonTarget:
        h.dropped.push_back(sl.canonical);
        break;
      case LabelClass::kUnknown:
        throw ValidationError("harmonize: unknown label '" + raw + "' for the " +
                              std::string(name(platform)) + " schema");
    }
  }
  return h;
}

std::optional<LabelSet> harmonize_labels(const std::set<std::string>& source_labels,
                                         Platform platform) {
  Harmonization h = harmonize(source_labels, platform);
  if (h.excluded()) return std::nullopt;
  return h.labels;
}

CanonicalDataset build_canonical(const ParseResult& parsed, double threshold) {
  CanonicalDataset ds;
  ds.platform = parsed.platform;
  for (const ParsedText& pt : parsed.texts) {
    std::string text = clean_text(pt.text);
    if (text.empty()) {
      ds.excluded.push_back({pt.text_id, parsed.platform, "empty_text", {}});
      continue;
    }
    const auto source = aggregate_annotations(pt.annotations, threshold);
    Harmonization h = harmonize(source, parsed.platform);
    if (h.excluded()) {
      ds.excluded.push_back({pt.text_id, parsed.platform, "no_shared_labels", std::move(h.dropped)});
      continue;
    }
    ds.instances.push_back(
        {pt.text_id, parsed.platform, std::move(text), h.labels, pt.annotations.size()});
  }
  return ds;
}

void SplitSpec::validate() const {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("split: each ratio must lie in (0, 1)");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("split: ratios must sum to 1");
}

SplitResult split_in_domain(std::span<const CanonicalInstance> dataset, const SplitSpec& spec) {
  spec.validate();
  if (dataset.size() < 3) throw ValidationError("split: need at least 3 instances");

  std::vector<CanonicalInstance> items(dataset.begin(), dataset.end());
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].id == items[i - 1].id) {
      throw ValidationError("split: duplicate instance id '" + items[i].id + "'");
    }
  }
  Engine eng(spec.seed);
  shuffle(std::span(items), eng);

  const std::size_t n = items.size();
  // Epsilon guards products such as 100 * 0.1 landing just under an integer.
  auto part = [n](double r) { return static_cast<std::size_t>(std::floor(n * r + 1e-9)); };
  const std::size_t n_val = part(spec.ratios[1]);
  const std::size_t n_test = part(spec.ratios[2]);
  const std::size_t n_train = n - n_val - n_test;

  SplitResult out;
  auto first = std::make_move_iterator(items.begin());
  out.train.assign(first, first + n_train);
  out.val.assign(first + n_train, first + n_train + n_val);
  out.test.assign(first + n_train + n_val, std::make_move_iterator(items.end()));
  return out;
}

CorpusStats corpus_stats(std::span<const CanonicalInstance> dataset) {
  CorpusStats st;
  st.n_instances = dataset.size();
  if (dataset.empty()) return st;

  std::vector<std::size_t> words;
  words.reserve(dataset.size());
  for (const auto& inst : dataset) {
    for (Label l : kAllLabels) st.label_counts[index(l)] += inst.gold.has(l) ? 1 : 0;
    std::size_t w = 0;
    bool in_word = false;
    for (char c : inst.text) {
      if (c == ' ') {
        in_word = false;
      } else if (!in_word) {
        in_word = true;
        ++w;
      }
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  const std::size_t m = words.size();
  WordStats ws;
  ws.min = words.front();
  ws.max = words.back();
  ws.median = m % 2 == 1 ? static_cast<double>(words[m / 2])
                         : 0.5 * static_cast<double>(words[m / 2 - 1] + words[m / 2]);
  ws.mean = static_cast<double>(std::accumulate(words.begin(), words.end(), std::size_t{0})) /
            static_cast<double>(m);
  st.words = ws;
  return st;
}

std::string to_jsonl(std::span<const CanonicalInstance> instances) {
  std::string out;
  for (const auto& inst : instances) {
    ordered_json j;
    j["id"] = inst.id;
    j["platform"] = name(inst.platform);
    j["text"] = inst.text;
    j["gold"] = inst.gold.names();
    j["n_annotators"] = inst.n_annotators;
    out += dump_line(j);
    out += '\n';
  }
  return out;
}

std::string to_jsonl(std::span<const Exclusion> exclusions) {
  std::string out;
  for (const auto& ex : exclusions) {
    ordered_json j;
    j["id"] = ex.id;
    j["platform"] = name(ex.platform);
    j["reason"] = ex.reason;
    j["dropped"] = ex.dropped;
    out += dump_line(j);
    out += '\n';
  }
  return out;
}

std::vector<CanonicalInstance> read_canonical_jsonl(std::string_view text) {
  std::vector<CanonicalInstance> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "canonical: line " + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(where + ": not a JSON object");
    try {
      CanonicalInstance inst;
      inst.id = j.at("id").get<std::string>();
      const auto platform = platform_from_name(j.at("platform").get<std::string>());
      if (!platform) throw ParseError(where + ": unknown platform");
      inst.platform = *platform;
      inst.text = j.at("text").get<std::string>();
      for (const auto& g : j.at("gold")) {
        const auto l = label_from_name(g.get<std::string>());
        if (!l) throw ParseError(where + ": unknown gold label " + g.dump());
        inst.gold.set(*l);
      }
      inst.n_annotators = j.at("n_annotators").get<std::size_t>();
      out.push_back(std::move(inst));
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mfair
