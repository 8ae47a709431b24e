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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "moralfair/corpus.hpp"
#include "moralfair/io.hpp"

namespace mfair {
namespace {

const std::string kData = MORALFAIR_TEST_DATA;

std::vector<CanonicalInstance> make_instances(std::size_t n) {
  std::vector<CanonicalInstance> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back({"id" + std::to_string(1000 + i), Platform::kTwitter, "text", {Label::kCare}, 3});
  }
  return v;
}

RawAnnotation ann(std::string annotator, std::vector<std::string> labels) {
  return {"t1", std::move(annotator), std::move(labels), false};
}

TEST(CleanTextTest, Examples) {
  EXPECT_EQ(clean_text("Hello   WORLD!!"), "hello world!!");
  EXPECT_EQ(clean_text("  @user #tag\thttp://x.co  "), "user tag httpx.co");
  EXPECT_EQ(clean_text("it's ok? yes, fine."), "it's ok? yes, fine.");
  EXPECT_EQ(clean_text("caf\xC3\xA9 \xF0\x9F\x99\x82"), "caf");
  EXPECT_EQ(clean_text("###"), "");
}

TEST(CleanTextTest, IdempotentAndWithinClass) {
  const std::vector<std::string> inputs = {"A  b\n\nC", "x--y", " ..?? ", "Tab\tSep\rEnd",
                                           "MiXeD 123 !!"};
  for (const auto& s : inputs) {
    const std::string once = clean_text(s);
    EXPECT_EQ(clean_text(once), once);
    EXPECT_EQ(once.find("  "), std::string::npos);
    if (!once.empty()) {
      EXPECT_NE(once.front(), ' ');
      EXPECT_NE(once.back(), ' ');
    }
    for (char c : once) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ' ||
                      kRetainedPunctuation.find(c) != std::string_view::npos;
      EXPECT_TRUE(ok) << s;
    }
  }
}

TEST(AggregateTest, HalfOfAnnotatorsKeepsLabel) {
  const std::vector<RawAnnotation> a = {ann("a", {"Care", "Harm"}), ann("b", {"Care"}),
                                        ann("c", {"Loyalty"})};
  EXPECT_EQ(aggregate_annotations(a, 0.5), (std::set<std::string>{"Care"}));
  EXPECT_EQ(aggregate_annotations(a, 0.3), (std::set<std::string>{"Care", "Harm", "Loyalty"}));
}

TEST(AggregateTest, MonotoneInThreshold) {
  const std::vector<RawAnnotation> a = {ann("a", {"Care", "Harm"}), ann("b", {"Care", "Purity"}),
                                        ann("c", {"Care", "Harm"}), ann("d", {"Loyalty"})};
  std::set<std::string> prev = aggregate_annotations(a, 0.01);
  for (double t = 0.05; t <= 1.0; t += 0.05) {
    const auto cur = aggregate_annotations(a, t);
    EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
    prev = cur;
  }
}

TEST(AggregateTest, RejectsBadInput) {
  EXPECT_THROW(aggregate_annotations({}, 0.5), ValidationError);
  const std::vector<RawAnnotation> a = {ann("a", {"Care"})};
  EXPECT_THROW(aggregate_annotations(a, 0.0), ValidationError);
  EXPECT_THROW(aggregate_annotations(a, 1.5), ValidationError);
}

TEST(HarmonizeTest, RedditMapping) {
  const auto h = harmonize({"Equality", "Proportionality", "Thin Morality"}, Platform::kReddit);
  EXPECT_EQ(h.labels, (LabelSet{Label::kFairness}));
  EXPECT_EQ(h.dropped, (std::vector<std::string>{"Thin Morality"}));
  EXPECT_EQ(harmonize_labels({"Loyalty", "Non-Moral"}, Platform::kReddit),
            (LabelSet{Label::kLoyalty, Label::kNonMoral}));
}

TEST(HarmonizeTest, TwitterVicesAreDropped) {
  EXPECT_FALSE(harmonize_labels({"Harm"}, Platform::kTwitter));
  EXPECT_FALSE(harmonize_labels({"Cheating", "Betrayal", "Subversion", "Degradation", "Purity"},
                                Platform::kTwitter));
  EXPECT_EQ(harmonize_labels({"Care", "Harm"}, Platform::kTwitter), (LabelSet{Label::kCare}));
}

TEST(HarmonizeTest, CaseInsensitiveLookup) {
  EXPECT_EQ(lookup_source_label("eQuAlItY", Platform::kReddit).target, Label::kFairness);
  EXPECT_EQ(lookup_source_label("non-moral", Platform::kTwitter).target, Label::kNonMoral);
  EXPECT_EQ(lookup_source_label("harm", Platform::kTwitter).cls, LabelClass::kNonTarget);
  EXPECT_EQ(lookup_source_label("Equality", Platform::kTwitter).cls, LabelClass::kUnknown);
}

TEST(HarmonizeTest, UnknownLabelNamed) {
  try {
    harmonize({"Liberty"}, Platform::kTwitter);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Liberty"), std::string::npos);
  }
}

TEST(IngestGoldenTest, TwitterFixture) {
  const auto parsed = parse_mftc(read_file(kData + "/mftc_fixture.json"));
  EXPECT_EQ(parsed.texts.size(), 10U);
  EXPECT_EQ(parsed.n_annotations, 30U);
  const auto ds = build_canonical(parsed);
  EXPECT_EQ(to_jsonl(ds.instances), read_file(kData + "/mftc_expected.canonical.jsonl"));
  EXPECT_EQ(to_jsonl(ds.excluded), read_file(kData + "/mftc_expected.excluded.jsonl"));
}

TEST(IngestGoldenTest, RedditFixture) {
  const auto parsed = parse_mfrc(read_file(kData + "/mfrc_fixture.csv"));
  EXPECT_EQ(parsed.texts.size(), 5U);
  EXPECT_EQ(parsed.n_annotations, 10U);
  const auto ds = build_canonical(parsed);
  EXPECT_EQ(to_jsonl(ds.instances), read_file(kData + "/mfrc_expected.canonical.jsonl"));
  EXPECT_EQ(to_jsonl(ds.excluded), read_file(kData + "/mfrc_expected.excluded.jsonl"));
}

TEST(ParseMftcTest, TruncatedInputNamesRecord) {
  const std::string raw = read_file(kData + "/mftc_fixture.json");
  const std::string cut = raw.substr(0, raw.find("\"202\"") + 30);
  try {
    parse_mftc(cut);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("202"), std::string::npos) << e.what();
  }
}

TEST(ParseMftcTest, StructuralErrorsNamePath) {
  try {
    parse_mftc(R"([{"Corpus": "X", "Tweets": [{"tweet_id": "1", "annotations": []}]}])");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("tweet_text"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_mftc(R"({"Corpus": "X"})"), ParseError);
}

TEST(ParseMftcTest, DuplicateAnnotatorRejected) {
  const std::string raw =
      R"([{"Corpus": "X", "Tweets": [{"tweet_id": "1", "tweet_text": "t", "annotations": [
           {"annotator": "a", "annotation": "care"}, {"annotator": "a", "annotation": "care"}]}]}])";
  EXPECT_ANY_THROW(parse_mftc(raw));
}

TEST(ParseMfrcTest, MissingColumnNamed) {
  try {
    parse_mfrc("text,annotation\nhello,Care\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("annotator"), std::string::npos) << e.what();
  }
}

TEST(ParseMfrcTest, ExplicitIdColumnAndCrlf) {
  const auto parsed =
      parse_mfrc("id,text,annotator,annotation\r\nx9,Hi there,a,Care\r\nx9,Hi there,b,Loyalty\r\n");
  ASSERT_EQ(parsed.texts.size(), 1U);
  EXPECT_EQ(parsed.texts[0].text_id, "x9");
  EXPECT_EQ(parsed.texts[0].annotations.size(), 2U);
}

TEST(ParseMfrcTest, UnterminatedQuote) {
  EXPECT_THROW(parse_mfrc("text,annotator,annotation\n\"oops,a,Care\n"), ParseError);
}

TEST(SplitTest, Sizes) {
  const SplitSpec spec;
  auto a = split_in_domain(make_instances(100), spec);
  EXPECT_EQ(a.train.size(), 80U);
  EXPECT_EQ(a.val.size(), 10U);
  EXPECT_EQ(a.test.size(), 10U);
  auto b = split_in_domain(make_instances(101), spec);
  EXPECT_EQ(b.train.size(), 81U);
  EXPECT_EQ(b.val.size(), 10U);
  EXPECT_EQ(b.test.size(), 10U);
  EXPECT_THROW(split_in_domain(make_instances(2), spec), ValidationError);
}

TEST(SplitTest, DeterministicPartitionIndependentOfInputOrder) {
  auto items = make_instances(237);
  const SplitSpec spec{{0.7, 0.2, 0.1}, 9};
  const auto a = split_in_domain(items, spec);
  std::reverse(items.begin(), items.end());
  const auto b = split_in_domain(items, spec);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);

  std::set<std::string> ids;
  for (const auto* part : {&a.train, &a.val, &a.test}) {
    for (const auto& x : *part) EXPECT_TRUE(ids.insert(x.id).second);
  }
  EXPECT_EQ(ids.size(), 237U);

  const auto c = split_in_domain(items, SplitSpec{{0.7, 0.2, 0.1}, 10});
  EXPECT_NE(a.test, c.test);
}

TEST(SplitTest, RejectsBadRatios) {
  EXPECT_THROW((SplitSpec{{0.8, 0.1, 0.2}, 1}).validate(), ValidationError);
  EXPECT_THROW((SplitSpec{{1.0, 0.0, 0.0}, 1}).validate(), ValidationError);
}

TEST(CanonicalJsonlTest, RoundTrip) {
  const auto ds = build_canonical(parse_mftc(read_file(kData + "/mftc_fixture.json")));
  EXPECT_EQ(read_canonical_jsonl(to_jsonl(ds.instances)), ds.instances);
  EXPECT_THROW(read_canonical_jsonl("{\"id\": 1}\n"), ParseError);
}

TEST(CorpusStatsTest, CountsAndWords) {
  const auto ds = build_canonical(parse_mftc(read_file(kData + "/mftc_fixture.json")));
  const auto st = corpus_stats(ds.instances);
  EXPECT_EQ(st.n_instances, 6U);
  EXPECT_EQ(st.label_counts, (PerLabel<std::size_t>{2, 2, 1, 1, 1}));
  ASSERT_TRUE(st.words);
  EXPECT_EQ(st.words->min, 3U);
  EXPECT_EQ(st.words->max, 7U);
  EXPECT_DOUBLE_EQ(st.words->mean, (7 + 5 + 3 + 5 + 5 + 5) / 6.0);
  EXPECT_DOUBLE_EQ(st.words->median, 5.0);
  EXPECT_FALSE(corpus_stats({}).words);
}

}  // namespace
}  // namespace mfair
