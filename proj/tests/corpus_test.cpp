#include <gtest/gtest.h>

#include <random>

#include "loghet/corpus.hpp"
#include "test_util.hpp"

namespace loghet {
namespace {

using testing::TempDir;

TEST(TemplateTest, CanonicalizesWhitespace) {
  EXPECT_EQ(Template("  a \t b   <*>  ").text(), "a b <*>");
  EXPECT_EQ(Template("a b <*>").tokens().size(), 3u);
  EXPECT_THROW(Template("   "), Error);
  EXPECT_FALSE(make_template(" \t").has_value());
}

TEST(TemplateTest, LiteralsAndWildcards) {
  const Template t("blk_<*> size <*>");
  EXPECT_EQ(t.wildcard_count(), 2u);
  const auto lits = t.literals();
  ASSERT_EQ(lits.size(), 3u);
  EXPECT_EQ(lits[0], "blk_");
  EXPECT_EQ(lits[1], " size ");
  EXPECT_EQ(lits[2], "");
  EXPECT_FALSE(Template("no wildcard here").has_wildcard());
}

TEST(LoadStructuredTest, SingleRow) {
  const auto ds = parse_structured("LineId,Content,EventTemplate\n1,Template log 1,Template log <*>\n", "x");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.records[0].content, "Template log 1");
  ASSERT_TRUE(ds.records[0].ground_truth);
  EXPECT_EQ(ds.records[0].ground_truth->text(), "Template log <*>");
  EXPECT_EQ(ds.records[0].source, "x");
}

TEST(LoadStructuredTest, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_structured("LineId,Content,EventTemplate\n", "x").empty());
}

TEST(LoadStructuredTest, LoghubColumnsAndRowOrderIds) {
  const auto ds = parse_structured(
      "Date,Level,Content,EventId,EventTemplate\n"
      "Sun Dec 04,notice,\"a, b\",E1,\"a, <*>\"\n"
      "Sun Dec 04,error,c d,E2,c <*>\n",
      "Apache");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.records[0].content, "a, b");
  EXPECT_EQ(ds.records[1].line_id, 2u);
}

TEST(LoadStructuredTest, EmptyTemplateIsAbsent) {
  const auto ds = parse_structured("LineId,Content,EventTemplate\n1,hello,\n", "x");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_FALSE(ds.records[0].ground_truth.has_value());
  // Write/load round trip keeps it absent.
  EXPECT_EQ(parse_structured(format_structured(ds), "x"), ds);
}

TEST(LoadStructuredTest, MissingContentColumnIsNamed) {
  try {
    parse_structured("LineId,EventTemplate\n1,a\n", "x");
    FAIL() << "expected format error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::format);
    EXPECT_NE(std::string(e.what()).find("Content"), std::string::npos);
  }
}

TEST(LoadStructuredTest, MalformedQuotingReportsRow) {
  const std::string bad[] = {
      "Content,EventTemplate\nok,ok\n\"unterminated,x\n",
      "Content,EventTemplate\nok,ok\na\"b,x\n",
      "Content,EventTemplate\nok,ok\n\"a\"b,x\n",
  };
  for (const auto& text : bad) {
    try {
      parse_structured(text, "x");
      FAIL() << "expected parse error for: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse);
      EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
    }
  }
}

TEST(LoadStructuredTest, RejectsBrokenLineIds) {
  EXPECT_THROW(parse_structured("LineId,Content,EventTemplate\n2,a,a\n", "x"), Error);
  EXPECT_THROW(parse_structured("LineId,Content,EventTemplate\nabc,a,a\n", "x"), Error);
}

TEST(LoadStructuredTest, UnreadableFileIsIoError) {
  try {
    load_structured("/nonexistent/dir/file.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(LoadRawTest, ThreeLines) {
  const auto ds = parse_raw("one\ntwo\nthree\n", "r");
  ASSERT_EQ(ds.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(ds.records[i].line_id, i + 1);
    EXPECT_FALSE(ds.records[i].ground_truth);
  }
}

TEST(LoadRawTest, BlankInteriorLineSkipped) {
  const auto ds = parse_raw("first\n\n   \nsecond\r\nthird", "r");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.records[1].content, "second");
  EXPECT_EQ(ds.records[1].line_id, 2u);
  EXPECT_EQ(ds.records[2].line_id, 3u);
}

TEST(LoadRawTest, EmptyFile) { EXPECT_TRUE(parse_raw("", "r").empty()); }

TEST(WriteDatasetTest, RoundTripThroughFile) {
  TempDir dir;
  const auto ds = testing::labeled("sample", {{"Connection from 10.0.0.1, port 22", "Connection from <*>, port <*>"},
                                              {"say \"hi\"", "say <*>"},
                                              {"no label", ""}});
  EXPECT_NE(format_structured(ds).find("\"Connection from 10.0.0.1, port 22\""), std::string::npos);
  write_dataset(ds, dir / "sample.csv");
  EXPECT_EQ(load_structured(dir / "sample.csv"), ds);
}

TEST(WriteDatasetTest, MixedSourcesGetSourceColumn) {
  auto ds = testing::labeled("A", {{"x 1", "x <*>"}, {"y 2", "y <*>"}});
  ds.records[1].source = "B";
  const auto text = format_structured(ds);
  EXPECT_EQ(text.substr(0, text.find('\n')), "LineId,Content,EventTemplate,Source");
  EXPECT_EQ(parse_structured(text, "A"), ds);
}

TEST(WriteDatasetTest, UnwritablePathIsIoError) {
  try {
    write_dataset(Dataset{"x", {}}, "/nonexistent/dir/out.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(ExtractVariablesTest, SingleForcedAlignment) {
  EXPECT_EQ(extract_variables("Connection from 10.0.0.1 closed", Template("Connection from <*> closed")),
            std::vector<std::string>{"10.0.0.1"});
  EXPECT_EQ(extract_variables("Template log 1", Template("Template log <*>")),
            std::vector<std::string>{"1"});
}

TEST(ExtractVariablesTest, MultiTokenVariableMatchesEnumeration) {
  const auto oracle = testing::all_alignments("a b c d", "a <*> d");
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(oracle[0], std::vector<std::string>{"b c"});
  EXPECT_EQ(extract_variables("a b c d", Template("a <*> d")), oracle[0]);
}

TEST(ExtractVariablesTest, WildcardInsideToken) {
  EXPECT_EQ(extract_variables("Receiving block blk_-1608 src: /10.250.19.102:54106",
                              Template("Receiving block blk_<*> src: /<*>")),
            (std::vector<std::string>{"-1608", "10.250.19.102:54106"}));
  EXPECT_EQ(extract_variables("[client 1.2.3.4] denied", Template("[client <*>] denied")),
            std::vector<std::string>{"1.2.3.4"});
}

TEST(ExtractVariablesTest, RejectsEmptyCaptureAndMismatch) {
  EXPECT_THROW(extract_variables("Template log", Template("Template log <*>")), AlignmentError);
  EXPECT_THROW(extract_variables("a x", Template("a <*> b")), AlignmentError);
  try {
    extract_variables("foo", Template("bar <*>"));
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.content(), "foo");
    EXPECT_EQ(e.template_text(), "bar <*>");
  }
}

TEST(ExtractVariablesTest, IrregularSpacingAroundLiterals) {
  // An exact literal match wins and keeps the extra spaces in the value.
  EXPECT_EQ(extract_variables("a  x\ty  b", Template("a <*> b")), std::vector<std::string>{" x\ty "});
  // Otherwise literal whitespace absorbs any whitespace run.
  EXPECT_EQ(extract_variables("a\tx y\t\tb", Template("a <*> b")), std::vector<std::string>{"x y"});
}

TEST(ExtractVariablesTest, ShortestLeftmostAgainstBruteForce) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "ab ";
  int checked = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    std::string content = testing::random_string(rng, 9, "ab");
    // Spaces only as single separators, so byte-exact enumeration applies.
    std::string spaced;
    for (char c : content) {
      spaced.push_back(c);
      if (rng() % 3 == 0) spaced.push_back(' ');
    }
    while (!spaced.empty() && spaced.back() == ' ') spaced.pop_back();
    if (spaced.empty()) continue;
    std::string templ;
    const int pieces = 1 + static_cast<int>(rng() % 4);
    for (int p = 0; p < pieces; ++p) {
      if (rng() % 2) {
        templ += "<*>";
      } else {
        templ += testing::random_string(rng, 2, alphabet);
      }
    }
    if (canonicalize_template(templ) != templ || templ.empty()) continue;
    const auto oracle = testing::all_alignments(spaced, templ);
    const auto got = try_extract_variables(spaced, Template(templ));
    if (oracle.empty()) {
      EXPECT_FALSE(got.has_value()) << spaced << " | " << templ;
    } else {
      ASSERT_TRUE(got.has_value()) << spaced << " | " << templ;
      EXPECT_EQ(*got, oracle.front()) << spaced << " | " << templ;
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(ExtractVariablesTest, TokenPathAgreesWithCharacterPath) {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<std::string> words;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) words.push_back(testing::random_string(rng, 2, "xy") + "z");
    std::string content;
    std::string templ;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) {
        content += (rng() % 4 == 0) ? "  " : " ";
        templ += " ";
      }
      content += words[i];
      templ += (rng() % 3 == 0) ? std::string("<*>") : words[(i + rng() % 2) % n];
    }
    const Template t(templ);
    const auto by_chars = align_by_characters(content, t);
    const auto fast = try_extract_variables(content, t);
    EXPECT_EQ(by_chars, fast) << content << " | " << templ;
    if (fast) ++compared;
  }
  EXPECT_GT(compared, 300);
}

TEST(ExtractVariablesTest, SubstitutionIsRightInverse) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string templ;
    const std::size_t n = 1 + rng() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) templ += ' ';
      templ += (rng() % 2) ? std::string("<*>") : "k" + testing::random_string(rng, 3, "ab:_");
    }
    const Template t(templ);
    std::vector<std::string> values;
    for (std::size_t i = 0; i < t.wildcard_count(); ++i) {
      values.push_back("v" + testing::random_string(rng, 4, "ab 1k"));
      while (values.back().back() == ' ') values.back().pop_back();
    }
    const std::string content = substitute(t, values);
    const auto extracted = extract_variables(content, t);
    EXPECT_EQ(substitute(t, extracted), content) << content << " | " << templ;
  }
}

TEST(TemplateFrequencyTest, Counts) {
  const auto ds = testing::labeled("x", {{"a 1", "a <*>"}, {"a 2", "a <*>"}, {"b", "b"}});
  const auto freq = template_frequency_map(ds);
  ASSERT_EQ(freq.size(), 2u);
  EXPECT_EQ(freq.at(Template("a <*>")), 2u);
  EXPECT_EQ(freq.at(Template("b")), 1u);
}

TEST(TemplateFrequencyTest, CanonicalizesBeforeCounting) {
  const auto ds = testing::labeled("x", {{"a 1", "a  <*>"}, {"a 2", " a <*>"}});
  EXPECT_EQ(template_frequency_map(ds).size(), 1u);
}

TEST(TemplateFrequencyTest, SixTemplatesTwoThousandLines) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t expected[6] = {};
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const auto t = rng() % 6;
    ++expected[t];
    rows.push_back({"event" + std::to_string(t) + " " + std::to_string(i),
                    "event" + std::to_string(t) + " <*>"});
  }
  const auto freq = template_frequency_map(testing::labeled("x", rows));
  ASSERT_EQ(freq.size(), 6u);
  std::size_t sum = 0;
  for (const auto& [t, c] : freq) sum += c;
  EXPECT_EQ(sum, 2000u);
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_EQ(freq.at(Template("event" + std::to_string(t) + " <*>")), expected[t]);
  }
}

TEST(TemplateFrequencyTest, UnlabeledRecordsAreListed) {
  auto ds = testing::labeled("x", {{"a", "a"}, {"b", ""}, {"c", ""}});
  try {
    template_frequency_map(ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::labeling);
    EXPECT_NE(std::string(e.what()).find("2,3"), std::string::npos) << e.what();
  }
}

TEST(DatasetNameTest, FromLoghubFileName) {
  EXPECT_EQ(dataset_name_from_path("/data/Apache_2k.log_structured.csv"), "Apache");
  EXPECT_EQ(dataset_name_from_path("mixed.csv"), "mixed");
}

TEST(ParseResultIoTest, RoundTrip) {
  const auto r = testing::result_of({"a <*>", "b, \"c\""});
  EXPECT_EQ(parse_parse_result(format_parse_result(r)), r);
}

}  // namespace
}  // namespace loghet
