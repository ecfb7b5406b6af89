#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "pinrefine/ingest.hpp"

using namespace pinrefine;

namespace {

ProteinId P(const char* s) { return ProteinId(s); }

ParsedEdges edges_from(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

}  // namespace

TEST(ProteinIdTest, RejectsEmptyAndWhitespace) {
  EXPECT_THROW(ProteinId(""), Error);
  EXPECT_THROW(ProteinId("a b"), Error);
  EXPECT_THROW(ProteinId("a\tb"), Error);
  EXPECT_NO_THROW(ProteinId("YAL001C"));
  EXPECT_NE(P("abc"), P("ABC"));
}

TEST(EdgeListTest, EmptyInput) {
  auto parsed = edges_from("");
  EXPECT_TRUE(parsed.edges.empty());
  EXPECT_EQ(parsed.stats.data_rows, 0u);
}

TEST(EdgeListTest, NormalizesDuplicatesAndSelfLoops) {
  auto parsed = edges_from("A B\nB A\nC C\n");
  ASSERT_EQ(parsed.edges.size(), 1u);
  EXPECT_EQ(parsed.edges.pairs[0], ProteinPair(P("A"), P("B")));
  EXPECT_EQ(parsed.stats.duplicates_dropped, 1u);
  EXPECT_EQ(parsed.stats.self_loops_dropped, 1u);
  EXPECT_EQ(parsed.stats.kept + parsed.stats.duplicates_dropped + parsed.stats.self_loops_dropped,
            parsed.stats.data_rows);
}

TEST(EdgeListTest, CommentsBlankLinesAndMixedSeparators) {
  auto parsed = edges_from("# header\n\nA\tB\n  C    D  \n\r\n");
  EXPECT_EQ(parsed.edges.size(), 2u);
  EXPECT_EQ(parsed.stats.data_rows, 2u);
}

TEST(EdgeListTest, MalformedRowReportsLine) {
  try {
    edges_from("A B\nA B C\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(edges_from("A\n"), ParseError);
}

TEST(EdgeListTest, OrderInsensitiveAndCountsBalance) {
  std::mt19937_64 rng(7);
  std::vector<std::string> rows;
  std::uniform_int_distribution<int> pick(0, 14);
  for (int i = 0; i < 120; ++i) {
    rows.push_back("p" + std::to_string(pick(rng)) + " p" + std::to_string(pick(rng)));
  }
  auto join = [&] {
    std::string s;
    for (auto& r : rows) s += r + "\n";
    return s;
  };
  const auto base = edges_from(join());
  EXPECT_EQ(base.stats.kept + base.stats.duplicates_dropped + base.stats.self_loops_dropped, base.stats.data_rows);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(rows.begin(), rows.end(), rng);
    EXPECT_EQ(edges_from(join()).edges, base.edges);
  }
}

TEST(EdgeListTest, RoundTrip) {
  const auto parsed = edges_from("x y\nb a\nq r\nr x\n");
  std::ostringstream out;
  write_edge_list(out, parsed.edges);
  EXPECT_EQ(edges_from(out.str()).edges, parsed.edges);
}

TEST(ExpressionTest, ParsesRow) {
  std::istringstream in("P1 1 1 1\n");
  const auto parsed = parse_expression(in, 3);
  const auto* v = parsed.table.find(P("P1"));
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(*v, (std::vector<double>{1, 1, 1}));
}

TEST(ExpressionTest, WrongColumnCountFailsAtLine) {
  std::string row = "P1";
  for (int i = 0; i < 35; ++i) row += " 0.5";
  std::istringstream in("# c\nP0   \n" + row + "\n");
  try {
    parse_expression(in, 36);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream only35(row + "\n");
  try {
    parse_expression(only35, 36);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ExpressionTest, NonNumericAndNonFiniteRejected) {
  std::istringstream a("P1 1 x 3\n");
  EXPECT_THROW(parse_expression(a, 3), ParseError);
  std::istringstream b("P1 1 nan 3\n");
  EXPECT_THROW(parse_expression(b, 3), ParseError);
  std::istringstream c("P1 1 inf 3\n");
  EXPECT_THROW(parse_expression(c, 3), ParseError);
}

TEST(ExpressionTest, LastWriteWinsWithWarning) {
  std::istringstream in("P1 1 2\nP1 3 4\n");
  const auto parsed = parse_expression(in, 2);
  EXPECT_EQ(*parsed.table.find(P("P1")), (std::vector<double>{3, 4}));
  EXPECT_EQ(parsed.warnings.size(), 1u);
}

TEST(ExpressionTest, RoundTripExact) {
  std::istringstream in("A 0.1 -2.5e-7 3\nB 1e300 0 0.333333333333333314829616256247\n");
  const auto parsed = parse_expression(in, 3);
  std::ostringstream out;
  write_expression(out, parsed.table);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_expression(back, 3).table, parsed.table);
}

TEST(LocalizationTest, CollectsCompartmentSets) {
  std::istringstream in("P1 nucleus\nP1 cytosol\nP2\tplasma membrane\n");
  const auto loc = parse_localization(in);
  EXPECT_EQ(loc.at(P("P1")), (CompartmentSet{"nucleus", "cytosol"}));
  EXPECT_EQ(loc.at(P("P2")), (CompartmentSet{"plasma membrane"}));
}

TEST(LocalizationTest, UnknownCompartmentNamed) {
  std::istringstream in("P1 ribosome\n");
  try {
    parse_localization(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("ribosome"), std::string::npos);
  }
}

TEST(LocalizationTest, DefaultVocabularyHasElevenNames) {
  const auto& v = default_compartments();
  EXPECT_EQ(v.size(), 11u);
  for (const char* name : {"cytoskeleton", "golgiapparatus", "cytosol", "nucleus", "mitochondrion", "vacuole",
                           "peroxisome", "endosome", "endoplasmic reticulum", "plasma membrane", "extracellular space"}) {
    EXPECT_NE(std::find(v.begin(), v.end(), name), v.end()) << name;
  }
}

TEST(LocalizationTest, RoundTrip) {
  std::istringstream in("A nucleus\nA endoplasmic reticulum\nB vacuole\n");
  const auto loc = parse_localization(in);
  std::ostringstream out;
  write_localization(out, loc);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_localization(back), loc);
}

TEST(HomologyTest, ParsesAndDefaultsToZero) {
  std::istringstream in("P1 7\n");
  const auto h = parse_homology(in);
  EXPECT_DOUBLE_EQ(homology_score(h, P("P1")), 7.0);
  EXPECT_DOUBLE_EQ(homology_score(h, P("P2")), 0.0);
}

TEST(HomologyTest, RejectsNegativeOrNonFinite) {
  std::istringstream a("P1 -1\n");
  EXPECT_THROW(parse_homology(a), ParseError);
  std::istringstream b("P1 inf\n");
  EXPECT_THROW(parse_homology(b), ParseError);
  std::istringstream c("P1\n");
  EXPECT_THROW(parse_homology(c), ParseError);
}

TEST(HomologyTest, RoundTrip) {
  std::istringstream in("A 0.125\nB 3\nC 0.1\n");
  const auto h = parse_homology(in);
  std::ostringstream out;
  write_homology(out, h);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_homology(back), h);
}

TEST(EssentialTest, Deduplicates) {
  std::istringstream in("A\nB\n\nA\n");
  EXPECT_EQ(parse_essential_list(in).size(), 2u);
}

TEST(EssentialTest, RoundTrip) {
  std::istringstream in("Z\nA\nM\n");
  const auto e = parse_essential_list(in);
  std::ostringstream out;
  write_essential_list(out, e);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_essential_list(back), e);
}
