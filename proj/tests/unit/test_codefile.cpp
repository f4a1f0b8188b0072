#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "pgequiv/codefile.hpp"

using namespace pgequiv;

namespace {

std::vector<GeneratorMatrix> parse(const std::string& text) {
  std::istringstream in(text);
  return read_codes(in, "t");
}

// Line number reported for malformed input, or 0 when it parses.
std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(CodeFile, ParsesSeveralCodesWithComments) {
  const auto codes = parse(
      "# two codes\n"
      "3 2 3\n"
      "1 0 1\n"
      "# inside the matrix\n"
      "0 1 2\n"
      "\n\n"
      "2 1 2\n"
      "1 1\n");
  ASSERT_EQ(codes.size(), 2u);
  EXPECT_EQ(codes[0].matrix(), Matrix::from_rows(Field::make(3), {{1, 0, 1}, {0, 1, 2}}));
  EXPECT_EQ(codes[1].n(), 2u);
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("# nothing\n\n").empty());
}

TEST(CodeFile, CompositeFieldModulus) {
  const auto codes = parse("9 1 2 10\n1 3\n");
  ASSERT_EQ(codes.size(), 1u);
  EXPECT_EQ(codes[0].field().modulus(), 10u);
  EXPECT_EQ(parse("4 1 2\n1 3\n")[0].field().modulus(), 7u);
}

TEST(CodeFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("3 2\n1 0\n"), 1u);
  EXPECT_EQ(error_line("# c\n3 2 3\n1 0 1\n0 1\n"), 4u);
  EXPECT_EQ(error_line("3 1 3\n1 3 1\n"), 2u);
  EXPECT_EQ(error_line("3 2 3\n1 0 1\n"), 2u);
  EXPECT_EQ(error_line("6 1 2\n1 1\n"), 1u);
  EXPECT_EQ(error_line("4 1 2 9\n1 1\n"), 1u);
  EXPECT_EQ(error_line("3 1 x\n1\n"), 1u);
  // Zero column and rank deficiency are reported at the header.
  EXPECT_EQ(error_line("\n3 2 3\n1 0 1\n0 0 2\n"), 2u);
  EXPECT_EQ(error_line("3 2 2\n1 1\n2 2\n"), 1u);
  try {
    parse("3 2 3\n1 0 0\n0 1 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("t:1: ", 0), 0u);
    EXPECT_NE(std::string(e.what()).find("zero column 3"), std::string::npos);
  }
}

TEST(CodeFile, RoundTripIsExact) {
  Rng rng(70);
  std::vector<GeneratorMatrix> codes;
  for (unsigned q : {2u, 3u, 4u, 7u, 9u, 16u, 27u})
    for (int i = 0; i < 5; ++i) codes.push_back(oracle::random_full_rank(3 + rng.below(8), 1 + rng.below(3), Field::make(q), rng));
  codes.push_back(GeneratorMatrix(Matrix::from_rows(Field::make(3, 2, 10), {{1, 5, 8}})));
  std::ostringstream out;
  write_codes(out, codes);
  const auto back = parse(out.str());
  EXPECT_EQ(back, codes);
  std::ostringstream again;
  write_codes(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(CodeFile, DataFiles) {
  const std::string dir = PGEQUIV_TEST_DATA;
  EXPECT_EQ(read_codes_file(dir + "/ternary_g1.txt").size(), 1u);
  EXPECT_EQ(read_codes_file(dir + "/simplex_2_3.txt")[0].n(), 7u);
  EXPECT_THROW(read_codes_file(dir + "/zero_column.txt"), ParseError);
  EXPECT_THROW(read_codes_file(dir + "/missing.txt"), std::runtime_error);
}
