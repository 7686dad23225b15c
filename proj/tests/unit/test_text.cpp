// Copyright 2026 The progeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"
#include "progeval/text.hpp"

using namespace progeval;

TEST_CASE("normalize_text folds case, diacritics and punctuation") {
  CHECK(normalize_text("García-López, José") == "garcia-lopez jose");
  CHECK(normalize_text("Robinson-Garcia, Nicolas") == "robinson-garcia nicolas");
  CHECK(normalize_text("O'Brien, J.") == "obrien j");
  CHECK(normalize_text("  Robinson - Garcia  ") == "robinson-garcia");
  CHECK(normalize_text("CIBERehd, Hospital Clínic, Barcelona") == "ciberehd hospital clinic barcelona");
  CHECK(normalize_text("Muñoz Ñúñez") == "munoz nunez");
  CHECK(normalize_text("Univ. Autònoma (UAB)") == "univ autonoma uab");
  CHECK(normalize_text("-x-") == "x");
  CHECK(normalize_text("") == "");
  CHECK(normalize_text(" ,;. ") == "");
}

TEST_CASE("normalize_text passes unknown code points through") {
  CHECK(normalize_text("Ψ lab") == "Ψ lab");
}

TEST_CASE("normalize_text is idempotent on random strings") {
  const std::vector<std::string> alphabet = {"a", "B", "z", " ", "  ", "-", "--", ".", ",", "'", "é", "Ñ",
                                             "ü", "Ç", "ł", "ß", "Ψ", "’", "–", "\t", "(", "9", "ò"};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const int length = static_cast<int>(rng() % 16);
    for (int i = 0; i < length; ++i) s += alphabet[rng() % alphabet.size()];
    const auto once = normalize_text(s);
    CHECK_MESSAGE(normalize_text(once) == once, "input: " << s);
  }
}

TEST_CASE("split keeps empty fields, split_list drops them") {
  CHECK(split("a\t\tb", '\t') == std::vector<std::string_view>{"a", "", "b"});
  CHECK(split("", '\t').size() == 1);
  CHECK(split_list(" a ; ;b;", ';') == std::vector<std::string>{"a", "b"});
  CHECK(split_list("", ';').empty());
}

TEST_CASE("numeric parsing") {
  CHECK(parse_integer("42") == 42);
  CHECK(parse_integer("+5") == 5);
  CHECK(parse_integer("-3") == -3);
  CHECK_FALSE(parse_integer("4x"));
  CHECK_FALSE(parse_integer(""));
  CHECK(parse_real("1.5") == doctest::Approx(1.5));
  CHECK_FALSE(parse_real("abc"));
}

TEST_CASE("format_fixed rounds at emission only") {
  CHECK(format_fixed(43666.0 / 4411.0, 2) == "9.90");
  CHECK(format_fixed(998548.0 / 111583.0, 2) == "8.95");
  CHECK(format_fixed(-0.04, 1) == "0.0");
  CHECK(format_fixed(std::optional<double>{}, 1) == "NA");
  CHECK(format_fixed(std::optional<double>{100.0}, 1) == "100.0");
}

TEST_CASE("headered tables look up columns by name") {
  std::istringstream in("b\ta\n# comment\n\n2\t1\n");
  HeaderedTable table(in, "t", {"a"});
  auto row = table.next();
  REQUIRE(row);
  CHECK(row->line == 4);
  CHECK(table.field(*row, "a") == "1");
  CHECK(table.field(*row, "b") == "2");
  CHECK_FALSE(table.next());
}

TEST_CASE("headered tables reject a missing required column") {
  std::istringstream in("a\tb\n");
  CHECK_THROWS_AS(HeaderedTable(in, "t", {"c"}), ParseError);
}

TEST_CASE("delimited writer refuses embedded delimiters") {
  std::ostringstream out;
  DelimitedWriter writer(out, {"x"});
  CHECK_THROWS(writer.row({"a\tb"}));
  CHECK_THROWS(writer.row({"a", "b"}));
}
