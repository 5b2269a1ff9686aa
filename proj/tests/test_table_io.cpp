#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "bubbles/exact_enum.hpp"
#include "bubbles/table_io.hpp"

using namespace bubbles;

TEST_CASE("bubble table CSV layout and round trip") {
  const auto t = bruteforce_tables(5);
  std::ostringstream out;
  write_csv(out, t.bubbles);
  const std::string csv = out.str();
  CHECK(csv.rfind("n,p,B\n1,1,0\n1,2,0\n2,1,2\n2,2,0\n2,3,0\n2,4,1\n", 0) == 0);
  CHECK(csv.find('e') == std::string::npos);
  std::istringstream in(csv);
  CHECK(read_bubble_table_csv(in) == t.bubbles);

  std::ostringstream sout;
  write_csv(sout, t.short_chords);
  CHECK(sout.str().rfind("n,s,d\n1,0,0\n1,1,1\n2,0,1\n", 0) == 0);
  std::istringstream sin(sout.str());
  CHECK(read_short_chord_table_csv(sin) == t.short_chords);
}

TEST_CASE("large values survive CSV exactly") {
  BubbleTable t;
  t.set_row(1, {BigInt("123456789012345678901234567890"), BigInt(0)});
  std::ostringstream out;
  write_csv(out, t);
  std::istringstream in(out.str());
  CHECK(read_bubble_table_csv(in).at(1, 1) == BigInt("123456789012345678901234567890"));
}

TEST_CASE("malformed CSV is rejected") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_bubble_table_csv(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("n,p,X\n1,1,0\n1,2,0\n"), ParseError);
  CHECK_THROWS_AS(parse("n,p,B\n1,1,zero\n1,2,0\n"), ParseError);
  CHECK_THROWS_AS(parse("n,p,B\n1,1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("n,p,B\n2,1,2\n2,2,0\n2,4,1\n2,5,0\n"), ParseError);
  CHECK_THROWS_AS(parse("n,p,B\n1,1\n"), ParseError);
}

TEST_CASE("JSON and plain output") {
  const auto t = bruteforce_tables(3).bubbles;
  std::ostringstream js;
  write_json(js, t);
  const auto j = nlohmann::json::parse(js.str());
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][2]["n"] == 3);
  CHECK(j["rows"][2]["B"][5] == "5");
  std::ostringstream plain;
  write_plain(plain, t);
  CHECK(plain.str() == "1: 0 0\n2: 2 0 0 1\n3: 8 4 2 2 0 5\n");
}

TEST_CASE("b-file parsing") {
  std::istringstream in("# A367000\n\n1 0\n2 0\n   3 2   \n# trailing comment\n4 0\n");
  const auto entries = parse_bfile(in);
  REQUIRE(entries.size() == 4);
  CHECK(entries[2].index == 3);
  CHECK(entries[2].value == 2);

  std::istringstream bad("1 0\n2\n");
  CHECK_THROWS_AS(parse_bfile(bad), ParseError);
  std::istringstream extra("1 0 7\n");
  CHECK_THROWS_AS(parse_bfile(extra), ParseError);
  std::istringstream word("1 zero\n");
  CHECK_THROWS_AS(parse_bfile(word), ParseError);
  CHECK_THROWS_AS(read_bfile("/nonexistent/b367000.txt"), ParseError);
}

TEST_CASE("sequence mapping and b-file comparison") {
  const auto t = bruteforce_tables(4);
  const auto a367000 = sequence_terms(OeisSequence::A367000, t.bubbles, t.short_chords);
  CHECK(a367000.size() == 2 + 4 + 6 + 8);
  CHECK(a367000[2] == 2);  // B(2,1)
  const auto a278990 = sequence_terms(OeisSequence::A278990, t.bubbles, t.short_chords);
  CHECK(a278990 == std::vector<BigInt>{1, 0, 1, 5, 36});
  const auto a079267 = sequence_terms(OeisSequence::A079267, t.bubbles, t.short_chords);
  CHECK(std::vector<BigInt>(a079267.begin(), a079267.begin() + 10) ==
        std::vector<BigInt>{1, 0, 1, 1, 1, 1, 5, 6, 3, 1});

  std::ostringstream file;
  write_bfile(file, a367000, sequence_offset(OeisSequence::A367000));
  CHECK(file.str().rfind("1 0\n2 0\n3 2\n", 0) == 0);
  std::istringstream good(file.str() + "999 5\n");
  const auto ok = compare_bfile(parse_bfile(good), a367000, 1);
  CHECK(ok.pass());
  CHECK(ok.compared == a367000.size());
  CHECK(ok.skipped == 1);

  std::string corrupted = file.str();
  corrupted.replace(corrupted.find("3 2\n"), 4, "3 3\n");
  std::istringstream bad(corrupted);
  const auto fail = compare_bfile(parse_bfile(bad), a367000, 1);
  CHECK_FALSE(fail.pass());
  REQUIRE(fail.mismatches.size() == 1);
  CHECK(fail.mismatches[0].find("index 3") != std::string::npos);

  CHECK_FALSE(compare_bfile({}, a367000, 1).pass());
}
