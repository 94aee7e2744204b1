#include <string>
#include <vector>

#include "doctest.h"
#include "trsec/config.hpp"
#include "trsec/report.hpp"

using trsec::parse_config_text;
using trsec::RunConfig;

TEST_CASE("empty text yields the documented defaults") {
  const RunConfig c = parse_config_text("");
  CHECK(c.q == 256);
  CHECK(c.bor == 4);
  CHECK(c.bor_list == std::vector<int>{2, 4, 8});
  CHECK_FALSE(c.alpha.has_value());
  CHECK(c.alpha_list.empty());
  CHECK_FALSE(c.ebn0_db.has_value());
  CHECK(c.realizations == 100);
  CHECK(c.blocks == 300);
  CHECK(c.seed == 1);
  CHECK(c.bessel_terms == 20);
  CHECK(c.sigma2_an == 0.0);
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
  const RunConfig c = parse_config_text(
      "# experiment scale\n"
      "\n"
      "  realizations = 7   # inline comment\n"
      "blocks=9\n"
      "; alt comment style\n"
      "seed = 18446744073709551615\n"
      "alpha = 0.25\n");
  CHECK(c.realizations == 7);
  CHECK(c.blocks == 9);
  CHECK(c.seed == 18446744073709551615ULL);
  REQUIRE(c.alpha.has_value());
  CHECK(*c.alpha == 0.25);
}

TEST_CASE("list keys parse comma-separated values") {
  const RunConfig c = parse_config_text(
      "bor_list = 2, 4, 8, 16\n"
      "alpha_list = 0.0,0.5,1.0\n"
      "ebn0_db_list = 0, 10, 20\n");
  CHECK(c.bor_list == std::vector<int>{2, 4, 8, 16});
  CHECK(c.alpha_list == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(c.ebn0_db_list == std::vector<double>{0.0, 10.0, 20.0});
}

TEST_CASE("range violations name their key") {
  CHECK_THROWS_AS(parse_config_text("alpha = 1.5\n"), trsec::OutOfRange);
  try {
    parse_config_text("alpha = 1.5\n");
  } catch (const trsec::ConfigError& e) {
    CHECK(e.key == "alpha");
  }
  CHECK_THROWS_AS(parse_config_text("q = 0\n"), trsec::OutOfRange);
  CHECK_THROWS_AS(parse_config_text("realizations = -3\n"),
                  trsec::OutOfRange);
  CHECK_THROWS_AS(parse_config_text("alpha = twelve\n"), trsec::OutOfRange);
}

TEST_CASE("bor must divide q, including every bor_list entry") {
  CHECK_THROWS_AS(parse_config_text("q = 256\nbor = 3\n"), trsec::OutOfRange);
  CHECK_THROWS_AS(parse_config_text("q = 256\nbor_list = 2, 3\n"),
                  trsec::OutOfRange);
  const RunConfig ok = parse_config_text("q = 128\nbor = 8\nbor_list=2,8\n");
  CHECK(ok.bor == 8);
}

TEST_CASE("unknown and bare keys are rejected") {
  CHECK_THROWS_AS(parse_config_text("qsubcarriers = 64\n"), trsec::UnknownKey);
  CHECK_THROWS_AS(parse_config_text("blocks\n"), trsec::MissingKey);
  CHECK_THROWS_AS(parse_config_text("blocks =\n"), trsec::MissingKey);
}

TEST_CASE("doubles render with full round-trip precision") {
  CHECK(trsec::format_double(0.1) == "0.10000000000000001");
  CHECK(trsec::format_double(1.0) == "1");
  CHECK(trsec::format_double(0.5) == "0.5");
  CHECK(trsec::format_double(1e300) == "1.0000000000000001e+300");
}

TEST_CASE("csv tables reject ragged rows") {
  trsec::CsvTable t;
  t.header = {"a", "b"};
  t.rows.push_back({"1", "2"});
  t.rows.push_back({"only-one"});
  CHECK_THROWS_AS(trsec::write_csv("/tmp/trsec_ragged.csv", t),
                  std::runtime_error);
}
