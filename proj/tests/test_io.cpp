#include <doctest.h>

#include <filesystem>

#include "kitelab/errors.hpp"
#include "kitelab/io.hpp"
#include "kitelab/standard.hpp"
#include "support.hpp"

using namespace kitelab;

namespace {

constexpr char const *kC3 = R"(# three-element chain
gpea
size 3
zero 0
table
0 1 2
1 2 -
2 - -
)";

} // namespace

TEST_CASE("C3 parses to a valid GPEA")
{
  auto c3 = parse_gpea(kC3);
  CHECK(c3.size() == 3);
  CHECK(find_isomorphism(c3, standard::chain(3)));
  CHECK_THROWS_AS(parse_pea(kC3), UsageError);
}

TEST_CASE("duplicate zero line is a syntax error")
{
  std::string text = "gpea\nsize 1\nzero 0\nzero 0\ntable\n0\n";
  try {
    parse_algebra_file(text);
    FAIL("expected a parse error");
  } catch (ParseError const &err) {
    CHECK(err.line() == 4);
    CHECK(err.column() == 1);
  }
}

TEST_CASE("malformed files")
{
  CHECK_THROWS_AS(parse_algebra_file("size 1\ngpea\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra_file("gpea\nsize 2\nzero 0\ntable\n0 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_algebra_file("gpea\nsize 2\nzero 0\ntable\n0 x\n1 -\n"),
                  ParseError);
  CHECK_THROWS_AS(
    parse_algebra_file("gpea\nsize 1\nzero 0\ntop 0\ntable\n0\n"), ParseError);
  CHECK_THROWS_AS(
    parse_algebra_file("pea\nsize 1\nzero 0\ntable\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra_file(
                    "gpea\nsize 1\nzero 0\ntable\n0\nperm lambda 0\n"),
                  ParseError);
}

TEST_CASE("well-formed but invalid tables fail validation")
{
  // 1 + 1 = 0 breaks GP4.
  auto file = parse_algebra_file("gpea\nsize 2\nzero 0\ntable\n0 1\n1 0\n");
  CHECK_THROWS_AS(validate(file), AxiomError);
  auto bad_top =
    parse_algebra_file("pea\nsize 3\nzero 0\ntop 1\ntable\n0 1 2\n1 2 -\n2 - -\n");
  CHECK_THROWS_AS(validate(bad_top), AxiomError);
}

TEST_CASE("MO2 fixture loads as a PEA")
{
  auto mo2 = oracle::load_pea("mo2.pea");
  CHECK(mo2.size() == 6);
  CHECK(find_isomorphism(mo2, standard::mo2()));
  CHECK(mo2.gpea().label(1) == "a");
}

TEST_CASE("every fixture round-trips")
{
  std::size_t seen = 0;
  for (auto const &entry :
       std::filesystem::directory_iterator(KITELAB_FIXTURES)) {
    auto file = read_algebra_file(entry.path());
    CAPTURE(entry.path().string());
    CHECK(parse_algebra_file(emit_algebra(file)) == file);
    CHECK_NOTHROW(validate(file));
    ++seen;
  }
  CHECK(seen >= 9);
}

TEST_CASE("emitted algebras parse back")
{
  auto mo2 = standard::mo2();
  auto back = parse_pea(emit_algebra(mo2));
  CHECK(back.gpea().table() == mo2.gpea().table());
  CHECK(back.top() == mo2.top());
  auto c4 = standard::chain(4);
  CHECK(parse_gpea(emit_algebra(c4)).table() == c4.table());
}

TEST_CASE("permutations are read")
{
  auto loaded = validate(read_algebra_file(oracle::fixture("trivial-cycle.gpea")));
  REQUIRE(loaded.file.lambda);
  CHECK(loaded.file.rho->image() == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("missing file")
{
  CHECK_THROWS_AS(read_algebra_file("/nonexistent/x.gpea"), Error);
}
