#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "straf/format.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"

using namespace straf;

TEST_CASE("parses the example framework") {
  const char* text =
      "# five arguments\n"
      "arg(a1). arg(a2).\n"
      "  arg( a3 ).\n"
      "arg(a4).arg(a5).\n"
      "att(a1,a4). att(a2,a3). att(a2,a4).\n"
      "att(a3, a4).\n"
      "att(a4,a5).  # downstream\n"
      "str(a1,2). str(a2,1). str(a3,2). str(a4,4). str(a5,1).\n";
  Straf s = parse_straf(text);
  CHECK(s.arg_count() == 5);
  CHECK(s.attacks().size() == 5);
  CHECK(s.strength(s.index_of("a4")) == 4);
  CHECK(s.has_attack(s.index_of("a3"), s.index_of("a4")));
}

TEST_CASE("rejects malformed input") {
  CHECK_THROWS_AS(parse_straf("arg(a).\natt(a,b).\nstr(a,1).\n"), InputError);  // unknown b
  CHECK_THROWS_AS(parse_straf("arg(a).\nstr(a,1).\nstr(a,2).\n"), InputError);  // double str
  CHECK_THROWS_AS(parse_straf("arg(a).\n"), InputError);                        // missing str
  CHECK_THROWS_AS(parse_straf("arg(a).\nstr(a,x).\n"), InputError);             // not a number
  CHECK_THROWS_AS(parse_straf("arg(a).\nstr(a,0).\n"), InputError);             // zero strength
  CHECK_THROWS_AS(parse_straf("arg(a).\nfoo(a).\nstr(a,1).\n"), InputError);    // predicate
  CHECK_THROWS_AS(parse_straf("arg(a.\nstr(a,1).\n"), InputError);              // syntax
  CHECK_THROWS_AS(parse_straf("str(b,1).\n"), InputError);                      // undeclared
}

TEST_CASE("zero strength needs the escape hatch") {
  ParseOptions opts;
  opts.allow_zero_strength = true;
  Straf s = parse_straf("arg(a).\nstr(a,0).\n", opts);
  CHECK(s.strength(0) == 0);
}

TEST_CASE("serialize-parse round trip") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Straf original = testing::random_instance(seed, 12, seed % 2 == 0);
    Straf reparsed = parse_straf(serialize_straf(original));
    REQUIRE(reparsed.arg_count() == original.arg_count());
    CHECK(reparsed.attacks() == original.attacks());
    for (ArgIndex a = 0; a < original.arg_count(); ++a) {
      CHECK(reparsed.id_of(a) == original.id_of(a));
      CHECK(reparsed.strength(a) == original.strength(a));
    }
  }
}

TEST_CASE("serialization is canonical") {
  Straf s = testing::five_arg_example();
  CHECK(serialize_straf(s) == serialize_straf(testing::five_arg_example()));
  CHECK(serialize_straf(s).find("att(a1,a4).") != std::string::npos);
}
