#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "straf/encode.hpp"
#include "straf/pb.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"
#include "support/opb_reader.hpp"

using namespace straf;
using namespace straf::pb;

namespace {

PBConstraint make(std::vector<std::pair<std::int64_t, Literal>> terms, Relation rel,
                  std::int64_t bound) {
  PBConstraint c;
  c.terms = std::move(terms);
  c.rel = rel;
  c.bound = bound;
  return c;
}

/// Truth table of a constraint over vars 1..n.
std::vector<bool> table(const PBConstraint& c, std::uint32_t n) {
  std::vector<bool> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint8_t> assignment(n + 1, 0);
    for (std::uint32_t v = 1; v <= n; ++v) assignment[v] = (mask >> (v - 1)) & 1;
    out.push_back(satisfies(c, assignment));
  }
  return out;
}

std::vector<bool> table(const std::vector<PBConstraint>& cs, std::uint32_t n) {
  std::vector<bool> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint8_t> assignment(n + 1, 0);
    for (std::uint32_t v = 1; v <= n; ++v) assignment[v] = (mask >> (v - 1)) & 1;
    bool all = true;
    for (const auto& c : cs) all = all && satisfies(c, assignment);
    out.push_back(all);
  }
  return out;
}

}  // namespace

TEST_CASE("normalize: at-most-one flips to negated literals") {
  auto out = normalize(make({{1, pos(1)}, {1, pos(2)}}, Relation::Le, 1));
  REQUIRE(out.size() == 1);
  CHECK(is_normalized(out[0]));
  CHECK(out[0].bound == 1);
  REQUIRE(out[0].terms.size() == 2);
  CHECK(out[0].terms[0] == std::pair<std::int64_t, Literal>{1, neg(1)});
  CHECK(out[0].terms[1] == std::pair<std::int64_t, Literal>{1, neg(2)});
}

TEST_CASE("normalize: strict inequality tightens") {
  auto out = normalize(make({{2, pos(1)}, {3, pos(2)}}, Relation::Lt, 4));
  REQUIRE(out.size() == 1);
  CHECK(out[0].bound == 2);
  CHECK(out[0].terms == std::vector<std::pair<std::int64_t, Literal>>{{2, neg(1)}, {3, neg(2)}});
}

TEST_CASE("normalize: equality splits") {
  auto out = normalize(make({{5, pos(1)}}, Relation::Eq, 5));
  REQUIRE(out.size() == 2);
  CHECK(out[0].terms == std::vector<std::pair<std::int64_t, Literal>>{{5, pos(1)}});
  CHECK(out[0].bound == 5);
  CHECK(out[1].terms == std::vector<std::pair<std::int64_t, Literal>>{{5, neg(1)}});
  CHECK(out[1].bound == 0);
}

TEST_CASE("normalize preserves the solution set") {
  gen::Rng rng(99);
  for (int round = 0; round < 300; ++round) {
    const std::uint32_t n = static_cast<std::uint32_t>(rng.uniform(1, 4));
    PBConstraint c;
    const std::uint32_t terms = static_cast<std::uint32_t>(rng.uniform(1, 5));
    for (std::uint32_t t = 0; t < terms; ++t) {
      std::int64_t w = static_cast<std::int64_t>(rng.uniform(0, 12)) - 6;
      if (w == 0) w = 1;
      c.add(w, Literal{static_cast<std::uint32_t>(rng.uniform(1, n)), rng.coin(0.5)});
    }
    c.bound = static_cast<std::int64_t>(rng.uniform(0, 16)) - 8;
    const Relation rels[] = {Relation::Ge, Relation::Le, Relation::Eq, Relation::Lt,
                             Relation::Gt};
    c.rel = rels[rng.uniform(0, 4)];
    auto normalized = normalize(c);
    for (const auto& nc : normalized) CHECK(is_normalized(nc));
    CHECK(table(c, n) == table(normalized, n));
  }
}

TEST_CASE("emit_opb writes the competition format") {
  PBModel m;
  m.num_vars = 2;
  m.constraints = normalize(make({{1, pos(1)}, {1, pos(2)}}, Relation::Ge, 1));
  CHECK(emit_opb(m) == "* #variable= 2 #constraint= 1\n+1 x1 +1 x2 >= 1 ;\n");

  PBModel empty;
  CHECK(emit_opb(empty) == "* #variable= 0 #constraint= 0\n");
}

TEST_CASE("five-argument strong-cf model has one line per attack") {
  Straf s = testing::five_arg_example();
  auto m = encode::assemble(s, {Family::Stable, Mode::Strong});
  // stable = cf + 5 defeat lines; the pure cf part alone:
  auto vm = encode::make_varmap(s, false);
  auto cf = encode::strong_cf_constraints(s, vm);
  CHECK(cf.size() == 5);
  PBModel cf_model;
  cf_model.num_vars = 5;
  for (const auto& c : cf) {
    for (auto& n : normalize(c)) cf_model.constraints.push_back(std::move(n));
  }
  std::string opb = emit_opb(cf_model);
  CHECK(std::count(opb.begin(), opb.end(), '\n') == 6);  // header + 5 constraints
}

TEST_CASE("opb round-trips through the reader") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Straf s = testing::random_instance(seed, 8, seed % 2 == 0);
    for (auto family : {Family::Admissible, Family::Complete, Family::Stable}) {
      auto m = encode::assemble(s, {family, seed % 2 ? Mode::Strong : Mode::Weak});
      auto back = testing::read_opb(emit_opb(m));
      REQUIRE(back.num_vars == m.num_vars);
      REQUIRE(back.constraints.size() == m.constraints.size());
      for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        CHECK(back.constraints[i].bound == m.constraints[i].bound);
        auto sorted = m.constraints[i].terms;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
          return a.second.var < b.second.var;
        });
        CHECK(back.constraints[i].terms == sorted);
      }
    }
  }
}

TEST_CASE("solver output parsing") {
  auto unsat = parse_solver_output("s UNSATISFIABLE\n", 3);
  CHECK(unsat.status == PBOutcome::Status::Unsat);

  auto sat = parse_solver_output("s SATISFIABLE\nv x1 -x2\n", 2);
  CHECK(sat.status == PBOutcome::Status::Sat);
  CHECK(sat.assignment == std::vector<std::uint8_t>{0, 1, 0});

  // Several v-lines concatenate; unmentioned variables default to 0.
  auto multi = parse_solver_output("c comment\ns SATISFIABLE\nv x1\nv -x2 x3\n", 4);
  CHECK(multi.assignment == std::vector<std::uint8_t>{0, 1, 0, 1, 0});

  CHECK_THROWS_AS(parse_solver_output("v x1\n", 1), ProtocolError);
  CHECK_THROWS_AS(parse_solver_output("s MAYBE\n", 1), ProtocolError);
  CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv x1 -x1\n", 1), ProtocolError);
  CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv x9\n", 2), ProtocolError);
  CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv y1\n", 2), ProtocolError);
}

TEST_CASE("decode keeps the x-projection") {
  Straf s = testing::five_arg_example();
  auto m = encode::assemble(s, {Family::Admissible, Mode::Strong});
  std::vector<std::uint8_t> assignment(m.num_vars + 1, 0);
  assignment[m.varmap.x_of(s.index_of("a1"))] = 1;
  assignment[m.varmap.x_of(s.index_of("a3"))] = 1;
  CHECK(decode(m, s, assignment) == ArgSet::of(s, {"a1", "a3"}));
}

TEST_CASE("emit requires normalized models") {
  PBModel m;
  m.num_vars = 1;
  m.constraints.push_back(make({{1, pos(1)}}, Relation::Le, 0));
  CHECK_THROWS_AS(emit_opb(m), InternalError);
}
