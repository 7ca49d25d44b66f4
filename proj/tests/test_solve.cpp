#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "straf/encode.hpp"
#include "straf/oracle.hpp"
#include "straf/solve.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"

using namespace straf;
namespace sv = straf::solve;
using sv::SolveStatus;
using sv::SolverConfig;
using sv::enumerate_solutions;
using sv::run_external;

namespace {

pb::PBModel random_model(std::uint64_t seed, std::uint32_t max_vars) {
  gen::Rng rng(seed);
  pb::PBModel m;
  m.num_vars = static_cast<std::uint32_t>(rng.uniform(1, max_vars));
  const std::uint32_t n_cons = static_cast<std::uint32_t>(rng.uniform(1, 2 * m.num_vars + 2));
  for (std::uint32_t c = 0; c < n_cons; ++c) {
    pb::PBConstraint raw;
    const std::uint32_t n_terms =
        static_cast<std::uint32_t>(rng.uniform(1, std::min(m.num_vars, 5u)));
    for (std::uint32_t t = 0; t < n_terms; ++t) {
      std::int64_t w = static_cast<std::int64_t>(rng.uniform(0, 10)) - 5;
      if (w == 0) w = 1;
      raw.add(w, pb::Literal{static_cast<std::uint32_t>(rng.uniform(1, m.num_vars)),
                             rng.coin(0.5)});
    }
    raw.bound = static_cast<std::int64_t>(rng.uniform(0, 12)) - 6;
    const pb::Relation rels[] = {pb::Relation::Ge, pb::Relation::Le, pb::Relation::Eq,
                                 pb::Relation::Lt, pb::Relation::Gt};
    raw.rel = rels[rng.uniform(0, 4)];
    for (auto& nc : pb::normalize(raw)) m.constraints.push_back(std::move(nc));
  }
  return m;
}

pb::PBModel tiny(std::vector<pb::PBConstraint> raw, std::uint32_t num_vars) {
  pb::PBModel m;
  m.num_vars = num_vars;
  for (const auto& c : raw) {
    for (auto& nc : pb::normalize(c)) m.constraints.push_back(std::move(nc));
  }
  return m;
}

struct TempScript {
  std::filesystem::path path;
  explicit TempScript(const std::string& body) {
    path = std::filesystem::path("/tmp") /
           ("straf-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++) + ".sh");
    std::ofstream out(path);
    out << body;
    out.close();
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  }
  ~TempScript() { std::filesystem::remove(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

// Reference PB solver in python: parses the OPB file and tries all
// assignments. Independent of every C++ code path.
const char* kPythonBruteForce = R"(#!/bin/sh
exec python3 - "$1" <<'EOF'
import itertools, sys
cons = []
nvars = 0
for line in open(sys.argv[1]):
    line = line.strip()
    if not line or line.startswith('*'):
        if '#variable=' in line:
            nvars = int(line.split()[2])
        continue
    lhs, rhs = line.split('>=')
    bound = int(rhs.replace(';', '').strip())
    terms = []
    toks = lhs.split()
    for i in range(0, len(toks), 2):
        w = int(toks[i])
        lit = toks[i + 1]
        negated = lit.startswith('~')
        var = int(lit.lstrip('~x'))
        terms.append((w, var, negated))
    cons.append((terms, bound))
for bits in itertools.product((0, 1), repeat=nvars):
    ok = True
    for terms, bound in cons:
        s = sum(w * ((1 - bits[v - 1]) if neg else bits[v - 1]) for w, v, neg in terms)
        if s < bound:
            ok = False
            break
    if ok:
        print('s SATISFIABLE')
        print('v ' + ' '.join(('x%d' % (i + 1)) if b else ('-x%d' % (i + 1))
                              for i, b in enumerate(bits)))
        sys.exit(0)
print('s UNSATISFIABLE')
EOF
)";

}  // namespace

TEST_CASE("trivial models") {
  auto sat = sv::solve(tiny({[] {
                    pb::PBConstraint c;
                    c.add(1, pb::pos(1));
                    c.bound = 1;
                    return c;
                  }()},
                        1),
                   {});
  CHECK(sat.status == SolveStatus::Sat);
  CHECK(sat.assignment == std::vector<std::uint8_t>{0, 1});

  pb::PBConstraint a, b;
  a.add(1, pb::pos(1));
  a.bound = 1;
  b.add(1, pb::neg(1));
  b.bound = 1;
  CHECK(sv::solve(tiny({a, b}, 1), {}).status == SolveStatus::Unsat);
}

TEST_CASE("pinned admissible model finds the only extension with a5") {
  Straf s = testing::five_arg_example();
  encode::EncodingOptions opts;
  opts.task_pins.emplace_back(s.index_of("a5"), true);
  pb::PBModel m = encode::assemble(s, {Family::Admissible, Mode::Strong}, opts);
  auto res = sv::solve(m, {});
  REQUIRE(res.status == SolveStatus::Sat);
  ArgSet found = pb::decode(m, s, res.assignment);
  CHECK(found == ArgSet::of(s, {"a1", "a3", "a5"}));
  CHECK(check_semantics(s, found, {Family::Admissible, Mode::Strong}));
}

TEST_CASE("embedded solver agrees with brute force on random models") {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    pb::PBModel m = random_model(seed, 10);
    auto brute = testing::brute_solutions(m);
    auto res = sv::solve(m, {});
    CAPTURE(seed);
    REQUIRE(res.status != SolveStatus::Error);
    CHECK((res.status == SolveStatus::Sat) == !brute.empty());
    if (res.status == SolveStatus::Sat) CHECK(pb::satisfies(m, res.assignment));
  }
}

TEST_CASE("enumeration is exhaustive and blocked correctly") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    pb::PBModel m = random_model(seed * 31 + 7, 8);
    std::vector<std::uint32_t> projection;
    for (std::uint32_t v = 1; v <= m.num_vars; ++v) projection.push_back(v);
    auto res = enumerate_solutions(m, {}, projection);
    REQUIRE(res.complete);
    auto brute = testing::brute_solutions(m);
    // Full projection: every assignment is its own projection.
    REQUIRE(res.solutions.size() == brute.size());
    std::sort(res.solutions.begin(), res.solutions.end());
    std::vector<std::vector<std::uint8_t>> expected;
    for (const auto& b : brute) {
      expected.emplace_back(b.begin() + 1, b.end());
    }
    std::sort(expected.begin(), expected.end());
    CHECK(res.solutions == expected);
  }
}

TEST_CASE("enumeration counts match the oracle on the example") {
  Straf s = testing::five_arg_example();
  {
    pb::PBModel m = encode::assemble(s, {Family::Complete, Mode::Weak});
    auto res = enumerate_solutions(m, {}, m.varmap.x_var);
    CHECK(res.complete);
    CHECK(res.solutions.size() == 1);
  }
  {
    // Strong-cf solutions, via the stable trick: count strongly cf sets via
    // a cf-only model.
    auto vm = encode::make_varmap(s, false);
    pb::PBModel m;
    m.num_vars = 5;
    m.varmap = vm;
    for (const auto& c : encode::strong_cf_constraints(s, vm)) {
      for (auto& nc : pb::normalize(c)) m.constraints.push_back(std::move(nc));
    }
    auto res = enumerate_solutions(m, {}, m.varmap.x_var);
    std::size_t expected = 0;
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      if (is_strongly_cf(s, testing::set_from_mask(mask, 5))) ++expected;
    }
    CHECK(res.solutions.size() == expected);
  }
  {
    pb::PBConstraint c;
    c.add(1, pb::pos(1));
    c.bound = 1;
    pb::PBConstraint no;
    no.add(1, pb::neg(1));
    no.bound = 1;
    pb::PBModel m = tiny({c, no}, 1);
    auto res = enumerate_solutions(m, {}, std::vector<std::uint32_t>{1});
    CHECK(res.complete);
    CHECK(res.solutions.empty());
  }
}

TEST_CASE("threshold propagation matches brute force on single constraints") {
  // Whenever a literal's weight exceeds the slack, it is implied; check the
  // implied-literal set against the brute-force semantics of the constraint.
  gen::Rng rng(1234);
  for (int round = 0; round < 200; ++round) {
    const std::uint32_t n = static_cast<std::uint32_t>(rng.uniform(1, 5));
    pb::PBConstraint raw;
    for (std::uint32_t t = 0, m = static_cast<std::uint32_t>(rng.uniform(1, 5)); t < m; ++t) {
      raw.add(static_cast<std::int64_t>(rng.uniform(1, 6)),
              pb::Literal{static_cast<std::uint32_t>(rng.uniform(1, n)), rng.coin(0.5)});
    }
    raw.bound = static_cast<std::int64_t>(rng.uniform(0, 10));
    pb::PBModel m = tiny({raw}, n);
    if (m.constraints.empty()) continue;
    const auto& c = m.constraints.front();

    std::int64_t slack = -c.bound;
    for (const auto& [w, lit] : c.terms) slack += w;
    if (slack < 0) {
      CHECK(testing::brute_solutions(m).empty());
      CHECK(sv::solve(m, {}).status == SolveStatus::Unsat);
      continue;
    }
    for (const auto& [w, lit] : c.terms) {
      if (w > slack) {
        // The literal is implied: no solution falsifies it.
        for (const auto& sol : testing::brute_solutions(m)) {
          const std::uint8_t v = sol[lit.var];
          CHECK((lit.negated ? v == 0 : v == 1));
        }
      }
    }
  }
}

TEST_CASE("determinism for a fixed seed") {
  pb::PBModel m = random_model(77, 12);
  SolverConfig cfg;
  cfg.seed = 42;
  auto first = sv::solve(m, cfg);
  for (int i = 0; i < 3; ++i) {
    auto again = sv::solve(m, cfg);
    CHECK(again.status == first.status);
    CHECK(again.assignment == first.assignment);
  }
}

TEST_CASE("zero budget reports timeout, not unsat") {
  Straf s = testing::five_arg_example();
  pb::PBModel m = encode::assemble(s, {Family::Admissible, Mode::Strong});
  SolverConfig cfg;
  cfg.timeout = std::chrono::milliseconds(0);
  CHECK(sv::solve(m, cfg).status == SolveStatus::Timeout);
}

TEST_CASE("external bridge round-trips through a real process") {
  TempScript script(kPythonBruteForce);
  SolverConfig cfg;
  cfg.engine = SolverConfig::Engine::External;
  cfg.external_cmd = script.path.string() + " {opb}";

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    pb::PBModel m = random_model(seed * 13 + 5, 6);
    auto external = run_external(m, cfg);
    auto embedded = sv::solve(m, SolverConfig{});
    CAPTURE(seed);
    REQUIRE(external.status != SolveStatus::Error);
    CHECK(external.status == embedded.status);
    if (external.status == SolveStatus::Sat) CHECK(pb::satisfies(m, external.assignment));
  }
}

TEST_CASE("external template without placeholder gets the path appended") {
  TempScript script(kPythonBruteForce);
  SolverConfig cfg;
  cfg.engine = SolverConfig::Engine::External;
  cfg.external_cmd = script.path.string();
  pb::PBConstraint c;
  c.add(1, pb::pos(1));
  c.bound = 1;
  CHECK(run_external(tiny({c}, 1), cfg).status == SolveStatus::Sat);
}

TEST_CASE("external timeout is honored") {
  TempScript script("#!/bin/sh\nsleep 30\necho 's UNSATISFIABLE'\n");
  SolverConfig cfg;
  cfg.engine = SolverConfig::Engine::External;
  cfg.external_cmd = script.path.string() + " {opb}";
  cfg.timeout = std::chrono::milliseconds(500);
  pb::PBConstraint c;
  c.add(1, pb::pos(1));
  c.bound = 1;
  auto t0 = std::chrono::steady_clock::now();
  auto res = run_external(tiny({c}, 1), cfg);
  auto elapsed = std::chrono::steady_clock::now() - t0;
  CHECK(res.status == SolveStatus::Timeout);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 1500);
}

TEST_CASE("external protocol failures are distinct errors") {
  pb::PBConstraint c;
  c.add(1, pb::pos(1));
  c.bound = 1;
  pb::PBModel m = tiny({c}, 1);

  TempScript garbage("#!/bin/sh\necho 'no verdict here'\nexit 3\n");
  SolverConfig cfg;
  cfg.engine = SolverConfig::Engine::External;
  cfg.external_cmd = garbage.path.string() + " {opb}";
  auto res = run_external(m, cfg);
  CHECK(res.status == SolveStatus::Error);
  CHECK(res.message.find("exit code 3") != std::string::npos);

  TempScript liar("#!/bin/sh\necho 's SATISFIABLE'\necho 'v -x1'\n");
  cfg.external_cmd = liar.path.string() + " {opb}";
  auto lied = run_external(m, cfg);
  CHECK(lied.status == SolveStatus::Error);

  CHECK_THROWS_AS(run_external(m, SolverConfig{SolverConfig::Engine::External, "", {}, 0}),
                  InputError);
}
