#ifndef STRAF_TESTS_INSTANCES_HPP
#define STRAF_TESTS_INSTANCES_HPP

#include <initializer_list>
#include <vector>

#include "straf/core.hpp"
#include "straf/oracle.hpp"

namespace straf::testing {

/// Five arguments, five attacks, strengths 2,1,2,4,1. The accrual {a1,a3}
/// reaches a4's strength while neither member does alone, which is what makes
/// this framework interesting under every semantics.
///
///   a1 -> a4, a2 -> a4, a2 -> a3, a3 -> a4, a4 -> a5
inline Straf five_arg_example() {
  StrafBuilder b;
  b.add_argument("a1").add_argument("a2").add_argument("a3").add_argument("a4").add_argument(
      "a5");
  b.add_attack("a1", "a4");
  b.add_attack("a2", "a3");
  b.add_attack("a2", "a4");
  b.add_attack("a3", "a4");
  b.add_attack("a4", "a5");
  b.set_strength("a1", 2);
  b.set_strength("a2", 1);
  b.set_strength("a3", 2);
  b.set_strength("a4", 4);
  b.set_strength("a5", 1);
  return b.build();
}

/// a -> b -> c -> a with strengths 5,4,3: {a} is maximal admissible yet the
/// legacy complete definition leaves the framework with no complete extension.
inline Straf three_cycle() {
  StrafBuilder b;
  b.add_argument("a").add_argument("b").add_argument("c");
  b.add_attack("a", "b");
  b.add_attack("b", "c");
  b.add_attack("c", "a");
  b.set_strength("a", 5);
  b.set_strength("b", 4);
  b.set_strength("c", 3);
  return b.build();
}

/// Unit strengths, single attack b -> a: the smallest framework where the
/// defeat-at-equality boundary decides whether {a} defends itself.
inline Straf unit_pair() {
  StrafBuilder b;
  b.add_argument("a").add_argument("b");
  b.add_attack("b", "a");
  b.set_strength("a", 1);
  b.set_strength("b", 1);
  return b.build();
}

using IdSets = std::vector<std::vector<std::string_view>>;

inline oracle::ExtensionSet family_of(const Straf& straf, const SemanticsSpec& spec,
                                      const IdSets& sets) {
  std::vector<ArgSet> extensions;
  for (const auto& ids : sets) {
    std::vector<ArgIndex> members;
    for (auto id : ids) members.push_back(straf.index_of(id));
    extensions.push_back(ArgSet(std::move(members)));
  }
  oracle::canonicalize(straf, extensions);
  return oracle::ExtensionSet{std::move(extensions), spec};
}

}  // namespace straf::testing

#endif
