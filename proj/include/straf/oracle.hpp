#ifndef STRAF_ORACLE_HPP
#define STRAF_ORACLE_HPP

#include <chrono>
#include <optional>

#include "straf/core.hpp"

namespace straf::oracle {

/// Extensions in canonical order: by size, then lexicographically by the
/// sorted member-id sequence. Cross-engine equality is plain vector equality.
struct ExtensionSet {
  std::vector<ArgSet> extensions;
  SemanticsSpec semantics;

  bool operator==(const ExtensionSet& other) const {
    return extensions == other.extensions;
  }
  bool contains(const ArgSet& s) const;
};

/// Sorts into canonical order (and drops duplicates).
void canonicalize(const Straf& straf, std::vector<ArgSet>& extensions);

using Deadline = std::chrono::steady_clock::time_point;

struct EnumerateOptions {
  std::size_t cap = 20;                   // refuse larger frameworks (2^A blowup)
  std::optional<Deadline> deadline;       // give up (flagged) when exceeded
  bool parallel = true;                   // OpenMP kernel vs serial reference
};

struct EnumerateResult {
  ExtensionSet set;
  bool timed_out = false;
};

/// Ground truth: test every subset of A with the definition-level checker.
/// With opts.parallel the subset space is split into chunks handed to OpenMP
/// workers; results are merged deterministically.
EnumerateResult enumerate_naive(const Straf& straf, const SemanticsSpec& spec,
                                const EnumerateOptions& opts = {});

/// Single-threaded reference kernel, kept as the comparison baseline for the
/// parallel path. No deadline handling; refuses above cap.
ExtensionSet enumerate_naive_serial(const Straf& straf, const SemanticsSpec& spec,
                                    std::size_t cap = 20);

enum class ClassicalFamily { ConflictFree, Admissible, Complete, Preferred, Stable };

/// Standard Dung semantics over the attack graph alone, ignoring strengths.
/// Deliberately a separate implementation path from the StrAF predicates so
/// the unit-strength reduction has an independent witness.
ExtensionSet classical_af_enumerate(const Straf& af, ClassicalFamily family,
                                    std::size_t cap = 20);

}  // namespace straf::oracle

#endif
