#ifndef STRAF_SOLVE_HPP
#define STRAF_SOLVE_HPP

#include <chrono>
#include <span>
#include <string>

#include "straf/pb.hpp"

namespace straf::solve {

struct SolverConfig {
  enum class Engine { Embedded, External };
  Engine engine = Engine::Embedded;
  /// argv template for the external engine; {opb} is replaced by the instance
  /// path (appended when the placeholder is absent). Split on whitespace.
  std::string external_cmd;
  std::chrono::milliseconds timeout{600'000};
  std::uint64_t seed = 0;  // branching tie-break
};

enum class SolveStatus { Sat, Unsat, Timeout, Error };

std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  std::vector<std::uint8_t> assignment;  // var-indexed, entry 0 unused; set when Sat
  std::string message;                   // diagnostic for Error
};

/// Decide m with the configured engine. The embedded engine is a complete
/// depth-first search with threshold propagation over the normalized
/// constraints; deterministic for a fixed seed. Timeout is a distinct result,
/// not an error.
SolveResult solve(const pb::PBModel& m, const SolverConfig& cfg);

struct EnumerationResult {
  /// One entry per solution: values aligned with the projection variable list.
  std::vector<std::vector<std::uint8_t>> solutions;
  bool complete = true;  // false when the timeout cut enumeration short
  std::uint64_t solver_calls = 0;
};

/// All distinct projections of m's solutions onto `projection`, found by
/// iterated solving with a blocking constraint per found projection. The
/// timeout budget covers the whole enumeration.
EnumerationResult enumerate_solutions(const pb::PBModel& m, const SolverConfig& cfg,
                                      std::span<const std::uint32_t> projection);

/// Emit m as OPB to a temp file, run the external command on it, parse the
/// s/v output. The child is killed at the deadline. Exit codes are ignored
/// when an s-line is present; a sat claim is re-checked against m and
/// downgraded to Error if it does not hold.
SolveResult run_external(const pb::PBModel& m, const SolverConfig& cfg);

}  // namespace straf::solve

#endif
