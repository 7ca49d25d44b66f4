#ifndef STRAF_REASONING_HPP
#define STRAF_REASONING_HPP

#include <functional>
#include <optional>

#include "straf/core.hpp"
#include "straf/encode.hpp"
#include "straf/oracle.hpp"
#include "straf/solve.hpp"

namespace straf::reason {

/// Raised when a solver backend fails (external process/protocol trouble).
class SolverFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class TaskKind { FindOne, EnumerateAll, Credulous, Skeptical, Verify };
enum class Engine { Oracle, PbEmbedded, PbExternal };

std::string_view to_string(TaskKind k);
std::string_view to_string(Engine e);

struct Task {
  TaskKind kind = TaskKind::EnumerateAll;
  SemanticsSpec spec;
  std::optional<ArgIndex> subject_arg;  // Credulous/Skeptical
  std::optional<ArgSet> subject_set;    // Verify
  Engine engine = Engine::PbEmbedded;
};

struct ReasonConfig {
  solve::SolverConfig solver;  // timeout is the whole-task budget
  encode::DefenseBoundary boundary = encode::DefenseBoundary::Strict;
  std::size_t oracle_cap = 20;
};

enum class RunStatus { Complete, TimeoutPartial };

struct Stats {
  std::uint64_t solver_calls = 0;
  std::int64_t wall_ms = 0;
};

struct TaskAnswer {
  std::optional<bool> yes;                         // decision tasks
  std::optional<ArgSet> witness;                   // found/witnessing extension
  std::optional<oracle::ExtensionSet> extensions;  // enumeration
  RunStatus status = RunStatus::Complete;
  Stats stats;
};

/// Dispatch a task to its engine. Decision answers carry a witness extension
/// when one exists (DC yes, DS no, VER yes).
TaskAnswer run(const Straf& straf, const Task& task, const ReasonConfig& cfg = {});

// Named operations behind run(); all honor cfg.solver.timeout as their budget.

/// Some extension under spec, or nullopt (only stable can be empty; a legacy
/// strong-complete family can be empty too).
std::optional<ArgSet> find_one(const Straf& straf, const SemanticsSpec& spec, Engine engine,
                               const ReasonConfig& cfg = {});

/// One subset-maximal admissible set, grown by iterated solving: after each
/// solution, its members are pinned in and at least one outside argument is
/// required, until unsat. on_step (when given) observes each intermediate set.
ArgSet preferred_one(const Straf& straf, Mode mode, const ReasonConfig& cfg = {},
                     const std::function<void(const ArgSet&)>& on_step = {});

oracle::ExtensionSet enumerate(const Straf& straf, const SemanticsSpec& spec, Engine engine,
                               const ReasonConfig& cfg = {});

bool credulous(const Straf& straf, const SemanticsSpec& spec, ArgIndex a, Engine engine,
               const ReasonConfig& cfg = {}, std::optional<ArgSet>* witness = nullptr);

bool skeptical(const Straf& straf, const SemanticsSpec& spec, ArgIndex a, Engine engine,
               const ReasonConfig& cfg = {}, std::optional<ArgSet>* counterwitness = nullptr);

bool verify(const Straf& straf, const SemanticsSpec& spec, const ArgSet& s, Engine engine,
            const ReasonConfig& cfg = {});

}  // namespace straf::reason

#endif
