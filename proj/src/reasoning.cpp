#include "straf/reasoning.hpp"

#include <algorithm>

namespace straf::reason {

std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::FindOne: return "SE";
    case TaskKind::EnumerateAll: return "EE";
    case TaskKind::Credulous: return "DC";
    case TaskKind::Skeptical: return "DS";
    case TaskKind::Verify: return "VER";
  }
  return "?";
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Oracle: return "oracle";
    case Engine::PbEmbedded: return "pb";
    case Engine::PbExternal: return "ext";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Per-task time budget shared by every solver call the task makes.
struct Budget {
  Clock::time_point deadline;
  std::uint64_t solver_calls = 0;

  explicit Budget(std::chrono::milliseconds total) : deadline(Clock::now() + total) {}

  std::chrono::milliseconds remaining() const {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    return left.count() > 0 ? left : std::chrono::milliseconds(0);
  }
};

solve::SolverConfig engine_config(const ReasonConfig& cfg, Engine engine) {
  solve::SolverConfig sc = cfg.solver;
  sc.engine = engine == Engine::PbExternal ? solve::SolverConfig::Engine::External
                                           : solve::SolverConfig::Engine::Embedded;
  return sc;
}

SemanticsSpec admissible_of(const SemanticsSpec& spec) {
  return SemanticsSpec{Family::Admissible, spec.mode, spec.variant};
}

encode::EncodingOptions with_boundary(const ReasonConfig& cfg, encode::EncodingOptions opts = {}) {
  opts.boundary = cfg.boundary;
  return opts;
}

/// PB-side building blocks. Every step reports whether the budget ran out;
/// callers keep whatever partial result was reached.
class PbRunner {
public:
  PbRunner(const Straf& straf, const ReasonConfig& cfg, Engine engine, Budget& budget)
      : straf_(straf), cfg_(cfg), sc_(engine_config(cfg, engine)), budget_(budget) {}

  pb::PBModel model(const SemanticsSpec& spec, encode::EncodingOptions opts = {}) const {
    return encode::assemble(straf_, spec, with_boundary(cfg_, std::move(opts)));
  }

  /// Sat/Unsat, or nullopt when the budget expired. Error raises.
  std::optional<solve::SolveResult> try_solve(const pb::PBModel& m) {
    solve::SolverConfig sc = sc_;
    sc.timeout = budget_.remaining();
    if (sc.timeout.count() <= 0) return std::nullopt;
    ++budget_.solver_calls;
    solve::SolveResult res = solve::solve(m, sc);
    if (res.status == solve::SolveStatus::Timeout) return std::nullopt;
    if (res.status == solve::SolveStatus::Error) {
      throw SolverFailure("solver failed: " + res.message);
    }
    return res;
  }

  struct MaximizeResult {
    std::optional<ArgSet> best;  // admissible; maximal when !timed_out
    bool timed_out = false;
  };

  /// Iterated growth: solve, pin the solution in, require one argument more,
  /// until unsat. The last solution is subset-maximal within the model.
  MaximizeResult maximize(pb::PBModel model,
                          const std::function<void(const ArgSet&)>& on_step = {}) {
    MaximizeResult out;
    while (true) {
      auto res = try_solve(model);
      if (!res) {
        out.timed_out = true;
        return out;
      }
      if (res->status == solve::SolveStatus::Unsat) return out;
      ArgSet found = pb::decode(model, straf_, res->assignment);
      if (out.best && !(out.best->size() < found.size() && out.best->is_subset_of(found))) {
        throw InternalError("growth step did not produce a strict superset");
      }
      out.best = std::move(found);
      if (on_step) on_step(*out.best);
      encode::add_growth(model, straf_, *out.best);
    }
  }

  struct EnumResult {
    std::vector<ArgSet> sets;
    bool timed_out = false;
  };

  EnumResult enumerate_flat(const SemanticsSpec& spec) {
    pb::PBModel m = model(spec);
    solve::SolverConfig sc = sc_;
    sc.timeout = budget_.remaining();
    EnumResult out;
    if (sc.timeout.count() <= 0) {
      out.timed_out = true;
      return out;
    }
    solve::EnumerationResult res = solve::enumerate_solutions(m, sc, m.varmap.x_var);
    budget_.solver_calls += res.solver_calls;
    out.timed_out = !res.complete;
    for (const auto& proj : res.solutions) {
      std::vector<ArgIndex> members;
      for (ArgIndex a = 0; a < straf_.arg_count(); ++a) {
        if (proj[a]) members.push_back(a);
      }
      out.sets.push_back(ArgSet(std::move(members)));
    }
    return out;
  }

  EnumResult enumerate_preferred(Mode mode) {
    pb::PBModel base = model(SemanticsSpec{Family::Admissible, mode});
    EnumResult out;
    while (true) {
      // Maximize within the admissible sets not covered by the extensions
      // found so far; any maximal element there is globally maximal, and each
      // new extension's subsets get blocked for the next round.
      MaximizeResult res = maximize(base);
      if (res.timed_out) {
        out.timed_out = true;
        return out;
      }
      if (!res.best) return out;
      encode::add_block_subsets(base, straf_, *res.best);
      out.sets.push_back(std::move(*res.best));
    }
  }

  EnumResult enumerate(const SemanticsSpec& spec) {
    return spec.family == Family::Preferred ? enumerate_preferred(spec.mode)
                                            : enumerate_flat(spec);
  }

private:
  const Straf& straf_;
  const ReasonConfig& cfg_;
  solve::SolverConfig sc_;
  Budget& budget_;
};

// ---- Oracle engine ----------------------------------------------------------

struct OracleEnum {
  oracle::ExtensionSet set;
  bool timed_out;
};

OracleEnum oracle_enumerate(const Straf& straf, const SemanticsSpec& spec,
                            const ReasonConfig& cfg, Budget& budget) {
  oracle::EnumerateOptions opts;
  opts.cap = cfg.oracle_cap;
  opts.deadline = budget.deadline;
  oracle::EnumerateResult res = oracle::enumerate_naive(straf, spec, opts);
  return {std::move(res.set), res.timed_out};
}

TaskAnswer run_oracle(const Straf& straf, const Task& task, const ReasonConfig& cfg,
                      Budget& budget) {
  TaskAnswer answer;
  auto partial = [&answer](bool timed_out) {
    if (timed_out) answer.status = RunStatus::TimeoutPartial;
    return timed_out;
  };
  switch (task.kind) {
    case TaskKind::FindOne: {
      auto all = oracle_enumerate(straf, task.spec, cfg, budget);
      if (partial(all.timed_out)) break;
      if (!all.set.extensions.empty()) answer.witness = all.set.extensions.front();
      answer.yes = !all.set.extensions.empty();
      break;
    }
    case TaskKind::EnumerateAll: {
      auto all = oracle_enumerate(straf, task.spec, cfg, budget);
      partial(all.timed_out);
      answer.extensions = std::move(all.set);
      break;
    }
    case TaskKind::Credulous: {
      auto all = oracle_enumerate(straf, task.spec, cfg, budget);
      if (partial(all.timed_out)) break;
      answer.yes = false;
      for (const auto& e : all.set.extensions) {
        if (e.contains(*task.subject_arg)) {
          answer.yes = true;
          answer.witness = e;
          break;
        }
      }
      break;
    }
    case TaskKind::Skeptical: {
      auto all = oracle_enumerate(straf, task.spec, cfg, budget);
      if (partial(all.timed_out)) break;
      answer.yes = true;
      for (const auto& e : all.set.extensions) {
        if (!e.contains(*task.subject_arg)) {
          answer.yes = false;
          answer.witness = e;
          break;
        }
      }
      break;
    }
    case TaskKind::Verify: {
      bool ok = check_semantics(straf, *task.subject_set, task.spec, cfg.oracle_cap);
      answer.yes = ok;
      if (ok) answer.witness = *task.subject_set;
      break;
    }
  }
  return answer;
}

// ---- PB engines -------------------------------------------------------------

TaskAnswer run_pb(const Straf& straf, const Task& task, const ReasonConfig& cfg,
                  Budget& budget) {
  PbRunner runner(straf, cfg, task.engine, budget);
  const SemanticsSpec& spec = task.spec;
  TaskAnswer answer;
  switch (task.kind) {
    case TaskKind::FindOne: {
      if (spec.family == Family::Preferred) {
        auto res = runner.maximize(runner.model(admissible_of(spec)));
        answer.witness = std::move(res.best);
        if (res.timed_out) {
          // Best-so-far is admissible but possibly not maximal yet.
          answer.status = RunStatus::TimeoutPartial;
        } else {
          answer.yes = answer.witness.has_value();
        }
        break;
      }
      pb::PBModel m = runner.model(spec);
      auto res = runner.try_solve(m);
      if (!res) {
        answer.status = RunStatus::TimeoutPartial;
        break;
      }
      if (res->status == solve::SolveStatus::Sat) {
        answer.witness = pb::decode(m, straf, res->assignment);
      }
      answer.yes = answer.witness.has_value();
      break;
    }
    case TaskKind::EnumerateAll: {
      auto res = runner.enumerate(spec);
      if (res.timed_out) answer.status = RunStatus::TimeoutPartial;
      oracle::canonicalize(straf, res.sets);
      answer.extensions = oracle::ExtensionSet{std::move(res.sets), spec};
      break;
    }
    case TaskKind::Credulous: {
      // Credulous acceptance under preferred coincides with the admissible
      // level; the admissible witness is then grown to a maximal one.
      const bool preferred = spec.family == Family::Preferred;
      encode::EncodingOptions opts;
      opts.task_pins.emplace_back(*task.subject_arg, true);
      pb::PBModel m = runner.model(preferred ? admissible_of(spec) : spec, opts);
      auto res = runner.try_solve(m);
      if (!res) {
        answer.status = RunStatus::TimeoutPartial;
        break;
      }
      if (res->status != solve::SolveStatus::Sat) {
        answer.yes = false;
        break;
      }
      answer.yes = true;
      if (preferred) {
        auto grown = runner.maximize(std::move(m));
        answer.witness = std::move(grown.best);
        if (grown.timed_out) answer.status = RunStatus::TimeoutPartial;
      } else {
        answer.witness = pb::decode(m, straf, res->assignment);
      }
      break;
    }
    case TaskKind::Skeptical: {
      if (spec.family == Family::Admissible) {
        // The empty set is admissible in both modes: constant NO.
        answer.yes = false;
        answer.witness = ArgSet{};
        break;
      }
      if (spec.family == Family::Preferred) {
        auto all = runner.enumerate_preferred(spec.mode);
        if (all.timed_out) {
          answer.status = RunStatus::TimeoutPartial;
          break;
        }
        answer.yes = true;
        for (const auto& e : all.sets) {
          if (!e.contains(*task.subject_arg)) {
            answer.yes = false;
            answer.witness = e;
            break;
          }
        }
        break;
      }
      encode::EncodingOptions opts;
      opts.task_pins.emplace_back(*task.subject_arg, false);
      pb::PBModel m = runner.model(spec, opts);
      auto res = runner.try_solve(m);
      if (!res) {
        answer.status = RunStatus::TimeoutPartial;
        break;
      }
      if (res->status == solve::SolveStatus::Sat) {
        answer.yes = false;
        answer.witness = pb::decode(m, straf, res->assignment);
      } else {
        answer.yes = true;
      }
      break;
    }
    case TaskKind::Verify: {
      const ArgSet& s = *task.subject_set;
      const SemanticsSpec probe = spec.family == Family::Preferred ? admissible_of(spec) : spec;
      encode::EncodingOptions pin_all;
      for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
        pin_all.task_pins.emplace_back(a, s.contains(a));
      }
      auto base = runner.try_solve(runner.model(probe, pin_all));
      if (!base) {
        answer.status = RunStatus::TimeoutPartial;
        break;
      }
      if (base->status != solve::SolveStatus::Sat) {
        answer.yes = false;
        break;
      }
      if (spec.family != Family::Preferred) {
        answer.yes = true;
        answer.witness = s;
        break;
      }
      // Maximality: pinning the members and demanding one extra argument must
      // be unsatisfiable.
      encode::EncodingOptions grow;
      for (ArgIndex a : s) grow.task_pins.emplace_back(a, true);
      pb::PBModel m = runner.model(admissible_of(spec), grow);
      encode::add_block_subsets(m, straf, s);
      auto bigger = runner.try_solve(m);
      if (!bigger) {
        answer.status = RunStatus::TimeoutPartial;
        break;
      }
      answer.yes = bigger->status == solve::SolveStatus::Unsat;
      if (*answer.yes) answer.witness = s;
      break;
    }
  }
  return answer;
}

}  // namespace

TaskAnswer run(const Straf& straf, const Task& task, const ReasonConfig& cfg) {
  if ((task.kind == TaskKind::Credulous || task.kind == TaskKind::Skeptical) &&
      !task.subject_arg) {
    throw InputError("credulous/skeptical tasks need a subject argument");
  }
  if (task.kind == TaskKind::Verify && !task.subject_set) {
    throw InputError("verification needs a subject set");
  }
  Budget budget(cfg.solver.timeout);
  const auto started = Clock::now();
  TaskAnswer answer = task.engine == Engine::Oracle ? run_oracle(straf, task, cfg, budget)
                                                    : run_pb(straf, task, cfg, budget);
  answer.stats.solver_calls = budget.solver_calls;
  answer.stats.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
  return answer;
}

namespace {

void require_complete(const TaskAnswer& a, const char* what) {
  if (a.status == RunStatus::TimeoutPartial) {
    throw SolverFailure(std::string(what) + " timed out");
  }
}

}  // namespace

std::optional<ArgSet> find_one(const Straf& straf, const SemanticsSpec& spec, Engine engine,
                               const ReasonConfig& cfg) {
  TaskAnswer a = run(straf, Task{TaskKind::FindOne, spec, {}, {}, engine}, cfg);
  require_complete(a, "find_one");
  return a.witness;
}

ArgSet preferred_one(const Straf& straf, Mode mode, const ReasonConfig& cfg,
                     const std::function<void(const ArgSet&)>& on_step) {
  Budget budget(cfg.solver.timeout);
  PbRunner runner(straf, cfg, Engine::PbEmbedded, budget);
  auto res = runner.maximize(runner.model(SemanticsSpec{Family::Admissible, mode}), on_step);
  if (res.timed_out && !res.best) throw SolverFailure("preferred_one timed out");
  if (!res.best) throw InternalError("the admissible base model cannot be unsat");
  return *res.best;
}

oracle::ExtensionSet enumerate(const Straf& straf, const SemanticsSpec& spec, Engine engine,
                               const ReasonConfig& cfg) {
  TaskAnswer a = run(straf, Task{TaskKind::EnumerateAll, spec, {}, {}, engine}, cfg);
  require_complete(a, "enumerate");
  return std::move(*a.extensions);
}

bool credulous(const Straf& straf, const SemanticsSpec& spec, ArgIndex a, Engine engine,
               const ReasonConfig& cfg, std::optional<ArgSet>* witness) {
  TaskAnswer ans = run(straf, Task{TaskKind::Credulous, spec, a, {}, engine}, cfg);
  require_complete(ans, "credulous");
  if (witness) *witness = ans.witness;
  return *ans.yes;
}

bool skeptical(const Straf& straf, const SemanticsSpec& spec, ArgIndex a, Engine engine,
               const ReasonConfig& cfg, std::optional<ArgSet>* counterwitness) {
  TaskAnswer ans = run(straf, Task{TaskKind::Skeptical, spec, a, {}, engine}, cfg);
  require_complete(ans, "skeptical");
  if (counterwitness) *counterwitness = ans.witness;
  return *ans.yes;
}

bool verify(const Straf& straf, const SemanticsSpec& spec, const ArgSet& s, Engine engine,
            const ReasonConfig& cfg) {
  TaskAnswer ans = run(straf, Task{TaskKind::Verify, spec, {}, s, engine}, cfg);
  require_complete(ans, "verify");
  return *ans.yes;
}

}  // namespace straf::reason
