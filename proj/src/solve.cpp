#include "straf/solve.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace straf::solve {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Error: return "error";
  }
  return "error";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Complete DFS with threshold propagation on counters.
///
/// Invariants per constraint c (normal form Σ w·l >= k):
///   slack[c]    = Σ_{terms not falsified} w − k; slack < 0 ⇔ conflict
///   true_mass[c] = Σ_{terms satisfied} w; true_mass >= k ⇔ resolved
/// A literal with w > slack[c] in an unresolved c is forced true.
class EmbeddedSolver {
public:
  EmbeddedSolver(const pb::PBModel& model, std::uint64_t seed) : model_(model) {
    n_ = model.num_vars;
    value_.assign(n_ + 1, kUnset);
    occurs_.assign(n_ + 1, {});
    const auto& cs = model.constraints;
    slack_.resize(cs.size());
    true_mass_.assign(cs.size(), 0);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      std::int64_t total = 0;
      for (const auto& [w, lit] : cs[ci].terms) {
        total += w;
        occurs_[lit.var].push_back({static_cast<std::uint32_t>(ci), w, lit.negated});
      }
      slack_[ci] = total - cs[ci].bound;
    }
    tie_rank_.resize(n_ + 1);
    std::iota(tie_rank_.begin(), tie_rank_.end(), 0u);
    std::mt19937_64 rng(seed);
    if (n_ >= 1) std::shuffle(tie_rank_.begin() + 1, tie_rank_.end(), rng);
  }

  SolveResult run(Clock::time_point deadline) {
    if (!propagate_all_initial()) return {SolveStatus::Unsat, {}, {}};
    while (true) {
      if (Clock::now() >= deadline) return {SolveStatus::Timeout, {}, {}};
      std::uint32_t var = pick_branch_var();
      if (var == 0) return {SolveStatus::Sat, final_assignment(), {}};
      decisions_.push_back({trail_.size(), var, false});
      if (!assign_and_propagate(var, 0)) {
        if (!resolve_conflict()) return {SolveStatus::Unsat, {}, {}};
      }
    }
  }

private:
  static constexpr std::int8_t kUnset = -1;

  struct Occurrence {
    std::uint32_t constraint;
    std::int64_t weight;
    bool negated;
  };

  struct Decision {
    std::size_t trail_size;
    std::uint32_t var;
    bool flipped;
  };

  bool literal_true(const Occurrence& o, std::int8_t v) const {
    return o.negated ? v == 0 : v == 1;
  }

  // Returns false on conflict.
  bool enqueue(std::uint32_t var, std::int8_t val) {
    if (value_[var] != kUnset) return value_[var] == val;
    value_[var] = val;
    trail_.push_back(var);
    for (const auto& o : occurs_[var]) {
      if (literal_true(o, val)) {
        true_mass_[o.constraint] += o.weight;
      } else {
        slack_[o.constraint] -= o.weight;
        if (slack_[o.constraint] < 0) {
          conflict_ = true;
        } else {
          dirty_.push_back(o.constraint);
        }
      }
    }
    return !conflict_;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      std::uint32_t var = trail_.back();
      trail_.pop_back();
      std::int8_t val = value_[var];
      for (const auto& o : occurs_[var]) {
        if (literal_true(o, val)) {
          true_mass_[o.constraint] -= o.weight;
        } else {
          slack_[o.constraint] += o.weight;
        }
      }
      value_[var] = kUnset;
    }
    conflict_ = false;
    dirty_.clear();
  }

  // Fixpoint of threshold propagation over constraints touched since the last
  // call. Returns false on conflict.
  bool propagate() {
    std::size_t qi = 0;
    while (qi < dirty_.size()) {
      if (conflict_) break;
      std::uint32_t ci = dirty_[qi++];
      const auto& c = model_.constraints[ci];
      if (true_mass_[ci] >= c.bound) continue;  // resolved
      if (slack_[ci] < 0) {
        conflict_ = true;
        break;
      }
      for (const auto& [w, lit] : c.terms) {
        if (value_[lit.var] != kUnset) continue;
        if (w > slack_[ci]) {
          // Falsifying this literal would sink the slack: it is forced.
          if (!enqueue(lit.var, lit.negated ? 0 : 1)) return false;
        }
      }
    }
    dirty_.clear();
    return !conflict_;
  }

  bool propagate_all_initial() {
    dirty_.resize(model_.constraints.size());
    std::iota(dirty_.begin(), dirty_.end(), 0u);
    return propagate();
  }

  bool assign_and_propagate(std::uint32_t var, std::int8_t val) {
    if (!enqueue(var, val)) return false;
    return propagate();
  }

  // Chronological backtracking: flip the deepest unflipped decision.
  bool resolve_conflict() {
    while (!decisions_.empty()) {
      Decision d = decisions_.back();
      decisions_.pop_back();
      undo_to(d.trail_size);
      if (!d.flipped) {
        decisions_.push_back({d.trail_size, d.var, true});
        if (assign_and_propagate(d.var, 1)) return true;
        decisions_.pop_back();
        undo_to(d.trail_size);
      }
    }
    return false;
  }

  // Variable in the most unresolved constraints; ties by seeded rank.
  // Returns 0 when every constraint is resolved or slack-tight-satisfiable
  // without further choices (remaining variables are then free).
  std::uint32_t pick_branch_var() {
    std::vector<std::uint32_t> count(n_ + 1, 0);
    bool any_unresolved = false;
    for (std::size_t ci = 0; ci < model_.constraints.size(); ++ci) {
      const auto& c = model_.constraints[ci];
      if (true_mass_[ci] >= c.bound) continue;
      any_unresolved = true;
      for (const auto& [w, lit] : c.terms) {
        if (value_[lit.var] == kUnset) ++count[lit.var];
      }
    }
    if (!any_unresolved) return 0;
    std::uint32_t best = 0;
    for (std::uint32_t v = 1; v <= n_; ++v) {
      if (count[v] == 0) continue;
      if (best == 0 || count[v] > count[best] ||
          (count[v] == count[best] && tie_rank_[v] < tie_rank_[best])) {
        best = v;
      }
    }
    return best;
  }

  std::vector<std::uint8_t> final_assignment() const {
    std::vector<std::uint8_t> out(n_ + 1, 0);
    for (std::uint32_t v = 1; v <= n_; ++v) {
      out[v] = value_[v] == 1 ? 1 : 0;
    }
    return out;
  }

  const pb::PBModel& model_;
  std::uint32_t n_ = 0;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<Occurrence>> occurs_;
  std::vector<std::int64_t> slack_;
  std::vector<std::int64_t> true_mass_;
  std::vector<std::uint32_t> tie_rank_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> dirty_;
  std::vector<Decision> decisions_;
  bool conflict_ = false;
};

}  // namespace

SolveResult solve(const pb::PBModel& m, const SolverConfig& cfg) {
  if (!pb::is_normalized(m)) {
    throw InternalError("solver requires a normalized model");
  }
  if (cfg.engine == SolverConfig::Engine::External) return run_external(m, cfg);
  EmbeddedSolver engine(m, cfg.seed);
  SolveResult res = engine.run(Clock::now() + cfg.timeout);
  if (res.status == SolveStatus::Sat && !pb::satisfies(m, res.assignment)) {
    throw InternalError("embedded solver produced a non-model");
  }
  return res;
}

EnumerationResult enumerate_solutions(const pb::PBModel& m, const SolverConfig& cfg,
                                      std::span<const std::uint32_t> projection) {
  pb::PBModel work = m;
  EnumerationResult out;
  const auto deadline = Clock::now() + cfg.timeout;
  SolverConfig step = cfg;
  while (true) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (remaining.count() <= 0) {
      out.complete = false;
      return out;
    }
    step.timeout = remaining;
    SolveResult res = solve(work, step);
    ++out.solver_calls;
    if (res.status == SolveStatus::Unsat) return out;
    if (res.status == SolveStatus::Timeout) {
      out.complete = false;
      return out;
    }
    if (res.status == SolveStatus::Error) {
      throw InternalError("solver error during enumeration: " + res.message);
    }
    std::vector<std::uint8_t> proj(projection.size());
    pb::PBConstraint block;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      const std::uint32_t v = projection[i];
      proj[i] = res.assignment[v];
      block.add(1, proj[i] ? pb::neg(v) : pb::pos(v));
    }
    block.rel = pb::Relation::Ge;
    block.bound = 1;
    out.solutions.push_back(std::move(proj));
    for (auto& n : pb::normalize(block)) work.constraints.push_back(std::move(n));
  }
}

}  // namespace straf::solve
