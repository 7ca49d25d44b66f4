#include "straf/encode.hpp"

namespace straf::encode {

using pb::neg;
using pb::PBConstraint;
using pb::PBModel;
using pb::pos;
using pb::Relation;
using pb::VarMap;

namespace {

std::int64_t strength_of(const Straf& straf, ArgIndex a) {
  return static_cast<std::int64_t>(straf.strength(a));
}

/// <= S(a) in PaperLiteral, <= S(a)-1 in Strict.
std::int64_t boundary_cap(const Straf& straf, ArgIndex a, DefenseBoundary boundary) {
  std::int64_t s = strength_of(straf, a);
  return boundary == DefenseBoundary::Strict ? s - 1 : s;
}

void require_encodable(const Straf& straf) {
  if (straf.aggregator() != AggOp::Sum) {
    throw InputError("the PB encoding is defined for the sum aggregator only");
  }
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (straf.strength(a) == 0) {
      throw InputError("the PB encoding requires strengths >= 1 (argument " + straf.id_of(a) +
                       " has strength 0)");
    }
  }
}

}  // namespace

pb::VarMap make_varmap(const Straf& straf, bool with_y) {
  VarMap vm;
  const std::uint32_t n = static_cast<std::uint32_t>(straf.arg_count());
  vm.arg_ids = straf.ids();
  vm.x_var.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) vm.x_var[i] = i + 1;
  if (with_y) {
    vm.y_var.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) vm.y_var[i] = n + i + 1;
  }
  return vm;
}

std::vector<PBConstraint> strong_cf_constraints(const Straf& straf, const VarMap& vm) {
  std::vector<PBConstraint> out;
  out.reserve(straf.attacks().size());
  for (auto [i, j] : straf.attacks()) {
    PBConstraint c;
    c.add(1, pos(vm.x_of(i))).add(1, pos(vm.x_of(j)));
    c.rel = Relation::Le;
    c.bound = 1;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PBConstraint> weak_cf_constraints(const Straf& straf, const VarMap& vm,
                                              std::uint64_t big_m) {
  std::vector<PBConstraint> out;
  out.reserve(straf.arg_count());
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // Σ S(a_i)·x_i < S(a)·x + M·x̄, emitted even for unattacked arguments.
    PBConstraint c;
    for (ArgIndex b : straf.attackers(a)) c.add(strength_of(straf, b), pos(vm.x_of(b)));
    c.add(-strength_of(straf, a), pos(vm.x_of(a)));
    c.add(-static_cast<std::int64_t>(big_m), neg(vm.x_of(a)));
    c.rel = Relation::Lt;
    c.bound = 0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PBConstraint> defeat_var_constraints(const Straf& straf, const VarMap& vm,
                                                 std::uint64_t big_m,
                                                 DefenseBoundary boundary) {
  std::vector<PBConstraint> out;
  out.reserve(2 * straf.arg_count());
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // y=1 needs defeat mass: Σ S(a_i)·x_i >= S(a)·y.
    PBConstraint lower;
    for (ArgIndex b : straf.attackers(a)) lower.add(strength_of(straf, b), pos(vm.x_of(b)));
    lower.add(-strength_of(straf, a), pos(vm.y_of(a)));
    lower.rel = Relation::Ge;
    lower.bound = 0;
    out.push_back(std::move(lower));

    // y=0 caps the mass below defeat: Σ S(a_i)·x_i <= cap·ȳ + M·y. The strict
    // cap S(a)-1 pins y at exact equality, where defeat already fires.
    PBConstraint upper;
    for (ArgIndex b : straf.attackers(a)) upper.add(strength_of(straf, b), pos(vm.x_of(b)));
    upper.add(-boundary_cap(straf, a, boundary), neg(vm.y_of(a)));
    upper.add(-static_cast<std::int64_t>(big_m), pos(vm.y_of(a)));
    upper.rel = Relation::Le;
    upper.bound = 0;
    out.push_back(std::move(upper));
  }
  return out;
}

std::vector<PBConstraint> defense_constraints(const Straf& straf, const VarMap& vm,
                                              std::uint64_t big_m, DefenseBoundary boundary) {
  std::vector<PBConstraint> out;
  out.reserve(straf.arg_count());
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // Σ S(a_i)·ȳ_i <= cap·x + M·x̄.
    PBConstraint c;
    for (ArgIndex b : straf.attackers(a)) c.add(strength_of(straf, b), neg(vm.y_of(b)));
    c.add(-boundary_cap(straf, a, boundary), pos(vm.x_of(a)));
    c.add(-static_cast<std::int64_t>(big_m), neg(vm.x_of(a)));
    c.rel = Relation::Le;
    c.bound = 0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PBConstraint> complete_strong_constraints(const Straf& straf, const VarMap& vm,
                                                      std::uint64_t big_m) {
  std::vector<PBConstraint> out;
  out.reserve(straf.arg_count());
  const std::int64_t m = static_cast<std::int64_t>(big_m);
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // Σ S(a_i)·ȳ_i + Σ_{Γ⁻} M·x_i + Σ_{Γ⁺} M·x'_i >= S(a)·x̄.
    PBConstraint c;
    for (ArgIndex b : straf.attackers(a)) {
      c.add(strength_of(straf, b), neg(vm.y_of(b)));
      c.add(m, pos(vm.x_of(b)));
    }
    for (ArgIndex b : straf.targets(a)) c.add(m, pos(vm.x_of(b)));
    c.add(-strength_of(straf, a), neg(vm.x_of(a)));
    c.rel = Relation::Ge;
    c.bound = 0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PBConstraint> complete_weak_constraints(const Straf& straf, const VarMap& vm) {
  std::vector<PBConstraint> out;
  out.reserve(straf.arg_count());
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // Σ S(a_i)·ȳ_i >= S(a)·x̄.
    PBConstraint c;
    for (ArgIndex b : straf.attackers(a)) c.add(strength_of(straf, b), neg(vm.y_of(b)));
    c.add(-strength_of(straf, a), neg(vm.x_of(a)));
    c.rel = Relation::Ge;
    c.bound = 0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PBConstraint> stable_constraints(const Straf& straf, const VarMap& vm, Mode mode,
                                             std::uint64_t big_m) {
  std::vector<PBConstraint> out = mode == Mode::Strong
                                      ? strong_cf_constraints(straf, vm)
                                      : weak_cf_constraints(straf, vm, big_m);
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    // Excluded arguments are defeated in place: Σ S(a_i)·x_i >= S(a)·x̄.
    PBConstraint c;
    for (ArgIndex b : straf.attackers(a)) c.add(strength_of(straf, b), pos(vm.x_of(b)));
    c.add(-strength_of(straf, a), neg(vm.x_of(a)));
    c.rel = Relation::Ge;
    c.bound = 0;
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

PBModel finish(const Straf& straf, VarMap vm, bool with_y,
               std::vector<PBConstraint> raw, const EncodingOptions& opts) {
  PBModel m;
  m.num_vars = static_cast<std::uint32_t>(straf.arg_count() * (with_y ? 2 : 1));
  m.big_m = straf.total_strength() + 1;
  m.varmap = std::move(vm);
  for (const auto& c : raw) {
    for (auto& n : pb::normalize(c)) m.constraints.push_back(std::move(n));
  }
  for (auto [a, value] : opts.task_pins) {
    if (a >= straf.arg_count()) throw InputError("pin references an unknown argument");
    add_pin(m, a, value);
  }
  for (const auto& e : opts.blocked_models) add_block_exact(m, straf, e);
  for (const auto& e : opts.subset_blocks) add_block_subsets(m, straf, e);
  return m;
}

}  // namespace

pb::PBModel assemble(const Straf& straf, const SemanticsSpec& spec,
                     const EncodingOptions& opts) {
  require_encodable(straf);
  if (spec.family == Family::Preferred) {
    throw InputError(
        "preferred semantics has no direct PB encoding; use the reasoning layer's "
        "iterated search");
  }
  const std::uint64_t big_m = straf.total_strength() + 1;
  const bool with_y = spec.family != Family::Stable;
  VarMap vm = make_varmap(straf, with_y);

  std::vector<PBConstraint> raw;
  auto append = [&raw](std::vector<PBConstraint> cs) {
    for (auto& c : cs) raw.push_back(std::move(c));
  };

  if (spec.family == Family::Stable) {
    append(stable_constraints(straf, vm, spec.mode, big_m));
    return finish(straf, std::move(vm), with_y, std::move(raw), opts);
  }

  append(spec.mode == Mode::Strong ? strong_cf_constraints(straf, vm)
                                   : weak_cf_constraints(straf, vm, big_m));
  append(defeat_var_constraints(straf, vm, big_m, opts.boundary));
  append(defense_constraints(straf, vm, big_m, opts.boundary));
  if (spec.family == Family::Complete) {
    if (spec.mode == Mode::Strong && spec.variant == CompleteVariant::Revisited) {
      append(complete_strong_constraints(straf, vm, big_m));
    } else {
      // Weak complete, and the legacy strong variant: excluded arguments must
      // be classically undefended.
      append(complete_weak_constraints(straf, vm));
    }
  }
  return finish(straf, std::move(vm), with_y, std::move(raw), opts);
}

pb::PBModel admissible_base(const Straf& straf, Mode mode, const EncodingOptions& opts) {
  return assemble(straf, SemanticsSpec{Family::Admissible, mode}, opts);
}

void add_pin(pb::PBModel& m, ArgIndex a, bool value) {
  PBConstraint c;
  c.add(1, pos(m.varmap.x_of(a)));
  c.rel = Relation::Eq;
  c.bound = value ? 1 : 0;
  for (auto& n : pb::normalize(c)) m.constraints.push_back(std::move(n));
}

void add_block_exact(pb::PBModel& m, const Straf& straf, const ArgSet& e) {
  PBConstraint c;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    c.add(1, e.contains(a) ? neg(m.varmap.x_of(a)) : pos(m.varmap.x_of(a)));
  }
  c.rel = Relation::Ge;
  c.bound = 1;
  for (auto& n : pb::normalize(c)) m.constraints.push_back(std::move(n));
}

void add_block_subsets(pb::PBModel& m, const Straf& straf, const ArgSet& e) {
  PBConstraint c;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (!e.contains(a)) c.add(1, pos(m.varmap.x_of(a)));
  }
  c.rel = Relation::Ge;
  c.bound = 1;
  for (auto& n : pb::normalize(c)) m.constraints.push_back(std::move(n));
}

void add_growth(pb::PBModel& m, const Straf& straf, const ArgSet& e) {
  for (ArgIndex a : e) add_pin(m, a, true);
  add_block_subsets(m, straf, e);
}

}  // namespace straf::encode
