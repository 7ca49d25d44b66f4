#ifndef STRAF_ENCODE_HPP
#define STRAF_ENCODE_HPP

#include "straf/core.hpp"
#include "straf/pb.hpp"

namespace straf::encode {

/// How defeat-at-equality is treated by the defense-side constraints.
///
/// Collective defeat fires at coval >= S(a), so an undefeated attacker mass
/// exactly equal to S(a) defeats. Strict mode (the default) makes the y- and
/// defense constraints agree with that: y=0 requires mass <= S(a)-1 and a
/// member's undefeated attacker mass must stay <= S(a)-1. PaperLiteral keeps
/// the <= S(a) forms instead; it admits boundary sets the definitions reject
/// and leaves y free at exact equality, and is retained for comparison.
enum class DefenseBoundary { Strict, PaperLiteral };

struct EncodingOptions {
  DefenseBoundary boundary = DefenseBoundary::Strict;
  std::vector<std::pair<ArgIndex, bool>> task_pins;  // force x_a to 1/0
  std::vector<ArgSet> blocked_models;                // exclude these exact sets
  std::vector<ArgSet> subset_blocks;                 // exclude all subsets of these
};

/// x_i + x_j <= 1 per attack: no attack inside the solution set.
std::vector<pb::PBConstraint> strong_cf_constraints(const Straf& straf, const pb::VarMap& vm);

/// Per argument (attacked or not): the in-solution attacker mass stays below
/// S(a) while a is in, and is unconstrained (bounded by M) while a is out.
std::vector<pb::PBConstraint> weak_cf_constraints(const Straf& straf, const pb::VarMap& vm,
                                                  std::uint64_t big_m);

/// Two constraints per argument tying y_a to "a is defeated by the solution".
std::vector<pb::PBConstraint> defeat_var_constraints(const Straf& straf, const pb::VarMap& vm,
                                                     std::uint64_t big_m,
                                                     DefenseBoundary boundary);

/// Members' undefeated attackers must not reach defeat mass.
std::vector<pb::PBConstraint> defense_constraints(const Straf& straf, const pb::VarMap& vm,
                                                  std::uint64_t big_m, DefenseBoundary boundary);

/// Excluded arguments must not be strongly defended: undefeated attack mass
/// reaches S(a), or a conflicts with the solution set in either direction.
std::vector<pb::PBConstraint> complete_strong_constraints(const Straf& straf,
                                                          const pb::VarMap& vm,
                                                          std::uint64_t big_m);

/// Excluded arguments must not be (classically) defended.
std::vector<pb::PBConstraint> complete_weak_constraints(const Straf& straf,
                                                        const pb::VarMap& vm);

/// Mode conflict-freeness plus: every excluded argument is defeated by its
/// in-solution attackers.
std::vector<pb::PBConstraint> stable_constraints(const Straf& straf, const pb::VarMap& vm,
                                                 Mode mode, std::uint64_t big_m);

/// Variable layout for a model over straf: x_i first, then y_i when needed.
pb::VarMap make_varmap(const Straf& straf, bool with_y);

/// Full normalized model for admissible, complete (both strong variants and
/// weak) or stable semantics, plus pins and blocking constraints from opts.
/// Preferred has no polynomial encoding; requesting it directs the caller to
/// the reasoning layer. Only the sum aggregator is encodable.
pb::PBModel assemble(const Straf& straf, const SemanticsSpec& spec,
                     const EncodingOptions& opts = {});

/// The admissible-set base model Algorithm-1-style preferred search grows.
pb::PBModel admissible_base(const Straf& straf, Mode mode, const EncodingOptions& opts = {});

/// Appends (normalized) extra constraints to an assembled model.
void add_pin(pb::PBModel& m, ArgIndex a, bool value);
void add_block_exact(pb::PBModel& m, const Straf& straf, const ArgSet& e);
void add_block_subsets(pb::PBModel& m, const Straf& straf, const ArgSet& e);
/// Algorithm-1 growth pair: members of e stay in; something outside joins.
void add_growth(pb::PBModel& m, const Straf& straf, const ArgSet& e);

}  // namespace straf::encode

#endif
