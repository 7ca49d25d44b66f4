#ifndef STRAF_CORE_HPP
#define STRAF_CORE_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace straf {

/// Raised on malformed user input (bad ids, bad files, violated preconditions
/// a caller can trigger from the outside). Maps to CLI exit code 3.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Aggregation operator for collective strength. Both shipped operators are
/// monotone and order-insensitive over multisets of naturals, which is what
/// the attacker-subset reduction in defends() relies on.
enum class AggOp { Sum, Max };

std::string_view to_string(AggOp op);

using ArgIndex = std::uint32_t;

enum class Family { Admissible, Complete, Preferred, Stable };
enum class Mode { Strong, Weak };
enum class CompleteVariant { Revisited, Legacy };

/// Which semantics membership check_semantics() performs. The variant only
/// matters for (Complete, Strong) and defaults to the revisited definition.
struct SemanticsSpec {
  Family family = Family::Admissible;
  Mode mode = Mode::Strong;
  CompleteVariant variant = CompleteVariant::Revisited;
};

std::string to_string(const SemanticsSpec& spec);

/// Immutable strength-based argumentation framework: arguments in declaration
/// order, an attack relation, a total strength map, and an aggregator.
/// Safe to share across threads once built.
class Straf {
public:
  std::size_t arg_count() const { return ids_.size(); }
  const std::string& id_of(ArgIndex i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<ArgIndex> find(std::string_view id) const;
  /// Like find() but raises InputError naming the unknown id.
  ArgIndex index_of(std::string_view id) const;

  std::uint32_t strength(ArgIndex i) const { return strength_.at(i); }
  AggOp aggregator() const { return agg_; }

  /// Attackers of i (Γ⁻), sorted by index.
  const std::vector<ArgIndex>& attackers(ArgIndex i) const { return attackers_.at(i); }
  /// Targets of i (Γ⁺), sorted by index.
  const std::vector<ArgIndex>& targets(ArgIndex i) const { return targets_.at(i); }

  const std::vector<std::pair<ArgIndex, ArgIndex>>& attacks() const { return attacks_; }
  bool has_attack(ArgIndex from, ArgIndex to) const;

  /// Σ_a S(a); what the encoder's big-M must exceed.
  std::uint64_t total_strength() const { return total_strength_; }

private:
  friend class StrafBuilder;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, ArgIndex> index_;
  std::vector<std::uint32_t> strength_;
  std::vector<std::vector<ArgIndex>> attackers_;
  std::vector<std::vector<ArgIndex>> targets_;
  std::vector<std::pair<ArgIndex, ArgIndex>> attacks_;
  AggOp agg_ = AggOp::Sum;
  std::uint64_t total_strength_ = 0;
};

/// Accumulates declarations and validates them into a Straf.
///
/// Argument ids must be nonempty and free of whitespace, parentheses and
/// commas. Every argument needs exactly one strength; strengths must be >= 1
/// unless allow_zero_strength(true) was requested (oracle-only escape hatch).
/// Attack endpoints must be declared. Duplicate attacks collapse (the relation
/// is a set); duplicate argument or strength declarations are errors.
class StrafBuilder {
public:
  StrafBuilder& aggregator(AggOp op);
  StrafBuilder& allow_zero_strength(bool allow);
  StrafBuilder& add_argument(std::string_view id);
  StrafBuilder& add_attack(std::string_view from, std::string_view to);
  StrafBuilder& set_strength(std::string_view id, std::uint32_t s);
  /// Validates and freezes. The builder is left in a moved-from state.
  Straf build();

private:
  ArgIndex require(std::string_view id, const char* role) const;
  Straf straf_;
  std::vector<std::optional<std::uint32_t>> declared_strength_;
  bool allow_zero_ = false;
};

/// A subset of a Straf's arguments, stored as indices sorted ascending.
class ArgSet {
public:
  ArgSet() = default;
  explicit ArgSet(std::vector<ArgIndex> members);
  static ArgSet of(const Straf& straf, std::initializer_list<std::string_view> ids);
  static ArgSet full(const Straf& straf);

  bool contains(ArgIndex a) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<ArgIndex>& members() const { return members_; }

  ArgSet with(ArgIndex a) const;
  ArgSet intersect_sorted(const std::vector<ArgIndex>& sorted) const;
  bool is_subset_of(const ArgSet& other) const;

  bool operator==(const ArgSet& other) const { return members_ == other.members_; }

  /// Member ids sorted lexicographically — the canonical presentation order.
  std::vector<std::string> canonical_ids(const Straf& straf) const;
  /// "{a1,a3,a5}" with members in canonical order; "{}" when empty.
  std::string to_string(const Straf& straf) const;

private:
  std::vector<ArgIndex> members_;
};

// ---- Definition-level predicates -------------------------------------------
// These are the ground truth the rest of the toolkit is tested against.

/// Γ⁻(a) as an ArgSet.
ArgSet attackers_of(const Straf& straf, ArgIndex a);

/// True iff some argument is attacked by every member of k. k must be
/// nonempty (the definitions never aggregate an empty set).
bool is_accrual(const Straf& straf, const ArgSet& k);

/// Aggregated strength of k's members under the framework's operator.
std::uint64_t collective_strength(const Straf& straf, const ArgSet& k);

/// κ ▷ a: k is an accrual attacking a and its collective strength reaches
/// S(a). Empty k never defeats.
bool defeats_arg(const Straf& straf, const ArgSet& k, ArgIndex a);

/// κ ▷ κ': k defeats some member of k2.
bool defeats_set(const Straf& straf, const ArgSet& k, const ArgSet& k2);

bool is_strongly_cf(const Straf& straf, const ArgSet& s);

/// No accrual inside s defeats a member of s. For monotone aggregators this
/// reduces to checking each member against the full set of its in-set
/// attackers.
bool is_weakly_cf(const Straf& straf, const ArgSet& s);

/// Some accrual inside s defeats b, i.e. s's attackers of b reach S(b).
bool set_defeats(const Straf& straf, const ArgSet& s, ArgIndex b);

/// Every accrual defeating a is itself defeated by an accrual inside s.
/// Monotone reduction: the undefeated attackers of a, taken together, must
/// stay below S(a).
bool defends(const Straf& straf, const ArgSet& s, ArgIndex a);

/// defends(s, a) and s ∪ {a} is strongly conflict-free.
bool strongly_defends(const Straf& straf, const ArgSet& s, ArgIndex a);

/// Membership of s in the extension family named by spec, straight from the
/// definitions. Preferred runs an exhaustive superset search and refuses
/// frameworks larger than preferred_cap arguments.
bool check_semantics(const Straf& straf, const ArgSet& s, const SemanticsSpec& spec,
                     std::size_t preferred_cap = 20);

}  // namespace straf

#endif
