#include "straf/core.hpp"

#include <algorithm>
#include <cctype>

namespace straf {

std::string_view to_string(AggOp op) {
  return op == AggOp::Sum ? "sum" : "max";
}

std::string to_string(const SemanticsSpec& spec) {
  std::string out;
  switch (spec.family) {
    case Family::Admissible: out = "adm"; break;
    case Family::Complete: out = "com"; break;
    case Family::Preferred: out = "prf"; break;
    case Family::Stable: out = "stb"; break;
  }
  out += spec.mode == Mode::Strong ? "_S" : "_W";
  if (spec.family == Family::Complete && spec.mode == Mode::Strong &&
      spec.variant == CompleteVariant::Legacy) {
    out += "_legacy";
  }
  return out;
}

std::optional<ArgIndex> Straf::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ArgIndex Straf::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw InputError("unknown argument id: " + std::string(id));
  return *idx;
}

bool Straf::has_attack(ArgIndex from, ArgIndex to) const {
  const auto& in = attackers_.at(to);
  return std::binary_search(in.begin(), in.end(), from);
}

namespace {

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (c == '(' || c == ')' || c == ',') return false;
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

StrafBuilder& StrafBuilder::aggregator(AggOp op) {
  straf_.agg_ = op;
  return *this;
}

StrafBuilder& StrafBuilder::allow_zero_strength(bool allow) {
  allow_zero_ = allow;
  return *this;
}

StrafBuilder& StrafBuilder::add_argument(std::string_view id) {
  if (!valid_id(id)) throw InputError("invalid argument id: '" + std::string(id) + "'");
  std::string key(id);
  if (straf_.index_.count(key)) throw InputError("duplicate argument id: " + key);
  ArgIndex idx = static_cast<ArgIndex>(straf_.ids_.size());
  straf_.index_.emplace(key, idx);
  straf_.ids_.push_back(std::move(key));
  declared_strength_.emplace_back();
  return *this;
}

ArgIndex StrafBuilder::require(std::string_view id, const char* role) const {
  auto it = straf_.index_.find(std::string(id));
  if (it == straf_.index_.end()) {
    throw InputError(std::string("undeclared argument in ") + role + ": " + std::string(id));
  }
  return it->second;
}

StrafBuilder& StrafBuilder::add_attack(std::string_view from, std::string_view to) {
  ArgIndex f = require(from, "attack");
  ArgIndex t = require(to, "attack");
  straf_.attacks_.emplace_back(f, t);
  return *this;
}

StrafBuilder& StrafBuilder::set_strength(std::string_view id, std::uint32_t s) {
  ArgIndex i = require(id, "strength");
  if (declared_strength_[i]) {
    throw InputError("duplicate strength declaration for " + std::string(id));
  }
  if (s == 0 && !allow_zero_) {
    throw InputError("strength of " + std::string(id) + " must be >= 1");
  }
  declared_strength_[i] = s;
  return *this;
}

Straf StrafBuilder::build() {
  const std::size_t n = straf_.ids_.size();
  straf_.strength_.resize(n);
  straf_.total_strength_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!declared_strength_[i]) {
      throw InputError("missing strength declaration for " + straf_.ids_[i]);
    }
    straf_.strength_[i] = *declared_strength_[i];
    straf_.total_strength_ += straf_.strength_[i];
  }
  std::sort(straf_.attacks_.begin(), straf_.attacks_.end());
  straf_.attacks_.erase(std::unique(straf_.attacks_.begin(), straf_.attacks_.end()),
                        straf_.attacks_.end());
  straf_.attackers_.assign(n, {});
  straf_.targets_.assign(n, {});
  for (auto [f, t] : straf_.attacks_) {
    straf_.attackers_[t].push_back(f);
    straf_.targets_[f].push_back(t);
  }
  for (auto& v : straf_.attackers_) std::sort(v.begin(), v.end());
  for (auto& v : straf_.targets_) std::sort(v.begin(), v.end());
  return std::move(straf_);
}

ArgSet::ArgSet(std::vector<ArgIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ArgSet ArgSet::of(const Straf& straf, std::initializer_list<std::string_view> ids) {
  std::vector<ArgIndex> m;
  m.reserve(ids.size());
  for (auto id : ids) m.push_back(straf.index_of(id));
  return ArgSet(std::move(m));
}

ArgSet ArgSet::full(const Straf& straf) {
  std::vector<ArgIndex> m(straf.arg_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<ArgIndex>(i);
  return ArgSet(std::move(m));
}

bool ArgSet::contains(ArgIndex a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

ArgSet ArgSet::with(ArgIndex a) const {
  if (contains(a)) return *this;
  std::vector<ArgIndex> m = members_;
  m.insert(std::upper_bound(m.begin(), m.end(), a), a);
  ArgSet out;
  out.members_ = std::move(m);
  return out;
}

ArgSet ArgSet::intersect_sorted(const std::vector<ArgIndex>& sorted) const {
  ArgSet out;
  std::set_intersection(members_.begin(), members_.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(out.members_));
  return out;
}

bool ArgSet::is_subset_of(const ArgSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::vector<std::string> ArgSet::canonical_ids(const Straf& straf) const {
  std::vector<std::string> ids;
  ids.reserve(members_.size());
  for (ArgIndex a : members_) ids.push_back(straf.id_of(a));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string ArgSet::to_string(const Straf& straf) const {
  std::string out = "{";
  bool first = true;
  for (const auto& id : canonical_ids(straf)) {
    if (!first) out += ',';
    out += id;
    first = false;
  }
  out += '}';
  return out;
}

ArgSet attackers_of(const Straf& straf, ArgIndex a) {
  if (a >= straf.arg_count()) throw InputError("argument index out of range");
  return ArgSet(std::vector<ArgIndex>(straf.attackers(a)));
}

bool is_accrual(const Straf& straf, const ArgSet& k) {
  if (k.empty()) throw InputError("accrual must be nonempty");
  // Candidate targets are the targets of any one member.
  ArgIndex pivot = *k.begin();
  for (ArgIndex c : straf.targets(pivot)) {
    bool all = true;
    for (ArgIndex a : k) {
      if (!straf.has_attack(a, c)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::uint64_t collective_strength(const Straf& straf, const ArgSet& k) {
  if (k.empty()) throw InputError("collective strength of an empty set is undefined");
  std::uint64_t acc = 0;
  for (ArgIndex a : k) {
    std::uint64_t s = straf.strength(a);
    acc = straf.aggregator() == AggOp::Sum ? acc + s : std::max(acc, s);
  }
  return acc;
}

bool defeats_arg(const Straf& straf, const ArgSet& k, ArgIndex a) {
  if (a >= straf.arg_count()) throw InputError("argument index out of range");
  if (k.empty()) return false;
  for (ArgIndex b : k) {
    if (!straf.has_attack(b, a)) return false;
  }
  return collective_strength(straf, k) >= straf.strength(a);
}

bool defeats_set(const Straf& straf, const ArgSet& k, const ArgSet& k2) {
  for (ArgIndex a : k2) {
    if (defeats_arg(straf, k, a)) return true;
  }
  return false;
}

bool is_strongly_cf(const Straf& straf, const ArgSet& s) {
  for (ArgIndex a : s) {
    for (ArgIndex b : straf.attackers(a)) {
      if (s.contains(b)) return false;
    }
  }
  return true;
}

bool is_weakly_cf(const Straf& straf, const ArgSet& s) {
  for (ArgIndex a : s) {
    ArgSet in = s.intersect_sorted(straf.attackers(a));
    if (!in.empty() && collective_strength(straf, in) >= straf.strength(a)) return false;
  }
  return true;
}

bool set_defeats(const Straf& straf, const ArgSet& s, ArgIndex b) {
  ArgSet in = s.intersect_sorted(straf.attackers(b));
  return !in.empty() && collective_strength(straf, in) >= straf.strength(b);
}

bool defends(const Straf& straf, const ArgSet& s, ArgIndex a) {
  if (a >= straf.arg_count()) throw InputError("argument index out of range");
  // Undefeated attackers of a, taken together, are the strongest accrual that
  // s cannot counter; monotonicity makes this single check sufficient.
  std::vector<ArgIndex> undefeated;
  for (ArgIndex b : straf.attackers(a)) {
    if (!set_defeats(straf, s, b)) undefeated.push_back(b);
  }
  if (undefeated.empty()) return true;
  return collective_strength(straf, ArgSet(std::move(undefeated))) < straf.strength(a);
}

bool strongly_defends(const Straf& straf, const ArgSet& s, ArgIndex a) {
  return defends(straf, s, a) && is_strongly_cf(straf, s.with(a));
}

namespace {

bool is_admissible(const Straf& straf, const ArgSet& s, Mode mode) {
  if (mode == Mode::Strong) {
    if (!is_strongly_cf(straf, s)) return false;
    // For members, s ∪ {a} = s is strongly cf already; strong and classical
    // defense coincide.
    for (ArgIndex a : s) {
      if (!defends(straf, s, a)) return false;
    }
    return true;
  }
  if (!is_weakly_cf(straf, s)) return false;
  for (ArgIndex a : s) {
    if (!defends(straf, s, a)) return false;
  }
  return true;
}

bool is_complete(const Straf& straf, const ArgSet& s, Mode mode, CompleteVariant variant) {
  if (!is_admissible(straf, s, mode)) return false;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (s.contains(a)) continue;
    bool owed = false;
    if (mode == Mode::Strong && variant == CompleteVariant::Revisited) {
      owed = strongly_defends(straf, s, a);
    } else {
      owed = defends(straf, s, a);
    }
    if (owed) return false;
  }
  return true;
}

bool is_stable(const Straf& straf, const ArgSet& s, Mode mode) {
  if (mode == Mode::Strong ? !is_strongly_cf(straf, s) : !is_weakly_cf(straf, s)) return false;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (s.contains(a)) continue;
    if (!set_defeats(straf, s, a)) return false;
  }
  return true;
}

bool is_preferred(const Straf& straf, const ArgSet& s, Mode mode, std::size_t cap) {
  if (straf.arg_count() > cap) {
    throw InputError("preferred membership check needs superset enumeration; " +
                     std::to_string(straf.arg_count()) + " arguments exceed the cap of " +
                     std::to_string(cap));
  }
  if (!is_admissible(straf, s, mode)) return false;
  std::vector<ArgIndex> outside;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (!s.contains(a)) outside.push_back(a);
  }
  const std::uint64_t lim = std::uint64_t{1} << outside.size();
  for (std::uint64_t mask = 1; mask < lim; ++mask) {
    std::vector<ArgIndex> members(s.members());
    for (std::size_t i = 0; i < outside.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) members.push_back(outside[i]);
    }
    if (is_admissible(straf, ArgSet(std::move(members)), mode)) return false;
  }
  return true;
}

}  // namespace

bool check_semantics(const Straf& straf, const ArgSet& s, const SemanticsSpec& spec,
                     std::size_t preferred_cap) {
  switch (spec.family) {
    case Family::Admissible:
      return is_admissible(straf, s, spec.mode);
    case Family::Complete:
      return is_complete(straf, s, spec.mode, spec.variant);
    case Family::Preferred:
      return is_preferred(straf, s, spec.mode, preferred_cap);
    case Family::Stable:
      return is_stable(straf, s, spec.mode);
  }
  throw InternalError("unreachable semantics family");
}

}  // namespace straf
