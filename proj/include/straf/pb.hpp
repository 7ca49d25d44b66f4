#ifndef STRAF_PB_HPP
#define STRAF_PB_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "straf/core.hpp"

namespace straf::pb {

/// Raised when a solver's output does not follow the s/v line protocol.
class ProtocolError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A 0/1 variable reference; negated means l = 1 - v.
struct Literal {
  std::uint32_t var = 0;  // 1-based
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

inline Literal pos(std::uint32_t var) { return {var, false}; }
inline Literal neg(std::uint32_t var) { return {var, true}; }

enum class Relation { Ge, Le, Eq, Lt, Gt };

/// Σ coeff·literal REL bound over 0/1 variables. Constraints are built in
/// whatever shape reads best and brought to normal form before solving.
struct PBConstraint {
  std::vector<std::pair<std::int64_t, Literal>> terms;
  Relation rel = Relation::Ge;
  std::int64_t bound = 0;

  PBConstraint& add(std::int64_t coeff, Literal lit) {
    terms.emplace_back(coeff, lit);
    return *this;
  }
};

/// Normal form: relation >=, every coefficient >= 1, at most one term per
/// variable. Equalities split in two; strict relations tighten by one
/// (everything is integer); negative coefficients flip the literal.
/// Trivially-true leftovers (bound <= 0) are preserved.
std::vector<PBConstraint> normalize(const PBConstraint& c);

bool is_normalized(const PBConstraint& c);

/// Argument/variable correspondence of a model: x-variables say "in the
/// extension", y-variables (when the defense encoding is active) say
/// "defeated by the extension".
struct VarMap {
  std::vector<std::string> arg_ids;       // by argument index
  std::vector<std::uint32_t> x_var;       // 1-based, one per argument
  std::vector<std::uint32_t> y_var;       // 0 when no y was allocated

  bool has_y() const { return !y_var.empty() && y_var.front() != 0; }
  std::uint32_t x_of(ArgIndex a) const { return x_var.at(a); }
  std::uint32_t y_of(ArgIndex a) const { return y_var.at(a); }
};

struct PBModel {
  std::uint32_t num_vars = 0;
  std::vector<PBConstraint> constraints;  // normalized
  VarMap varmap;
  std::uint64_t big_m = 0;
};

bool is_normalized(const PBModel& m);

/// PB-competition OPB text: "* #variable= N #constraint= C" header, one
/// ">= k ;" line per constraint, terms in variable order, negation as ~xN.
std::string emit_opb(const PBModel& m);

struct PBOutcome {
  enum class Status { Sat, Unsat };
  Status status = Status::Unsat;
  std::vector<std::uint8_t> assignment;  // by var, index 0 unused; total when sat
};

/// Reads PB-competition solver output: the verdict from the s-line, values
/// from v-lines (xN true, -xN false; several v-lines concatenate; unmentioned
/// variables default to 0). Missing s-line or contradictory v-entries raise
/// ProtocolError.
PBOutcome parse_solver_output(std::string_view text, std::uint32_t num_vars);

/// Independent truth evaluation, used to re-verify every model a solver
/// returns. assignment is indexed by variable (entry 0 unused).
bool satisfies(const PBConstraint& c, std::span<const std::uint8_t> assignment);
bool satisfies(const PBModel& m, std::span<const std::uint8_t> assignment);

/// E = { a_i | x_i = 1 }.
ArgSet decode(const PBModel& m, const Straf& straf, std::span<const std::uint8_t> assignment);

}  // namespace straf::pb

#endif
