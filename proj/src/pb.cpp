#include "straf/pb.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace straf::pb {

namespace {

/// One >=-constraint over per-variable net coefficients (positive literal
/// form): Σ coeff·x >= bound.
struct VarForm {
  std::map<std::uint32_t, std::int64_t> coeff;
  std::int64_t bound = 0;
};

PBConstraint to_positive_terms(const VarForm& f) {
  PBConstraint out;
  out.rel = Relation::Ge;
  out.bound = f.bound;
  for (auto [var, w] : f.coeff) {
    if (w == 0) continue;
    if (w > 0) {
      out.add(w, pos(var));
    } else {
      // -w·x == |w|·(1-x) - |w|
      out.add(-w, neg(var));
      out.bound += -w;
    }
  }
  return out;
}

}  // namespace

std::vector<PBConstraint> normalize(const PBConstraint& c) {
  // Collapse to net per-variable coefficients with every literal in
  // positive-variable form: w·(1-x) contributes -w·x and shifts the bound.
  VarForm ge;  // also reused for the <= side of equalities
  std::int64_t base = 0;
  for (const auto& [w, lit] : c.terms) {
    if (lit.var == 0) throw InternalError("literal with variable index 0");
    if (lit.negated) {
      ge.coeff[lit.var] -= w;
      base += w;
    } else {
      ge.coeff[lit.var] += w;
    }
  }

  std::int64_t bound = c.bound;
  Relation rel = c.rel;
  if (rel == Relation::Lt) {
    rel = Relation::Le;
    bound -= 1;
  } else if (rel == Relation::Gt) {
    rel = Relation::Ge;
    bound += 1;
  }

  std::vector<PBConstraint> out;
  auto emit_ge = [&](std::int64_t sign) {
    // sign=+1 keeps Σ >= bound; sign=-1 encodes Σ <= bound as -Σ >= -bound.
    VarForm f;
    for (auto [var, w] : ge.coeff) f.coeff[var] = sign * w;
    f.bound = sign * (bound - base);
    out.push_back(to_positive_terms(f));
  };

  if (rel == Relation::Ge) {
    emit_ge(+1);
  } else if (rel == Relation::Le) {
    emit_ge(-1);
  } else {  // Eq
    emit_ge(+1);
    emit_ge(-1);
  }
  return out;
}

bool is_normalized(const PBConstraint& c) {
  if (c.rel != Relation::Ge) return false;
  std::vector<std::uint32_t> vars;
  for (const auto& [w, lit] : c.terms) {
    if (w < 1 || lit.var == 0) return false;
    vars.push_back(lit.var);
  }
  std::sort(vars.begin(), vars.end());
  return std::adjacent_find(vars.begin(), vars.end()) == vars.end();
}

bool is_normalized(const PBModel& m) {
  for (const auto& c : m.constraints) {
    if (!is_normalized(c)) return false;
    for (const auto& [w, lit] : c.terms) {
      if (lit.var > m.num_vars) return false;
    }
  }
  return true;
}

std::string emit_opb(const PBModel& m) {
  if (!is_normalized(m)) throw InternalError("emit_opb requires a normalized model");
  std::string out = "* #variable= " + std::to_string(m.num_vars) +
                    " #constraint= " + std::to_string(m.constraints.size()) + "\n";
  for (const auto& c : m.constraints) {
    auto terms = c.terms;
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.second.var < b.second.var; });
    for (const auto& [w, lit] : terms) {
      out += "+" + std::to_string(w) + " " + (lit.negated ? "~x" : "x") +
             std::to_string(lit.var) + " ";
    }
    out += ">= " + std::to_string(c.bound) + " ;\n";
  }
  return out;
}

PBOutcome parse_solver_output(std::string_view text, std::uint32_t num_vars) {
  std::optional<PBOutcome::Status> status;
  // -1 unseen, else 0/1
  std::vector<int> seen(num_vars + 1, -1);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.size() >= 2 && line[0] == 's' && line[1] == ' ') {
      std::string verdict = line.substr(2);
      while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' ')) {
        verdict.pop_back();
      }
      if (verdict == "SATISFIABLE") {
        status = PBOutcome::Status::Sat;
      } else if (verdict == "UNSATISFIABLE") {
        status = PBOutcome::Status::Unsat;
      } else {
        throw ProtocolError("unrecognized solver verdict: " + line);
      }
    } else if (line.size() >= 2 && line[0] == 'v' && line[1] == ' ') {
      std::istringstream toks(line.substr(2));
      std::string tok;
      while (toks >> tok) {
        bool value = true;
        std::string_view t = tok;
        if (!t.empty() && t.front() == '-') {
          value = false;
          t.remove_prefix(1);
        }
        if (t.empty() || t.front() != 'x') {
          throw ProtocolError("malformed literal in v-line: " + tok);
        }
        t.remove_prefix(1);
        std::uint32_t var = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), var);
        if (ec != std::errc() || ptr != t.data() + t.size() || var == 0 || var > num_vars) {
          throw ProtocolError("variable out of range in v-line: " + tok);
        }
        if (seen[var] != -1 && seen[var] != (value ? 1 : 0)) {
          throw ProtocolError("contradictory value for x" + std::to_string(var));
        }
        seen[var] = value ? 1 : 0;
      }
    }
  }
  if (!status) throw ProtocolError("solver output lacks an s-line");
  PBOutcome out;
  out.status = *status;
  if (out.status == PBOutcome::Status::Sat) {
    out.assignment.assign(num_vars + 1, 0);
    for (std::uint32_t v = 1; v <= num_vars; ++v) {
      out.assignment[v] = seen[v] == 1 ? 1 : 0;
    }
  }
  return out;
}

bool satisfies(const PBConstraint& c, std::span<const std::uint8_t> assignment) {
  std::int64_t lhs = 0;
  for (const auto& [w, lit] : c.terms) {
    std::uint8_t v = assignment[lit.var];
    std::int64_t value = lit.negated ? 1 - v : v;
    lhs += w * value;
  }
  switch (c.rel) {
    case Relation::Ge: return lhs >= c.bound;
    case Relation::Le: return lhs <= c.bound;
    case Relation::Eq: return lhs == c.bound;
    case Relation::Lt: return lhs < c.bound;
    case Relation::Gt: return lhs > c.bound;
  }
  throw InternalError("unreachable relation");
}

bool satisfies(const PBModel& m, std::span<const std::uint8_t> assignment) {
  for (const auto& c : m.constraints) {
    if (!satisfies(c, assignment)) return false;
  }
  return true;
}

ArgSet decode(const PBModel& m, const Straf& straf, std::span<const std::uint8_t> assignment) {
  std::vector<ArgIndex> members;
  for (ArgIndex a = 0; a < straf.arg_count(); ++a) {
    if (assignment[m.varmap.x_of(a)]) members.push_back(a);
  }
  return ArgSet(std::move(members));
}

}  // namespace straf::pb
