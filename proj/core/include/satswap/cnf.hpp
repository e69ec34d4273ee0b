#pragma once

// CNF data model: literals, clauses, formulas, three-valued evaluation,
// DIMACS parsing/serialization and seeded random instance generation.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace satswap {

enum class TruthValue : std::uint8_t { False = 0, True = 1, Unassigned = 2 };

constexpr TruthValue negate(TruthValue v) {
  if (v == TruthValue::Unassigned) return v;
  return v == TruthValue::True ? TruthValue::False : TruthValue::True;
}

/// A variable occurrence or its negation. Stored DIMACS-style as +v / -v.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(int var, bool positive) : code_(positive ? var : -var) {}

  static constexpr Lit from_dimacs(int d) { return Lit(d < 0 ? -d : d, d > 0); }

  constexpr int var() const { return code_ < 0 ? -code_ : code_; }
  constexpr bool positive() const { return code_ > 0; }
  constexpr int to_dimacs() const { return code_; }
  constexpr Lit negated() const { return from_dimacs(-code_); }
  constexpr bool valid() const { return code_ != 0; }

  friend constexpr bool operator==(Lit a, Lit b) = default;
  friend constexpr auto operator<=>(Lit a, Lit b) = default;

 private:
  std::int32_t code_ = 0;
};

/// Literal truth under a variable's current value.
constexpr TruthValue lit_value(TruthValue var_value, Lit l) {
  return l.positive() ? var_value : negate(var_value);
}

// A disjunction of literals. Construction normalizes: duplicate literals
// are dropped (first occurrence kept) and a clause containing a literal
// together with its negation is flagged tautological (always satisfied).
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);

  const std::vector<Lit>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool tautological() const { return tautological_; }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Lit> lits_;
  bool tautological_ = false;
};

// Immutable CNF instance. Variable ids are dense 1..num_vars; unused
// declared variables are legal and treated as free. An empty clause is not
// stored as a Clause; it is carried as the explicit has_empty_clause marker.
class Formula {
 public:
  Formula() = default;
  Formula(int num_vars, std::vector<Clause> clauses, bool has_empty_clause = false);

  int num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool has_empty_clause() const { return has_empty_clause_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
  bool has_empty_clause_ = false;
};

/// Dense map var -> TruthValue, vars 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars)
      : values_(static_cast<std::size_t>(num_vars) + 1, TruthValue::Unassigned) {}

  int num_vars() const { return static_cast<int>(values_.size()) - 1; }
  TruthValue value(int var) const { return values_[static_cast<std::size_t>(var)]; }
  TruthValue value(Lit l) const { return lit_value(value(l.var()), l); }

  void assign(Lit l) {
    auto& slot = values_[static_cast<std::size_t>(l.var())];
    if (slot == TruthValue::Unassigned) ++assigned_;
    slot = l.positive() ? TruthValue::True : TruthValue::False;
  }
  void unassign(int var) {
    auto& slot = values_[static_cast<std::size_t>(var)];
    if (slot != TruthValue::Unassigned) --assigned_;
    slot = TruthValue::Unassigned;
  }

  int assigned_count() const { return assigned_; }
  bool all_assigned() const { return assigned_ == num_vars(); }

 private:
  std::vector<TruthValue> values_{TruthValue::Unassigned};
  int assigned_ = 0;
};

enum class ClauseStatus : std::uint8_t { Satisfied, Falsified, Unit, Unresolved };

struct ClauseEval {
  ClauseStatus status = ClauseStatus::Unresolved;
  Lit unit;  // the forced literal, valid iff status == Unit
};

// Reference clause semantics: Satisfied iff some literal true, Falsified iff
// all false, Unit iff exactly one unassigned and the rest false. Tautological
// clauses are always Satisfied.
ClauseEval eval_clause(const Clause& c, const Assignment& a);

enum class Satisfiability { Sat, Unsat };

// Requires a full assignment over 1..num_vars; throws std::invalid_argument
// if any variable is unassigned.
Satisfiability eval_formula(const Formula& f, const Assignment& a);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// DIMACS CNF: `c` comments, one `p cnf <vars> <clauses>` header, clauses as
// whitespace-separated literals terminated by 0 (may span lines). A line
// starting with '%' ends the input (SATLIB trailer convention). A bare `0`
// clause sets the has_empty_clause marker instead of storing a clause.
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);

void serialize_dimacs(const Formula& f, std::ostream& out);
std::string to_dimacs(const Formula& f);

// Deterministic random k-CNF: each clause draws clause_len distinct variables
// uniformly, each polarity uniform. Throws std::invalid_argument when
// clause_len > num_vars.
Formula gen_random(int num_vars, int num_clauses, int clause_len, std::uint64_t seed);

}  // namespace satswap
