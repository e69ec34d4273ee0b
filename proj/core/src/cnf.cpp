#include "satswap/cnf.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace satswap {

Clause::Clause(std::vector<Lit> lits) {
  lits_.reserve(lits.size());
  for (Lit l : lits) {
    if (!l.valid()) throw std::invalid_argument("literal with variable 0");
    bool dup = false;
    for (Lit k : lits_) {
      if (k == l) dup = true;
      if (k == l.negated()) tautological_ = true;
    }
    if (!dup) lits_.push_back(l);
  }
}

Formula::Formula(int num_vars, std::vector<Clause> clauses, bool has_empty_clause)
    : num_vars_(num_vars), clauses_(std::move(clauses)), has_empty_clause_(has_empty_clause) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  for (const Clause& c : clauses_) {
    if (c.size() == 0) throw std::invalid_argument("empty clause stored as Clause");
    for (Lit l : c.literals())
      if (l.var() > num_vars_)
        throw std::invalid_argument("literal variable exceeds num_vars");
  }
}

ClauseEval eval_clause(const Clause& c, const Assignment& a) {
  if (c.tautological()) return {ClauseStatus::Satisfied, Lit()};
  int unassigned = 0;
  Lit last_free;
  for (Lit l : c.literals()) {
    switch (a.value(l)) {
      case TruthValue::True:
        return {ClauseStatus::Satisfied, Lit()};
      case TruthValue::Unassigned:
        ++unassigned;
        last_free = l;
        break;
      case TruthValue::False:
        break;
    }
  }
  if (unassigned == 0) return {ClauseStatus::Falsified, Lit()};
  if (unassigned == 1) return {ClauseStatus::Unit, last_free};
  return {ClauseStatus::Unresolved, Lit()};
}

Satisfiability eval_formula(const Formula& f, const Assignment& a) {
  if (a.num_vars() < f.num_vars())
    throw std::invalid_argument("eval_formula: assignment covers fewer variables than the formula");
  for (int v = 1; v <= f.num_vars(); ++v)
    if (a.value(v) == TruthValue::Unassigned)
      throw std::invalid_argument("eval_formula: variable " + std::to_string(v) + " unassigned");
  if (f.has_empty_clause()) return Satisfiability::Unsat;
  for (const Clause& c : f.clauses())
    if (eval_clause(c, a).status != ClauseStatus::Satisfied) return Satisfiability::Unsat;
  return Satisfiability::Sat;
}

namespace {

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Formula parse_dimacs(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  int declared_vars = 0, declared_clauses = 0;
  int terminated_clauses = 0;
  bool has_empty = false;
  std::vector<Clause> clauses;
  std::vector<Lit> current;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || is_blank(line)) continue;
    std::size_t first = line.find_first_not_of(" \t");
    char c0 = line[first];
    if (c0 == 'c') continue;
    if (c0 == '%') break;
    if (c0 == 'p') {
      if (header_seen) throw ParseError(lineno, "duplicate header");
      std::istringstream hs(line.substr(first));
      std::string p, fmt;
      if (!(hs >> p >> fmt >> declared_vars >> declared_clauses) || p != "p" || fmt != "cnf")
        throw ParseError(lineno, "malformed header, expected `p cnf <vars> <clauses>`");
      if (declared_vars < 0 || declared_clauses < 0)
        throw ParseError(lineno, "negative counts in header");
      std::string extra;
      if (hs >> extra) throw ParseError(lineno, "trailing tokens after header");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError(lineno, "clause data before `p cnf` header");
    std::istringstream ls(line.substr(first));
    long d;
    while (ls >> d) {
      if (d == 0) {
        if (current.empty()) {
          has_empty = true;
        } else {
          clauses.emplace_back(std::move(current));
          current.clear();
        }
        ++terminated_clauses;
        continue;
      }
      long v = d < 0 ? -d : d;
      if (v > declared_vars)
        throw ParseError(lineno, "literal variable " + std::to_string(v) +
                                     " exceeds declared " + std::to_string(declared_vars));
      current.push_back(Lit::from_dimacs(static_cast<int>(d)));
    }
    if (!ls.eof()) throw ParseError(lineno, "unexpected token in clause data");
  }
  if (!header_seen) throw ParseError(lineno, "missing `p cnf` header");
  if (!current.empty()) throw ParseError(lineno, "unterminated clause at end of input");
  if (terminated_clauses != declared_clauses)
    throw ParseError(lineno, "clause count mismatch: declared " + std::to_string(declared_clauses) +
                                 ", found " + std::to_string(terminated_clauses));
  return Formula(declared_vars, std::move(clauses), has_empty);
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void serialize_dimacs(const Formula& f, std::ostream& out) {
  std::size_t count = f.clauses().size() + (f.has_empty_clause() ? 1 : 0);
  out << "p cnf " << f.num_vars() << ' ' << count << '\n';
  if (f.has_empty_clause()) out << "0\n";
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.literals()) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula& f) {
  std::ostringstream os;
  serialize_dimacs(f, os);
  return os.str();
}

namespace {

// Exactly uniform draw in [0, n) from a 64-bit generator.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t threshold = (-n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace

Formula gen_random(int num_vars, int num_clauses, int clause_len, std::uint64_t seed) {
  if (num_vars < 0 || num_clauses < 0 || clause_len < 1)
    throw std::invalid_argument("gen_random: bad sizes");
  if (clause_len > num_vars)
    throw std::invalid_argument("gen_random: clause_len exceeds num_vars");
  std::mt19937_64 rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(num_clauses));
  std::vector<int> vars;
  for (int i = 0; i < num_clauses; ++i) {
    vars.clear();
    // Floyd's algorithm: clause_len distinct variables, uniform.
    for (int j = num_vars - clause_len; j < num_vars; ++j) {
      int t = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(j) + 1)) + 1;
      if (std::find(vars.begin(), vars.end(), t) != vars.end())
        vars.push_back(j + 1);
      else
        vars.push_back(t);
    }
    std::vector<Lit> lits;
    lits.reserve(vars.size());
    for (int v : vars) lits.emplace_back(v, bounded(rng, 2) == 0);
    clauses.emplace_back(std::move(lits));
  }
  return Formula(num_vars, std::move(clauses));
}

}  // namespace satswap
