#include "satswap/oracle.hpp"

#include <stdexcept>

namespace satswap {

Satisfiability truth_table_verdict(const Formula& f) {
  if (f.num_vars() > kOracleMaxVars)
    throw std::invalid_argument("truth-table oracle capped at " +
                                std::to_string(kOracleMaxVars) + " variables");
  if (f.has_empty_clause()) return Satisfiability::Unsat;

  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    Masks m;
    for (Lit l : c.literals()) {
      std::uint32_t bit = 1u << (l.var() - 1);
      if (l.positive())
        m.pos |= bit;
      else
        m.neg |= bit;
    }
    masks.push_back(m);
  }

  std::uint64_t count = 1ull << f.num_vars();
  for (std::uint64_t m = 0; m < count; ++m) {
    auto word = static_cast<std::uint32_t>(m);
    bool all = true;
    for (const Masks& cm : masks) {
      if (((cm.pos & word) | (cm.neg & ~word)) == 0) {
        all = false;
        break;
      }
    }
    if (all) return Satisfiability::Sat;
  }
  return Satisfiability::Unsat;
}

}  // namespace satswap
