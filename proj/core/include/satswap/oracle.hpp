#pragma once

// Exhaustive truth-table verdicts via bitmask clause encodings, an
// evaluation route deliberately independent of the Clause/Assignment
// machinery it is used to validate.

#include "satswap/cnf.hpp"

namespace satswap {

inline constexpr int kOracleMaxVars = 24;

// Throws std::invalid_argument for formulas over kOracleMaxVars variables.
Satisfiability truth_table_verdict(const Formula& f);

}  // namespace satswap
