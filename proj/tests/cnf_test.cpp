#include "satswap/cnf.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

#include "satswap/oracle.hpp"
#include "test_util.hpp"

using namespace satswap;
using test::make_clause;
using test::make_formula;

TEST_CASE("parse empty formula") {
  Formula f = parse_dimacs("p cnf 0 0");
  CHECK(f.num_vars() == 0);
  CHECK(f.clauses().empty());
  CHECK(!f.has_empty_clause());
}

TEST_CASE("parse comments, header and clauses") {
  Formula f = parse_dimacs("c hi\np cnf 3 2\n1 -2 0\n2 3 0");
  REQUIRE(f.clauses().size() == 2);
  CHECK(f.num_vars() == 3);
  CHECK(f.clauses()[0] == make_clause({1, -2}));
  CHECK(f.clauses()[1] == make_clause({2, 3}));
}

TEST_CASE("parse complementary unit clauses") {
  Formula f = parse_dimacs("p cnf 1 2\n1 0\n-1 0");
  REQUIRE(f.clauses().size() == 2);
  CHECK(f.clauses()[0] == make_clause({1}));
  CHECK(f.clauses()[1] == make_clause({-1}));
}

TEST_CASE("clauses may span lines and stop at the SATLIB trailer") {
  Formula f = parse_dimacs("p cnf 3 1\n1\n2 3 0\n%\n0\n");
  REQUIRE(f.clauses().size() == 1);
  CHECK(f.clauses()[0] == make_clause({1, 2, 3}));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_dimacs("1 2 0"), ParseError);                  // no header
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0"), ParseError);       // var > declared
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0"), ParseError);         // count mismatch
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2"), ParseError);         // unterminated
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1 junk\n1 0"), ParseError);    // trailing header tokens
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0"), ParseError);
}

TEST_CASE("bare zero becomes the empty-clause marker, not an error") {
  Formula f = parse_dimacs("p cnf 2 2\n0\n1 2 0");
  CHECK(f.has_empty_clause());
  CHECK(f.clauses().size() == 1);
}

TEST_CASE("normalization removes duplicates and flags tautologies") {
  Clause dup = make_clause({1, 1, -2});
  CHECK(dup == make_clause({1, -2}));
  CHECK(!dup.tautological());
  Clause taut = make_clause({1, -1, 2});
  CHECK(taut.tautological());
  CHECK(taut.size() == 3);  // kept, only flagged
}

TEST_CASE("serialize examples") {
  CHECK(to_dimacs(Formula{}) == "p cnf 0 0\n");
  CHECK(to_dimacs(make_formula(2, {{1, -2}})) == "p cnf 2 1\n1 -2 0\n");
}

TEST_CASE("parse/serialize round-trip on random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    int vars = 1 + static_cast<int>(rng() % 20);
    int clauses = static_cast<int>(rng() % 40);
    int len = 1 + static_cast<int>(rng() % std::min(vars, 5));
    Formula f = gen_random(vars, clauses, len, rng());
    CHECK(parse_dimacs(to_dimacs(f)) == f);
  }
  Formula with_empty = parse_dimacs("p cnf 2 2\n0\n-1 2 0");
  CHECK(parse_dimacs(to_dimacs(with_empty)) == with_empty);
}

TEST_CASE("eval_clause examples") {
  Assignment a(3);
  a.assign(Lit(1, false));  // x1 = F
  a.assign(Lit(2, true));   // x2 = T
  ClauseEval e = eval_clause(make_clause({1, -2, 3}), a);
  CHECK(e.status == ClauseStatus::Unit);
  CHECK(e.unit == Lit(3, true));

  Assignment b(2);
  b.assign(Lit(1, false));
  b.assign(Lit(2, false));
  CHECK(eval_clause(make_clause({1, 2}), b).status == ClauseStatus::Falsified);

  Assignment c(2);
  c.assign(Lit(1, true));
  CHECK(eval_clause(make_clause({1, 2}), c).status == ClauseStatus::Satisfied);

  CHECK(eval_clause(make_clause({1, -1}), Assignment(1)).status == ClauseStatus::Satisfied);
}

TEST_CASE("eval_clause is monotone under assignment extension") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    int vars = 4 + static_cast<int>(rng() % 5);
    Formula f = gen_random(vars, 1, 1 + static_cast<int>(rng() % vars), rng());
    const Clause& c = f.clauses()[0];
    Assignment a(vars);
    for (int v = 1; v <= vars; ++v)
      if (rng() % 2) a.assign(Lit(v, rng() % 2 == 0));
    ClauseStatus before = eval_clause(c, a).status;
    for (int v = 1; v <= vars; ++v)
      if (a.value(v) == TruthValue::Unassigned && rng() % 2) a.assign(Lit(v, rng() % 2 == 0));
    ClauseStatus after = eval_clause(c, a).status;
    if (before == ClauseStatus::Satisfied) CHECK(after == ClauseStatus::Satisfied);
    if (before == ClauseStatus::Falsified) CHECK(after == ClauseStatus::Falsified);
  }
}

TEST_CASE("eval_formula examples and precondition") {
  Assignment a(1);
  a.assign(Lit(1, true));
  CHECK(eval_formula(make_formula(1, {{1}}), a) == Satisfiability::Sat);
  CHECK(eval_formula(make_formula(1, {{1}, {-1}}), a) == Satisfiability::Unsat);
  CHECK_THROWS_AS(eval_formula(make_formula(2, {{1, 2}}), a), std::invalid_argument);
  Assignment partial(2);
  partial.assign(Lit(1, true));  // x2 left unassigned
  CHECK_THROWS_AS(eval_formula(make_formula(2, {{1, 2}}), partial), std::invalid_argument);
}

TEST_CASE("eval_formula agrees with truth-table enumeration on 8-var formulas") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 30; ++iter) {
    Formula f = gen_random(8, 12 + static_cast<int>(rng() % 30), 3, rng());
    bool sat_by_eval = false;
    for (std::uint32_t m = 0; m < (1u << 8) && !sat_by_eval; ++m) {
      Assignment a(8);
      for (int v = 1; v <= 8; ++v) a.assign(Lit(v, (m >> (v - 1)) & 1));
      sat_by_eval = eval_formula(f, a) == Satisfiability::Sat;
    }
    CHECK(sat_by_eval == (truth_table_verdict(f) == Satisfiability::Sat));
  }
}

TEST_CASE("gen_random shape matches the benchmark matrix cell") {
  Formula f = gen_random(63, 224, 3, 1);
  CHECK(f.num_vars() == 63);
  CHECK(f.clauses().size() == 224);
  for (const Clause& c : f.clauses()) {
    CHECK(c.size() == 3);
    CHECK(!c.tautological());  // three distinct variables by construction
    for (Lit l : c.literals()) CHECK(l.var() <= 63);
  }
}

TEST_CASE("gen_random is deterministic and validates clause_len") {
  CHECK(to_dimacs(gen_random(20, 50, 3, 42)) == to_dimacs(gen_random(20, 50, 3, 42)));
  CHECK(to_dimacs(gen_random(20, 50, 3, 42)) != to_dimacs(gen_random(20, 50, 3, 43)));
  CHECK_THROWS_AS(gen_random(3, 5, 4, 1), std::invalid_argument);
}
