#include "satswap/partition.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace satswap;
using test::make_formula;

namespace {

// Independent recount of plan invariants straight from the formula.
void check_plan(const Formula& f, const PartitionLimits& limits, const PartitionPlan& plan) {
  std::vector<int> covered;
  for (const Partition& p : plan.partitions) {
    REQUIRE(static_cast<int>(p.clause_indices.size()) <= limits.max_clauses);
    std::set<int> vars;
    int prev = -1;
    for (int ci : p.clause_indices) {
      CHECK(ci > prev);  // strictly increasing source order
      prev = ci;
      covered.push_back(ci);
      for (Lit l : f.clauses()[static_cast<std::size_t>(ci)].literals()) vars.insert(l.var());
    }
    REQUIRE(static_cast<int>(vars.size()) <= limits.max_vars);
    CHECK(std::vector<int>(vars.begin(), vars.end()) == p.local_vars);
  }
  // disjoint cover in source order: concatenation is exactly 0..C-1
  REQUIRE(covered.size() == f.clauses().size());
  for (std::size_t i = 0; i < covered.size(); ++i) CHECK(covered[i] == static_cast<int>(i));
  // dispersion recount
  for (int v = 1; v <= f.num_vars(); ++v) {
    int count = 0;
    for (const Partition& p : plan.partitions)
      if (std::binary_search(p.local_vars.begin(), p.local_vars.end(), v)) ++count;
    CHECK(plan.dispersion_of(v) == count);
  }
}

}  // namespace

TEST_CASE("greedy clause counting seals at the clause cap") {
  Formula f = make_formula(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  PartitionLimits limits{2, 63, 16};
  PartitionPlan plan = greedy_partition(f, limits);
  REQUIRE(plan.partitions.size() == 3);
  CHECK(plan.partitions[0].clause_indices == std::vector<int>{0, 1});
  CHECK(plan.partitions[1].clause_indices == std::vector<int>{2, 3});
  CHECK(plan.partitions[2].clause_indices == std::vector<int>{4});
  check_plan(f, limits, plan);
}

TEST_CASE("greedy variable cap forces a split") {
  // second clause shares x2 at no extra cost, third clause exceeds the cap
  Formula f = make_formula(5, {{1, 2}, {2, 3}, {4, 5}});
  PartitionLimits limits{224, 3, 16};
  PartitionPlan plan = greedy_partition(f, limits);
  REQUIRE(plan.partitions.size() == 2);
  CHECK(plan.partitions[0].clause_indices == std::vector<int>{0, 1});
  CHECK(plan.partitions[0].local_vars == std::vector<int>{1, 2, 3});
  CHECK(plan.partitions[1].clause_indices == std::vector<int>{2});
}

TEST_CASE("a 224-clause 63-variable formula fits in exactly one partition") {
  Formula f = gen_random(63, 224, 3, 1);
  PartitionPlan plan = greedy_partition(f, PartitionLimits{});
  CHECK(plan.partitions.size() == 1);
  DispersionStats s = dispersion_stats(plan);
  CHECK(s.max == 1);
  CHECK(s.mean == doctest::Approx(1.0));
  CHECK(s.total_cross_vars == 0);
}

TEST_CASE("oversized clauses are hard errors naming the clause") {
  Formula f = make_formula(20, {{1, 2}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17}});
  CHECK_THROWS_AS(greedy_partition(f, PartitionLimits{}), PartitionError);
  try {
    greedy_partition(f, PartitionLimits{});
  } catch (const PartitionError& e) {
    CHECK(e.clause_index() == 1);
  }
  Formula g = make_formula(8, {{1, 2, 3, 4, 5}});
  CHECK_THROWS_AS(greedy_partition(g, PartitionLimits{4, 4, 16}), PartitionError);
}

TEST_CASE("dispersion examples") {
  // two partitions sharing exactly x3
  Formula f = make_formula(5, {{1, 2, 3}, {3, 4, 5}});
  PartitionPlan plan = greedy_partition(f, PartitionLimits{1, 63, 16});
  REQUIRE(plan.partitions.size() == 2);
  CHECK(plan.dispersion_of(3) == 2);
  CHECK(plan.dispersion_of(1) == 1);
  CHECK(plan.dispersion_of(5) == 1);
  DispersionStats s = dispersion_stats(plan);
  CHECK(s.max == 2);
  CHECK(s.total_cross_vars == 1);
  CHECK(s.mean == doctest::Approx(6.0 / 5.0));
}

TEST_CASE("random plans satisfy cover, order and capacity invariants") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    int vars = 10 + static_cast<int>(rng() % 120);
    int clauses = static_cast<int>(rng() % 400);
    int len = 1 + static_cast<int>(rng() % 5);
    if (len > vars) len = vars;
    Formula f = gen_random(vars, clauses, len, rng());
    PartitionLimits limits{1 + static_cast<int>(rng() % 40), 6 + static_cast<int>(rng() % 60), 16};
    PartitionPlan plan = greedy_partition(f, limits);
    check_plan(f, limits, plan);
    CHECK(plan == greedy_partition(f, limits));  // determinism
  }
}

TEST_CASE("a 630-var 2240-clause instance partitions under default limits") {
  Formula f = gen_random(630, 2240, 3, 5);
  PartitionPlan plan = greedy_partition(f, PartitionLimits{});
  CHECK(plan.partitions.size() > 1);
  check_plan(f, PartitionLimits{}, plan);
}

TEST_CASE("plan and dispersion CSV dumps") {
  Formula f = make_formula(4, {{1, 2}, {2, 3}, {3, 4}});
  PartitionPlan plan = greedy_partition(f, PartitionLimits{2, 63, 16});
  std::ostringstream plan_csv, disp_csv;
  write_plan_csv(plan, plan_csv);
  write_dispersion_csv(plan, disp_csv);
  CHECK(plan_csv.str() == "partition_id,clause_index\n0,0\n0,1\n1,2\n");
  CHECK(disp_csv.str() == "dispersion,var_count\n1,3\n2,1\n");
}
