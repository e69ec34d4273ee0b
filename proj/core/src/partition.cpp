#include "satswap/partition.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace satswap {

PartitionPlan greedy_partition(const Formula& f, const PartitionLimits& limits) {
  if (limits.max_clauses < 1 || limits.max_vars < 1 || limits.max_literals_per_clause < 1)
    throw std::invalid_argument("partition limits must be >= 1");

  PartitionPlan plan;
  plan.dispersion.assign(static_cast<std::size_t>(f.num_vars()) + 1, 0);

  std::vector<char> in_current(static_cast<std::size_t>(f.num_vars()) + 1, 0);
  Partition current;
  current.id = 0;

  auto seal = [&] {
    if (current.clause_indices.empty()) return;
    std::sort(current.local_vars.begin(), current.local_vars.end());
    for (int v : current.local_vars) {
      ++plan.dispersion[static_cast<std::size_t>(v)];
      in_current[static_cast<std::size_t>(v)] = 0;
    }
    plan.partitions.push_back(std::move(current));
    current = Partition{};
    current.id = static_cast<int>(plan.partitions.size());
  };

  const auto& clauses = f.clauses();
  std::vector<int> fresh;
  for (int ci = 0; ci < static_cast<int>(clauses.size()); ++ci) {
    const Clause& c = clauses[static_cast<std::size_t>(ci)];
    if (static_cast<int>(c.size()) > limits.max_literals_per_clause)
      throw PartitionError(ci, "clause length " + std::to_string(c.size()) +
                                   " exceeds max_literals_per_clause " +
                                   std::to_string(limits.max_literals_per_clause));
    fresh.clear();
    for (Lit l : c.literals()) {
      int v = l.var();
      if (!in_current[static_cast<std::size_t>(v)] &&
          std::find(fresh.begin(), fresh.end(), v) == fresh.end())
        fresh.push_back(v);
    }
    if (static_cast<int>(fresh.size()) > limits.max_vars)
      throw PartitionError(ci, "clause alone uses " + std::to_string(fresh.size()) +
                                   " variables, exceeding max_vars " +
                                   std::to_string(limits.max_vars));

    bool fits = static_cast<int>(current.clause_indices.size()) + 1 <= limits.max_clauses &&
                static_cast<int>(current.local_vars.size() + fresh.size()) <= limits.max_vars;
    if (!fits) {
      seal();
      fresh.clear();
      for (Lit l : c.literals()) {
        int v = l.var();
        if (std::find(fresh.begin(), fresh.end(), v) == fresh.end()) fresh.push_back(v);
      }
    }
    current.clause_indices.push_back(ci);
    for (int v : fresh) {
      current.local_vars.push_back(v);
      in_current[static_cast<std::size_t>(v)] = 1;
    }
  }
  seal();
  return plan;
}

DispersionStats dispersion_stats(const PartitionPlan& plan) {
  DispersionStats s;
  long long sum = 0;
  int occurring = 0;
  for (int d : plan.dispersion) {
    if (d == 0) continue;
    ++occurring;
    sum += d;
    s.max = std::max(s.max, d);
    if (d >= 2) ++s.total_cross_vars;
  }
  s.mean = occurring == 0 ? 0.0 : static_cast<double>(sum) / occurring;
  return s;
}

void write_plan_csv(const PartitionPlan& plan, std::ostream& out) {
  out << "partition_id,clause_index\n";
  for (const Partition& p : plan.partitions)
    for (int ci : p.clause_indices) out << p.id << ',' << ci << '\n';
}

void write_dispersion_csv(const PartitionPlan& plan, std::ostream& out) {
  std::map<int, int> histogram;
  for (int d : plan.dispersion)
    if (d > 0) ++histogram[d];
  out << "dispersion,var_count\n";
  for (auto [d, n] : histogram) out << d << ',' << n << '\n';
}

}  // namespace satswap
