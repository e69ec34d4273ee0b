#pragma once

// Greedy sequential formula partitioning under accelerator capacity limits,
// plus the variable-dispersion statistics that drive swap cost.

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "satswap/cnf.hpp"

namespace satswap {

// Capacity of the simulated accelerator fabric: at most max_clauses clause
// slots, at most max_vars distinct variables resident, at most
// max_literals_per_clause literal positions per slot.
struct PartitionLimits {
  int max_clauses = 224;
  int max_vars = 63;
  int max_literals_per_clause = 16;

  friend bool operator==(const PartitionLimits&, const PartitionLimits&) = default;
};

struct Partition {
  int id = 0;
  std::vector<int> clause_indices;  // strictly increasing, source order
  std::vector<int> local_vars;      // sorted distinct variable ids

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct PartitionPlan {
  std::vector<Partition> partitions;
  std::vector<int> dispersion;  // indexed by var, partitions containing it

  int dispersion_of(int var) const { return dispersion[static_cast<std::size_t>(var)]; }

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;
};

class PartitionError : public std::runtime_error {
 public:
  PartitionError(int clause_index, const std::string& what)
      : std::runtime_error("clause " + std::to_string(clause_index) + ": " + what),
        clause_index_(clause_index) {}
  int clause_index() const { return clause_index_; }

 private:
  int clause_index_;
};

// Scans clauses in source order; a clause joins the current partition iff the
// clause count stays within max_clauses and the variable union stays within
// max_vars, otherwise the partition is sealed and a new one starts. A single
// clause that alone exceeds the limits is a hard error (no clause splitting).
PartitionPlan greedy_partition(const Formula& f, const PartitionLimits& limits);

// Alternative partitioning strategies plug in behind this signature.
using PartitionStrategy = std::function<PartitionPlan(const Formula&, const PartitionLimits&)>;

struct DispersionStats {
  int max = 0;
  double mean = 0.0;
  int total_cross_vars = 0;  // variables appearing in >= 2 partitions
};

DispersionStats dispersion_stats(const PartitionPlan& plan);

// CSV dumps for analysis: one (partition_id, clause_index) row per clause,
// and one (dispersion, var_count) histogram row per occurring dispersion.
void write_plan_csv(const PartitionPlan& plan, std::ostream& out);
void write_dispersion_csv(const PartitionPlan& plan, std::ostream& out);

}  // namespace satswap
