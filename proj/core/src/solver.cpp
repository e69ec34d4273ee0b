#include "satswap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace satswap {

Trail::Trail(int num_vars)
    : values_(num_vars), level_of_(static_cast<std::size_t>(num_vars) + 1, 0) {}

void Trail::assign_decision(Lit l, bool flipped) {
  if (values_.value(l.var()) != TruthValue::Unassigned)
    throw std::logic_error("decision on assigned variable " + std::to_string(l.var()));
  ++current_level_;
  values_.assign(l);
  level_of_[static_cast<std::size_t>(l.var())] = current_level_;
  entries_.push_back({l, current_level_, Reason::Decision, -1, flipped});
}

void Trail::assign_implied(Lit l, int level, int source_partition) {
  if (values_.value(l.var()) != TruthValue::Unassigned)
    throw std::logic_error("implication re-assigns variable " + std::to_string(l.var()));
  if (level != current_level_)
    throw std::logic_error("implication level does not match current level");
  values_.assign(l);
  level_of_[static_cast<std::size_t>(l.var())] = level;
  entries_.push_back({l, level, Reason::Implied, source_partition, false});
}

void Trail::backtrack_to(int level) {
  while (!entries_.empty() && entries_.back().level > level) {
    values_.unassign(entries_.back().lit.var());
    level_of_[static_cast<std::size_t>(entries_.back().lit.var())] = 0;
    entries_.pop_back();
  }
  current_level_ = level;
}

// Models the simplify-after-every-assignment baseline: every applied
// assignment is charged one whole-formula pass, and falsified clauses are
// only noticed once propagation has run out of units. Execution sweeps the
// formula applying every unit it meets, which reaches the same fixpoint in
// far fewer real passes than the charged count.
PropagationResult SoftwareBcp::propagate(Trail& trail, std::optional<Lit>) {
  const int level = trail.current_level();
  std::uint64_t applied_total = 0;
  bool falsified_seen = false;

  bool applied = true;
  while (applied) {
    applied = false;
    falsified_seen = false;
    for (const Clause& c : formula_.clauses()) {
      if (c.tautological()) continue;
      int unassigned = 0;
      Lit last_free;
      bool satisfied = false;
      for (Lit l : c.literals()) {
        TruthValue v = trail.value(l);
        if (v == TruthValue::True) {
          satisfied = true;
          break;
        }
        if (v == TruthValue::Unassigned) {
          ++unassigned;
          last_free = l;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) falsified_seen = true;
      if (unassigned == 1) {
        trail.assign_implied(last_free, level, -1);
        ++counters_.implications;
        ++applied_total;
        applied = true;
      }
    }
  }
  std::uint64_t passes = applied_total + 1;
  counters_.clause_visits += passes * formula_.clauses().size();
  counters_.bcp_events += passes;
  return falsified_seen ? PropagationResult::Conflict : PropagationResult::Quiescent;
}

HotswapBcp::HotswapBcp(const Formula& f, PartitionPlan plan, const PartitionLimits& limits,
                       const CostModel& cost, PerfCounters& counters, TraceSink* trace)
    : formula_(f),
      plan_(std::move(plan)),
      counters_(counters),
      engine_(EngineConfig{limits.max_clauses, limits.max_literals_per_clause}, cost, &counters,
              trace),
      reg_(engine_, cost, &counters, trace),
      shadow_value_(static_cast<std::size_t>(f.num_vars()) + 1, TruthValue::Unassigned),
      shadow_level_(static_cast<std::size_t>(f.num_vars()) + 1, 0),
      partitions_of_var_(static_cast<std::size_t>(f.num_vars()) + 1) {
  for (const Partition& p : plan_.partitions) {
    for (int v : p.local_vars) partitions_of_var_[static_cast<std::size_t>(v)].push_back(p.id);
    for (int ci : p.clause_indices) {
      const Clause& c = f.clauses()[static_cast<std::size_t>(ci)];
      if (c.size() == 1 && !c.tautological()) {
        unit_seed_partitions_.push_back(p.id);
        break;
      }
    }
  }
}

PropagationResult HotswapBcp::visit(int pi, Trail& trail, int level, std::deque<int>& queue,
                                    std::vector<char>& in_queue) {
  const Partition& p = plan_.partitions[static_cast<std::size_t>(pi)];
  if (!resident_ || *resident_ != pi) {
    if (resident_) {
      const Partition& old = plan_.partitions[static_cast<std::size_t>(*resident_)];
      for (int v : old.local_vars) {
        shadow_value_[static_cast<std::size_t>(v)] = TruthValue::Unassigned;
        shadow_level_[static_cast<std::size_t>(v)] = 0;
      }
    }
    reg_.load_partition(formula_, p);
    resident_ = pi;
  }

  // Replay assigned local variables the engine has not seen, at their
  // original levels, so engine-side clear_above matches the trail exactly.
  feed_batch_.clear();
  for (const TrailEntry& e : trail.entries()) {
    int v = e.lit.var();
    if (shadow_value_[static_cast<std::size_t>(v)] != TruthValue::Unassigned) continue;
    if (!std::binary_search(p.local_vars.begin(), p.local_vars.end(), v)) continue;
    feed_batch_.emplace_back(e.lit, e.level);
    shadow_value_[static_cast<std::size_t>(v)] =
        e.lit.positive() ? TruthValue::True : TruthValue::False;
    shadow_level_[static_cast<std::size_t>(v)] = e.level;
  }
  if (!feed_batch_.empty()) {
    if (feed_batch_.size() == 1)
      reg_.feed(feed_batch_[0].first, feed_batch_[0].second);
    else
      reg_.feed_burst(feed_batch_);
    if (reg_.poll_status() & kStatusConflict) return PropagationResult::Conflict;
  }

  std::uint32_t st = reg_.start_bcp(std::nullopt, level);
  if (st & kStatusConflict) return PropagationResult::Conflict;

  while (st & kStatusImplicationAvailable) {
    Implication imp = reg_.read_implication();
    int v = imp.literal.var();
    if (trail.value(v) != TruthValue::Unassigned)
      throw std::logic_error("engine re-emitted an assigned variable");
    shadow_value_[static_cast<std::size_t>(v)] =
        imp.literal.positive() ? TruthValue::True : TruthValue::False;
    shadow_level_[static_cast<std::size_t>(v)] = imp.decision_level;
    trail.assign_implied(imp.literal, level, pi);
    ++counters_.implications;
    for (int q : partitions_of_var_[static_cast<std::size_t>(v)]) {
      if (q == pi || in_queue[static_cast<std::size_t>(q)]) continue;
      queue.push_back(q);
      in_queue[static_cast<std::size_t>(q)] = 1;
    }
    st = reg_.poll_status();
  }
  return PropagationResult::Quiescent;
}

PropagationResult HotswapBcp::propagate(Trail& trail, std::optional<Lit> seed) {
  const int num_partitions = static_cast<int>(plan_.partitions.size());
  if (num_partitions == 0) return PropagationResult::Quiescent;
  const int level = trail.current_level();

  std::deque<int> queue;
  std::vector<char> in_queue(static_cast<std::size_t>(num_partitions), 0);
  int start = resident_ ? (*resident_ + 1) % num_partitions : 0;

  // Round-robin order from the partition after the resident one.
  if (!seed && trail.entries().empty()) {
    // Empty trail: only partitions holding a unit-sized clause can react.
    for (int q : unit_seed_partitions_) {
      queue.push_back(q);
      in_queue[static_cast<std::size_t>(q)] = 1;
    }
  } else if (!seed) {
    for (int i = 0; i < num_partitions; ++i) {
      int q = (start + i) % num_partitions;
      queue.push_back(q);
      in_queue[static_cast<std::size_t>(q)] = 1;
    }
  } else {
    const auto& containing = partitions_of_var_[static_cast<std::size_t>(seed->var())];
    auto split = std::lower_bound(containing.begin(), containing.end(), start);
    for (auto it = split; it != containing.end(); ++it) {
      queue.push_back(*it);
      in_queue[static_cast<std::size_t>(*it)] = 1;
    }
    for (auto it = containing.begin(); it != split; ++it) {
      queue.push_back(*it);
      in_queue[static_cast<std::size_t>(*it)] = 1;
    }
  }

  while (!queue.empty()) {
    int pi = queue.front();
    queue.pop_front();
    in_queue[static_cast<std::size_t>(pi)] = 0;
    if (visit(pi, trail, level, queue, in_queue) == PropagationResult::Conflict)
      return PropagationResult::Conflict;
  }
  return PropagationResult::Quiescent;
}

void HotswapBcp::on_backtrack(const Trail&, int level) {
  if (!resident_) return;
  reg_.clear_above(level);
  const Partition& p = plan_.partitions[static_cast<std::size_t>(*resident_)];
  for (int v : p.local_vars) {
    if (shadow_level_[static_cast<std::size_t>(v)] > level) {
      shadow_value_[static_cast<std::size_t>(v)] = TruthValue::Unassigned;
      shadow_level_[static_cast<std::size_t>(v)] = 0;
    }
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Timeout: return "TIMEOUT";
  }
  return "?";
}

std::optional<Lit> decide(const Trail& trail, const Formula& f, DecisionHeuristic h) {
  for (int v = 1; v <= f.num_vars(); ++v)
    if (trail.value(v) == TruthValue::Unassigned)
      return Lit(v, h == DecisionHeuristic::LowestIndexPositive);
  return std::nullopt;
}

std::optional<Lit> backtrack(Trail& trail, PropagationBackend& backend) {
  const auto& entries = trail.entries();
  int idx = -1;
  for (int i = static_cast<int>(entries.size()) - 1; i >= 0; --i) {
    if (entries[static_cast<std::size_t>(i)].reason == Reason::Decision &&
        !entries[static_cast<std::size_t>(i)].flipped) {
      idx = i;
      break;
    }
  }
  if (idx < 0) return std::nullopt;
  Lit flip = entries[static_cast<std::size_t>(idx)].lit.negated();
  int target = entries[static_cast<std::size_t>(idx)].level - 1;
  trail.backtrack_to(target);
  backend.on_backtrack(trail, target);
  trail.assign_decision(flip, /*flipped=*/true);
  return flip;
}

SolveResult solve(const Formula& f, const SolverConfig& cfg) {
  cfg.cost.validate();
  SolveResult result;
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](Verdict v) {
    result.verdict = v;
    result.counters.wall_time_ns = static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    return result;
  };

  if (f.has_empty_clause()) return finish(Verdict::Unsat);

  std::unique_ptr<PropagationBackend> backend;
  if (cfg.backend == BackendKind::HwSim) {
    PartitionPlan plan = greedy_partition(f, cfg.limits);
    result.partitions = static_cast<int>(plan.partitions.size());
    backend = std::make_unique<HotswapBcp>(f, std::move(plan), cfg.limits, cfg.cost,
                                           result.counters, cfg.trace);
  } else {
    backend = std::make_unique<SoftwareBcp>(f, result.counters);
  }

  Trail trail(f.num_vars());
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a over decision literals
  auto note = [&hash](Lit l) {
    hash ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(l.to_dimacs()));
    hash *= 1099511628211ull;
    return hash;
  };

  if (backend->propagate(trail, std::nullopt) == PropagationResult::Conflict) {
    result.decision_hash = hash;
    return finish(Verdict::Unsat);
  }

  for (;;) {
    std::optional<Lit> d = decide(trail, f, cfg.heuristic);
    if (!d) {
      result.model.assign(static_cast<std::size_t>(f.num_vars()) + 1, TruthValue::Unassigned);
      for (int v = 1; v <= f.num_vars(); ++v) result.model[static_cast<std::size_t>(v)] = trail.value(v);
      if (eval_formula(f, trail.assignment()) != Satisfiability::Sat)
        throw std::logic_error("solver produced a non-model");
      result.decision_hash = hash;
      return finish(Verdict::Sat);
    }
    if (cfg.max_decisions != 0 && result.counters.decisions >= cfg.max_decisions) {
      result.decision_hash = hash;
      return finish(Verdict::Timeout);
    }
    ++result.counters.decisions;
    note(*d);
    trail.assign_decision(*d);

    std::optional<Lit> seed = *d;
    while (backend->propagate(trail, seed) == PropagationResult::Conflict) {
      ++result.counters.backtracks;
      std::optional<Lit> flip = backtrack(trail, *backend);
      if (!flip) {
        result.decision_hash = hash;
        return finish(Verdict::Unsat);
      }
      note(*flip);
      seed = std::nullopt;  // a backtrack can re-expose units anywhere
    }
  }
}

}  // namespace satswap
