#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lagcut::batch {

enum class PermutationPolicy { FixedRoundRobin, RandomShuffle, Identity };

const char* to_string(PermutationPolicy policy);
PermutationPolicy parse_policy(const std::string& name);

/// Partition of the scenarios into tau batches of size kappa (the last one
/// possibly shorter). Batch and scenario indices are 0-based.
struct BatchSchedule {
  std::vector<std::vector<int>> batches;
  int batch_size = 1;
  PermutationPolicy policy = PermutationPolicy::FixedRoundRobin;
  int resume = 0;           // first batch of the next sweep under FixedRoundRobin
  std::uint64_t rng_state = 0;

  int num_batches() const { return static_cast<int>(batches.size()); }
};

/// kappa = max(1, floor(m beta)), tau = ceil(m / kappa); scenarios are dealt
/// into batches in a seeded shuffled order. Throws Error for m < 1 or beta
/// outside (0, 1].
BatchSchedule make_batches(int m, double beta, std::uint64_t seed,
                           PermutationPolicy policy = PermutationPolicy::FixedRoundRobin);

/// Sweep order over batch indices. FixedRoundRobin starts right after
/// `last_stop_batch` (pass -1 for the first sweep); RandomShuffle draws a
/// fresh seeded permutation; Identity is 0..tau-1.
std::vector<int> next_order(BatchSchedule& schedule, int last_stop_batch);

/// True iff the accumulated weighted violation exceeds eps (strictly).
inline bool stopping_triggered(double accumulated_violation, double eps) { return accumulated_violation > eps; }

}  // namespace lagcut::batch
