#include "lagcut/batch/schedule.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::batch {

namespace {

// Fisher-Yates with raw engine draws, so the permutation does not depend on
// the standard library's distribution implementation.
void shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

const char* to_string(PermutationPolicy policy) {
  switch (policy) {
    case PermutationPolicy::FixedRoundRobin: return "round-robin";
    case PermutationPolicy::RandomShuffle: return "shuffle";
    case PermutationPolicy::Identity: return "identity";
  }
  return "unknown";
}

PermutationPolicy parse_policy(const std::string& name) {
  if (name == "round-robin") return PermutationPolicy::FixedRoundRobin;
  if (name == "shuffle") return PermutationPolicy::RandomShuffle;
  if (name == "identity") return PermutationPolicy::Identity;
  throw Error(fmt::format("unknown permutation policy '{}'", name));
}

BatchSchedule make_batches(int m, double beta, std::uint64_t seed, PermutationPolicy policy) {
  if (m < 1) throw Error(fmt::format("scenario count {} must be positive", m));
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(fmt::format("beta = {} outside (0, 1]", beta));
  BatchSchedule sched;
  sched.policy = policy;
  sched.batch_size = std::max(1, static_cast<int>(std::floor(static_cast<double>(m) * beta)));
  const int tau = (m + sched.batch_size - 1) / sched.batch_size;

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  shuffle(order, rng);
  sched.rng_state = rng();
  sched.batches.resize(static_cast<std::size_t>(tau));
  for (int i = 0; i < m; ++i) sched.batches[static_cast<std::size_t>(i / sched.batch_size)].push_back(order[static_cast<std::size_t>(i)]);
  return sched;
}

std::vector<int> next_order(BatchSchedule& schedule, int last_stop_batch) {
  const int tau = schedule.num_batches();
  std::vector<int> order(static_cast<std::size_t>(tau));
  switch (schedule.policy) {
    case PermutationPolicy::FixedRoundRobin: {
      const int start = last_stop_batch < 0 ? 0 : (last_stop_batch + 1) % tau;
      for (int k = 0; k < tau; ++k) order[static_cast<std::size_t>(k)] = (start + k) % tau;
      schedule.resume = start;
      break;
    }
    case PermutationPolicy::RandomShuffle: {
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(schedule.rng_state);
      shuffle(order, rng);
      schedule.rng_state = rng();
      break;
    }
    case PermutationPolicy::Identity:
      std::iota(order.begin(), order.end(), 0);
      break;
  }
  return order;
}

}  // namespace lagcut::batch
