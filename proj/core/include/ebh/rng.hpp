#pragma once

#include <cstdint>

namespace ebh {

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that identical seeds give
// bit-identical streams on every platform (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Stream for one trial of a study: derived from (master seed, trial index) by hashing,
  // so trials are order-independent and can run on any thread.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t next_u64();
  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1)
  double normal();       // Box-Muller, one value per call
  double exponential(double mean);
  bool bernoulli(double p);

 private:
  std::uint64_t s_[4];
};

}  // namespace ebh
