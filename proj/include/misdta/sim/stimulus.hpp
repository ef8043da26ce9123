#pragma once

#include <cstdint>
#include <vector>

namespace misdta {

/// Gaps below this are redrawn.
inline constexpr double kMinStimulusGap = 1e-12;

/// Transition times of a pulse train starting at t = 0: cumulative sums of gaps drawn from
/// Normal(mu, sigma), redrawn while below 1 ps. sigma = 0 gives exactly k*mu.
/// Uses std::mt19937_64 with a Box-Muller transform so streams match on every platform.
std::vector<double> generate_stimulus_times(double mu, double sigma, std::uint64_t n, std::uint64_t seed);

struct StimulusEdge {
  double time;
  bool value;
};

/// Alternating transitions starting from the complement of `initial_value`.
std::vector<StimulusEdge> generate_stimulus(double mu, double sigma, std::uint64_t n, std::uint64_t seed,
                                            bool initial_value = false);

}  // namespace misdta
