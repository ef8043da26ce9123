#include "misdta/sim/stimulus.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "misdta/errors.hpp"

namespace misdta {
namespace {

// Standard normal deviates via Box-Muller. std::normal_distribution is implementation
// defined, which would make seeds non-portable.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
  }

 private:
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::vector<double> generate_stimulus_times(double mu, double sigma, std::uint64_t n, std::uint64_t seed) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("stimulus: mu must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ValidationError("stimulus: sigma must be >= 0");
  std::vector<double> out;
  out.reserve(n);
  if (sigma == 0.0) {
    for (std::uint64_t k = 1; k <= n; ++k) out.push_back(static_cast<double>(k) * mu);
    return out;
  }
  NormalSource normal(seed);
  double t = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    double gap = mu + sigma * normal.next();
    for (int tries = 0; gap < kMinStimulusGap; ++tries) {
      if (tries > 100000) throw ValidationError("stimulus: mu/sigma give almost no gaps above 1 ps");
      gap = mu + sigma * normal.next();
    }
    t += gap;
    out.push_back(t);
  }
  return out;
}

std::vector<StimulusEdge> generate_stimulus(double mu, double sigma, std::uint64_t n, std::uint64_t seed,
                                            bool initial_value) {
  std::vector<StimulusEdge> out;
  bool v = initial_value;
  for (double t : generate_stimulus_times(mu, sigma, n, seed)) {
    v = !v;
    out.push_back({t, v});
  }
  return out;
}

}  // namespace misdta
