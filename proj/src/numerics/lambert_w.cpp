#include "misdta/numerics/lambert_w.hpp"

#include <cmath>
#include <limits>

#include "misdta/errors.hpp"

namespace misdta {
namespace {

// s - log1p(s), accurate also for tiny s where the subtraction cancels.
double phi(double s) {
  if (s < 1e-2) {
    // alternating series sum_{k>=2} (-1)^k s^k / k
    double term = s * s, sum = 0.0;
    for (int k = 2; k <= 12; ++k) {
      sum += (k % 2 == 0 ? term : -term) / k;
      term *= s;
    }
    return sum;
  }
  return s - std::log1p(s);
}

}  // namespace

double lambert_w_m1_offset(double m) {
  if (!(m >= 0.0)) throw DomainError("lambert_w_m1: offset argument must be >= 0");
  if (m == 0.0) return 0.0;
  if (std::isinf(m)) return m;

  double s;
  if (m < 1.5) {
    // inverse of the branch-point series m = s^2/2 - s^3/3 + ...
    const double p = std::sqrt(2.0 * m);
    s = p + p * p / 3.0 + p * p * p / 36.0;
  } else {
    s = m + std::log1p(m);
    s = m + std::log1p(s);
    s = m + std::log1p(s);
  }

  // Halley on g(s) = phi(s) - m with g' = s/(1+s), g'' = 1/(1+s)^2.
  for (int iter = 0; iter < 50; ++iter) {
    const double g = phi(s) - m;
    const double g1 = s / (1.0 + s);
    const double g2 = 1.0 / ((1.0 + s) * (1.0 + s));
    const double denom = 2.0 * g1 * g1 - g * g2;
    if (!(denom > 0.0)) break;
    double next = s - 2.0 * g * g1 / denom;
    if (!(next > 0.0)) next = 0.5 * s;
    const double step = std::fabs(next - s);
    s = next;
    if (step <= 1e-15 * s) break;
  }
  return s;
}

double lambert_w_m1_from_log(double log_neg_x) {
  if (std::isnan(log_neg_x)) throw DomainError("lambert_w_m1: NaN argument");
  if (log_neg_x > -1.0) {
    if (log_neg_x > -1.0 + 8.0 * std::numeric_limits<double>::epsilon())
      throw DomainError("lambert_w_m1: argument below -1/e");
    log_neg_x = -1.0;
  }
  return -1.0 - lambert_w_m1_offset(-1.0 - log_neg_x);
}

double lambert_w_m1(double x) {
  if (std::isnan(x) || !(x < 0.0)) throw DomainError("lambert_w_m1: argument must lie in [-1/e, 0)");
  return lambert_w_m1_from_log(std::log(-x));
}

}  // namespace misdta
