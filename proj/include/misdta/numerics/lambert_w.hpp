#pragma once

namespace misdta {

/// Lower real branch W_{-1}: the solution w <= -1 of w*e^w = x, for -1/e <= x < 0.
/// Arguments a few ulps below -1/e are treated as the branch point.
/// @throws DomainError outside the domain.
double lambert_w_m1(double x);

/// W_{-1}(x) given log(-x), so arguments far below the smallest double remain usable.
/// Requires log_neg_x <= -1.
double lambert_w_m1_from_log(double log_neg_x);

/// Offset form: returns s = -1 - W_{-1}(-exp(-1 - m)), i.e. the root s >= 0 of
/// s - log1p(s) = m, for m >= 0. Avoids all cancellation near the branch point.
double lambert_w_m1_offset(double m);

}  // namespace misdta
