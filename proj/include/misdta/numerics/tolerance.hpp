#pragma once

#include <string>

#include "misdta/errors.hpp"

namespace misdta {

/// Convergence criteria shared by the iterative kernels.
struct Tolerance {
  double rel = 1e-12;
  double abs = 0.0;  // same unit as the quantity being solved for
  int max_iter = 200;

  void validate() const {
    if (!(rel > 0.0)) throw DomainError("tolerance: rel must be > 0");
    if (!(abs >= 0.0)) throw DomainError("tolerance: abs must be >= 0");
    if (max_iter < 1) throw DomainError("tolerance: max_iter must be >= 1");
  }
};

}  // namespace misdta
