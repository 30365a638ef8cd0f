#pragma once

#include <functional>
#include <string>

namespace topoconf {

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Root of a function that is positive at `lo` and negative at `hi` (for
/// example log(lhs(t)) - log(alpha) with lhs decreasing). Bisects in log
/// space while the bracket spans more than a factor of 4, then linearly,
/// until the endpoints are adjacent doubles or `max_iter` is reached.
/// Returns the endpoint with the smaller |f|. Throws NumericalError naming
/// `what` when the signs do not bracket a root.
double bisect_decreasing(const std::function<double(double)>& f, RootBracket bracket,
                         const std::string& what, int max_iter = 200);

/// Doubles `start` until f turns negative, up to `max_doublings` times.
/// Throws NumericalError when it never does.
double expand_upper(const std::function<double(double)>& f, double start,
                    const std::string& what, int max_doublings = 1100);

}  // namespace topoconf
