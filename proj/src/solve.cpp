#include "topoconf/solve.hpp"

#include <cmath>

#include "topoconf/errors.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

double bisect_decreasing(const std::function<double(double)>& f, RootBracket bracket,
                         const std::string& what, int max_iter) {
  double lo = bracket.lo, hi = bracket.hi;
  if (!(lo > 0.0) || !(hi > lo)) {
    throw NumericalError(what + ": invalid bracket [" + format_double(lo) + ", " +
                         format_double(hi) + "]");
  }
  double flo = f(lo), fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi)) throw NumericalError(what + ": NaN at bracket end");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo > 0.0 && fhi < 0.0)) {
    throw NumericalError(what + ": no sign change on [" + format_double(lo) + ", " +
                         format_double(hi) + "]");
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = hi > 4.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : lo + (hi - lo) / 2.0;
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (std::isnan(fm)) throw NumericalError(what + ": NaN inside bracket");
    if (fm == 0.0) return mid;
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

double expand_upper(const std::function<double(double)>& f, double start,
                    const std::string& what, int max_doublings) {
  double t = start;
  for (int k = 0; k < max_doublings && std::isfinite(t); ++k) {
    const double v = f(t);
    if (v < 0.0) return t;
    t *= 2.0;
  }
  throw NumericalError(what + ": could not bracket the root from above");
}

}  // namespace topoconf
