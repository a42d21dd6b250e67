#include "opineq/bound_params.hpp"

#include <cmath>
#include <string>

#include "opineq/errors.hpp"

namespace opineq {

double kantorovich_constant(double h) { return (h + 1.0) * (h + 1.0) / (4.0 * h); }

double refinement_factor(double c) {
  const double l = std::log(c);
  return 1.0 + l * l / 8.0;
}

BoundParams BoundParams::make(double m, double m_prime, double M_prime, double M) {
  for (double v : {m, m_prime, M_prime, M}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("bound parameters must be finite and positive, got (" +
                            std::to_string(m) + ", " + std::to_string(m_prime) + ", " +
                            std::to_string(M_prime) + ", " + std::to_string(M) + ")");
    }
  }
  return BoundParams{m, m_prime, M_prime, M};
}

}  // namespace opineq
