#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "discframe/errors.hpp"
#include "discframe/types.hpp"

namespace discframe {

// Möbius-invariant metric on the open unit disc: ρ(a,b) = |a−b| / |1−ā·b|.
template <class Real>
Real pseudohyperbolic_distance(const Complex<Real>& a, const Complex<Real>& b) {
  return std::abs(a - b) / std::abs(Real(1) - std::conj(a) * b);
}

template <class Real>
DiscSequence<Real> validate_disc_sequence(std::vector<Complex<Real>> points,
                                          std::string label = {}) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(std::norm(points[i]) < Real(1))) {
      raise(errc::point_outside_disc,
            "point " + std::to_string(i + 1) + " has |z| >= 1");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (pseudohyperbolic_distance(points[i], points[j]) <
          Real(kSeparationEps)) {
        raise(errc::near_collision,
              "points " + std::to_string(i + 1) + " and " +
                  std::to_string(j + 1) +
                  " are closer than the distinctness threshold");
      }
    }
  }
  return DiscSequence<Real>{std::move(points), std::move(label)};
}

template <class Real>
struct CarlesonInfimum {
  Real value = Real(0);
  Index argmin_index = 0;  // 1-based; ties break to the smallest index
};

// Truncated separation statistic: exp(min over n of Σ_{k≠n} log ρ(λ_k, λ_n)).
// Products of many sub-unit factors are formed in the log domain and
// exponentiated once, so deep truncations underflow gracefully instead of
// collapsing to 0. A singleton has an empty product, hence value 1.
template <class Real>
CarlesonInfimum<Real> carleson_infimum(const DiscSequence<Real>& seq) {
  const Index K = seq.size();
  if (K < 1) raise(errc::sequence_too_short, "need at least one point");

  Real best_log = std::numeric_limits<Real>::infinity();
  Index best_n = 1;
  for (Index n = 0; n < K; ++n) {
    Real log_sum = Real(0);
    for (Index k = 0; k < K; ++k) {
      if (k == n) continue;
      log_sum +=
          std::log(pseudohyperbolic_distance(seq.points[static_cast<std::size_t>(k)],
                                             seq.points[static_cast<std::size_t>(n)]));
    }
    if (log_sum < best_log) {
      best_log = log_sum;
      best_n = n + 1;
    }
  }
  if (K == 1) best_log = Real(0);
  return {std::exp(best_log), best_n};
}

}  // namespace discframe
