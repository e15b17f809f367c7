#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "discframe/disc.hpp"
#include "discframe/errors.hpp"
#include "discframe/types.hpp"

namespace discframe {

// Eigenvalue families with known separation behavior:
//   geometric:            λ_k = 1 − c^k               (c ∈ (0,1), k ≥ 1)
//   polynomial:           λ_k = 1 − k^(−p)            (p > 1; λ_1 = 0)
//   geometric_with_phases: λ_k = (1 − c^k)·e^(i·k·φ)
//   explicit_list:        user-supplied points
template <class Real>
struct SequenceSpec {
  enum class Family { geometric, polynomial, explicit_list, geometric_with_phases };

  Family family = Family::geometric;
  Real param = Real(0);       // base c or power p
  Real phase_step = Real(0);  // φ, geometric_with_phases only
  Index count = 0;            // K
  std::vector<Complex<Real>> points;  // explicit_list only
};

template <class Real>
SequenceSpec<Real> geometric_spec(Real c, Index count) {
  return {SequenceSpec<Real>::Family::geometric, c, Real(0), count, {}};
}

template <class Real>
SequenceSpec<Real> polynomial_spec(Real p, Index count) {
  return {SequenceSpec<Real>::Family::polynomial, p, Real(0), count, {}};
}

template <class Real>
SequenceSpec<Real> explicit_spec(std::vector<Complex<Real>> points) {
  SequenceSpec<Real> spec;
  spec.family = SequenceSpec<Real>::Family::explicit_list;
  spec.count = static_cast<Index>(points.size());
  spec.points = std::move(points);
  return spec;
}

template <class Real>
SequenceSpec<Real> phased_spec(Real c, Real phase_step, Index count) {
  return {SequenceSpec<Real>::Family::geometric_with_phases, c, phase_step,
          count, {}};
}

namespace detail {

inline std::string format_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

template <class Real>
void check_spec(const SequenceSpec<Real>& spec) {
  using Family = typename SequenceSpec<Real>::Family;
  if (spec.count < 1) raise(errc::invalid_spec, "count must be >= 1");
  switch (spec.family) {
    case Family::geometric:
    case Family::geometric_with_phases:
      if (!(spec.param > Real(0) && spec.param < Real(1)))
        raise(errc::invalid_spec, "geometric base must lie in (0,1), got " +
                                      format_param(static_cast<double>(spec.param)));
      break;
    case Family::polynomial:
      if (!(spec.param > Real(1)))
        raise(errc::invalid_spec, "polynomial power must exceed 1, got " +
                                      format_param(static_cast<double>(spec.param)));
      break;
    case Family::explicit_list:
      if (spec.points.empty())
        raise(errc::invalid_spec, "explicit list must be non-empty");
      break;
  }
}

// Moduli 1 − c^k via the stable recurrence c^k = c^(k−1)·c.
template <class Real>
std::vector<Real> geometric_moduli(Real c, Index count) {
  std::vector<Real> out(static_cast<std::size_t>(count));
  Real ck = Real(1);
  for (Index k = 0; k < count; ++k) {
    ck *= c;
    out[static_cast<std::size_t>(k)] = Real(1) - ck;
  }
  return out;
}

}  // namespace detail

template <class Real>
DiscSequence<Real> generate(const SequenceSpec<Real>& spec) {
  using Family = typename SequenceSpec<Real>::Family;
  detail::check_spec(spec);

  std::vector<Complex<Real>> points;
  std::string label;
  switch (spec.family) {
    case Family::geometric: {
      for (Real m : detail::geometric_moduli(spec.param, spec.count))
        points.emplace_back(m, Real(0));
      label = "geometric(" + detail::format_param(static_cast<double>(spec.param)) + ")";
      break;
    }
    case Family::polynomial: {
      for (Index k = 1; k <= spec.count; ++k)
        points.emplace_back(Real(1) - std::pow(Real(k), -spec.param), Real(0));
      label = "polynomial(" + detail::format_param(static_cast<double>(spec.param)) + ")";
      break;
    }
    case Family::geometric_with_phases: {
      Index k = 1;
      for (Real m : detail::geometric_moduli(spec.param, spec.count)) {
        points.push_back(std::polar(m, spec.phase_step * Real(k)));
        ++k;
      }
      label = "geometric_with_phases(" +
              detail::format_param(static_cast<double>(spec.param)) + "," +
              detail::format_param(static_cast<double>(spec.phase_step)) + ")";
      break;
    }
    case Family::explicit_list: {
      points = spec.points;
      label = "explicit";
      break;
    }
  }
  return validate_disc_sequence(std::move(points), std::move(label));
}

template <class Real>
struct AdmissibilityReport {
  Real partial_sum = Real(0);   // Σ_{k ≤ K} (1 − |λ_k|²)
  Real tail_bound = Real(0);    // analytic bound on Σ_{k > K} (1 − |λ_k|²)
  bool admissible = false;      // tail bound finite
};

// Square-summability certificate for the weight sequence {w_k}: the partial
// sum of w_k² = 1 − |λ_k|² plus a closed-form tail bound per family
// (geometric-series tail for geometric moduli, integral comparison for
// polynomial; explicit lists have no tail).
template <class Real>
AdmissibilityReport<Real> admissibility_check(const SequenceSpec<Real>& spec,
                                              Index K) {
  using Family = typename SequenceSpec<Real>::Family;
  detail::check_spec(spec);
  if (K < 1) raise(errc::invalid_param, "horizon K must be >= 1");

  AdmissibilityReport<Real> report;
  const Real c = spec.param;
  switch (spec.family) {
    case Family::geometric:
    case Family::geometric_with_phases: {
      // 1 − |λ_k|² ≤ 2(1 − |λ_k|) = 2c^k, so the tail is ≤ 2c^(K+1)/(1−c).
      for (Real m : detail::geometric_moduli(c, K))
        report.partial_sum += Real(1) - m * m;
      report.tail_bound = Real(2) * std::pow(c, Real(K + 1)) / (Real(1) - c);
      break;
    }
    case Family::polynomial: {
      // 1 − |λ_k|² ≤ 2k^(−p); Σ_{k>K} 2k^(−p) ≤ 2∫_K^∞ x^(−p) dx.
      const Real p = spec.param;
      for (Index k = 1; k <= K; ++k) {
        const Real lam = Real(1) - std::pow(Real(k), -p);
        report.partial_sum += Real(1) - lam * lam;
      }
      report.tail_bound =
          Real(2) * std::pow(Real(K), Real(1) - p) / (p - Real(1));
      break;
    }
    case Family::explicit_list: {
      const Index n = std::min<Index>(K, static_cast<Index>(spec.points.size()));
      for (Index k = 0; k < n; ++k)
        report.partial_sum +=
            Real(1) - std::norm(spec.points[static_cast<std::size_t>(k)]);
      report.tail_bound = Real(0);
      break;
    }
  }
  report.admissible = std::isfinite(report.tail_bound);
  return report;
}

template <class Real>
struct RatioCondition {
  Real c_hat = Real(0);
  bool satisfied = false;  // c_hat < 1 − kRatioEps
};

// Two-factor geometric-decay condition on the products λ_k·γ_l:
// c_hat = sup over k ∈ [1,K_A], l ∈ [1,K_B−1] of (1−|λ_k γ_{l+1}|)/(1−|λ_k γ_l|).
template <class Real>
RatioCondition<Real> ratio_condition_constant(const DiscSequence<Real>& seq_a,
                                              const DiscSequence<Real>& seq_b) {
  if (seq_b.size() < 2)
    raise(errc::sequence_too_short, "second factor needs at least two points");
  Real c_hat = Real(0);
  for (const auto& a : seq_a.points) {
    for (std::size_t l = 0; l + 1 < seq_b.points.size(); ++l) {
      const Real num = Real(1) - std::abs(a * seq_b.points[l + 1]);
      const Real den = Real(1) - std::abs(a * seq_b.points[l]);
      c_hat = std::max(c_hat, num / den);
    }
  }
  return {c_hat, c_hat < Real(1) - Real(kRatioEps)};
}

// Single-factor reading: ratios of successive 1 − |λ_l| along one sequence.
// For geometric(c) this equals c exactly.
template <class Real>
RatioCondition<Real> ratio_condition_constant(const DiscSequence<Real>& seq) {
  if (seq.size() < 2)
    raise(errc::sequence_too_short, "need at least two points");
  Real c_hat = Real(0);
  for (std::size_t l = 0; l + 1 < seq.points.size(); ++l) {
    const Real num = Real(1) - std::abs(seq.points[l + 1]);
    const Real den = Real(1) - std::abs(seq.points[l]);
    c_hat = std::max(c_hat, num / den);
  }
  return {c_hat, c_hat < Real(1) - Real(kRatioEps)};
}

template <class Real>
struct ProductLowerBound {
  Real partial = Real(0);            // ∏_{N=1}^{n_terms} ((1−c^N)/(1+c^N))²
  Real tail_factor_bound = Real(0);  // certified lower bound on the rest
  Real certified() const { return partial * tail_factor_bound; }
};

// Certified positive lower bound for the infinite product
// ∏_{N≥1} ((1−c^N)/(1+c^N))², which lower-bounds the separation infimum of
// the geometric family. The tail uses log(1−x) ≥ −2x and log(1+x) ≤ x on
// [0, 1/2], giving ∏_{N>n} factors ≥ exp(−6·c^(n+1)/(1−c)); that estimate is
// only valid once c^(n+1) ≤ 1/2, so n_terms must cover the large factors.
template <class Real>
ProductLowerBound<Real> certified_product_lower_bound(Real c, int n_terms) {
  if (!(c > Real(0) && c < Real(1)))
    raise(errc::invalid_param, "base must lie in (0,1)");
  if (n_terms < 1) raise(errc::invalid_param, "n_terms must be >= 1");

  int floor_terms = static_cast<int>(
      std::ceil(std::log2(Real(1) / (Real(1) - c))));
  if (floor_terms < 1) floor_terms = 1;
  while (std::pow(c, Real(floor_terms + 1)) > Real(0.5)) ++floor_terms;
  if (n_terms < floor_terms)
    raise(errc::invalid_param,
          "n_terms must be >= " + std::to_string(floor_terms) +
              " for this base so the tail estimate applies");

  ProductLowerBound<Real> bound;
  bound.partial = Real(1);
  Real cn = Real(1);
  for (int n = 1; n <= n_terms; ++n) {
    cn *= c;
    const Real factor = (Real(1) - cn) / (Real(1) + cn);
    bound.partial *= factor * factor;
  }
  bound.tail_factor_bound = std::exp(-Real(6) * cn * c / (Real(1) - c));
  return bound;
}

}  // namespace discframe
