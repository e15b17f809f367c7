#pragma once

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "discframe/disc.hpp"
#include "discframe/errors.hpp"
#include "discframe/frame.hpp"
#include "discframe/rng.hpp"
#include "discframe/solve.hpp"
#include "discframe/types.hpp"

namespace discframe {

// Truncated power-series element: f(z) = Σ_n coefficients[n]·zⁿ.
template <class Real>
struct PolyFunction {
  VectorX<Real> coefficients;

  Index degree() const { return coefficients.size() - 1; }

  Complex<Real> operator()(const Complex<Real>& z) const {
    if (coefficients.size() == 0) return Complex<Real>(0);
    Complex<Real> acc = coefficients(coefficients.size() - 1);
    for (Index n = coefficients.size() - 2; n >= 0; --n)
      acc = acc * z + coefficients(n);
    return acc;
  }

  Real norm_sq() const { return coefficients.squaredNorm(); }
};

// Weighted point samples {f(λ_k)·w_k}: the coefficient-space face of the
// sampling map this library inverts.
template <class Real>
VectorX<Real> weighted_samples(const PolyFunction<Real>& f,
                               const DiscSequence<Real>& seq) {
  VectorX<Real> out(seq.size());
  for (Index k = 0; k < seq.size(); ++k) {
    const Complex<Real> lam = seq.points[static_cast<std::size_t>(k)];
    out(k) = f(lam) * std::sqrt(Real(1) - std::norm(lam));
  }
  return out;
}

template <class Real>
struct InterpolationResult {
  VectorX<Real> kernel_coefficients;  // α in f = Σ_j α_j·w_j·k_{λ_j}
  Real norm_sq = Real(0);
  Real residual = Real(0);
  Real gram_condition = Real(0);
  PolyFunction<Real> interpolant;
};

namespace detail {

// G·x = t for the Hermitian PD interpolation Gram: direct LDLT while the
// dimension permits a dense factorization, conjugate-gradient beyond it.
template <class Real>
VectorX<Real> solve_gram(const MatrixX<Real>& G, const VectorX<Real>& t,
                         Real tol) {
  if (G.rows() <= kDenseEigMaxDim) {
    Eigen::LDLT<MatrixX<Real>> ldlt(G);
    if (ldlt.info() != Eigen::Success)
      raise(errc::ill_conditioned, "Gram factorization failed");
    return ldlt.solve(t);
  }
  return conjugate_gradient(G, t, std::max(tol * Real(1e-2), Real(1e-14))).x;
}

// Conditioning gate shared by the solve paths: bounds of the Gram, refusal
// below the lower-bound floor.
template <class Real>
FrameBoundEstimate<Real> checked_gram_bounds(const FrameOperatorMatrix<Real>& G) {
  const FrameBoundEstimate<Real> bounds = frame_bounds(G, Real(1e-12));
  if (bounds.lower_A < Real(kLowerBoundFloor))
    raise(errc::ill_conditioned,
          "Gram lower bound " + std::to_string(bounds.lower_A) +
              " is below the admissible floor");
  return bounds;
}

}  // namespace detail

// Least-norm solution of the weighted interpolation problem
// f(λ_k)·w_k = targets_k: solve G·α = targets on the kernel Gram (which
// coincides entrywise with the closed-form frame operator of the same
// sequence), then materialize f = Σ_j α_j·w_j·k_{λ_j} with the reproducing
// kernel k_λ(z) = Σ_n conj(λ)ⁿ·zⁿ truncated at a degree D chosen so the
// discarded tail cannot perturb any sample by more than tol.
template <class Real>
InterpolationResult<Real> min_norm_interpolant(const DiscSequence<Real>& seq,
                                               const VectorX<Real>& targets,
                                               Real tol) {
  const Index K = seq.size();
  if (targets.size() != K)
    raise(errc::dimension_mismatch, "targets length must equal sequence size");
  if (!(tol > Real(0))) raise(errc::invalid_param, "tol must be positive");
  validate_disc_sequence(seq.points, seq.label);

  const FrameOperatorMatrix<Real> G = frame_operator_closed_form(seq);
  const FrameBoundEstimate<Real> bounds = detail::checked_gram_bounds(G);

  InterpolationResult<Real> result;
  result.gram_condition = bounds.upper_B / bounds.lower_A;
  result.kernel_coefficients = detail::solve_gram(G.entries, targets, tol);
  result.norm_sq = std::max(
      Real(0),
      (result.kernel_coefficients.dot(G.entries * result.kernel_coefficients))
          .real());

  RealVectorX<Real> weights(K);
  Real lambda_max = Real(0), alpha_w_max = Real(0);
  for (Index j = 0; j < K; ++j) {
    const Complex<Real> lam = seq.points[static_cast<std::size_t>(j)];
    weights(j) = std::sqrt(Real(1) - std::norm(lam));
    lambda_max = std::max(lambda_max, std::abs(lam));
    alpha_w_max = std::max(alpha_w_max,
                           std::abs(result.kernel_coefficients(j)) * weights(j));
  }

  Index D = 0;
  if (lambda_max > Real(0) && alpha_w_max > Real(0)) {
    const Real threshold = tol / (Real(K) * alpha_w_max);
    const auto tail = [&](Index d) {
      return std::pow(lambda_max, Real(d + 1)) / (Real(1) - lambda_max);
    };
    const Real guess = (std::log(threshold * (Real(1) - lambda_max)) /
                        std::log(lambda_max)) - Real(1);
    if (std::isfinite(guess) && guess > Real(0)) D = static_cast<Index>(guess);
    while (tail(D) > threshold) ++D;
    while (D > 0 && tail(D - 1) <= threshold) --D;
  }

  // a_n = Σ_j α_j·w_j·conj(λ_j)ⁿ, accumulated by running conjugate powers.
  result.interpolant.coefficients = VectorX<Real>::Zero(D + 1);
  VectorX<Real> power(K);
  for (Index j = 0; j < K; ++j)
    power(j) = result.kernel_coefficients(j) * weights(j);
  for (Index n = 0; n <= D; ++n) {
    result.interpolant.coefficients(n) = power.sum();
    if (n < D)
      for (Index j = 0; j < K; ++j)
        power(j) *= std::conj(seq.points[static_cast<std::size_t>(j)]);
  }

  result.residual =
      (weighted_samples(result.interpolant, seq) - targets)
          .template lpNorm<Eigen::Infinity>();
  if (result.residual > tol)
    raise(errc::tolerance_not_reached,
          "interpolation residual " + std::to_string(result.residual) +
              " exceeds tol");
  return result;
}

template <class Real>
struct NormRatioExtremes {
  Real max_norm_ratio = Real(0);
  Real min_norm_ratio = Real(0);
};

// Empirical two-sided boundedness of the solution map: over unit-norm target
// vectors, the interpolant norm √(Re α*·t) ranges over [1/√B, 1/√A]. The two
// extremal eigenvectors of the Gram are probed first (they attain the range
// endpoints up to solver residual), then `trials` seeded random unit targets.
// Norms here come from the Gram identity alone — no polynomial is built.
template <class Real>
NormRatioExtremes<Real> surjectivity_probe(const DiscSequence<Real>& seq,
                                           int trials, std::uint64_t seed) {
  if (trials < 1) raise(errc::invalid_param, "trials must be >= 1");
  validate_disc_sequence(seq.points, seq.label);

  const FrameOperatorMatrix<Real> G = frame_operator_closed_form(seq);
  const FrameBoundEstimate<Real> bounds = detail::checked_gram_bounds(G);

  const auto ratio_for = [&](const VectorX<Real>& unit_target) {
    const VectorX<Real> alpha =
        detail::solve_gram(G.entries, unit_target, Real(1e-12));
    return std::sqrt(std::max(Real(0), alpha.dot(unit_target).real()));
  };

  NormRatioExtremes<Real> ext;
  ext.max_norm_ratio = Real(0);
  ext.min_norm_ratio = std::numeric_limits<Real>::infinity();
  const auto record = [&](Real r) {
    ext.max_norm_ratio = std::max(ext.max_norm_ratio, r);
    ext.min_norm_ratio = std::min(ext.min_norm_ratio, r);
  };

  record(ratio_for(bounds.lower_vector.normalized()));
  record(ratio_for(bounds.upper_vector.normalized()));

  CounterRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    VectorX<Real> target(seq.size());
    for (Index k = 0; k < seq.size(); ++k) {
      const auto z = rng.complex_unit_square();
      target(k) =
          Complex<Real>(Real(z.real()) - Real(0.5), Real(z.imag()) - Real(0.5));
    }
    const Real len = target.norm();
    if (len == Real(0)) {
      target.setZero();
      target(0) = Complex<Real>(1);
    } else {
      target /= len;
    }
    record(ratio_for(target));
  }
  return ext;
}

}  // namespace discframe
