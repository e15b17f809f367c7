#pragma once

#include <cmath>

#include "discframe/errors.hpp"
#include "discframe/rng.hpp"
#include "discframe/types.hpp"

namespace discframe {

template <class Real>
struct CgOutcome {
  VectorX<Real> x;
  int iterations = 0;
  Real rel_residual = Real(0);
};

// Conjugate gradients for Hermitian positive-definite A. Stops when
// ‖r‖ ≤ tol·‖b‖; b = 0 returns x = 0 in zero iterations.
template <class Real>
CgOutcome<Real> conjugate_gradient(const MatrixX<Real>& A,
                                   const VectorX<Real>& b, Real tol,
                                   int max_iterations = -1) {
  const Index n = A.rows();
  if (b.size() != n) raise(errc::dimension_mismatch, "rhs length != dimension");
  if (max_iterations < 0)
    max_iterations = static_cast<int>(20 * n + 200);

  CgOutcome<Real> out;
  out.x = VectorX<Real>::Zero(n);
  const Real b_norm = b.norm();
  if (b_norm == Real(0)) return out;

  VectorX<Real> r = b;
  VectorX<Real> p = r;
  Real rs = r.squaredNorm();
  for (int it = 1; it <= max_iterations; ++it) {
    const VectorX<Real> Ap = A * p;
    const Real pAp = p.dot(Ap).real();
    const Real alpha = rs / pAp;
    out.x += alpha * p;
    r -= alpha * Ap;
    const Real rs_next = r.squaredNorm();
    if (std::sqrt(rs_next) <= tol * b_norm) {
      out.iterations = it;
      out.rel_residual = std::sqrt(rs_next) / b_norm;
      return out;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  raise(errc::tolerance_not_reached,
        "conjugate gradients did not converge in " +
            std::to_string(max_iterations) + " iterations");
}

template <class Real>
struct ExtremalPair {
  Real value = Real(0);
  VectorX<Real> vector;
  int iterations = 0;
  Real residual = Real(0);  // ‖Av − θv‖, absolute
};

namespace detail {

template <class Real>
VectorX<Real> random_unit_vector(Index n, CounterRng& rng) {
  VectorX<Real> v(n);
  for (Index i = 0; i < n; ++i) {
    const auto z = rng.complex_unit_square();
    v(i) = Complex<Real>(static_cast<Real>(z.real() - 0.5),
                         static_cast<Real>(z.imag() - 0.5));
  }
  v.normalize();
  return v;
}

}  // namespace detail

// Power iteration for the largest eigenpair of Hermitian PSD A; converges
// once ‖Av − θv‖ ≤ tol·θ (θ estimates ‖A‖ for PSD input).
template <class Real>
ExtremalPair<Real> power_iteration_largest(const MatrixX<Real>& A, Real tol,
                                           CounterRng& rng,
                                           int max_iterations = 100000) {
  const Index n = A.rows();
  ExtremalPair<Real> out;
  out.vector = detail::random_unit_vector<Real>(n, rng);
  for (int it = 1; it <= max_iterations; ++it) {
    VectorX<Real> Av = A * out.vector;
    out.value = out.vector.dot(Av).real();
    out.residual = (Av - out.value * out.vector).norm();
    if (out.residual <= tol * std::abs(out.value)) {
      out.iterations = it;
      return out;
    }
    const Real norm = Av.norm();
    if (norm == Real(0)) {  // A v = 0: v is an exact null eigenvector
      out.value = Real(0);
      out.residual = Real(0);
      out.iterations = it;
      return out;
    }
    out.vector = Av / norm;
  }
  raise(errc::tolerance_not_reached, "power iteration did not converge");
}

// Inverse iteration for the smallest eigenpair of Hermitian PD A, using CG
// solves; `norm_scale` should carry ‖A‖ (e.g. the largest eigenvalue) so the
// stopping rule matches the frame-bounds contract ‖Av − θv‖ ≤ tol·‖A‖.
template <class Real>
ExtremalPair<Real> inverse_iteration_smallest(const MatrixX<Real>& A, Real tol,
                                              Real norm_scale, CounterRng& rng,
                                              int max_iterations = 100000) {
  const Index n = A.rows();
  ExtremalPair<Real> out;
  out.vector = detail::random_unit_vector<Real>(n, rng);
  const Real solve_tol = std::max(tol * Real(1e-2), Real(1e-14));
  for (int it = 1; it <= max_iterations; ++it) {
    VectorX<Real> w = conjugate_gradient(A, out.vector, solve_tol).x;
    w.normalize();
    const VectorX<Real> Aw = A * w;
    out.value = w.dot(Aw).real();
    out.residual = (Aw - out.value * w).norm();
    out.vector = w;
    if (out.residual <= tol * norm_scale) {
      out.iterations = it;
      return out;
    }
  }
  raise(errc::tolerance_not_reached, "inverse iteration did not converge");
}

}  // namespace discframe
