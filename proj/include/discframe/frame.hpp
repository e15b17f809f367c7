#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "discframe/disc.hpp"
#include "discframe/errors.hpp"
#include "discframe/rng.hpp"
#include "discframe/solve.hpp"
#include "discframe/types.hpp"

namespace discframe {

template <class Real>
IteratedSystem<Real> make_iterated_system(DiscSequence<Real> eigenvalues,
                                          Index iteration_order) {
  if (eigenvalues.size() < 1)
    raise(errc::invalid_spec, "system needs at least one eigenvalue");
  if (iteration_order < 0)
    raise(errc::invalid_spec, "iteration order must be >= 0");
  IteratedSystem<Real> sys;
  sys.weights.resize(eigenvalues.size());
  for (Index k = 0; k < eigenvalues.size(); ++k)
    sys.weights(k) = std::sqrt(
        Real(1) - std::norm(eigenvalues.points[static_cast<std::size_t>(k)]));
  sys.eigenvalues = std::move(eigenvalues);
  sys.iteration_order = iteration_order;
  return sys;
}

template <class Real>
VectorX<Real> eigenvalue_vector(const IteratedSystem<Real>& sys) {
  VectorX<Real> lambda(sys.size());
  for (Index k = 0; k < sys.size(); ++k)
    lambda(k) = sys.eigenvalues.points[static_cast<std::size_t>(k)];
  return lambda;
}

// K×(N+1) synthesis matrix: entry(k,n) = w_k·λ_k^n, built by the column
// recurrence col_{n} = col_{n−1} ∘ λ so that column 0 is exactly the weight
// vector (0^0 := 1) and successive columns accumulate one rounding each.
template <class Real>
MatrixX<Real> build_synthesis(const IteratedSystem<Real>& sys) {
  const Index K = sys.size();
  const Index N = sys.iteration_order;
  const VectorX<Real> lambda = eigenvalue_vector(sys);
  MatrixX<Real> V(K, N + 1);
  V.col(0) = sys.weights.template cast<Complex<Real>>();
  for (Index n = 1; n <= N; ++n)
    V.col(n) = V.col(n - 1).cwiseProduct(lambda);
  return V;
}

// S_N = V·V* summed over powers n = 0..N (the explicit finite sum).
template <class Real>
FrameOperatorMatrix<Real> frame_operator_truncated(const MatrixX<Real>& synthesis) {
  FrameOperatorMatrix<Real> op;
  op.entries = MatrixX<Real>::Zero(synthesis.rows(), synthesis.rows());
  op.entries.template selfadjointView<Eigen::Lower>().rankUpdate(synthesis);
  MatrixX<Real> full = op.entries.template selfadjointView<Eigen::Lower>();
  op.entries = std::move(full);
  op.provenance = FrameOperatorMatrix<Real>::Provenance::truncated;
  op.truncation_order = synthesis.cols() - 1;
  return op;
}

// Geometric-series limit of the truncated operator:
// S_∞(j,k) = w_j·w_k / (1 − λ_j·conj(λ_k)); unit diagonal.
template <class Real>
FrameOperatorMatrix<Real> frame_operator_closed_form(const IteratedSystem<Real>& sys) {
  const Index K = sys.size();
  const VectorX<Real> lambda = eigenvalue_vector(sys);
  FrameOperatorMatrix<Real> op;
  op.entries.resize(K, K);
  for (Index j = 0; j < K; ++j)
    for (Index k = 0; k < K; ++k)
      op.entries(j, k) = sys.weights(j) * sys.weights(k) /
                         (Real(1) - lambda(j) * std::conj(lambda(k)));
  // The diagonal is (1−|λ|²)/(1−|λ|²) = 1 exactly; writing it directly spares
  // the ulp lost to squaring the square root.
  op.entries.diagonal().setOnes();
  op.provenance = FrameOperatorMatrix<Real>::Provenance::closed_form;
  return op;
}

template <class Real>
FrameOperatorMatrix<Real> frame_operator_closed_form(const DiscSequence<Real>& seq) {
  return frame_operator_closed_form(make_iterated_system(seq, Index(0)));
}

// Gram matrix of an explicit vector family: G(j,k) = ⟨f_k, f_j⟩.
template <class Real>
FrameOperatorMatrix<Real> gram_matrix(const VectorSystem<Real>& vs) {
  FrameOperatorMatrix<Real> op;
  op.entries = vs.vectors.adjoint() * vs.vectors;
  op.entries = ((op.entries + op.entries.adjoint()) / Real(2)).eval();
  op.provenance = FrameOperatorMatrix<Real>::Provenance::gram;
  return op;
}

enum class EigMethod { automatic, dense, iterative };

// Extremal eigenvalues of a Hermitian PSD operator: dense solve up to
// kDenseEigMaxDim, iterative (power iteration for B, CG-based inverse
// iteration for A) beyond it. Residuals are certified relative to ‖S‖.
template <class Real>
FrameBoundEstimate<Real> frame_bounds(const FrameOperatorMatrix<Real>& S,
                                      Real tol,
                                      EigMethod method = EigMethod::automatic) {
  if (!(tol > Real(0))) raise(errc::invalid_param, "tolerance must be positive");
  const Index K = S.size();
  if (K < 1) raise(errc::invalid_spec, "empty operator");

  FrameBoundEstimate<Real> est;
  est.truncation_K = K;
  est.truncation_N = S.truncation_order;

  const bool dense = method == EigMethod::dense ||
                     (method == EigMethod::automatic && K <= kDenseEigMaxDim);
  if (dense) {
    Eigen::SelfAdjointEigenSolver<MatrixX<Real>> es(S.entries);
    if (es.info() != Eigen::Success)
      raise(errc::tolerance_not_reached, "dense eigensolver failed");
    est.lower_A = es.eigenvalues()(0);
    est.upper_B = es.eigenvalues()(K - 1);
    est.lower_vector = es.eigenvectors().col(0);
    est.upper_vector = es.eigenvectors().col(K - 1);
    est.method = FrameBoundEstimate<Real>::Method::dense_eig;
    const Real scale = std::max(std::abs(est.upper_B), Real(1));
    const Real r_low =
        (S.entries * est.lower_vector - est.lower_A * est.lower_vector).norm();
    const Real r_high =
        (S.entries * est.upper_vector - est.upper_B * est.upper_vector).norm();
    est.residual = std::max(r_low, r_high) / scale;
  } else {
    CounterRng rng(0x5eedULL);
    const auto top = power_iteration_largest(S.entries, tol, rng);
    est.upper_B = top.value;
    est.upper_vector = top.vector;
    const auto bottom =
        inverse_iteration_smallest(S.entries, tol, std::max(top.value, Real(1)), rng);
    est.lower_A = bottom.value;
    est.lower_vector = bottom.vector;
    est.method = FrameBoundEstimate<Real>::Method::power_iteration;
    est.residual =
        std::max(top.residual, bottom.residual) / std::max(est.upper_B, Real(1));
  }

  if (est.lower_A < -Real(kPsdRelTol) * std::max(est.upper_B, Real(1)))
    raise(errc::invalid_spec, "operator is not positive semidefinite");
  return est;
}

// Smallest N with K·q^(N+1)/(1−q) ≤ tol, q = |λ|_max²: past this iteration
// order every entry of S_N is within tol of the closed form.
template <class Real>
Index select_iteration_order(Index K, Real lambda_max_abs, Real tol) {
  if (!(tol > Real(0))) raise(errc::invalid_param, "tolerance must be positive");
  if (!(lambda_max_abs >= Real(0) && lambda_max_abs < Real(1)))
    raise(errc::invalid_param, "|lambda|_max must lie in [0,1)");
  const Real q = lambda_max_abs * lambda_max_abs;
  if (q == Real(0)) return 0;
  const auto bound = [&](Index N) {
    return Real(K) * std::pow(q, Real(N + 1)) / (Real(1) - q);
  };
  const Real target = std::log(tol * (Real(1) - q) / Real(K)) / std::log(q);
  Index N = std::max<Index>(0, static_cast<Index>(std::ceil(target)) - 1);
  while (bound(N) > tol) ++N;
  while (N > 0 && bound(N - 1) <= tol) --N;
  return N;
}

template <class Real>
Index select_iteration_order(const DiscSequence<Real>& seq, Real tol) {
  Real lambda_max = Real(0);
  for (const auto& p : seq.points)
    lambda_max = std::max(lambda_max, std::abs(p));
  return select_iteration_order(seq.size(), lambda_max, tol);
}

// Analysis coefficients c_n = Σ_k x_k·conj(w_k·λ_k^n) = (V*·x)_n.
template <class Real>
VectorX<Real> analyze(const IteratedSystem<Real>& sys, const VectorX<Real>& x) {
  if (x.size() != sys.size())
    raise(errc::dimension_mismatch, "signal length != system size");
  return build_synthesis(sys).adjoint() * x;
}

template <class Real>
struct ReconstructResult {
  VectorX<Real> x_hat;
  int iterations = 0;
};

// Recover x from analysis coefficients by solving S·x̂ = V·c with conjugate
// directions on the Hermitian PD closed-form operator. Refuses systems whose
// lower bound sits below kLowerBoundFloor rather than solving a numerically
// singular problem.
template <class Real>
ReconstructResult<Real> reconstruct(const IteratedSystem<Real>& sys,
                                    const VectorX<Real>& coeffs, Real tol) {
  if (coeffs.size() != sys.iteration_order + 1)
    raise(errc::dimension_mismatch, "coefficient length != N + 1");
  const FrameOperatorMatrix<Real> S = frame_operator_closed_form(sys);
  const FrameBoundEstimate<Real> bounds = frame_bounds(S, std::min(tol, Real(1e-10)));
  if (bounds.lower_A < Real(kLowerBoundFloor))
    raise(errc::not_a_frame,
          "lower bound " + std::to_string(static_cast<double>(bounds.lower_A)) +
              " is below the solvable floor");
  const VectorX<Real> rhs = build_synthesis(sys) * coeffs;
  auto cg = conjugate_gradient(S.entries, rhs, tol);
  return {std::move(cg.x), cg.iterations};
}

// max_k ‖T·f_k − f_{k+1}‖ / max(‖f_{k+1}‖, 1): zero exactly when the
// operator shifts the family.
template <class Real>
Real representation_residual(const VectorSystem<Real>& vs) {
  if (!vs.rep_operator)
    raise(errc::missing_operator, "vector system has no representation operator");
  if (vs.count() < 2)
    raise(errc::insufficient_vectors, "need at least two vectors");
  Real worst = Real(0);
  for (Index k = 0; k + 1 < vs.count(); ++k) {
    const VectorX<Real> lhs = (*vs.rep_operator) * vs.vectors.col(k);
    const Real gap = (lhs - vs.vectors.col(k + 1)).norm();
    const Real scale = std::max(vs.vectors.col(k + 1).norm(), Real(1));
    worst = std::max(worst, gap / scale);
  }
  return worst;
}

template <class Real>
struct ShiftRatioExtremes {
  Real min_ratio = Real(0);
  Real max_ratio = Real(0);
};

// Ratios ‖V(𝒯c)‖ / ‖Vc‖ over random finite coefficient sequences, where 𝒯
// shifts coefficients one slot so V(𝒯c) = Σ c_k·f_{k+1}. Coefficient entries
// are drawn from the complex unit square, lengths uniform in [1, max_len].
template <class Real>
ShiftRatioExtremes<Real> shift_ratio_extremes(const VectorSystem<Real>& vs,
                                              int trials, Index max_len,
                                              std::uint64_t seed) {
  if (trials < 1) raise(errc::invalid_param, "trials must be >= 1");
  if (max_len < 1) raise(errc::invalid_param, "max_len must be >= 1");
  if (vs.count() < max_len + 1)
    raise(errc::insufficient_vectors,
          "system must hold at least max_len + 1 vectors");

  CounterRng rng(seed);
  ShiftRatioExtremes<Real> out;
  bool any = false;
  for (int t = 0; t < trials; ++t) {
    const Index len = rng.uniform_int(1, max_len);
    VectorX<Real> c(len);
    for (Index i = 0; i < len; ++i) {
      const auto z = rng.complex_unit_square();
      c(i) = Complex<Real>(static_cast<Real>(z.real()),
                           static_cast<Real>(z.imag()));
    }
    const VectorX<Real> direct = vs.vectors.leftCols(len) * c;
    const VectorX<Real> shifted = vs.vectors.middleCols(1, len) * c;
    const Real direct_norm = direct.norm();
    if (direct_norm == Real(0)) continue;
    const Real ratio = shifted.norm() / direct_norm;
    if (!any) {
      out.min_ratio = out.max_ratio = ratio;
      any = true;
    } else {
      out.min_ratio = std::min(out.min_ratio, ratio);
      out.max_ratio = std::max(out.max_ratio, ratio);
    }
  }
  if (!any)
    raise(errc::invalid_param, "all sampled coefficient sequences were zero");
  return out;
}

// Empirical shift-domination constant K̂ = max ‖V(𝒯c)‖/‖Vc‖; a lower estimate
// of the optimal domination constant, ≤ ‖T‖ for exactly represented systems.
template <class Real>
Real shift_domination_constant(const VectorSystem<Real>& vs, int trials,
                               Index max_len, std::uint64_t seed) {
  return shift_ratio_extremes(vs, trials, max_len, seed).max_ratio;
}

enum class FixtureKind { overlap_basis, scaled_frame, from_iterated };

// Reference vector families:
//   overlap_basis — f_k = e_k + e_{k+1} in dimension size+1 with the
//     coordinate shift as representation operator (Bessel but not a frame);
//   from_iterated — the orbit columns w_k·λ_k^n of a base system with
//     diagonal representation operator;
//   scaled_frame — the orbit columns scaled by 2^n with the operator doubled
//     (norm blow-up with an exact representation).
template <class Real>
VectorSystem<Real> generate_fixture(FixtureKind kind, Index size,
                                    const IteratedSystem<Real>* base = nullptr) {
  if (size < 2) raise(errc::invalid_spec, "fixture needs size >= 2");
  VectorSystem<Real> vs;
  switch (kind) {
    case FixtureKind::overlap_basis: {
      const Index dim = size + 1;
      vs.vectors = MatrixX<Real>::Zero(dim, size);
      for (Index k = 0; k < size; ++k) {
        vs.vectors(k, k) = Complex<Real>(1, 0);
        vs.vectors(k + 1, k) = Complex<Real>(1, 0);
      }
      MatrixX<Real> shift = MatrixX<Real>::Zero(dim, dim);
      for (Index i = 0; i + 1 < dim; ++i) shift(i + 1, i) = Complex<Real>(1, 0);
      vs.rep_operator = std::move(shift);
      vs.label = "overlap_basis";
      break;
    }
    case FixtureKind::from_iterated:
    case FixtureKind::scaled_frame: {
      if (base == nullptr)
        raise(errc::missing_base, "fixture kind requires a base system");
      IteratedSystem<Real> sized = *base;
      sized.iteration_order = size - 1;
      vs.vectors = build_synthesis(sized);
      MatrixX<Real> rep = eigenvalue_vector(sized).asDiagonal();
      if (kind == FixtureKind::scaled_frame) {
        Real scale = Real(1);
        for (Index n = 0; n < size; ++n) {
          vs.vectors.col(n) *= scale;
          scale *= Real(2);
        }
        rep *= Complex<Real>(2, 0);
        vs.label = "scaled_frame";
      } else {
        vs.label = "from_iterated";
      }
      vs.rep_operator = std::move(rep);
      break;
    }
  }
  return vs;
}

}  // namespace discframe
