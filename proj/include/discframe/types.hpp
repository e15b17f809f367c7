#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace discframe {

template <class Real>
using Complex = std::complex<Real>;

template <class Real>
using MatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using VectorX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <class Real>
using RealVectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Pinned numeric policy shared across modules.
//
// kSeparationEps: pseudohyperbolic distinctness threshold; below it, points
// are treated as duplicates and rejected rather than silently producing a
// near-zero product factor.
inline constexpr double kSeparationEps = 1e-12;
// Slack under 1 for the ratio condition: a supremum within kRatioEps of 1 is
// numerically indistinguishable from failure.
inline constexpr double kRatioEps = 1e-9;
// Lower frame bounds below this are refused for solves (NotAFrame /
// IllConditioned) instead of feeding a numerically singular system.
inline constexpr double kLowerBoundFloor = 1e-10;
// Representation consistency tolerance for vector systems with an operator.
inline constexpr double kRepresentationTol = 1e-10;
// PSD assertion slack, relative to the operator norm.
inline constexpr double kPsdRelTol = 1e-10;
// Dense eigendecomposition is used up to this dimension; beyond it the
// iterative extremal-eigenvalue path keeps the contract size-independent.
inline constexpr Index kDenseEigMaxDim = 512;

// Ordered, pairwise-distinct points strictly inside the open unit disc.
// Construct through validate_disc_sequence (disc.hpp) to enforce the
// invariants; aggregate construction is available for internal plumbing that
// subsets already-validated sequences.
template <class Real>
struct DiscSequence {
  std::vector<Complex<Real>> points;
  std::string label;

  Index size() const { return static_cast<Index>(points.size()); }
};

// An orbit system: eigenvalues λ_k with weights w_k = √(1−|λ_k|²) and the
// iteration truncation order N (powers n = 0..N).
template <class Real>
struct IteratedSystem {
  DiscSequence<Real> eigenvalues;
  RealVectorX<Real> weights;
  Index iteration_order = 0;

  Index size() const { return eigenvalues.size(); }
};

// Explicit finite vector family {f_k} (columns of `vectors`), optionally with
// a representation operator T intended to satisfy T f_k = f_{k+1}. The
// operator consistency is measured (representation_residual), not enforced at
// construction, so perturbed systems can be built and diagnosed.
template <class Real>
struct VectorSystem {
  MatrixX<Real> vectors;  // M x count, column k holds f_k
  std::optional<MatrixX<Real>> rep_operator;  // M x M
  std::string label;

  Index dimension() const { return vectors.rows(); }
  Index count() const { return vectors.cols(); }
};

// Hermitian PSD K x K operator with a record of how it was obtained.
template <class Real>
struct FrameOperatorMatrix {
  enum class Provenance { truncated, closed_form, gram };

  MatrixX<Real> entries;
  Provenance provenance = Provenance::closed_form;
  Index truncation_order = -1;  // N for provenance == truncated, else -1

  Index size() const { return entries.rows(); }
};

// Two-sided frame-bound estimate with solver metadata. `residual` is the
// larger of the two extremal eigenpair residuals ‖Sv − θv‖, relative to ‖S‖.
template <class Real>
struct FrameBoundEstimate {
  enum class Method { dense_eig, power_iteration };

  Real lower_A = Real(0);
  Real upper_B = Real(0);
  Method method = Method::dense_eig;
  Real residual = Real(0);
  Index truncation_K = 0;
  Index truncation_N = -1;  // -1 encodes the closed-form (N = ∞) operator
  VectorX<Real> lower_vector;  // unit eigenvector at lower_A
  VectorX<Real> upper_vector;  // unit eigenvector at upper_B
};

template <class Real>
const char* method_name(typename FrameBoundEstimate<Real>::Method m) {
  return m == FrameBoundEstimate<Real>::Method::dense_eig ? "dense_eig"
                                                          : "power_iteration";
}

}  // namespace discframe
