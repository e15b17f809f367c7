#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "discframe/disc.hpp"
#include "discframe/errors.hpp"
#include "discframe/frame.hpp"
#include "discframe/sequences.hpp"
#include "discframe/types.hpp"

namespace discframe {

template <class Real>
struct TensorSystem {
  IteratedSystem<Real> factor_a;
  IteratedSystem<Real> factor_b;
};

template <class Real>
struct TensorCoefficients {
  VectorX<Real> a;  // length N_A + 1
  VectorX<Real> b;  // length N_B + 1
};

template <class Real>
struct TensorCarlesonResult {
  Real value = Real(0);
  Index argmin_n = 0;  // 1-based factor-a index
  Index argmin_m = 0;  // 1-based factor-b index
};

namespace detail {

template <class Real>
struct ProductPoint {
  Complex<Real> value;
  Index k, l;  // 0-based factor indices
};

template <class Real>
std::vector<ProductPoint<Real>> product_points(const DiscSequence<Real>& a,
                                               const DiscSequence<Real>& b) {
  std::vector<ProductPoint<Real>> pts;
  pts.reserve(static_cast<std::size_t>(a.size() * b.size()));
  for (Index k = 0; k < a.size(); ++k)
    for (Index l = 0; l < b.size(); ++l)
      pts.push_back({a.points[static_cast<std::size_t>(k)] *
                         b.points[static_cast<std::size_t>(l)],
                     k, l});
  return pts;
}

inline std::string pair_name(Index k, Index l) {
  return "(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
}

}  // namespace detail

// Separation statistic on the product points λ_k·γ_l, evaluated literally in
// the log domain over all index pairs (k,l) ≠ (n,m).
//
// Collision semantics: for identical factors the products at (k,l) and (l,k)
// coincide structurally — they are the same point written twice. A value
// coincidence at transposed indices is therefore legal: when it involves the
// centre (n,m) the twin factor is skipped (it is the centre itself), and
// between non-centre pairs both copies contribute their factor exactly as the
// double product is written. Any coincidence at NON-transposed indices is a
// genuine degeneracy and raises ProductCollision naming the pairs, instead of
// silently returning 0.
template <class Real>
TensorCarlesonResult<Real> tensor_carleson_infimum(const DiscSequence<Real>& seq_a,
                                                   const DiscSequence<Real>& seq_b) {
  if (seq_a.size() < 1 || seq_b.size() < 1)
    raise(errc::sequence_too_short, "both factors need at least one point");

  const auto pts = detail::product_points(seq_a, seq_b);
  const std::size_t P = pts.size();

  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = i + 1; j < P; ++j) {
      if (pseudohyperbolic_distance(pts[i].value, pts[j].value) <
          Real(kSeparationEps)) {
        const bool transposed = pts[i].k == pts[j].l && pts[i].l == pts[j].k;
        if (!transposed)
          raise(errc::product_collision,
                "products at " + detail::pair_name(pts[i].k, pts[i].l) +
                    " and " + detail::pair_name(pts[j].k, pts[j].l) +
                    " coincide");
      }
    }
  }

  Real best_log = std::numeric_limits<Real>::infinity();
  Index best_n = 1, best_m = 1;
  for (std::size_t c = 0; c < P; ++c) {
    Real log_sum = Real(0);
    for (std::size_t f = 0; f < P; ++f) {
      if (f == c) continue;
      // The centre written twice (transposed indices, coincident value)
      // contributes no factor.
      if (pts[f].k == pts[c].l && pts[f].l == pts[c].k &&
          pseudohyperbolic_distance(pts[f].value, pts[c].value) <
              Real(kSeparationEps))
        continue;
      log_sum += std::log(pseudohyperbolic_distance(pts[f].value, pts[c].value));
    }
    if (log_sum < best_log) {
      best_log = log_sum;
      best_n = pts[c].k + 1;
      best_m = pts[c].l + 1;
    }
  }
  if (P == 1) best_log = Real(0);
  return {std::exp(best_log), best_n, best_m};
}

// S_A ⊗ S_B with the global row-major flattening (k,l) → (k−1)·K_B + l.
template <class Real>
FrameOperatorMatrix<Real> kron_frame_operator(const FrameOperatorMatrix<Real>& Sa,
                                              const FrameOperatorMatrix<Real>& Sb) {
  FrameOperatorMatrix<Real> op;
  op.entries = Eigen::kroneckerProduct(Sa.entries, Sb.entries);
  op.provenance = Sa.provenance == Sb.provenance
                      ? Sa.provenance
                      : FrameOperatorMatrix<Real>::Provenance::gram;
  return op;
}

// Tensor bounds via the spectral product law A = A_a·A_b, B = B_a·B_b on the
// factor closed-form operators; cross-checked against the assembled Kronecker
// operator while the product dimension stays small.
template <class Real>
FrameBoundEstimate<Real> tensor_frame_bounds(const TensorSystem<Real>& ts, Real tol) {
  const FrameOperatorMatrix<Real> Sa = frame_operator_closed_form(ts.factor_a);
  const FrameOperatorMatrix<Real> Sb = frame_operator_closed_form(ts.factor_b);
  const FrameBoundEstimate<Real> ba = frame_bounds(Sa, tol);
  const FrameBoundEstimate<Real> bb = frame_bounds(Sb, tol);

  FrameBoundEstimate<Real> est;
  est.lower_A = ba.lower_A * bb.lower_A;
  est.upper_B = ba.upper_B * bb.upper_B;
  est.method = ba.method;
  est.residual = std::max(ba.residual, bb.residual);
  est.truncation_K = ts.factor_a.size() * ts.factor_b.size();
  est.lower_vector = Eigen::kroneckerProduct(ba.lower_vector, bb.lower_vector);
  est.upper_vector = Eigen::kroneckerProduct(ba.upper_vector, bb.upper_vector);

  if (est.truncation_K <= 256) {
    const FrameBoundEstimate<Real> direct =
        frame_bounds(kron_frame_operator(Sa, Sb), tol);
    const Real scale = std::max(est.upper_B, Real(1));
    if (std::abs(direct.lower_A - est.lower_A) > tol * scale ||
        std::abs(direct.upper_B - est.upper_B) > tol * scale)
      raise(errc::tolerance_not_reached,
            "factor-product bounds disagree with the assembled operator");
  }
  return est;
}

// Rank-one synthesis image: entry(k,l) = (Σ_n a_n·λ_k^n·w_k)·(Σ_m b_m·γ_l^m·v_l).
template <class Real>
MatrixX<Real> tensor_synthesis_apply(const TensorSystem<Real>& ts,
                                     const TensorCoefficients<Real>& coeffs) {
  if (coeffs.a.size() != ts.factor_a.iteration_order + 1 ||
      coeffs.b.size() != ts.factor_b.iteration_order + 1)
    raise(errc::dimension_mismatch, "coefficient lengths must equal N + 1");
  const VectorX<Real> u = build_synthesis(ts.factor_a) * coeffs.a;
  const VectorX<Real> v = build_synthesis(ts.factor_b) * coeffs.b;
  return u * v.transpose();
}

// One truncation cell of the product-system trend: separation statistic,
// factor-product bounds, and the two-factor ratio constant at K×K.
template <class Real>
struct TrendRow {
  Index K = 0;
  std::optional<Real> carleson_trunc;  // missing when products collide
  bool product_collision = false;
  Real lower_A = Real(0);
  Real upper_B = Real(0);
  std::optional<Real> ratio_c_hat;  // missing for K = 1
};

template <class Real>
std::vector<TrendRow<Real>> tensor_trend_experiment(const SequenceSpec<Real>& spec_a,
                                                    const SequenceSpec<Real>& spec_b,
                                                    std::vector<Index> K_list,
                                                    Real tol) {
  if (K_list.empty()) raise(errc::invalid_spec, "K_list must be non-empty");
  std::sort(K_list.begin(), K_list.end());
  const Index K_max = K_list.back();
  if (K_list.front() < 1) raise(errc::invalid_spec, "K values must be >= 1");
  if (spec_a.count < K_max || spec_b.count < K_max)
    raise(errc::invalid_spec,
          "specs must generate at least max(K_list) points");

  const DiscSequence<Real> full_a = generate(spec_a);
  const DiscSequence<Real> full_b = generate(spec_b);

  std::vector<TrendRow<Real>> rows;
  rows.reserve(K_list.size());
  for (Index K : K_list) {
    DiscSequence<Real> sub_a{{full_a.points.begin(), full_a.points.begin() + K},
                             full_a.label};
    DiscSequence<Real> sub_b{{full_b.points.begin(), full_b.points.begin() + K},
                             full_b.label};
    TrendRow<Real> row;
    row.K = K;
    try {
      row.carleson_trunc = tensor_carleson_infimum(sub_a, sub_b).value;
    } catch (const Error& e) {
      if (e.code() != errc::product_collision) throw;
      row.product_collision = true;
    }
    TensorSystem<Real> ts{make_iterated_system(sub_a, Index(0)),
                          make_iterated_system(sub_b, Index(0))};
    const FrameBoundEstimate<Real> bounds = tensor_frame_bounds(ts, tol);
    row.lower_A = bounds.lower_A;
    row.upper_B = bounds.upper_B;
    if (K >= 2) row.ratio_c_hat = ratio_condition_constant(sub_a, sub_b).c_hat;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace discframe
