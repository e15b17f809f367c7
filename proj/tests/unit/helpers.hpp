#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "discframe/discframe.hpp"

namespace testutil {

using Cplx = std::complex<double>;

inline Cplx pt(double re, double im = 0.0) { return {re, im}; }

// True iff fn() throws discframe::Error with exactly this code.
template <class Fn>
bool raises(discframe::errc code, Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const discframe::Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

// Direct-product evaluation of the separation infimum (no log domain):
// an independent cross-check of the library's implementation.
inline double brute_carleson(const std::vector<Cplx>& pts) {
  if (pts.size() == 1) return 1.0;
  double best = 2.0;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    double prod = 1.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == n) continue;
      prod *= discframe::pseudohyperbolic_distance(pts[k], pts[n]);
    }
    best = std::min(best, prod);
  }
  return best;
}

// Direct-product tensor variant with the same twin-skipping semantics as the
// library: the factor at transposed indices is dropped when it coincides in
// value with the centre.
inline double brute_tensor_carleson(const std::vector<Cplx>& a,
                                    const std::vector<Cplx>& b) {
  struct P {
    Cplx v;
    std::size_t k, l;
  };
  std::vector<P> pts;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = 0; l < b.size(); ++l) pts.push_back({a[k] * b[l], k, l});
  if (pts.size() == 1) return 1.0;
  double best = 2.0;
  for (const auto& c : pts) {
    double prod = 1.0;
    for (const auto& f : pts) {
      if (f.k == c.k && f.l == c.l) continue;
      if (f.k == c.l && f.l == c.k &&
          discframe::pseudohyperbolic_distance(f.v, c.v) < 1e-12)
        continue;
      prod *= discframe::pseudohyperbolic_distance(f.v, c.v);
    }
    best = std::min(best, prod);
  }
  return best;
}

}  // namespace testutil
