// Exact series computations for the discrete-law examples: partial sums of
// the geometric mean series with a closed-form tail certificate.

#pragma once

#include "measurekit/xreal.hpp"

#include <vector>

namespace measurekit {

// Partial sum of sum_{k>=1} k p (1-p)^(k-1) truncated at K, together with
// the exact tail q^K (K + 1/p): the two add to exactly 1/p, which the
// checker verifies as an algebraic certificate.
struct GeometricMeanSum {
  Rat partial;       // sum of the first K terms
  Rat tail;          // exact remainder
  unsigned terms;    // K
  Rat target;        // 1/p
  bool certificate;  // partial + tail == target
};

inline GeometricMeanSum geometric_mean_partial(const Rat& p, unsigned terms) {
  if (!(Rat(0) < p && p <= Rat(1)))
    throw precondition_error("geometric_mean_partial: p must lie in (0,1]");
  GeometricMeanSum out;
  out.terms = terms;
  out.target = Rat(1) / p;
  Rat q = Rat(1) - p;
  Rat partial(0), q_pow(1);  // q^(k-1)
  for (unsigned k = 1; k <= terms; ++k) {
    partial += Rat(k) * p * q_pow;
    q_pow *= q;
  }
  out.partial = partial;
  out.tail = q_pow * (Rat(terms) + out.target);  // q^K (K + 1/p)
  out.certificate = out.partial + out.tail == out.target;
  return out;
}

// Smallest K whose tail drops below the tolerance, with the certified sum.
inline GeometricMeanSum geometric_mean_to_tolerance(const Rat& p, const Rat& tol) {
  for (unsigned k = 1; k <= 100000; k *= 2) {
    GeometricMeanSum s = geometric_mean_partial(p, k);
    if (s.tail <= tol) return s;
  }
  throw precondition_error("geometric_mean_to_tolerance: tolerance not reached");
}

}  // namespace measurekit
