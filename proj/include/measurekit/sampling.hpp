// Floating-point simulation layer: inverse-transform sampling, empirical
// law comparison, convergence-in-probability estimation.  Everything here
// is double precision; crossings from the exact layers are explicit, and
// all statistical bands used in tests are fixed-seed.

#pragma once

#include "measurekit/rng.hpp"
#include "measurekit/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace measurekit {

struct EmpiricalLaw {
  std::vector<double> sorted_values;

  std::size_t count() const { return sorted_values.size(); }
  static EmpiricalLaw of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return EmpiricalLaw{std::move(values)};
  }
  double mean() const {
    double acc = 0;
    for (double v : sorted_values) acc += v;
    return sorted_values.empty() ? 0.0 : acc / static_cast<double>(sorted_values.size());
  }
};

// n inverse-transform draws of the given distribution function.
inline EmpiricalLaw sample_quantile(const CdfSpec& f, std::size_t n, RngStream stream) {
  if (!is_distribution_function(f))
    throw precondition_error("sample_quantile: spec is not a distribution function");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Dyadic u keeps the draw exactly representable and inside (0,1).
    Rat u = stream.next_dyadic(53);
    if (u.is_zero()) u = Rat(1, BigInt(1) << 53);
    out.push_back(quantile(f, u).value.approx);
  }
  return EmpiricalLaw::of(std::move(out));
}

// Two-sided Kolmogorov-Smirnov distance between an empirical law and F.
// Ties are grouped; atoms of F are handled through the left limits.
inline double ks_distance(const EmpiricalLaw& emp, const CdfSpec& f) {
  const std::size_t n = emp.count();
  if (n == 0) return 0.0;
  double worst = 0.0;
  std::size_t i = 0;
  while (i < n) {
    double x = emp.sorted_values[i];
    std::size_t j = i;
    while (j < n && emp.sorted_values[j] == x) ++j;
    double before = static_cast<double>(i) / n;
    double after = static_cast<double>(j) / n;
    double fx = f.mass_up_to(Boundary{XReal(Rat(x)), +1}).approx;
    double fxm = f.mass_up_to(Boundary{XReal(Rat(x)), -1}).approx;
    worst = std::max(worst, std::max(std::abs(fx - after), std::abs(fxm - before)));
    i = j;
  }
  return worst;
}

// One row per grid point: Monte Carlo estimate of P(|X_n - X| >= eps).
struct ConvergenceRow {
  std::size_t n;
  double estimate;
  double std_error;
};

// The sequence is specified as a sampler (n, rng) -> X_n draw coupled with
// its limit draw; the pair shares the rng so couplings are preserved.
using PairSampler = std::function<std::pair<double, double>(std::size_t n, RngStream& rng)>;

inline std::vector<ConvergenceRow> convergence_in_probability(const PairSampler& sample,
                                                              double eps,
                                                              const std::vector<std::size_t>& grid,
                                                              std::size_t reps, RngStream stream) {
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : grid) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      RngStream sub(stream.next_u64(), r);
      auto [xn, x] = sample(n, sub);
      if (std::abs(xn - x) >= eps) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(reps);
    rows.push_back({n, p, std::sqrt(p * (1 - p) / static_cast<double>(reps))});
  }
  return rows;
}

// Greedy subsequence n_k with p(n_k) <= 2^-k, mirroring the Borel-Cantelli
// argument for a.s. convergence along a subsequence.
struct SubsequenceResult {
  std::vector<std::size_t> indices;
  bool exhausted = false;   // table ran out before the next threshold
  unsigned failed_at = 0;   // k at which extraction stopped (when exhausted)
};

inline SubsequenceResult subsequence_extractor(
    const std::vector<std::pair<std::size_t, double>>& prob_table, unsigned depth) {
  SubsequenceResult out;
  std::size_t start = 0;
  for (unsigned k = 1; k <= depth; ++k) {
    double threshold = std::ldexp(1.0, -static_cast<int>(k));
    bool found = false;
    for (std::size_t i = start; i < prob_table.size(); ++i) {
      if (prob_table[i].second <= threshold) {
        out.indices.push_back(prob_table[i].first);
        start = i + 1;
        found = true;
        break;
      }
    }
    if (!found) {
      out.exhausted = true;
      out.failed_at = k;
      return out;
    }
  }
  return out;
}

}  // namespace measurekit
