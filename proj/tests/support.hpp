#pragma once

// Shared helpers for the test suites: deterministic random generators,
// the torus-knot corpus, and brute-force oracles kept independent of the
// implementation paths they check.

#include "lsk/gaps.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/plfun.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace lsk::testing {

using Rng = std::mt19937_64;

// Uniform-ish integer in [lo, hi]; avoids std::uniform_int_distribution so
// sequences are identical across standard libraries.
inline long long rand_range(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline Rat rand_rat(Rng& rng, long long lo, long long hi, long long max_den = 4) {
  long long den = rand_range(rng, 1, max_den);
  return Rat(rand_range(rng, lo * den, hi * den), den);
}

// All coprime pairs (p, q), 2 <= p < q, with pq <= bound.
inline std::vector<std::pair<long long, long long>> torus_corpus(long long bound) {
  std::vector<std::pair<long long, long long>> pairs;
  for (long long p = 2; p * (p + 1) <= bound; ++p)
    for (long long q = p + 1; p * q <= bound; ++q)
      if (std::gcd(p, q) == 1) pairs.emplace_back(p, q);
  return pairs;
}

// Random connected sum of 1..max_leaves torus leaves from the pq <= 200 corpus.
inline KnotExpr random_sum(Rng& rng, int max_leaves = 4) {
  static const auto pairs = torus_corpus(200);
  int n = static_cast<int>(rand_range(rng, 1, max_leaves));
  std::vector<KnotExpr> leaves;
  for (int i = 0; i < n; ++i) {
    auto [p, q] = pairs[static_cast<size_t>(rand_range(rng, 0, static_cast<long long>(pairs.size()) - 1))];
    leaves.push_back(KnotExpr::torus(p, q));
  }
  return KnotExpr::sum(std::move(leaves));
}

// Random piecewise-linear function on all of R, not convex in general.
inline PLFn random_plfn(Rng& rng) {
  int k = static_cast<int>(rand_range(rng, 1, 5));
  std::vector<PLPoint> bps;
  Rat x = rand_rat(rng, -6, -2);
  for (int i = 0; i < k; ++i) {
    bps.push_back({x, rand_rat(rng, -8, 8)});
    x += rand_rat(rng, 1, 3);
  }
  // slope_left <= slope_right so the conjugate has a nonempty domain
  Rat a = rand_rat(rng, -6, 6), b = rand_rat(rng, -6, 6);
  return PLFn::all_reals(std::move(bps), std::min(a, b), std::max(a, b));
}

// Random convex function with slope range straddling [lo_slope, hi_slope].
inline PLFn random_convex_plfn(Rng& rng, long long lo_slope = -4, long long hi_slope = 4) {
  int segments = static_cast<int>(rand_range(rng, 1, 4));
  std::vector<Rat> slopes;
  Rat s = Rat(lo_slope) - rand_rat(rng, 0, 2);
  slopes.push_back(s);
  for (int i = 0; i < segments; ++i) {
    s += rand_rat(rng, 1, 2, 3);
    slopes.push_back(s);
  }
  slopes.back() = std::max(slopes.back(), Rat(hi_slope) + rand_rat(rng, 0, 2));
  std::vector<PLPoint> bps;
  Rat x = rand_rat(rng, -5, -1);
  Rat y = rand_rat(rng, -5, 5);
  bps.push_back({x, y});
  for (size_t i = 1; i + 1 < slopes.size(); ++i) {
    Rat dx = rand_rat(rng, 1, 3, 2);
    x += dx;
    y += slopes[i] * dx;
    bps.push_back({x, y});
  }
  return PLFn::all_reals(std::move(bps), slopes.front(), slopes.back());
}

// Random nonnegative function (used to build f <= g pairs).
inline PLFn random_nonneg_plfn(Rng& rng) {
  int k = static_cast<int>(rand_range(rng, 1, 4));
  std::vector<PLPoint> bps;
  Rat x = rand_rat(rng, -5, -2);
  for (int i = 0; i < k; ++i) {
    bps.push_back({x, rand_rat(rng, 0, 6)});
    x += rand_rat(rng, 1, 3);
  }
  Rat sl = -rand_rat(rng, 0, 3);
  Rat sr = rand_rat(rng, 0, 3);
  return PLFn::all_reals(std::move(bps), sl, sr);
}

// Brute-force count of gaps >= m directly from the gap list.
inline long long gap_count_oracle(const GapSet& G, long long m) {
  long long count = 0;
  for (long long x = m; x < 0; ++x) ++count;
  for (long long x : G.gaps())
    if (x >= m) ++count;
  return count;
}

// Brute-force infimum convolution over a window 3x wider than the result's
// genus; independent of the production convolution's window argument.
inline StepFn convolve_wide_oracle(const StepFn& a, const StepFn& b) {
  long long g = a.genus() + b.genus();
  long long w = 3 * g + 3;
  std::vector<long long> values;
  for (long long m = -g; m <= g; ++m) {
    long long best = a(-w) + b(m + w);
    for (long long i = -w; i <= w; ++i) best = std::min(best, a(i) + b(m - i));
    values.push_back(best);
  }
  return StepFn(g, std::move(values));
}

}  // namespace lsk::testing
