#pragma once

// The counting function I, the shifted counting function J with its integer
// infimum convolution (J of a connected sum), the piecewise-linear extension
// of J, and the d-invariants of large surgeries.

#include "lsk/knotspec.hpp"
#include "lsk/plfun.hpp"
#include "lsk/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace lsk {

// I(m) = #{x >= m : x a gap}, counting the implicit negative ray:
// I(m) = genus + (-m) for m <= 0 and genus - #(gaps < m) for m >= 0.
inline long long gap_function(const GapSet& G, long long m) {
  long long g = G.genus();
  if (m <= 0) return g - m;
  auto below = std::lower_bound(G.gaps().begin(), G.gaps().end(), m) - G.gaps().begin();
  return g - static_cast<long long>(below);
}

// Nonincreasing integer step function J with J(m+1) - J(m) in {0,-1},
// tabulated on [-g, g] and extended by J(m) = 0 for m >= g and
// J(m) = -m for m <= -g (the total drop is exactly the genus).
class StepFn {
 public:
  StepFn(long long genus, std::vector<long long> values)
      : genus_(genus), values_(std::move(values)) {
    if (genus_ < 0) throw std::invalid_argument("StepFn: negative genus");
    if (values_.size() != static_cast<size_t>(2 * genus_ + 1))
      throw std::invalid_argument("StepFn: table must cover [-g, g]");
    if (values_.back() != 0) throw std::invalid_argument("StepFn: J(g) must be 0");
    if (values_.front() != genus_) throw std::invalid_argument("StepFn: J(-g) must equal g");
    for (size_t i = 1; i < values_.size(); ++i) {
      long long d = values_[i] - values_[i - 1];
      if (d != 0 && d != -1)
        throw std::invalid_argument("StepFn: consecutive differences must be 0 or -1");
    }
  }

  long long genus() const { return genus_; }
  const std::vector<long long>& table() const { return values_; }

  long long operator()(long long m) const {
    if (m >= genus_) return 0;
    if (m <= -genus_) return -m;
    return values_[static_cast<size_t>(m + genus_)];
  }

  friend bool operator==(const StepFn&, const StepFn&) = default;

 private:
  long long genus_;
  std::vector<long long> values_;
};

// J of a single L-space knot: J(m) = I(m + g).
inline StepFn step_from_gaps(const GapSet& G) {
  long long g = G.genus();
  std::vector<long long> values;
  values.reserve(static_cast<size_t>(2 * g + 1));
  for (long long m = -g; m <= g; ++m) values.push_back(gap_function(G, m + g));
  return StepFn(g, std::move(values));
}

// Integer infimum convolution (a <> b)(m) = min_{i+j=m} a(i) + b(j).
// Outside [-g_a, g_a] the summand a is linear of slope 0 or -1 while b is
// nonincreasing, so moving i back toward the table never increases the sum;
// the minimum over all of Z is attained with i in [-g_a, g_a].  (A widened
// brute-force window pins this down in the tests.)
inline StepFn convolve(const StepFn& a, const StepFn& b) {
  long long g = a.genus() + b.genus();
  std::vector<long long> values;
  values.reserve(static_cast<size_t>(2 * g + 1));
  for (long long m = -g; m <= g; ++m) {
    long long best = a(-a.genus()) + b(m + a.genus());
    for (long long i = -a.genus() + 1; i <= a.genus(); ++i)
      best = std::min(best, a(i) + b(m - i));
    values.push_back(best);
  }
  return StepFn(g, std::move(values));
}

// J of a connected sum of L-space knots: leaves by gap counting, sums by
// infimum convolution.  Mirrors are rejected.
inline StepFn j_function(const KnotExpr& K) {
  std::vector<KnotExpr> leaves = leaf_factors(K);  // throws mirror_error on mirrors
  StepFn acc = step_from_gaps(leaf_gaps(leaves.front()));
  for (size_t i = 1; i < leaves.size(); ++i)
    acc = convolve(acc, step_from_gaps(leaf_gaps(leaves[i])));
  return acc;
}

// Continuous extension of J: constant on [k, k+1] when J(k+1) = J(k), the
// slope -1 interpolation when J(k+1) = J(k) - 1.  Asymptotic slopes -1, 0.
inline PLFn pl_extension(const StepFn& J) {
  long long g = J.genus();
  std::vector<PLPoint> bps;
  for (long long m = -g - 1; m <= g + 1; ++m) bps.push_back({Rat(m), Rat(J(m))});
  return PLFn::all_reals(std::move(bps), Rat(-1), Rat(0));
}

// d-invariants of q-surgery for q >= max(1, 2*genus - 1), enumerated by
// m in [-q/2, q/2) over the integers:
//   d = ((q - 2m)^2 - q) / (4q) - 2 J(m).
inline std::map<long long, Rat> d_invariants(const KnotExpr& K, long long q) {
  StepFn J = j_function(K);
  long long bound = std::max<long long>(1, 2 * J.genus() - 1);
  if (q < bound)
    throw std::domain_error("d-invariants: q must be at least max(1, 2*genus - 1) = " +
                            std::to_string(bound));
  std::map<long long, Rat> d;
  long long lo = -(q / 2);
  long long hi = (q - 1) / 2;
  for (long long m = lo; m <= hi; ++m) {
    Int qq(q), mm(m);
    Rat quadratic = make_rat((qq - 2 * mm) * (qq - 2 * mm) - qq, 4 * qq);
    d[m] = quadratic - 2 * J(m);
  }
  return d;
}

}  // namespace lsk
