#pragma once

// Crossing-change obstructions and Gordian-distance lower bounds.
//
// If K1 is obtained from K0 by changing p positive and n negative crossings,
// then for every integer m and every t in [0, 2]:
//   J_{K0}(m + p) <= J_{K1}(m) <= J_{K0}(m - n)
//   Upsilon_{K0}(t) - n t <= Upsilon_{K1}(t) <= Upsilon_{K0}(t) + p t
// A budget that violates either chain is excluded.  These are obstructions
// only: a non-excluded distance is a lower bound, never a realization.

#include "lsk/gaps.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/plfun.hpp"
#include "lsk/upsilon.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lsk {

struct CrossingBudget {
  long long positive = 0;  // positive crossings changed
  long long negative = 0;

  CrossingBudget(long long p, long long n) : positive(p), negative(n) {
    if (p < 0 || n < 0) throw std::invalid_argument("crossing budget: counts must be >= 0");
  }
  long long total() const { return positive + negative; }
};

enum class ObstructionMethod { JFunction, Upsilon };

struct ObstructionReport {
  ObstructionMethod method;
  CrossingBudget budget;
  bool admissible = true;
  std::optional<long long> witness_m;  // J method: first m violating either inequality
  std::optional<Rat> witness_t;        // Upsilon method: breakpoint where a bound fails
};

// J obstruction, checked for all m: explicitly on the window
// [-(g0+g1+d)-1, (g0+g1+d)+1], symbolically outside, where both sides are
// exactly linear (J(m) = 0 on the right, J(m) = -m on the left).
inline ObstructionReport check_j_budget(const KnotExpr& from, const KnotExpr& to,
                                        const CrossingBudget& b) {
  StepFn j0 = j_function(from);
  StepFn j1 = j_function(to);
  ObstructionReport report{ObstructionMethod::JFunction, b, true, {}, {}};

  long long w = j0.genus() + j1.genus() + b.total() + 1;
  for (long long m = -w; m <= w; ++m) {
    if (j0(m + b.positive) > j1(m) || j1(m) > j0(m - b.negative)) {
      report.admissible = false;
      report.witness_m = m;
      return report;
    }
  }
  // m -> +inf: all three values are 0.  m -> -inf: the chain reads
  // -(m(+p)) <= -m <= -(m - n), i.e. -p <= 0 <= n; the slopes all equal -1.
  if (-b.positive > 0 || 0 > b.negative) {
    report.admissible = false;
    report.witness_m = -(w + 1);
  }
  return report;
}

// Upsilon obstruction via exact piecewise-linear comparison on [0, 2].
// Mirrors are allowed; the reference route serves them.
inline ObstructionReport check_upsilon_budget(const KnotExpr& from, const KnotExpr& to,
                                              const CrossingBudget& b) {
  PLFn u0 = upsilon_of(from).pl();
  PLFn u1 = upsilon_of(to).pl();
  PLFn lower = add_linear(u0, Rat(-b.negative));
  PLFn upper = add_linear(u0, Rat(b.positive));
  ObstructionReport report{ObstructionMethod::Upsilon, b, true, {}, {}};

  auto le = [](const PLFn& f, const PLFn& g) {
    PartialOrder o = compare(f, g);
    return o == PartialOrder::Equal || o == PartialOrder::LessEqual;
  };
  if (le(lower, u1) && le(u1, upper)) return report;

  report.admissible = false;
  std::vector<Rat> ts;
  for (const PLFn* f : {&lower, &u1, &upper})
    for (const PLPoint& p : f->breakpoints()) ts.push_back(p.x);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (const Rat& t : ts) {
    if (lower(t) > u1(t) || u1(t) > upper(t)) {
      report.witness_t = t;
      break;
    }
  }
  return report;
}

struct GordianBounds {
  long long max_d = 0;
  std::optional<long long> j_bound;        // smallest d not excluded; nullopt: > max_d
  std::optional<long long> upsilon_bound;
};

// For each method, d is excluded iff every split p + n = d fails the check.
inline GordianBounds gordian_lower_bound(const KnotExpr& from, const KnotExpr& to,
                                         long long max_d) {
  if (max_d < 0) throw std::invalid_argument("gordian: max_d must be >= 0");
  GordianBounds bounds{max_d, {}, {}};
  for (long long d = 0; d <= max_d && !bounds.j_bound; ++d)
    for (long long p = 0; p <= d; ++p)
      if (check_j_budget(from, to, CrossingBudget(p, d - p)).admissible) {
        bounds.j_bound = d;
        break;
      }
  for (long long d = 0; d <= max_d && !bounds.upsilon_bound; ++d)
    for (long long p = 0; p <= d; ++p)
      if (check_upsilon_budget(from, to, CrossingBudget(p, d - p)).admissible) {
        bounds.upsilon_bound = d;
        break;
      }
  return bounds;
}

}  // namespace lsk
