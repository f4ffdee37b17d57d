#pragma once

// The Upsilon function on [0, 2], computed by three independent routes:
//   - the inductive max-formula over the exponent sequence of a leaf,
//     extended to expressions by additivity, negation and multiples
//     (the reference route, defined for every expression),
//   - the min-form -min_i (t a_{2i} + 2 J(a_{2i})) per leaf,
//   - the Legendre transform of x -> 2 J(-x) (defined for mirror-free
//     expressions; this is the route under test, never substituted).

#include "lsk/gaps.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/plfun.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lsk {

// A continuous piecewise-linear function on the closed interval [0, 2].
class UpsilonFn {
 public:
  explicit UpsilonFn(PLFn f) : fn_(std::move(f)) {
    if (fn_.domain() != PLFn::Domain::Interval || fn_.domain_lo() != 0 || fn_.domain_hi() != 2)
      throw std::invalid_argument("UpsilonFn: domain must be [0, 2]");
  }

  const PLFn& pl() const { return fn_; }
  Rat operator()(const Rat& t) const { return fn_(t); }

  friend bool operator==(const UpsilonFn&, const UpsilonFn&) = default;

 private:
  PLFn fn_;
};

// Intercepts of the inductive recursion
//   m_0 = 0,  m_{2j} = m_{2j-1} - 1,  m_{2j+1} = m_{2j} - 2(a_{2j} - a_{2j+1}) + 1.
inline std::vector<long long> recursion_intercepts(const ExponentSequence& e) {
  const auto& a = e.alphas();
  std::vector<long long> m(a.size());
  m[0] = 0;
  for (size_t k = 1; k < a.size(); ++k)
    m[k] = (k % 2 == 1) ? m[k - 1] - 2 * (a[k - 1] - a[k]) + 1 : m[k - 1] - 1;
  return m;
}

// Upsilon(t) = max over even indices of (m_{2i} - t a_{2i}) on [0, 2].
inline UpsilonFn upsilon_recursion(const ExponentSequence& e) {
  const auto& a = e.alphas();
  std::vector<long long> m = recursion_intercepts(e);
  std::vector<detail::Line> lines;
  for (size_t k = 0; k < a.size(); k += 2) lines.push_back({Rat(-a[k]), Rat(m[k])});
  detail::Hull h = detail::upper_hull(std::move(lines));
  return UpsilonFn(detail::envelope_interval(h, Rat(0), Rat(2)));
}

// Upsilon(t) = -min over even indices of (t a_{2i} + 2 J(a_{2i})).
inline UpsilonFn upsilon_minform(const ExponentSequence& e, const StepFn& J) {
  if (J.genus() != e.genus())
    throw std::invalid_argument("upsilon_minform: exponent sequence and J have different genus");
  const auto& a = e.alphas();
  std::vector<detail::Line> lines;
  for (size_t k = 0; k < a.size(); k += 2) lines.push_back({Rat(-a[k]), Rat(-2 * J(a[k]))});
  detail::Hull h = detail::upper_hull(std::move(lines));
  return UpsilonFn(detail::envelope_interval(h, Rat(0), Rat(2)));
}

// Upsilon as the Legendre transform of x -> 2 J(-x).  The extension of J has
// asymptotic slopes (-1, 0), so the reflected and doubled function has slopes
// (0, 2) and its conjugate lives exactly on [0, 2].
inline UpsilonFn upsilon_legendre(const StepFn& J) {
  PLFn f = scale(reflect(pl_extension(J)), Rat(2));
  return UpsilonFn(conjugate(f));
}

// Reference route: leaves by the inductive recursion, sums by addition,
// multiples by scaling, mirrors by negation.
inline UpsilonFn upsilon_of(const KnotExpr& K) {
  switch (K.kind()) {
    case KnotExpr::Kind::Sum: {
      PLFn acc = upsilon_of(K.children().front()).pl();
      for (size_t i = 1; i < K.children().size(); ++i)
        acc = add(acc, upsilon_of(K.children()[i]).pl());
      return UpsilonFn(std::move(acc));
    }
    case KnotExpr::Kind::Scale:
      return UpsilonFn(scale(upsilon_of(K.children()[0]).pl(), Rat(K.factor())));
    case KnotExpr::Kind::Mirror:
      return UpsilonFn(negate(upsilon_of(K.children()[0]).pl()));
    default:
      return upsilon_recursion(leaf_exponents(K));
  }
}

struct LegendreReport {
  UpsilonFn reference;  // recursion + additivity
  UpsilonFn minform;    // per-leaf min-form, summed
  UpsilonFn legendre;   // conjugate of 2 J(-x)
  bool equal = false;
  std::optional<Rat> witness;  // first t where some pair of routes differs
};

// Computes all three routes for a mirror-free expression and reports exact
// equality; a failed verdict is a successful report.
inline LegendreReport verify_legendre(const KnotExpr& K) {
  std::vector<KnotExpr> leaves = leaf_factors(K);  // rejects mirrors

  UpsilonFn reference = upsilon_of(K);

  PLFn minform_acc = PLFn::on_interval({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}});
  for (const KnotExpr& leaf : leaves) {
    ExponentSequence e = leaf_exponents(leaf);
    StepFn J = step_from_gaps(leaf_gaps(leaf));
    minform_acc = add(minform_acc, upsilon_minform(e, J).pl());
  }
  UpsilonFn minform{std::move(minform_acc)};

  UpsilonFn legendre = upsilon_legendre(j_function(K));

  LegendreReport report{reference, minform, legendre, false, {}};
  report.equal = reference == minform && reference == legendre;
  if (!report.equal) {
    std::vector<Rat> ts;
    for (const UpsilonFn* u : {&reference, &minform, &legendre})
      for (const PLPoint& p : u->pl().breakpoints()) ts.push_back(p.x);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const Rat& t : ts) {
      Rat a = reference(t), b = minform(t), c = legendre(t);
      if (a != b || a != c) {
        report.witness = t;
        break;
      }
    }
  }
  return report;
}

}  // namespace lsk
