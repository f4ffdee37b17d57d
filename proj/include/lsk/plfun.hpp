#pragma once

// Continuous piecewise-linear functions over exact rationals: evaluation,
// pointwise algebra, Legendre-Fenchel conjugation, shifts and infimum
// convolution.
//
// Every function is immutable and kept in a canonical form in which no
// breakpoint joins two segments of equal slope, so structural equality
// coincides with pointwise equality.  A function either lives on all of R
// (breakpoint interpolation extended by two asymptotic slopes, or a bare
// line when there are no breakpoints) or on a closed interval whose
// endpoints are the first and last breakpoints.

#include "lsk/rational.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lsk {

struct PLPoint {
  Rat x;
  Rat y;
  friend bool operator==(const PLPoint&, const PLPoint&) = default;
};

// Thrown when an infimum convolution would be -infinity somewhere.
struct unbounded_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PLFn {
 public:
  enum class Domain { AllReals, Interval };

  // f(x) = slope*x + intercept on all of R.
  static PLFn linear(Rat slope, Rat intercept) {
    PLFn f;
    f.domain_ = Domain::AllReals;
    f.slope_left_ = slope;
    f.slope_right_ = std::move(slope);
    f.intercept_ = std::move(intercept);
    return f;
  }

  static PLFn constant(Rat value) { return linear(Rat(0), std::move(value)); }

  // Breakpoint interpolation on all of R, extended by the asymptotic slopes
  // left of the first and right of the last breakpoint.
  static PLFn all_reals(std::vector<PLPoint> bps, Rat slope_left, Rat slope_right) {
    if (bps.empty())
      throw std::invalid_argument("PLFn: all_reals requires at least one breakpoint");
    PLFn f;
    f.domain_ = Domain::AllReals;
    f.bps_ = std::move(bps);
    f.slope_left_ = std::move(slope_left);
    f.slope_right_ = std::move(slope_right);
    f.canonicalize();
    return f;
  }

  // Breakpoint interpolation on the closed interval [first.x, last.x].
  static PLFn on_interval(std::vector<PLPoint> bps) {
    if (bps.empty())
      throw std::invalid_argument("PLFn: interval function requires a breakpoint");
    PLFn f;
    f.domain_ = Domain::Interval;
    f.bps_ = std::move(bps);
    f.canonicalize();
    return f;
  }

  Domain domain() const { return domain_; }
  bool is_linear() const { return domain_ == Domain::AllReals && bps_.empty(); }
  const std::vector<PLPoint>& breakpoints() const { return bps_; }

  Rat slope_left() const { return slope_left_; }
  Rat slope_right() const { return slope_right_; }
  Rat intercept() const { return intercept_; }  // meaningful only when linear

  Rat domain_lo() const { return bps_.front().x; }  // interval functions
  Rat domain_hi() const { return bps_.back().x; }

  Rat operator()(const Rat& x) const {
    if (is_linear()) return slope_left_ * x + intercept_;
    if (domain_ == Domain::Interval && (x < bps_.front().x || x > bps_.back().x))
      throw std::domain_error("PLFn: argument " + to_string(x) + " outside domain [" +
                              to_string(bps_.front().x) + ", " + to_string(bps_.back().x) + "]");
    if (x <= bps_.front().x)
      return bps_.front().y + slope_left_ * (x - bps_.front().x);
    if (x >= bps_.back().x)
      return bps_.back().y + slope_right_ * (x - bps_.back().x);
    auto it = std::upper_bound(bps_.begin(), bps_.end(), x,
                               [](const Rat& v, const PLPoint& p) { return v < p.x; });
    const PLPoint& b = *it;
    const PLPoint& a = *(it - 1);
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
  }

  friend bool operator==(const PLFn&, const PLFn&) = default;

 private:
  PLFn() = default;

  void canonicalize() {
    for (size_t i = 1; i < bps_.size(); ++i)
      if (!(bps_[i - 1].x < bps_[i].x))
        throw std::invalid_argument("PLFn: breakpoint x-coordinates must be strictly increasing");

    if (domain_ == Domain::Interval) {
      slope_left_ = 0;
      slope_right_ = 0;
      intercept_ = 0;
      if (bps_.size() <= 2) return;
      std::vector<PLPoint> kept;
      kept.push_back(bps_.front());
      for (size_t i = 1; i + 1 < bps_.size(); ++i) {
        Rat in = (bps_[i].y - bps_[i - 1].y) / (bps_[i].x - bps_[i - 1].x);
        Rat out = (bps_[i + 1].y - bps_[i].y) / (bps_[i + 1].x - bps_[i].x);
        if (in != out) kept.push_back(bps_[i]);
      }
      kept.push_back(bps_.back());
      bps_ = std::move(kept);
      return;
    }

    // All-reals: a breakpoint survives iff the slope changes across it.
    intercept_ = 0;
    std::vector<PLPoint> kept;
    for (size_t i = 0; i < bps_.size(); ++i) {
      Rat in = (i == 0) ? slope_left_
                        : (bps_[i].y - bps_[i - 1].y) / (bps_[i].x - bps_[i - 1].x);
      Rat out = (i + 1 == bps_.size())
                    ? slope_right_
                    : (bps_[i + 1].y - bps_[i].y) / (bps_[i + 1].x - bps_[i].x);
      if (in != out) kept.push_back(bps_[i]);
    }
    if (kept.empty()) {
      // Globally linear; the slopes agree through every breakpoint.
      intercept_ = bps_.front().y - slope_left_ * bps_.front().x;
      bps_.clear();
      slope_right_ = slope_left_;
      return;
    }
    bps_ = std::move(kept);
  }

  Domain domain_ = Domain::AllReals;
  std::vector<PLPoint> bps_;
  Rat slope_left_{0};
  Rat slope_right_{0};
  Rat intercept_{0};  // meaningful only when bps_ is empty
};

namespace detail {

struct Line {
  Rat slope;
  Rat offset;
  Rat operator()(const Rat& t) const { return slope * t + offset; }
};

// t-coordinate where two lines of distinct slope meet.
inline Rat meet(const Line& a, const Line& b) {
  return (b.offset - a.offset) / (a.slope - b.slope);
}

struct Hull {
  std::vector<Line> lines;    // strictly increasing slope
  std::vector<Rat> vertices;  // meets of consecutive lines, strictly increasing
};

// Upper hull of a finite family of lines.  Line i of the result is the
// pointwise maximum on [vertices[i-1], vertices[i]] (with infinite ends).
inline Hull upper_hull(std::vector<Line> lines) {
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.slope < b.slope || (a.slope == b.slope && a.offset < b.offset);
  });
  std::vector<Line> distinct;
  for (Line& ln : lines) {
    if (!distinct.empty() && distinct.back().slope == ln.slope)
      distinct.back() = ln;  // equal slopes: only the largest offset matters
    else
      distinct.push_back(std::move(ln));
  }
  Hull h;
  for (const Line& ln : distinct) {
    while (!h.lines.empty()) {
      Rat t = meet(ln, h.lines.back());
      if (!h.vertices.empty() && t <= h.vertices.back()) {
        h.lines.pop_back();
        h.vertices.pop_back();
        continue;
      }
      h.vertices.push_back(std::move(t));
      break;
    }
    h.lines.push_back(ln);
  }
  return h;
}

inline Rat hull_value(const Hull& h, const Rat& t) {
  size_t i = std::upper_bound(h.vertices.begin(), h.vertices.end(), t) - h.vertices.begin();
  if (i > 0 && h.vertices[i - 1] == t) --i;  // either adjacent line works at a vertex
  return h.lines[i](t);
}

// The envelope as a function on all of R.
inline PLFn envelope_all_reals(const Hull& h) {
  if (h.lines.size() == 1) return PLFn::linear(h.lines[0].slope, h.lines[0].offset);
  std::vector<PLPoint> bps;
  bps.reserve(h.vertices.size());
  for (size_t i = 0; i < h.vertices.size(); ++i)
    bps.push_back({h.vertices[i], h.lines[i](h.vertices[i])});
  return PLFn::all_reals(std::move(bps), h.lines.front().slope, h.lines.back().slope);
}

// The envelope restricted to [lo, hi] (lo == hi yields a single point).
inline PLFn envelope_interval(const Hull& h, const Rat& lo, const Rat& hi) {
  std::vector<PLPoint> bps;
  bps.push_back({lo, hull_value(h, lo)});
  for (const Rat& v : h.vertices)
    if (lo < v && v < hi) bps.push_back({v, hull_value(h, v)});
  if (hi > lo) bps.push_back({hi, hull_value(h, hi)});
  return PLFn::on_interval(std::move(bps));
}

// Merged breakpoint x-coordinates of two functions, clipped to [lo, hi]
// when given, with the endpoints included.
inline std::vector<Rat> merged_knots(const PLFn& f, const PLFn& g,
                                     const std::optional<std::pair<Rat, Rat>>& clip) {
  std::vector<Rat> xs;
  auto take = [&](const PLFn& h) {
    for (const PLPoint& p : h.breakpoints()) {
      if (clip && (p.x < clip->first || p.x > clip->second)) continue;
      xs.push_back(p.x);
    }
  };
  take(f);
  take(g);
  if (clip) {
    xs.push_back(clip->first);
    xs.push_back(clip->second);
  }
  if (xs.empty()) xs.push_back(Rat(0));  // two bare lines
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Intersection of the two domains: nullopt encodes all of R.
inline std::optional<std::pair<Rat, Rat>> domain_intersection(const PLFn& f, const PLFn& g) {
  bool fb = f.domain() == PLFn::Domain::Interval;
  bool gb = g.domain() == PLFn::Domain::Interval;
  if (!fb && !gb) return std::nullopt;
  Rat lo = fb ? f.domain_lo() : g.domain_lo();
  Rat hi = fb ? f.domain_hi() : g.domain_hi();
  if (fb && gb) {
    lo = std::max(f.domain_lo(), g.domain_lo());
    hi = std::min(f.domain_hi(), g.domain_hi());
  }
  if (lo > hi) throw std::domain_error("PLFn: disjoint domains");
  return std::make_pair(lo, hi);
}

}  // namespace detail

inline PLFn add(const PLFn& f, const PLFn& g) {
  if (f.is_linear() && g.is_linear())
    return PLFn::linear(f.slope_left() + g.slope_left(), f.intercept() + g.intercept());
  auto clip = detail::domain_intersection(f, g);
  std::vector<Rat> xs = detail::merged_knots(f, g, clip);
  std::vector<PLPoint> bps;
  bps.reserve(xs.size());
  for (const Rat& x : xs) bps.push_back({x, f(x) + g(x)});
  if (clip) return PLFn::on_interval(std::move(bps));
  return PLFn::all_reals(std::move(bps), f.slope_left() + g.slope_left(),
                         f.slope_right() + g.slope_right());
}

inline PLFn scale(const PLFn& f, const Rat& c) {
  if (f.is_linear()) return PLFn::linear(f.slope_left() * c, f.intercept() * c);
  std::vector<PLPoint> bps = f.breakpoints();
  for (PLPoint& p : bps) p.y *= c;
  if (f.domain() == PLFn::Domain::Interval) return PLFn::on_interval(std::move(bps));
  return PLFn::all_reals(std::move(bps), f.slope_left() * c, f.slope_right() * c);
}

inline PLFn negate(const PLFn& f) { return scale(f, Rat(-1)); }

// f(x) + c*x.
inline PLFn add_linear(const PLFn& f, const Rat& c) {
  if (f.is_linear()) return PLFn::linear(f.slope_left() + c, f.intercept());
  std::vector<PLPoint> bps = f.breakpoints();
  for (PLPoint& p : bps) p.y += c * p.x;
  if (f.domain() == PLFn::Domain::Interval) return PLFn::on_interval(std::move(bps));
  return PLFn::all_reals(std::move(bps), f.slope_left() + c, f.slope_right() + c);
}

// x -> f(-x).
inline PLFn reflect(const PLFn& f) {
  if (f.is_linear()) return PLFn::linear(-f.slope_left(), f.intercept());
  std::vector<PLPoint> bps(f.breakpoints().rbegin(), f.breakpoints().rend());
  for (PLPoint& p : bps) p.x = -p.x;
  if (f.domain() == PLFn::Domain::Interval) return PLFn::on_interval(std::move(bps));
  return PLFn::all_reals(std::move(bps), -f.slope_right(), -f.slope_left());
}

// The shifted function x -> f(x + y).
inline PLFn shift(const PLFn& f, const Rat& y) {
  if (f.is_linear()) return PLFn::linear(f.slope_left(), f.intercept() + f.slope_left() * y);
  std::vector<PLPoint> bps = f.breakpoints();
  for (PLPoint& p : bps) p.x -= y;
  if (f.domain() == PLFn::Domain::Interval) return PLFn::on_interval(std::move(bps));
  return PLFn::all_reals(std::move(bps), f.slope_left(), f.slope_right());
}

// Restriction to [lo, hi], which must lie inside the domain of f.
inline PLFn restrict_to(const PLFn& f, const Rat& lo, const Rat& hi) {
  if (lo > hi) throw std::domain_error("PLFn: empty restriction interval");
  if (f.domain() == PLFn::Domain::Interval && (lo < f.domain_lo() || hi > f.domain_hi()))
    throw std::domain_error("PLFn: restriction outside domain");
  std::vector<PLPoint> bps;
  bps.push_back({lo, f(lo)});
  for (const PLPoint& p : f.breakpoints())
    if (lo < p.x && p.x < hi) bps.push_back(p);
  if (hi > lo) bps.push_back({hi, f(hi)});
  return PLFn::on_interval(std::move(bps));
}

enum class PartialOrder { Equal, LessEqual, GreaterEqual, Incomparable };

// Pointwise comparison over the intersection of the two domains, decided
// exactly at the merged breakpoints plus the asymptotic slopes: between
// consecutive knots, and beyond the extreme ones, both functions are linear.
inline PartialOrder compare(const PLFn& f, const PLFn& g) {
  auto clip = detail::domain_intersection(f, g);
  std::vector<Rat> xs = detail::merged_knots(f, g, clip);
  bool le = true, ge = true;
  for (const Rat& x : xs) {
    Rat d = f(x) - g(x);
    if (d > 0) le = false;
    if (d < 0) ge = false;
  }
  if (!clip) {
    Rat dl = f.slope_left() - g.slope_left();
    if (dl < 0) le = false;  // f - g grows toward -infinity on the left
    if (dl > 0) ge = false;
    Rat dr = f.slope_right() - g.slope_right();
    if (dr > 0) le = false;
    if (dr < 0) ge = false;
  }
  if (le && ge) return PartialOrder::Equal;
  if (le) return PartialOrder::LessEqual;
  if (ge) return PartialOrder::GreaterEqual;
  return PartialOrder::Incomparable;
}

inline bool is_convex(const PLFn& f) {
  if (f.is_linear()) return true;
  const auto& bps = f.breakpoints();
  std::vector<Rat> slopes;
  if (f.domain() == PLFn::Domain::AllReals) slopes.push_back(f.slope_left());
  for (size_t i = 1; i < bps.size(); ++i)
    slopes.push_back((bps[i].y - bps[i - 1].y) / (bps[i].x - bps[i - 1].x));
  if (f.domain() == PLFn::Domain::AllReals) slopes.push_back(f.slope_right());
  for (size_t i = 1; i < slopes.size(); ++i)
    if (slopes[i] < slopes[i - 1]) return false;
  return true;
}

// Legendre-Fenchel conjugate f*(t) = sup_x (t*x - f(x)).
//
// Implementation lemma (piecewise-linear functions, proved by the slope signs
// of x -> t*x - f(x) on the two rays): whenever the supremum is finite it is
// attained at a breakpoint of f, so f* is the upper envelope of the lines
// t -> t*x_i - y_i.  For a function on all of R the supremum is finite
// exactly for t in [slope_left, slope_right]; for a function on a compact
// interval it is finite for every t.  For non-convex f the result therefore
// equals the conjugate of the lower convex hull of f.
inline PLFn conjugate(const PLFn& f) {
  if (f.is_linear())
    // sup_x (t - s)x - c: finite only at t = s.
    return PLFn::on_interval({{f.slope_left(), -f.intercept()}});
  std::vector<detail::Line> lines;
  lines.reserve(f.breakpoints().size());
  for (const PLPoint& p : f.breakpoints()) lines.push_back({p.x, -p.y});
  detail::Hull h = detail::upper_hull(std::move(lines));
  if (f.domain() == PLFn::Domain::Interval) return detail::envelope_all_reals(h);
  if (f.slope_left() > f.slope_right())
    throw std::domain_error("PLFn: conjugate undefined, no finite values (slope_left > slope_right)");
  return detail::envelope_interval(h, f.slope_left(), f.slope_right());
}

namespace detail {

// Vertex of a convex all-reals function active for tilt t, i.e. the argmin
// of f(x) - t*x, for t strictly between two consecutive slopes of f.
inline const PLPoint& active_vertex(const PLFn& f, const Rat& t) {
  const auto& bps = f.breakpoints();
  size_t i = 0;
  while (i + 1 < bps.size()) {
    Rat s = (bps[i + 1].y - bps[i].y) / (bps[i + 1].x - bps[i].x);
    if (t < s) break;
    ++i;
  }
  return bps[i];
}

inline Rat min_tilted(const PLFn& f, const Rat& t) {  // min_x f(x) - t*x
  if (f.is_linear()) return f.intercept();            // only called when slope == t
  Rat best = f.breakpoints().front().y - t * f.breakpoints().front().x;
  for (const PLPoint& p : f.breakpoints()) best = std::min(best, p.y - t * p.x);
  return best;
}

}  // namespace detail

// Infimum convolution (f <> g)(m) = inf_{i+j=m} f(i) + g(j) for convex
// piecewise-linear functions on all of R.  The epigraph of the result is the
// Minkowski sum of the two epigraphs: its slope segments are the segments of
// f and g merged in sorted slope order, clipped to the common slope range.
// The infimum is finite everywhere iff the slope ranges overlap.
inline PLFn inf_convolve(const PLFn& f, const PLFn& g) {
  if (f.domain() == PLFn::Domain::Interval || g.domain() == PLFn::Domain::Interval)
    throw std::invalid_argument("PLFn: inf_convolve requires functions on all of R");
  if (!is_convex(f) || !is_convex(g))
    throw std::invalid_argument("PLFn: inf_convolve requires convex functions");
  Rat t_lo = std::max(f.slope_left(), g.slope_left());
  Rat t_hi = std::min(f.slope_right(), g.slope_right());
  if (t_lo > t_hi)
    throw unbounded_error("PLFn: infimum convolution is -infinity (slope ranges do not overlap)");

  if (t_lo == t_hi)
    return PLFn::linear(t_lo, detail::min_tilted(f, t_lo) + detail::min_tilted(g, t_lo));

  // Strictly overlapping ranges: both functions have breakpoints.  The
  // result has one vertex per gap between consecutive merged slopes; any
  // tilt strictly inside the gap exposes a unique vertex pair.
  std::vector<Rat> ts{t_lo, t_hi};
  auto collect = [&](const PLFn& h) {
    const auto& bps = h.breakpoints();
    for (size_t i = 1; i < bps.size(); ++i) {
      Rat s = (bps[i].y - bps[i - 1].y) / (bps[i].x - bps[i - 1].x);
      if (t_lo < s && s < t_hi) ts.push_back(s);
    }
  };
  collect(f);
  collect(g);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<PLPoint> bps;
  bps.reserve(ts.size() - 1);
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    Rat mid = (ts[i] + ts[i + 1]) / 2;
    const PLPoint& a = detail::active_vertex(f, mid);
    const PLPoint& b = detail::active_vertex(g, mid);
    bps.push_back({a.x + b.x, a.y + b.y});
  }
  return PLFn::all_reals(std::move(bps), t_lo, t_hi);
}

inline std::string to_string(const PLFn& f) {
  std::string s;
  if (f.is_linear()) {
    s = "line slope " + to_string(f.slope_left()) + " intercept " + to_string(f.intercept());
    return s;
  }
  if (f.domain() == PLFn::Domain::Interval)
    s = "on [" + to_string(f.domain_lo()) + ", " + to_string(f.domain_hi()) + "]:";
  else
    s = "slopes (" + to_string(f.slope_left()) + ", " + to_string(f.slope_right()) + "):";
  for (const PLPoint& p : f.breakpoints())
    s += " (" + to_string(p.x) + ", " + to_string(p.y) + ")";
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const PLFn& f) { return os << to_string(f); }

}  // namespace lsk
