#pragma once

// Knot expressions and the combinatorics tying the Alexander polynomial of an
// L-space knot to the gap set of its numerical semigroup.
//
// An L-space knot is encoded by any of three equivalent pieces of data:
//   - a strictly decreasing symmetric exponent sequence a_0 > ... > a_{2n}
//     (the support of the Alexander polynomial, signs alternating, a_0 = genus),
//   - the finite set of nonnegative gaps of a symmetric numerical semigroup,
//   - for torus knots, the pair (p, q).
// Expressions combine leaves with connected sum, integer multiples and
// mirrors; mirrors are representable but rejected by every consumer that is
// only defined for connected sums of L-space knots.

#include "lsk/rational.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsk {

// Raised when an operation defined only for connected sums of L-space knots
// receives an expression containing a mirror.
struct mirror_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The set of nonnegative integers missing from a numerical semigroup
// (the negative ray is implicit).  Size equals the genus; symmetry means
// that for 0 <= x <= 2g-1 exactly one of x, 2g-1-x is a gap.
class GapSet {
 public:
  GapSet() = default;  // empty set: the unknot

  explicit GapSet(std::vector<long long> gaps) : gaps_(std::move(gaps)) {
    std::sort(gaps_.begin(), gaps_.end());
    gaps_.erase(std::unique(gaps_.begin(), gaps_.end()), gaps_.end());
    if (!gaps_.empty() && gaps_.front() < 1)
      throw std::invalid_argument("GapSet: gaps must be positive (0 belongs to every semigroup)");
    long long g = genus();
    if (!gaps_.empty() && gaps_.back() != 2 * g - 1)
      throw std::invalid_argument(
          "GapSet: not symmetric (the largest gap must be 2*genus - 1)");
    for (long long x = 0; x < g; ++x)
      if (contains(x) == contains(2 * g - 1 - x))
        throw std::invalid_argument(
            "GapSet: not symmetric (exactly one of x, 2g-1-x must be a gap; fails at x = " +
            std::to_string(x) + ")");
  }

  const std::vector<long long>& gaps() const { return gaps_; }
  long long genus() const { return static_cast<long long>(gaps_.size()); }
  bool contains(long long x) const {
    return std::binary_search(gaps_.begin(), gaps_.end(), x);
  }

  friend bool operator==(const GapSet&, const GapSet&) = default;

 private:
  std::vector<long long> gaps_;
};

// Strictly decreasing a_0 > ... > a_{2n} with a_k = -a_{2n-k}; a_0 is the
// genus.  The unknot is {0}.
class ExponentSequence {
 public:
  explicit ExponentSequence(std::vector<long long> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty() || alphas_.size() % 2 == 0)
      throw std::invalid_argument("ExponentSequence: length must be odd");
    for (size_t i = 1; i < alphas_.size(); ++i)
      if (alphas_[i - 1] <= alphas_[i])
        throw std::invalid_argument("ExponentSequence: entries must be strictly decreasing");
    size_t n2 = alphas_.size() - 1;
    for (size_t i = 0; i <= n2; ++i)
      if (alphas_[i] != -alphas_[n2 - i])
        throw std::invalid_argument("ExponentSequence: not symmetric (a_k = -a_{2n-k} fails)");
    if (alphas_.front() < 0)
      throw std::invalid_argument("ExponentSequence: leading entry (the genus) must be >= 0");
  }

  const std::vector<long long>& alphas() const { return alphas_; }
  long long genus() const { return alphas_.front(); }

  friend bool operator==(const ExponentSequence&, const ExponentSequence&) = default;

 private:
  std::vector<long long> alphas_;
};

// Gaps of the numerical semigroup generated by `generators` (gcd must be 1),
// by reachability sieve.  The bound grows until a full run of min(generators)
// consecutive reachable values is seen, after which everything is reachable.
inline GapSet semigroup_gaps(std::vector<long long> generators) {
  if (generators.empty())
    throw std::invalid_argument("semigroup: at least one generator required");
  for (long long g : generators)
    if (g < 1) throw std::invalid_argument("semigroup: generators must be positive");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  long long d = 0;
  for (long long g : generators) d = std::gcd(d, g);
  if (d != 1)
    throw std::invalid_argument(
        "semigroup: generators must have gcd 1 (otherwise the gap set is infinite)");

  long long gmin = generators.front();
  long long bound = std::max<long long>(64, 2 * generators.back());
  for (;;) {
    std::vector<char> reach(static_cast<size_t>(bound) + 1, 0);
    reach[0] = 1;
    for (long long v = 1; v <= bound; ++v)
      for (long long g : generators)
        if (v >= g && reach[static_cast<size_t>(v - g)]) {
          reach[static_cast<size_t>(v)] = 1;
          break;
        }
    long long run = 0;
    for (long long v = 0; v <= bound; ++v) {
      run = reach[static_cast<size_t>(v)] ? run + 1 : 0;
      if (run == gmin) {
        long long conductor = v - gmin + 1;
        std::vector<long long> gaps;
        for (long long x = 1; x < conductor; ++x)
          if (!reach[static_cast<size_t>(x)]) gaps.push_back(x);
        return GapSet(std::move(gaps));
      }
    }
    bound *= 2;
    if (bound > (1LL << 24))
      throw std::invalid_argument("semigroup: conductor search bound exceeded");
  }
}

// The two directions of the factorization
//   t^g * Delta(t) = 1 + sum over maximal runs [a, b] of gaps of (t^{b+1} - t^a):
// runs of consecutive gaps, taken in decreasing order, give
//   a_{2j} = b_{j+1} + 1 - g,  a_{2j+1} = a_{j+1} - g,  a_{2n} = -g.
inline ExponentSequence gaps_to_exponents(const GapSet& G) {
  if (G.gaps().empty()) return ExponentSequence({0});
  long long g = G.genus();
  const auto& gaps = G.gaps();
  std::vector<std::pair<long long, long long>> runs;  // ascending [lo, hi]
  long long lo = gaps[0], hi = gaps[0];
  for (size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] == hi + 1) {
      hi = gaps[i];
    } else {
      runs.emplace_back(lo, hi);
      lo = hi = gaps[i];
    }
  }
  runs.emplace_back(lo, hi);
  std::vector<long long> alphas;
  alphas.reserve(2 * runs.size() + 1);
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    alphas.push_back(it->second + 1 - g);
    alphas.push_back(it->first - g);
  }
  alphas.push_back(-g);
  return ExponentSequence(std::move(alphas));
}

inline GapSet exponents_to_gaps(const ExponentSequence& e) {
  const auto& a = e.alphas();
  long long g = e.genus();
  size_t n = (a.size() - 1) / 2;
  std::vector<long long> gaps;
  for (size_t j = 0; j < n; ++j) {
    long long hi = g + a[2 * j] - 1;
    long long lo = g + a[2 * j + 1];
    if (lo < 1 || lo > hi)
      throw std::invalid_argument("ExponentSequence: not of L-space form (invalid gap run)");
    for (long long x = lo; x <= hi; ++x) gaps.push_back(x);
  }
  return GapSet(std::move(gaps));
}

// Exponent sequence of the torus knot T(p,q) by exact polynomial division of
//   (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)),
// normalized by t^{-g} with g = (p-1)(q-1)/2.  This route is independent of
// the semigroup sieve and is pinned equal to it by tests.
inline ExponentSequence torus_alexander(long long p, long long q) {
  if (!(2 <= p && p < q))
    throw std::invalid_argument("torus knot: requires 2 <= p < q");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("torus knot: p and q must be coprime");

  // numerator (t^{pq} - 1)(t - 1) = t^{pq+1} - t^{pq} - t + 1
  std::vector<long long> num(static_cast<size_t>(p * q + 2), 0);
  num[static_cast<size_t>(p * q + 1)] = 1;
  num[static_cast<size_t>(p * q)] = -1;
  num[1] = -1;
  num[0] = 1;
  // divisor (t^p - 1)(t^q - 1) = t^{p+q} - t^p - t^q + 1
  std::vector<long long> div(static_cast<size_t>(p + q + 1), 0);
  div[static_cast<size_t>(p + q)] = 1;
  div[static_cast<size_t>(p)] -= 1;
  div[static_cast<size_t>(q)] -= 1;
  div[0] += 1;

  std::vector<long long> quot(num.size() - div.size() + 1, 0);
  for (size_t i = num.size(); i-- >= div.size();) {
    long long c = num[i];
    if (c == 0) continue;
    size_t shift = i - (div.size() - 1);
    quot[shift] = c;
    for (size_t k = 0; k < div.size(); ++k) num[shift + k] -= c * div[k];
    if (i == div.size() - 1) break;
  }
  for (long long c : num)
    if (c != 0) throw std::logic_error("torus knot: polynomial division left a remainder");

  long long g = (p - 1) * (q - 1) / 2;
  std::vector<long long> alphas;
  long long expected_sign = 1;
  for (size_t i = quot.size(); i-- > 0;) {
    if (quot[i] == 0) continue;
    if (quot[i] != expected_sign)
      throw std::logic_error("torus knot: coefficients do not alternate in {+1,-1}");
    alphas.push_back(static_cast<long long>(i) - g);
    expected_sign = -expected_sign;
  }
  return ExponentSequence(std::move(alphas));
}

// Expression tree: leaves Torus / Semigroup / Exponents, nodes Sum / Scale /
// Mirror.  Values are immutable and cheap to copy.
class KnotExpr {
 public:
  enum class Kind { Torus, Semigroup, Exponents, Sum, Scale, Mirror };

  static KnotExpr torus(long long p, long long q) {
    torus_alexander(p, q);  // validates 2 <= p < q, gcd 1
    auto n = std::make_shared<Node>();
    n->kind = Kind::Torus;
    n->p = p;
    n->q = q;
    return KnotExpr(std::move(n));
  }

  static KnotExpr semigroup(std::vector<long long> gens) {
    semigroup_gaps(gens);  // validates positivity, gcd, symmetry of the gap set
    auto n = std::make_shared<Node>();
    n->kind = Kind::Semigroup;
    n->generators = std::move(gens);
    return KnotExpr(std::move(n));
  }

  static KnotExpr exponents(ExponentSequence e) {
    exponents_to_gaps(e);  // validates the L-space factorization
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exponents;
    n->exponents = std::move(e);
    return KnotExpr(std::move(n));
  }

  static KnotExpr unknot() { return exponents(ExponentSequence({0})); }

  static KnotExpr sum(std::vector<KnotExpr> parts) {
    if (parts.empty()) throw std::invalid_argument("knot sum: needs at least one summand");
    if (parts.size() == 1) return parts.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->children = std::move(parts);
    return KnotExpr(std::move(n));
  }

  static KnotExpr scaled(long long k, KnotExpr e) {
    if (k < 1) throw std::invalid_argument("knot multiple: factor must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Scale;
    n->factor = k;
    n->children.push_back(std::move(e));
    return KnotExpr(std::move(n));
  }

  static KnotExpr mirror(KnotExpr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mirror;
    n->children.push_back(std::move(e));
    return KnotExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is_leaf() const {
    return kind() == Kind::Torus || kind() == Kind::Semigroup || kind() == Kind::Exponents;
  }
  long long torus_p() const { return node_->p; }
  long long torus_q() const { return node_->q; }
  const std::vector<long long>& generators() const { return node_->generators; }
  const ExponentSequence& exponent_leaf() const { return *node_->exponents; }
  const std::vector<KnotExpr>& children() const { return node_->children; }
  long long factor() const { return node_->factor; }

 private:
  struct Node {
    Kind kind;
    long long p = 0, q = 0;
    std::vector<long long> generators;
    std::optional<ExponentSequence> exponents;
    std::vector<KnotExpr> children;
    long long factor = 0;
  };
  explicit KnotExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline bool is_mirror_free(const KnotExpr& e) {
  if (e.kind() == KnotExpr::Kind::Mirror) return false;
  for (const KnotExpr& c : e.children())
    if (!is_mirror_free(c)) return false;
  return true;
}

inline GapSet leaf_gaps(const KnotExpr& leaf) {
  switch (leaf.kind()) {
    case KnotExpr::Kind::Torus:
      return semigroup_gaps({leaf.torus_p(), leaf.torus_q()});
    case KnotExpr::Kind::Semigroup:
      return semigroup_gaps(leaf.generators());
    case KnotExpr::Kind::Exponents:
      return exponents_to_gaps(leaf.exponent_leaf());
    default:
      throw std::invalid_argument("leaf_gaps: not a leaf");
  }
}

inline ExponentSequence leaf_exponents(const KnotExpr& leaf) {
  switch (leaf.kind()) {
    case KnotExpr::Kind::Torus:
      return torus_alexander(leaf.torus_p(), leaf.torus_q());
    case KnotExpr::Kind::Semigroup:
      return gaps_to_exponents(semigroup_gaps(leaf.generators()));
    case KnotExpr::Kind::Exponents:
      return leaf.exponent_leaf();
    default:
      throw std::invalid_argument("leaf_exponents: not a leaf");
  }
}

// Leaves of a mirror-free expression, with Scale nodes expanded by repetition.
inline void collect_leaf_factors(const KnotExpr& e, std::vector<KnotExpr>& out) {
  switch (e.kind()) {
    case KnotExpr::Kind::Mirror:
      throw mirror_error(
          "mirror knots are unsupported here: this computation is defined only for "
          "connected sums of L-space knots");
    case KnotExpr::Kind::Sum:
      for (const KnotExpr& c : e.children()) collect_leaf_factors(c, out);
      return;
    case KnotExpr::Kind::Scale:
      for (long long i = 0; i < e.factor(); ++i) collect_leaf_factors(e.children()[0], out);
      return;
    default:
      out.push_back(e);
  }
}

inline std::vector<KnotExpr> leaf_factors(const KnotExpr& e) {
  std::vector<KnotExpr> out;
  collect_leaf_factors(e, out);
  return out;
}

inline long long total_genus(const KnotExpr& e) {
  long long g = 0;
  for (const KnotExpr& leaf : leaf_factors(e)) g += leaf_gaps(leaf).genus();
  return g;
}

inline std::string to_string(const KnotExpr& e) {
  switch (e.kind()) {
    case KnotExpr::Kind::Torus:
      return "torus(" + std::to_string(e.torus_p()) + "," + std::to_string(e.torus_q()) + ")";
    case KnotExpr::Kind::Semigroup: {
      std::string s = "semigroup(";
      for (size_t i = 0; i < e.generators().size(); ++i)
        s += (i ? "," : "") + std::to_string(e.generators()[i]);
      return s + ")";
    }
    case KnotExpr::Kind::Exponents: {
      const auto& a = e.exponent_leaf().alphas();
      if (a.size() == 1 && a[0] == 0) return "unknot";
      std::string s = "alex(";
      for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
      return s + ")";
    }
    case KnotExpr::Kind::Sum: {
      std::string s;
      for (size_t i = 0; i < e.children().size(); ++i)
        s += (i ? " + " : "") + to_string(e.children()[i]);
      return s;
    }
    case KnotExpr::Kind::Scale: {
      const KnotExpr& c = e.children()[0];
      std::string body = to_string(c);
      if (c.kind() == KnotExpr::Kind::Sum) body = "(" + body + ")";
      return std::to_string(e.factor()) + "*" + body;
    }
    case KnotExpr::Kind::Mirror: {
      const KnotExpr& c = e.children()[0];
      std::string body = to_string(c);
      if (c.kind() == KnotExpr::Kind::Sum) body = "(" + body + ")";
      return "-" + body;
    }
  }
  return "";
}

namespace detail {

// Recursive-descent parser for the expression grammar
//   expr := term ('+' term)*
//   term := INT '*' term | '-' term | atom
//   atom := torus(p,q) | semigroup(g1,...) | alex(a0,...) | unknot | '(' expr ')'
struct KnotParser {
  std::string_view s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("knot expression: " + what + " at position " +
                                std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected an integer");
    }
    return std::stoll(std::string(s.substr(start, pos - start)));
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(start, pos - start));
  }

  std::vector<long long> int_list() {
    expect('(');
    std::vector<long long> xs;
    xs.push_back(integer());
    while (eat(',')) xs.push_back(integer());
    expect(')');
    return xs;
  }

  KnotExpr atom() {
    skip_ws();
    if (eat('(')) {
      KnotExpr e = expr();
      expect(')');
      return e;
    }
    size_t at = pos;
    std::string name = ident();
    if (name == "unknot") return KnotExpr::unknot();
    if (name == "torus") {
      auto xs = int_list();
      if (xs.size() != 2) {
        pos = at;
        fail("torus takes exactly two arguments");
      }
      return KnotExpr::torus(xs[0], xs[1]);
    }
    if (name == "semigroup") return KnotExpr::semigroup(int_list());
    if (name == "alex") return KnotExpr::exponents(ExponentSequence(int_list()));
    pos = at;
    fail(name.empty() ? "expected a knot" : "unknown knot constructor '" + name + "'");
  }

  KnotExpr term() {
    skip_ws();
    if (eat('-')) return KnotExpr::mirror(term());
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      long long k = integer();
      expect('*');
      return KnotExpr::scaled(k, term());
    }
    return atom();
  }

  KnotExpr expr() {
    std::vector<KnotExpr> parts;
    parts.push_back(term());
    while (eat('+')) parts.push_back(term());
    return KnotExpr::sum(std::move(parts));
  }

  KnotExpr parse() {
    KnotExpr e = expr();
    skip_ws();
    if (pos != s.size()) fail("unexpected trailing input");
    return e;
  }
};

}  // namespace detail

inline KnotExpr parse_knot(std::string_view text) {
  detail::KnotParser p{text};
  return p.parse();
}

}  // namespace lsk
