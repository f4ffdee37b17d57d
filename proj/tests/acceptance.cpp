// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (exact rational equality throughout) and prints one PASS/FAIL line per
// criterion.  The exit code is the number of failed criteria.

#include "lsk/cli.hpp"
#include "lsk/gaps.hpp"
#include "lsk/io.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/obstruct.hpp"
#include "lsk/plfun.hpp"
#include "lsk/upsilon.hpp"

#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace lsk;
using lsk::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

// Runs a CLI invocation in-process and returns stdout (empty on error).
std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out, err;
  if (cli::run(std::move(args), out, err) != 0) return {};
  return out.str();
}

std::map<long long, long long> parse_int_csv(const std::string& text) {
  std::map<long long, long long> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    size_t comma = line.find(',');
    if (comma == std::string::npos) continue;
    rows[std::stoll(line.substr(0, comma))] = std::stoll(line.substr(comma + 1));
  }
  return rows;
}

// ---- criterion 1: the published gap-function tables, byte-exact values ----

Outcome criterion_example_tables() {
  Outcome o;
  auto check_table = [&](const std::string& knot, const std::string& range,
                         const std::vector<std::pair<long long, long long>>& cells) {
    std::string csv = cli_out({"gaps", "--knot", knot, "--range", range, "--format", "csv"});
    o.require(!csv.empty(), knot + ": gaps command failed");
    if (csv.empty()) return;
    auto rows = parse_int_csv(csv);
    for (auto [m, expected] : cells) {
      auto it = rows.find(m);
      if (it == rows.end()) {
        o.require(false, knot + ": missing row m=" + std::to_string(m));
        continue;
      }
      o.require(it->second == expected,
                knot + ": I(" + std::to_string(m) + ") = " + std::to_string(it->second) +
                    ", pinned value " + std::to_string(expected) +
                    " contradicts the pinned gap set");
    }
  };
  check_table("torus(6,7)", "-2..30",
              {{29, 1}, {28, 2}, {23, 3}, {22, 3}, {21, 4}, {17, 4}, {16, 5}, {15, 6},
               {1, 15}, {0, 15}, {-1, 16}, {-2, 17}, {30, 0}});
  check_table("torus(4,9)", "-2..24",
              {{23, 1}, {19, 2}, {18, 2}, {16, 2}, {15, 3}, {14, 4}, {11, 5}, {10, 6},
               {1, 12}, {0, 12}, {-1, 13}, {-2, 14}, {24, 0}});
  return o;
}

// ---- criterion 2: the crossing-change example, exact PL equality ----

Outcome criterion_crossing_example() {
  Outcome o;
  UpsilonFn u67 = upsilon_of(parse_knot("torus(6,7)"));
  UpsilonFn u49 = upsilon_of(parse_knot("torus(4,9)"));
  PLFn delta = restrict_to(add(u49.pl(), negate(u67.pl())), Rat(0), Rat(1));
  PLFn pinned = PLFn::on_interval({{Rat(0), Rat(0)},
                                   {Rat(1, 3), Rat(1)},       // 3t up to 1/3
                                   {Rat(1, 2), Rat(1, 2)},    // -3t + 2
                                   {Rat(2, 3), Rat(4, 3)},    // 5t - 2
                                   {Rat(1), Rat(1)}});        // -t + 2
  o.require(delta == pinned, "delta(t) differs from the pinned piecewise form");

  PLFn zero01 = PLFn::on_interval({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
  PLFn bound = restrict_to(PLFn::linear(Rat(3), Rat(0)), Rat(0), Rat(1));
  o.require(compare(zero01, delta) != PartialOrder::Incomparable &&
                compare(zero01, delta) != PartialOrder::GreaterEqual,
            "0 <= delta fails");
  o.require(compare(delta, bound) != PartialOrder::Incomparable &&
                compare(delta, bound) != PartialOrder::GreaterEqual,
            "delta <= 3t fails");

  o.require(j_function(parse_knot("torus(6,7)"))(7) == 3, "J_{T(6,7)}(7) != 3");
  o.require(j_function(parse_knot("torus(4,9)"))(4) == 2, "J_{T(4,9)}(4) != 2");

  std::string g = cli_out({"gordian", "--from", "torus(6,7)", "--to", "torus(4,9)",
                           "--max-d", "6"});
  o.require(g.find("J lower bound: 4") != std::string::npos, "gordian J bound != 4");
  o.require(g.find("Upsilon lower bound: 3") != std::string::npos, "gordian upsilon bound != 3");
  return o;
}

// ---- criterion 3: three-route equality over the corpus ----

Outcome criterion_legendre_mechanization() {
  Outcome o;
  for (auto [p, q] : testing::torus_corpus(200)) {
    LegendreReport r = verify_legendre(KnotExpr::torus(p, q));
    o.require(r.equal, "routes differ for torus(" + std::to_string(p) + "," +
                           std::to_string(q) + ")");
  }
  Rng rng(31337);
  for (int i = 0; i < 100; ++i) {
    KnotExpr K = testing::random_sum(rng, 4);
    LegendreReport r = verify_legendre(K);
    o.require(r.equal, "routes differ for " + to_string(K));
  }
  return o;
}

// ---- criterion 4: the axiom suite over the same corpus ----

Outcome criterion_axioms() {
  Outcome o;
  std::vector<KnotExpr> corpus;
  for (auto [p, q] : testing::torus_corpus(200)) corpus.push_back(KnotExpr::torus(p, q));
  Rng rng(31337);
  for (int i = 0; i < 100; ++i) corpus.push_back(testing::random_sum(rng, 4));

  for (const KnotExpr& K : corpus) {
    std::string name = to_string(K);
    UpsilonFn U = upsilon_of(K);
    const PLFn& f = U.pl();
    o.require(U(Rat(0)) == 0 && U(Rat(2)) == 0, name + ": endpoint values");
    o.require(shift(reflect(f), Rat(-2)) == f, name + ": symmetry");
    long long G = total_genus(K);
    const auto& bps = f.breakpoints();
    o.require(bps.size() >= 2 &&
                  (bps[1].y - bps[0].y) / (bps[1].x - bps[0].x) == Rat(-G),
              name + ": first-segment slope");
    bool bounded = true;
    for (const PLPoint& p : bps)
      if (p.x <= 1 && abs(p.y) > p.x * G) bounded = false;
    o.require(bounded, name + ": slice-genus bound");
    o.require(is_convex(f), name + ": convexity");
    o.require(upsilon_of(KnotExpr::mirror(K)).pl() == negate(f), name + ": mirror");
  }
  return o;
}

// ---- criterion 5: conjugation lemmas on randomized functions ----

Outcome criterion_conjugation_lemmas() {
  Outcome o;
  Rng rng(271828);
  for (int i = 0; i < 500; ++i) {
    PLFn f = testing::random_plfn(rng);
    o.require(is_convex(conjugate(f)), "conjugate not convex");

    PLFn g = add(f, testing::random_nonneg_plfn(rng));
    PartialOrder rev = compare(conjugate(g), conjugate(f));
    o.require(rev == PartialOrder::Equal || rev == PartialOrder::LessEqual,
              "order reversal fails");

    Rat y = testing::rand_rat(rng, -4, 4);
    o.require(conjugate(shift(f, y)) == add_linear(conjugate(f), -y), "shift identity fails");

    PLFn c1 = testing::random_convex_plfn(rng);
    PLFn c2 = testing::random_convex_plfn(rng);
    o.require(conjugate(inf_convolve(c1, c2)) == add(conjugate(c1), conjugate(c2)),
              "convolution duality fails");
    o.require(conjugate(conjugate(c1)) == c1, "biconjugation fails");
  }
  return o;
}

// ---- criterion 6: the convolution oracle ----

Outcome criterion_convolution_oracle() {
  Outcome o;
  Rng rng(161803);
  for (int i = 0; i < 200; ++i) {
    KnotExpr K = testing::random_sum(rng, 4);
    std::vector<KnotExpr> leaves = leaf_factors(K);
    StepFn oracle = step_from_gaps(leaf_gaps(leaves[0]));
    for (size_t l = 1; l < leaves.size(); ++l)
      oracle = testing::convolve_wide_oracle(oracle, step_from_gaps(leaf_gaps(leaves[l])));
    o.require(j_function(K) == oracle, "window convolution differs for " + to_string(K));
  }
  return o;
}

// ---- criterion 7: d-invariant spot checks ----

Outcome criterion_d_invariants() {
  Outcome o;
  auto d1 = d_invariants(parse_knot("torus(2,3)"), 1);
  o.require(d1.size() == 1 && d1.at(0) == -2, "d(S^3_1(T(2,3))) != -2");

  for (long long q : {1, 3, 5, 7}) {
    auto d = d_invariants(parse_knot("unknot"), q);
    o.require(d.size() == static_cast<size_t>(q), "unknot: wrong spin-c count");
    for (const auto& [m, v] : d) {
      long long a = m < 0 ? -m : m;  // quadratic term at the conjugate label
      o.require(v == make_rat((q - 2 * a) * (q - 2 * a) - q, 4 * q),
                "unknot: d differs from the quadratic term, q=" + std::to_string(q));
      o.require(v == d.at(-m), "unknot: conjugation symmetry, q=" + std::to_string(q));
    }
  }

  // recompute through the independent gap-counting path
  Rng rng(141421);
  for (int i = 0; i < 20; ++i) {
    KnotExpr K = testing::random_sum(rng, 2);
    std::vector<KnotExpr> leaves = leaf_factors(K);
    StepFn oracle = step_from_gaps(leaf_gaps(leaves[0]));
    for (size_t l = 1; l < leaves.size(); ++l)
      oracle = testing::convolve_wide_oracle(oracle, step_from_gaps(leaf_gaps(leaves[l])));
    long long q = 2 * oracle.genus() + 1 + 2 * (i % 3);
    auto d = d_invariants(K, q);
    bool consistent = d.size() == static_cast<size_t>(q);
    for (const auto& [m, v] : d) {
      long long jm = 0;
      if (leaves.size() == 1) {
        GapSet gs = leaf_gaps(leaves[0]);
        jm = testing::gap_count_oracle(gs, m + gs.genus());
      } else {
        jm = oracle(m);
      }
      if (v != make_rat((q - 2 * m) * (q - 2 * m) - q, 4 * q) - 2 * jm) consistent = false;
    }
    o.require(consistent, "surgery formula inconsistent for " + to_string(K));
  }
  return o;
}

// ---- criterion 8: dominance and monotonicity of the crossing obstructions ----

Outcome criterion_crossing_suite() {
  Outcome o;
  Rng rng(577215);
  int passing = 0;
  while (passing < 100) {
    KnotExpr k0 = testing::random_sum(rng, 2);
    KnotExpr k1 = testing::random_sum(rng, 2);
    long long g = total_genus(k0) + total_genus(k1);
    long long p = g, n = g;
    for (int step = 0; step < 10; ++step) {
      long long np = p - testing::rand_range(rng, 0, 2);
      long long nn = n - testing::rand_range(rng, 0, 2);
      if (np < 0 || nn < 0) break;
      if (!check_j_budget(k0, k1, CrossingBudget(np, nn)).admissible) break;
      p = np;
      n = nn;
    }
    CrossingBudget b(p, n);
    if (!check_j_budget(k0, k1, b).admissible) continue;
    o.require(check_upsilon_budget(k0, k1, b).admissible,
              "J admissible but upsilon fails: " + to_string(k0) + " -> " + to_string(k1));
    o.require(check_j_budget(k0, k1, CrossingBudget(p + 1, n)).admissible &&
                  check_j_budget(k0, k1, CrossingBudget(p, n + 1)).admissible,
              "budget monotonicity fails: " + to_string(k0) + " -> " + to_string(k1));
    ++passing;
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  std::vector<Criterion> criteria = {
      {"gap-function tables for torus(6,7) and torus(4,9), exact", criterion_example_tables, 1.0},
      {"crossing-change example: delta form, J values, gordian bounds", criterion_crossing_example, 1.0},
      {"three-route upsilon equality, all pq <= 200 plus 100 random sums", criterion_legendre_mechanization, 30.0},
      {"upsilon axioms: symmetry, endpoints, slope, bound, convexity, mirror", criterion_axioms, 0.0},
      {"conjugation lemmas on 500 randomized PL functions, exact", criterion_conjugation_lemmas, 0.0},
      {"convolution equals wide-window brute force, 200 sums, exact", criterion_convolution_oracle, 0.0},
      {"d-invariant spot checks and surgery-formula consistency", criterion_d_invariants, 0.0},
      {"crossing suite: J dominance over upsilon and budget monotonicity", criterion_crossing_suite, 0.0},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[i].run();
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0 && elapsed > criteria[i].budget_seconds) {
      o.pass = false;
      o.notes.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget");
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].name
         << "  [" << static_cast<long long>(elapsed * 1000) << " ms]";
    std::cout << line.str() << "\n";
    if (!o.pass) {
      ++failures;
      size_t shown = 0;
      for (const std::string& note : o.notes) {
        std::cout << "      - " << note << "\n";
        if (++shown == 8 && o.notes.size() > 8) {
          std::cout << "      - (" << (o.notes.size() - 8) << " more)\n";
          break;
        }
      }
    }
  }
  if (failures == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << failures << " criterion(s) failed\n";
  return failures;
}
