#pragma once

// Command-line front end.  Subcommands: gaps, jfun, dinv, upsilon,
// verify-legendre, budget, gordian, plot.  Every run is deterministic given
// its arguments; exit code 0 means "computed" (even when an obstruction or a
// verification fails), nonzero means input or usage error.

#include "lsk/gaps.hpp"
#include "lsk/io.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/obstruct.hpp"
#include "lsk/plfun.hpp"
#include "lsk/upsilon.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lsk::cli {

enum class Format { Table, Json, Csv };

inline Format parse_format(const std::string& name) {
  if (name == "table") return Format::Table;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + name + "' (expected table, json or csv)");
}

inline Format default_format() {
  if (const char* env = std::getenv("LSK_FORMAT")) return parse_format(env);
  return Format::Table;
}

inline std::pair<long long, long long> parse_range(const std::string& text) {
  size_t dots = text.find("..", 1);  // start at 1 so a leading '-' is not the separator
  if (dots == std::string::npos)
    throw std::invalid_argument("range must look like a..b, got '" + text + "'");
  long long lo = std::stoll(text.substr(0, dots));
  long long hi = std::stoll(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range " + text);
  return {lo, hi};
}

namespace detail {

struct Sink {
  std::ostream& fallback;
  std::string path;  // empty: use fallback

  void write(const std::string& text) const {
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    file << text;
  }
};

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact concordance invariants of L-space knots"};
  app.name("lsk");
  app.require_subcommand(1);
  app.fallthrough();  // global --format/--output may follow the subcommand

  std::string format_name;
  std::string output_path;
  app.add_option("--format", format_name, "output format: table, json or csv (env LSK_FORMAT)")
      ->capture_default_str();
  app.add_option("-o,--output", output_path, "write the result to a file instead of stdout");

  std::string knot_text, from_text, to_text;
  std::vector<std::string> plot_knots;
  std::string range_text;
  long long q = 0, budget_p = 0, budget_n = 0, max_d = 0;
  bool allow_even_q = false;

  CLI::App* cmd_gaps = app.add_subcommand("gaps", "gap set and gap function I of one L-space knot");
  cmd_gaps->add_option("--knot", knot_text, "knot expression")->required();
  cmd_gaps->add_option("--range", range_text, "m range a..b (default -2..2g+1)");

  CLI::App* cmd_jfun = app.add_subcommand("jfun", "J function of a connected sum of L-space knots");
  cmd_jfun->add_option("--knot", knot_text, "knot expression")->required();
  cmd_jfun->add_option("--range", range_text, "m range a..b (default -g-2..g+2)");

  CLI::App* cmd_dinv = app.add_subcommand("dinv", "d-invariants of q-surgery");
  cmd_dinv->add_option("--knot", knot_text, "knot expression")->required();
  cmd_dinv->add_option("-q,--q", q, "surgery coefficient, odd, >= max(1, 2g-1)")->required();
  cmd_dinv->add_flag("--allow-even-q", allow_even_q,
                     "accept even q (same half-open enumeration [-q/2, q/2))");

  CLI::App* cmd_ups = app.add_subcommand("upsilon", "the Upsilon function on [0, 2]");
  cmd_ups->add_option("--knot", knot_text, "knot expression")->required();

  CLI::App* cmd_verify =
      app.add_subcommand("verify-legendre", "compare the three routes to Upsilon");
  cmd_verify->add_option("--knot", knot_text, "mirror-free knot expression")->required();

  CLI::App* cmd_budget = app.add_subcommand("budget", "crossing-change obstructions");
  cmd_budget->add_option("--from", from_text, "starting knot K0")->required();
  cmd_budget->add_option("--to", to_text, "target knot K1")->required();
  cmd_budget->add_option("-p", budget_p, "positive crossings changed")->required();
  cmd_budget->add_option("-n", budget_n, "negative crossings changed")->required();

  CLI::App* cmd_gordian = app.add_subcommand("gordian", "Gordian distance lower bounds");
  cmd_gordian->add_option("--from", from_text, "first knot")->required();
  cmd_gordian->add_option("--to", to_text, "second knot")->required();
  cmd_gordian->add_option("--max-d", max_d, "largest distance to test")->required();

  CLI::App* cmd_plot = app.add_subcommand("plot", "SVG plot of Upsilon functions");
  cmd_plot->add_option("--knot", plot_knots, "knot expression (repeat to overlay)")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Format format = format_name.empty() ? default_format() : parse_format(format_name);
    detail::Sink sink{out, output_path};
    std::ostringstream text;

    if (cmd_gaps->parsed()) {
      KnotExpr K = parse_knot(knot_text);
      if (!K.is_leaf())
        throw std::invalid_argument(
            "gaps: the knot must be a single L-space knot leaf (torus/semigroup/alex); "
            "use jfun for connected sums, and note that mirrors carry no gap set");
      GapSet G = leaf_gaps(K);
      long long lo = -2, hi = 2 * G.genus() + 1;
      if (!range_text.empty()) std::tie(lo, hi) = parse_range(range_text);
      if (format == Format::Csv) {
        text << "m,I\n";
        for (long long m = lo; m <= hi; ++m)
          text << m << "," << gap_function(G, m) << "\n";
      } else if (format == Format::Json) {
        Json j;
        j["knot"] = to_string(K);
        j["genus"] = G.genus();
        j["gaps"] = gapset_to_json(G);
        Json rows = Json::array();
        for (long long m = lo; m <= hi; ++m) rows.push_back(Json::array({m, gap_function(G, m)}));
        j["values"] = std::move(rows);
        text << detail::render_json(j);
      } else {
        text << "knot: " << to_string(K) << "\n";
        text << "genus: " << G.genus() << "\n";
        text << "gaps:";
        for (long long x : G.gaps()) text << " " << x;
        text << "\n" << std::setw(6) << "m" << std::setw(8) << "I(m)" << "\n";
        for (long long m = lo; m <= hi; ++m)
          text << std::setw(6) << m << std::setw(8) << gap_function(G, m) << "\n";
      }
    } else if (cmd_jfun->parsed()) {
      KnotExpr K = parse_knot(knot_text);
      StepFn J = j_function(K);
      long long lo = -J.genus() - 2, hi = J.genus() + 2;
      if (!range_text.empty()) std::tie(lo, hi) = parse_range(range_text);
      if (format == Format::Csv) {
        text << stepfn_to_csv(J, lo, hi);
      } else if (format == Format::Json) {
        Json j;
        j["knot"] = to_string(K);
        j["genus"] = J.genus();
        j["values"] = stepfn_to_json(J, lo, hi);
        text << detail::render_json(j);
      } else {
        text << "knot: " << to_string(K) << "\n";
        text << "genus: " << J.genus() << "\n";
        text << std::setw(6) << "m" << std::setw(8) << "J(m)" << "\n";
        for (long long m = lo; m <= hi; ++m) text << std::setw(6) << m << std::setw(8) << J(m) << "\n";
      }
    } else if (cmd_dinv->parsed()) {
      KnotExpr K = parse_knot(knot_text);
      if (q % 2 == 0 && !allow_even_q)
        throw std::invalid_argument(
            "dinv: even q needs --allow-even-q (the enumeration stays [-q/2, q/2))");
      auto d = d_invariants(K, q);
      if (format == Format::Csv) {
        text << dinv_to_csv(d);
      } else if (format == Format::Json) {
        Json j;
        j["knot"] = to_string(K);
        j["q"] = q;
        j["values"] = dinv_to_json(d);
        text << detail::render_json(j);
      } else {
        text << "knot: " << to_string(K) << "\n";
        text << "q: " << q << "\n";
        text << std::setw(6) << "m" << "  d\n";
        for (const auto& [m, v] : d) text << std::setw(6) << m << "  " << to_string(v) << "\n";
      }
    } else if (cmd_ups->parsed()) {
      KnotExpr K = parse_knot(knot_text);
      UpsilonFn U = upsilon_of(K);
      if (format == Format::Csv) {
        text << plfn_to_csv(U.pl());
      } else if (format == Format::Json) {
        Json j;
        j["knot"] = to_string(K);
        j["upsilon"] = plfn_to_json(U.pl());
        text << detail::render_json(j);
      } else {
        text << "knot: " << to_string(K) << "\n";
        text << "upsilon: " << to_string(U.pl()) << "\n";
      }
    } else if (cmd_verify->parsed()) {
      KnotExpr K = parse_knot(knot_text);
      LegendreReport r = verify_legendre(K);
      if (format == Format::Json) {
        Json j;
        j["knot"] = to_string(K);
        j["equal"] = r.equal;
        j["witness"] = r.witness ? Json(to_frac_string(*r.witness)) : Json(nullptr);
        j["routes"] = Json{{"reference", plfn_to_json(r.reference.pl())},
                           {"minform", plfn_to_json(r.minform.pl())},
                           {"legendre", plfn_to_json(r.legendre.pl())}};
        text << detail::render_json(j);
      } else {
        text << "knot: " << to_string(K) << "\n";
        text << "reference: " << to_string(r.reference.pl()) << "\n";
        text << "minform:   " << to_string(r.minform.pl()) << "\n";
        text << "legendre:  " << to_string(r.legendre.pl()) << "\n";
        if (r.equal) {
          text << "verdict: PASS (all three routes agree exactly)\n";
        } else {
          text << "verdict: FAIL";
          if (r.witness) text << " (first differing t = " << to_string(*r.witness) << ")";
          text << "\n";
        }
      }
    } else if (cmd_budget->parsed()) {
      KnotExpr K0 = parse_knot(from_text);
      KnotExpr K1 = parse_knot(to_text);
      CrossingBudget b(budget_p, budget_n);
      std::optional<ObstructionReport> jr;
      std::string j_note;
      try {
        jr = check_j_budget(K0, K1, b);
      } catch (const mirror_error& e) {
        j_note = e.what();
      }
      ObstructionReport ur = check_upsilon_budget(K0, K1, b);
      if (format == Format::Json) {
        Json j;
        j["from"] = to_string(K0);
        j["to"] = to_string(K1);
        j["budget"] = Json{{"p", b.positive}, {"n", b.negative}};
        Json reports = Json::array();
        if (jr) reports.push_back(report_to_json(*jr));
        reports.push_back(report_to_json(ur));
        j["reports"] = std::move(reports);
        if (!j_note.empty()) j["note"] = "J method skipped: " + j_note;
        text << detail::render_json(j);
      } else {
        text << "from: " << to_string(K0) << "\n";
        text << "to: " << to_string(K1) << "\n";
        text << "budget: p=" << b.positive << " n=" << b.negative << "\n";
        text << "method   admissible  witness\n";
        if (jr) {
          text << "J        " << (jr->admissible ? "yes" : "no ") << "         ";
          if (jr->witness_m) text << "m = " << *jr->witness_m;
          else text << "-";
          text << "\n";
        } else {
          text << "note: J method skipped: " << j_note << "\n";
        }
        text << "Upsilon  " << (ur.admissible ? "yes" : "no ") << "         ";
        if (ur.witness_t) text << "t = " << to_string(*ur.witness_t);
        else text << "-";
        text << "\n";
      }
    } else if (cmd_gordian->parsed()) {
      KnotExpr K0 = parse_knot(from_text);
      KnotExpr K1 = parse_knot(to_text);
      GordianBounds b = gordian_lower_bound(K0, K1, max_d);
      auto show = [&](const std::optional<long long>& v) {
        return v ? std::to_string(*v) : "> " + std::to_string(max_d);
      };
      if (format == Format::Json) {
        Json j;
        j["from"] = to_string(K0);
        j["to"] = to_string(K1);
        j["max_d"] = max_d;
        j["j_bound"] = b.j_bound ? Json(*b.j_bound) : Json(nullptr);
        j["upsilon_bound"] = b.upsilon_bound ? Json(*b.upsilon_bound) : Json(nullptr);
        text << detail::render_json(j);
      } else {
        text << "from: " << to_string(K0) << "\n";
        text << "to: " << to_string(K1) << "\n";
        text << "max-d: " << max_d << "\n";
        text << "J lower bound: " << show(b.j_bound) << "\n";
        text << "Upsilon lower bound: " << show(b.upsilon_bound) << "\n";
      }
    } else if (cmd_plot->parsed()) {
      std::vector<std::pair<std::string, PLFn>> curves;
      for (const std::string& k : plot_knots) {
        KnotExpr K = parse_knot(k);
        curves.emplace_back(to_string(K), upsilon_of(K).pl());
      }
      std::ostringstream svg;
      write_svg_plot(svg, curves);
      text << svg.str();
    }

    sink.write(text.str());
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lsk::cli
