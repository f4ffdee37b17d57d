#pragma once

// JSON, CSV and SVG emitters for the library types.  JSON uses ordered keys
// so output is deterministic; rationals are carried as "p/q" strings.
//
// PLFn schema:
//   {"domain": "all" | ["a/b", "c/d"],
//    "slope_left": "p/q", "slope_right": "p/q",
//    "breakpoints": [["x_num/x_den", "y_num/y_den"], ...],
//    "intercept": "p/q"}            // present only when breakpoints is empty

#include "lsk/gaps.hpp"
#include "lsk/knotspec.hpp"
#include "lsk/obstruct.hpp"
#include "lsk/plfun.hpp"
#include "lsk/upsilon.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lsk {

using Json = nlohmann::ordered_json;

inline Json plfn_to_json(const PLFn& f) {
  Json j;
  if (f.domain() == PLFn::Domain::Interval)
    j["domain"] = Json::array({to_frac_string(f.domain_lo()), to_frac_string(f.domain_hi())});
  else
    j["domain"] = "all";
  j["slope_left"] = to_frac_string(f.slope_left());
  j["slope_right"] = to_frac_string(f.slope_right());
  Json bps = Json::array();
  for (const PLPoint& p : f.breakpoints())
    bps.push_back(Json::array({to_frac_string(p.x), to_frac_string(p.y)}));
  j["breakpoints"] = std::move(bps);
  if (f.breakpoints().empty()) j["intercept"] = to_frac_string(f.intercept());
  return j;
}

inline PLFn plfn_from_json(const Json& j) {
  std::vector<PLPoint> bps;
  for (const auto& p : j.at("breakpoints"))
    bps.push_back({parse_rat(p.at(0).get<std::string>()), parse_rat(p.at(1).get<std::string>())});
  if (j.at("domain").is_string()) {
    if (bps.empty())
      return PLFn::linear(parse_rat(j.at("slope_left").get<std::string>()),
                          parse_rat(j.at("intercept").get<std::string>()));
    return PLFn::all_reals(std::move(bps), parse_rat(j.at("slope_left").get<std::string>()),
                           parse_rat(j.at("slope_right").get<std::string>()));
  }
  return PLFn::on_interval(std::move(bps));
}

inline Json gapset_to_json(const GapSet& G) {
  Json j = Json::array();
  for (long long x : G.gaps()) j.push_back(x);
  return j;
}

inline Json exponents_to_json(const ExponentSequence& e) {
  Json j = Json::array();
  for (long long a : e.alphas()) j.push_back(a);
  return j;
}

// J table over [lo, hi] as [[m, J(m)], ...].
inline Json stepfn_to_json(const StepFn& J, long long lo, long long hi) {
  Json rows = Json::array();
  for (long long m = lo; m <= hi; ++m) rows.push_back(Json::array({m, J(m)}));
  return rows;
}

inline Json dinv_to_json(const std::map<long long, Rat>& d) {
  Json rows = Json::array();
  for (const auto& [m, v] : d) rows.push_back(Json::array({m, to_frac_string(v)}));
  return rows;
}

inline Json report_to_json(const ObstructionReport& r) {
  Json j;
  j["method"] = r.method == ObstructionMethod::JFunction ? "J" : "Upsilon";
  j["budget"] = Json{{"p", r.budget.positive}, {"n", r.budget.negative}};
  j["admissible"] = r.admissible;
  if (r.witness_m)
    j["witness"] = *r.witness_m;
  else if (r.witness_t)
    j["witness"] = to_frac_string(*r.witness_t);
  else
    j["witness"] = nullptr;
  return j;
}

// CSV: one "x,y" row per breakpoint, minimal exact rationals.
inline std::string plfn_to_csv(const PLFn& f) {
  std::string s = "x,y\n";
  for (const PLPoint& p : f.breakpoints())
    s += to_string(p.x) + "," + to_string(p.y) + "\n";
  return s;
}

inline std::string stepfn_to_csv(const StepFn& J, long long lo, long long hi) {
  std::string s = "m,J\n";
  for (long long m = lo; m <= hi; ++m)
    s += std::to_string(m) + "," + std::to_string(J(m)) + "\n";
  return s;
}

inline std::string dinv_to_csv(const std::map<long long, Rat>& d) {
  std::string s = "m,d\n";
  for (const auto& [m, v] : d) s += std::to_string(m) + "," + to_string(v) + "\n";
  return s;
}

// Static SVG plot of one or more functions on [0, 2]: breakpoint polylines,
// axes with unit ticks, a small legend.  Exact values are converted to
// doubles here only for pixel coordinates.
inline void write_svg_plot(std::ostream& os,
                           const std::vector<std::pair<std::string, PLFn>>& curves) {
  const double width = 720, height = 480;
  const double ml = 64, mr = 24, mt = 24, mb = 48;

  double ymin = 0, ymax = 0;
  for (const auto& [label, f] : curves)
    for (const PLPoint& p : f.breakpoints()) {
      ymin = std::min(ymin, to_double(p.y));
      ymax = std::max(ymax, to_double(p.y));
    }
  if (ymax - ymin < 1e-9) {
    ymin -= 1;
    ymax += 1;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto X = [&](double t) { return ml + t / 2.0 * (width - ml - mr); };
  auto Y = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * (height - mt - mb); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
     << "\" font-family=\"monospace\" font-size=\"13\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  // axes: t on [0,2] with unit ticks, the y = 0 line when visible
  os << "<line x1=\"" << X(0) << "\" y1=\"" << mt << "\" x2=\"" << X(0) << "\" y2=\""
     << height - mb << "\" stroke=\"#444\"/>\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << height - mb << "\" x2=\"" << X(2) << "\" y2=\""
     << height - mb << "\" stroke=\"#444\"/>\n";
  if (ymin < 0 && ymax > 0)
    os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(2) << "\" y2=\"" << Y(0)
       << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  for (int t = 0; t <= 2; ++t) {
    os << "<line x1=\"" << X(t) << "\" y1=\"" << height - mb << "\" x2=\"" << X(t) << "\" y2=\""
       << height - mb + 6 << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << X(t) << "\" y=\"" << height - mb + 22
       << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  os << "<text x=\"" << X(1) << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\">t</text>\n";
  os << "<text x=\"14\" y=\"" << Y((ymin + ymax) / 2)
     << "\" writing-mode=\"tb\" text-anchor=\"middle\">&#933;(t)</text>\n";
  for (double y : {ymin + pad, ymax - pad}) {
    std::ostringstream lab;
    lab.precision(4);
    lab << y;
    os << "<text x=\"" << ml - 6 << "\" y=\"" << Y(y) + 4
       << "\" text-anchor=\"end\">" << lab.str() << "</text>\n";
  }

  size_t ci = 0;
  for (const auto& [label, f] : curves) {
    const char* color = palette[ci % (sizeof(palette) / sizeof(*palette))];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const PLPoint& p : f.breakpoints())
      os << X(to_double(p.x)) << "," << Y(to_double(p.y)) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 18 * (ci + 1)
       << "\" text-anchor=\"end\" fill=\"" << color << "\">" << label << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
}

}  // namespace lsk
