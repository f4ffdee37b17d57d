#pragma once

// Exact rational arithmetic used everywhere in the library.  Breakpoints,
// slopes and d-invariants are rationals kept in lowest terms with positive
// denominator; no floating point enters any computation (doubles appear
// only when rendering SVG coordinates).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsk {

// Expression templates are disabled so arithmetic yields plain values
// (std::min/std::max and mixed expressions then behave like builtins).
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Minimal exact form: "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

// Always "p/q"; the form used by the JSON schema.
inline std::string to_frac_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p" or "p/q" with optional surrounding whitespace.
inline Rat parse_rat(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) fail();
  std::string_view body = text.substr(begin, end - begin + 1);

  std::string_view num = body, den = "1";
  if (size_t slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  try {
    Int n{std::string(num)};
    Int d{std::string(den)};
    return make_rat(std::move(n), std::move(d));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    fail();
  }
  return Rat{};  // unreachable
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace lsk
