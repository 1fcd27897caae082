#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "uemb/errors.hpp"

namespace uemb {

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Default tolerance of the floating-point path.
inline constexpr double kFloatTolerance = 1e-9;

/// Arithmetic policy shared by the exact and the floating pipelines.
///
/// Every comparison in the geometry and LP code goes through `sign`, so the
/// exact instantiation decides exactly and the double instantiation decides
/// up to `kFloatTolerance`.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static int sign(const Rat& x) { return x.sign(); }
  static Rat abs(const Rat& x) { return x.sign() < 0 ? Rat(-x) : x; }
  static Rat from_int(std::int64_t v) { return Rat(v); }
  static Rat from_ratio(std::int64_t p, std::int64_t q) { return Rat(BigInt(p), BigInt(q)); }
  static double to_double(const Rat& x) { return static_cast<double>(x); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float64";

  static int sign(double x) {
    if (x > kFloatTolerance) return 1;
    if (x < -kFloatTolerance) return -1;
    return 0;
  }
  static double abs(double x) { return std::fabs(x); }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
  static double from_ratio(std::int64_t p, std::int64_t q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double to_double(double x) { return x; }
};

template <class T>
int sign(const T& x) {
  return scalar_traits<T>::sign(x);
}

template <class T>
bool is_zero(const T& x) {
  return scalar_traits<T>::sign(x) == 0;
}

/// Equality under the scalar's policy.
template <class T>
bool same(const T& a, const T& b) {
  return scalar_traits<T>::sign(T(a - b)) == 0;
}

template <class T>
T abs_value(const T& x) {
  return scalar_traits<T>::abs(x);
}

namespace detail {
// Strict base-10 integer; BigInt's string constructor would accept 0x.. and octal.
inline BigInt parse_decimal_int(std::string v, std::string_view whole) {
  bool negative = false;
  if (!v.empty() && (v.front() == '-' || v.front() == '+')) {
    negative = v.front() == '-';
    v.erase(0, 1);
  }
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("malformed rational literal '" + std::string(whole) + "'");
  v.erase(0, std::min(v.find_first_not_of('0'), v.size() - 1));
  BigInt out(v);
  return negative ? BigInt(-out) : out;
}
}  // namespace detail

/// Parses "p/q", "p", or a plain decimal such as "-0.25" into an exact rational.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    const auto b = v.find_first_not_of(" \t");
    const auto e = v.find_last_not_of(" \t");
    v = (b == std::string::npos) ? std::string() : v.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw InputError("empty rational literal");
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      trim(num);
      trim(den);
      if (num.empty() || den.empty()) throw InputError("malformed rational literal '" + s + "'");
      const BigInt q = detail::parse_decimal_int(den, text);
      if (q == 0) throw InputError("zero denominator in '" + s + "'");
      return Rat(detail::parse_decimal_int(num, text), q);
    }
    if (s.find('.') != std::string::npos) {
      bool negative = false;
      if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.erase(0, 1);
      }
      const auto dot = s.find('.');
      const std::string whole = s.substr(0, dot);
      const std::string frac = s.substr(dot + 1);
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed decimal literal '" + std::string(text) + "'");
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const BigInt digits = detail::parse_decimal_int(whole + frac, text);
      Rat r(digits, scale);
      return negative ? Rat(-r) : r;
    }
    return Rat(detail::parse_decimal_int(s, text));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  }
}

/// "p/q", or "p" when q = 1.
inline std::string format_rat(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  const std::string full = os.str();
  for (int p = 1; p <= 17; ++p) {
    std::ostringstream t;
    t.precision(p);
    t << x;
    if (std::stod(t.str()) == x) return t.str();
  }
  return full;
}

inline std::string format_scalar(const Rat& x) { return format_rat(x); }
inline std::string format_scalar(double x) { return format_double(x); }

}  // namespace uemb
