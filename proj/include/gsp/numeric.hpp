#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace gsp {

using Rational = mpq_class;

// Scalars the auction model is instantiated for: exact rationals or doubles.
template <class T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

template <Scalar T>
struct NumericTraits;

template <>
struct NumericTraits<double> {
  static constexpr bool exact = false;
  static double default_eps() { return 1e-9; }
};

template <>
struct NumericTraits<Rational> {
  static constexpr bool exact = true;
  static Rational default_eps() { return Rational(0); }
};

// Parses "0.53", "-1.5e-3", "3/4" or "7" into an exact rational.
// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

// The decimal a double was most likely written as: its shortest round-trip
// representation, parsed exactly. 0.53 becomes 53/100, not the binary value.
Rational rational_from_double(double x);

// Exact binary value of a double.
Rational exact_rational(double x);

// Nearest multiple of 1/denominator.
Rational quantize(double x, std::int64_t denominator);

// Round to nearest, ties to even. mpq_get_d truncates, which turns 0.53
// into 0.52999999999999992.
double nearest_double(const Rational& x);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return nearest_double(x); }

// Terminating decimals render as decimals ("0.0825"), everything else as "p/q".
std::string format_rational(const Rational& x);

// Six significant digits, the CLI's display precision.
std::string format_display(double x);

template <Scalar T>
T from_rational(const Rational& x) {
  if constexpr (std::is_same_v<T, double>) {
    return nearest_double(x);
  } else {
    return x;
  }
}

template <Scalar T>
std::vector<T> from_rationals(const std::vector<Rational>& xs) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(from_rational<T>(x));
  return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& xs);

}  // namespace gsp
