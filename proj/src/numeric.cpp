#include "gsp/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "gsp/errors.hpp"

namespace gsp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("not a decimal or rational literal: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    bool negative = !num.empty() && num.front() == '-';
    if (negative) num.remove_prefix(1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return fail();
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return fail();
    if (!int_part.empty() && !all_digits(int_part)) return fail();
    if (!frac_part.empty() && !all_digits(frac_part)) return fail();
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) return fail();
    digits = std::string(s);
  }
  Rational r{mpz_class(digits, 10)};
  if (exponent > 0) {
    r *= pow10(exponent);
  } else if (exponent < 0) {
    r /= pow10(-exponent);
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational rational_from_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw InputError("cannot format double");
  std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));
  if (text.find("inf") != std::string_view::npos || text.find("nan") != std::string_view::npos) {
    throw InputError("non-finite number");
  }
  return parse_rational(text);
}

Rational exact_rational(double x) {
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

Rational quantize(double x, std::int64_t denominator) {
  mpz_class num;
  double scaled = x * static_cast<double>(denominator);
  mpz_set_d(num.get_mpz_t(), scaled < 0 ? scaled - 0.5 : scaled + 0.5);
  Rational r(num, mpz_class(static_cast<long>(denominator)));
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& x) {
  mpz_class den = x.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1 || std::max(twos, fives) > 40) return x.get_str();

  unsigned long places = std::max(twos, fives);
  if (places == 0) return x.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = x.get_num() * scale / x.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::string format_display(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", x);
  return buf.data();
}

std::vector<double> to_doubles(const std::vector<Rational>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(nearest_double(x));
  return out;
}

double nearest_double(const Rational& x) {
  double d = x.get_d();
  Rational low = exact_rational(d);
  if (low == x || !std::isfinite(d)) return d;
  double away = std::nextafter(d, sgn(x) > 0 ? HUGE_VAL : -HUGE_VAL);
  Rational gap_low = abs(x - low), gap_away = abs(exact_rational(away) - x);
  if (gap_away < gap_low) return away;
  if (gap_low < gap_away) return d;
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return (bits & 1) ? away : d;
}

}  // namespace gsp
