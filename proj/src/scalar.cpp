#include "oprange/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "oprange/error.hpp"

namespace oprange {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad_number(whole);
  mpz_class value(std::string(s), 10);
  return negative ? mpz_class(-value) : value;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) bad_number(whole);
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(whole);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
      bad_number(whole);
    }
    digits = std::string(int_part) + std::string(frac_part);
    fraction_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad_number(whole);
    digits = std::string(s);
  }
  if (digits.empty()) bad_number(whole);
  const long scale = exponent - fraction_digits;
  if (scale > 4096 || scale < -4096) bad_number(whole);
  mpz_class numerator(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational value = scale >= 0 ? Rational(numerator * power) : Rational(numerator, power);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(double x) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
  return std::string(buffer.data(), ptr);
}

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (s.empty()) bad_number(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) bad_number(text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s, text);
}

double parse_double(std::string_view text) {
  const auto s = trim(text);
  if (s.find('/') != std::string_view::npos) return parse_rational(s).get_d();
  double value = 0.0;
  auto begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    bad_number(text);
  }
  return value;
}

}  // namespace oprange
