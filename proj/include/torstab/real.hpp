#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace torstab {

using Rational = boost::multiprecision::cpp_rational;

/// A real number that is either known exactly as a rational or only
/// approximately as a double. Arithmetic stays exact as long as every
/// operand is exact; any approximate operand degrades the result.
///
/// Sign and equality tests on approximate values use an absolute
/// tolerance of kZeroTolerance.
class Real {
 public:
  static constexpr double kZeroTolerance = 1e-12;

  Real() : exact_(Rational(0)), approx_(0.0) {}
  Real(int v) : exact_(Rational(v)), approx_(v) {}  // NOLINT
  Real(long long v) : exact_(Rational(v)), approx_(static_cast<double>(v)) {}  // NOLINT
  explicit Real(const Rational& q)
      : exact_(q), approx_(static_cast<double>(q)) {}

  static Real approx(double v);
  static Real ratio(long long num, long long den);

  /// Parses "n", "n/d", or a decimal literal such as "-0.35" (decimals are
  /// read exactly). Throws Error(kParseError).
  static Real parse(const std::string& text);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  double to_double() const { return approx_; }

  /// -1, 0 or +1; approximate values within kZeroTolerance of 0 count as 0.
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator==(const Real& a, const Real& b) { return (a - b).is_zero(); }
  friend bool operator<(const Real& a, const Real& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

  /// Exact values print as "n" or "n/d"; approximate ones in %.17g.
  std::string to_string() const;

  /// Largest integer <= value (exact when the value is exact).
  long long floor() const;

 private:
  std::optional<Rational> exact_;
  double approx_;
};

Real abs(const Real& x);

}  // namespace torstab
