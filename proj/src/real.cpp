#include "torstab/real.hpp"

#include <cmath>
#include <cstdio>

#include "torstab/error.hpp"

namespace torstab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kZeroCharge: return "ZeroCharge";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kUnsupportedSpectrum: return "UnsupportedSpectrum";
    case ErrorCode::kNotInHeart: return "NotInHeart";
    case ErrorCode::kInvalidTorsionPair: return "InvalidTorsionPair";
    case ErrorCode::kInconsistentMorphism: return "InconsistentMorphism";
    case ErrorCode::kMissingHNData: return "MissingHNData";
    case ErrorCode::kNotNumericallyConsistent: return "NotNumericallyConsistent";
    case ErrorCode::kNotInU: return "NotInU";
    case ErrorCode::kOnSpectrum: return "OnSpectrum";
    case ErrorCode::kNeverEscapes: return "NeverEscapes";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kInvalidExtension: return "InvalidExtension";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUndeterminedHN: return "UndeterminedHN";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Real Real::approx(double v) {
  Real r;
  r.exact_.reset();
  r.approx_ = v;
  return r;
}

Real Real::ratio(long long num, long long den) {
  if (den == 0) fail(ErrorCode::kDomainError, "zero denominator");
  return Real(Rational(num, den));
}

Real Real::parse(const std::string& text) {
  auto bad = [&]() -> Real {
    fail(ErrorCode::kParseError, "not a number: '" + text + "'");
  };
  if (text.empty()) return bad();
  auto parse_int = [&](const std::string& s) -> boost::multiprecision::cpp_int {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') bad();
    boost::multiprecision::cpp_int v(s[0] == '+' ? s.substr(1) : s);
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::kParseError, "zero denominator in '" + text + "'");
    return Real(Rational(num, den));
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) bad();
    for (char ch : frac)
      if (ch < '0' || ch > '9') bad();
    auto w = parse_int(whole);
    boost::multiprecision::cpp_int f(frac);
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Rational q(abs(w) * scale + f, scale);
    return Real(negative ? Rational(-q) : q);
  }
  return Real(Rational(parse_int(text)));
}

int Real::sign() const {
  if (exact_) return exact_->sign();
  if (std::abs(approx_) <= kZeroTolerance) return 0;
  return approx_ > 0 ? 1 : -1;
}

Real Real::operator-() const {
  Real r = *this;
  if (r.exact_) *r.exact_ = -*r.exact_;
  r.approx_ = -r.approx_;
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (exact_ && o.exact_) {
    *exact_ += *o.exact_;
    approx_ = static_cast<double>(*exact_);
  } else {
    exact_.reset();
    approx_ += o.approx_;
  }
  return *this;
}

Real& Real::operator-=(const Real& o) { return *this += -o; }

Real& Real::operator*=(const Real& o) {
  if (exact_ && o.exact_) {
    *exact_ *= *o.exact_;
    approx_ = static_cast<double>(*exact_);
  } else if ((exact_ && exact_->is_zero()) || (o.exact_ && o.exact_->is_zero())) {
    *this = Real(0);
  } else {
    exact_.reset();
    approx_ *= o.approx_;
  }
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.exact_ ? o.exact_->is_zero() : o.approx_ == 0.0)
    fail(ErrorCode::kDomainError, "division by zero");
  if (exact_ && o.exact_) {
    *exact_ /= *o.exact_;
    approx_ = static_cast<double>(*exact_);
  } else {
    exact_.reset();
    approx_ /= o.approx_;
  }
  return *this;
}

std::string Real::to_string() const {
  if (exact_) {
    auto num = boost::multiprecision::numerator(*exact_);
    auto den = boost::multiprecision::denominator(*exact_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

long long Real::floor() const {
  if (exact_) {
    auto num = boost::multiprecision::numerator(*exact_);
    auto den = boost::multiprecision::denominator(*exact_);
    boost::multiprecision::cpp_int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return static_cast<long long>(q);
  }
  return static_cast<long long>(std::floor(approx_ + kZeroTolerance));
}

Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }

}  // namespace torstab
