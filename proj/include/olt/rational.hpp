#ifndef OLT_RATIONAL_HPP_
#define OLT_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace olt {

// Exact rational arithmetic for distances and manipulation-budget accounting.
// Numerators/denominators stay tiny in this codebase (denominators are powers
// of two up to 2^24 or small config values), so int64 with 128-bit
// intermediates is plenty.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t num, int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }
  // NOLINTNEXTLINE(google-explicit-constructor): integers embed exactly.
  Rational(int64_t v) : num_(v), den_(1) {}

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Largest integer <= value. Exact.
  int64_t floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  Rational operator+(const Rational& o) const {
    return Rational(chk(i128(num_) * o.den_ + i128(o.num_) * den_), chk(i128(den_) * o.den_));
  }
  Rational operator-(const Rational& o) const {
    return Rational(chk(i128(num_) * o.den_ - i128(o.num_) * den_), chk(i128(den_) * o.den_));
  }
  Rational operator*(const Rational& o) const {
    return Rational(chk(i128(num_) * o.num_), chk(i128(den_) * o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(chk(i128(num_) * o.den_), chk(i128(den_) * o.num_));
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
  bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses "p", "p/q", or a decimal like "0.25" (converted exactly).
  static Rational parse(const std::string& s);

 private:
  using i128 = __int128;

  static int64_t chk(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
    return static_cast<int64_t>(v);
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int64_t num_;
  int64_t den_;
};

inline Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("Rational::parse: too many decimals");
    int64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    int64_t whole = dot == 0 ? 0 : std::stoll(s.substr(0, dot));
    bool neg = !s.empty() && s[0] == '-';
    int64_t num = whole * den + (neg ? -1 : 1) * (frac.empty() ? 0 : std::stoll(frac));
    return Rational(num, den);
  }
  return Rational(std::stoll(s));
}

}  // namespace olt

#endif  // OLT_RATIONAL_HPP_
