#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace benchaudit {

// Exact rational arithmetic for rates and thresholds. Degree boundaries
// like -0.2 are decimal values; comparing them through doubles can flip
// a boundary case, so all rate math stays in integers until rendering.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
  static Rational from_int(std::int64_t v) { return Rational(v, 1); }

  // 100 * k / n, the percentage form used for CR/PCR/Phi.
  static Rational percent(std::int64_t k, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("Rational::percent: n must be positive");
    return Rational(100 * k, n);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // One decimal place, round half away from zero, computed in integers.
  std::string to_fixed1() const {
    bool neg = num_ < 0;
    std::uint64_t n10 = static_cast<std::uint64_t>(neg ? -num_ : num_) * 10ull;
    std::uint64_t d = static_cast<std::uint64_t>(den_);
    std::uint64_t scaled = (2 * n10 + d) / (2 * d);
    std::string body = std::to_string(scaled / 10) + "." + std::to_string(scaled % 10);
    return (neg && scaled != 0) ? "-" + body : body;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace benchaudit
