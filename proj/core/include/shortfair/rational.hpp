#pragma once

#include <cstdint>
#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace shortfair {

// Exact rational over int64, always stored in lowest terms with den >= 1.
// Intermediates run through __int128; a result that does not fit back into
// int64 throws std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t value) : num_(value) {}  // NOLINT: implicit on purpose
  Rational(int64_t num, int64_t den);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  // Accepts "p/q", a bare integer, or a plain decimal such as "0.25".
  static Rational parse(std::string_view text);
  std::string str() const;  // canonical "p/q", den always printed

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int64_t floor() const;
  int64_t ceil() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
  static Rational make_reduced(__int128 num, __int128 den);
};

// floor(s * w) and ceil(s * w) without building an intermediate Rational.
int64_t floor_mul(int64_t s, const Rational& w);
int64_t ceil_mul(int64_t s, const Rational& w);

// lcm with overflow check.
int64_t lcm_checked(int64_t a, int64_t b);

// lcm of the denominators, each value taken in lowest terms; 1 for an empty list.
int64_t lcm_denominators(std::span<const Rational> values);

}  // namespace shortfair
