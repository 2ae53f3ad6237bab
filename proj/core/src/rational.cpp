#include "shortfair/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace shortfair {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 u128_abs(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t narrow(i128 v) {
  if (v > i128(std::numeric_limits<int64_t>::max()) ||
      v < i128(std::numeric_limits<int64_t>::min())) {
    throw std::overflow_error("rational arithmetic overflows int64");
  }
  return static_cast<int64_t>(v);
}

}  // namespace

Rational Rational::make_reduced(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd_u128(u128_abs(num), u128(den));
  num /= i128(g);
  den /= i128(g);
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational::Rational(int64_t num, int64_t den) { *this = make_reduced(num, den); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make_reduced(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                                i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make_reduced(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                                i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make_reduced(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational::make_reduced(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-i128(num_));
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = i128(a.num_) * b.den_;
  i128 rhs = i128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int64_t Rational::floor() const {
  int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

int64_t Rational::ceil() const {
  int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

int64_t floor_mul(int64_t s, const Rational& w) {
  i128 p = i128(s) * w.num();
  i128 q = w.den();
  i128 d = p / q;
  if (p % q != 0 && p < 0) --d;
  return narrow(d);
}

int64_t ceil_mul(int64_t s, const Rational& w) {
  i128 p = i128(s) * w.num();
  i128 q = w.den();
  i128 d = p / q;
  if (p % q != 0 && p > 0) ++d;
  return narrow(d);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("cannot parse rational from '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view sv, bool allow_sign) -> i128 {
    if (sv.empty()) fail();
    size_t pos = 0;
    bool neg = false;
    if (allow_sign && (sv[0] == '+' || sv[0] == '-')) {
      neg = sv[0] == '-';
      pos = 1;
      if (pos == sv.size()) fail();
    }
    if (sv.size() - pos > 19) fail();  // keeps everything inside int64 range checks below
    i128 v = 0;
    for (; pos < sv.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(sv[pos]))) fail();
      v = v * 10 + (sv[pos] - '0');
    }
    return neg ? -v : v;
  };

  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    i128 p = parse_int(text.substr(0, slash), true);
    i128 q = parse_int(text.substr(slash + 1), true);
    return make_reduced(p, q);  // q == 0 reports the zero denominator
  }

  size_t dot = text.find('.');
  if (dot == std::string_view::npos) {
    return make_reduced(parse_int(text, true), 1);
  }

  std::string_view head = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 18) fail();
  bool neg = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) head.remove_prefix(1);
  i128 whole = head.empty() ? 0 : parse_int(head, false);
  i128 digits = parse_int(frac, false);
  i128 scale = 1;
  for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
  i128 p = whole * scale + digits;
  return make_reduced(neg ? -p : p, scale);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

int64_t lcm_checked(int64_t a, int64_t b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm needs positive arguments");
  u128 g = gcd_u128(u128(a), u128(b));
  i128 l = i128(a) / i128(g) * b;
  return narrow(l);
}

int64_t lcm_denominators(std::span<const Rational> values) {
  int64_t l = 1;  // empty product: every window length is achievable
  for (const Rational& v : values) l = lcm_checked(l, v.den());
  return l;
}

}  // namespace shortfair
