#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ddt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Exact rational number in canonical form (gcd 1, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value) : value_(mpz_class(std::to_string(value))) {}  // NOLINT
  Rational(unsigned long value) : value_(value) {}  // NOLINT
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : value_(num, den) {
    if (den == 0) throw Error("rational with zero denominator");
    value_.canonicalize();
  }

  // Accepts "3", "-4", "1.25", "7/2".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& str) {
      auto b = str.find_first_not_of(" \t\n\r");
      auto e = str.find_last_not_of(" \t\n\r");
      str = b == std::string::npos ? std::string() : str.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      trim(num);
      trim(den);
      mpz_class n = parse_integer(num, text);
      mpz_class d = parse_integer(den, text);
      if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
      return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string int_part = s.substr(0, dot);
      std::string frac_part = s.substr(dot + 1);
      bool negative = !int_part.empty() && int_part[0] == '-';
      if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.erase(0, 1);
      if (int_part.empty() && frac_part.empty()) throw ParseError("malformed rational '" + std::string(text) + "'");
      for (char c : int_part + frac_part) {
        if (c < '0' || c > '9') throw ParseError("malformed rational '" + std::string(text) + "'");
      }
      mpz_class whole = int_part.empty() ? mpz_class(0) : mpz_class(int_part);
      mpz_class scale = 1;
      for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
      mpz_class frac = frac_part.empty() ? mpz_class(0) : mpz_class(frac_part);
      mpz_class num = whole * scale + frac;
      if (negative) num = -num;
      return Rational(num, scale);
    }
    return Rational(mpq_class(parse_integer(s, text)));
  }

  [[nodiscard]] std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  // Display-only decimal approximation.
  [[nodiscard]] std::string decimal(int digits = 6) const {
    mpf_class f(value_, 256);
    char* buf = nullptr;
    gmp_asprintf(&buf, "%.*Ff", digits, f.get_mpf_t());
    std::string out(buf);
    void (*free_fn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &free_fn);
    free_fn(buf, out.size() + 1);
    return out;
  }

  [[nodiscard]] const mpq_class& raw() const { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  [[nodiscard]] std::size_t hash() const {
    return std::hash<std::string>{}(value_.get_num().get_str(16)) * 31u +
           std::hash<std::string>{}(value_.get_den().get_str(16));
  }

 private:
  static mpz_class parse_integer(const std::string& s, std::string_view whole) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits = s.substr(i);
    mpz_class v(digits);
    return s[0] == '-' ? mpz_class(-v) : v;
  }

  mpq_class value_{0};
};

// A point in time or a duration; may be infinite (unreachable / infeasible).
class Time {
 public:
  Time() = default;
  Time(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Time(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static Time infinity() {
    Time t;
    t.infinite_ = true;
    return t;
  }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  [[nodiscard]] bool is_finite() const { return !infinite_; }
  [[nodiscard]] const Rational& value() const {
    if (infinite_) throw Error("value() of infinite time");
    return value_;
  }
  [[nodiscard]] std::string str() const { return infinite_ ? "inf" : value_.str(); }

  static Time parse(std::string_view text) {
    if (text == "inf" || text == "infinity") return infinity();
    return Time(Rational::parse(text));
  }

  friend Time operator+(const Time& a, const Time& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Time(a.value_ + b.value_);
  }
  Time& operator+=(const Time& o) { return *this = *this + o; }

  friend bool operator==(const Time& a, const Time& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Time& a, const Time& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Time& t) { return os << t.str(); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline Time min(const Time& a, const Time& b) { return b < a ? b : a; }

}  // namespace ddt

template <>
struct std::hash<ddt::Rational> {
  std::size_t operator()(const ddt::Rational& r) const { return r.hash(); }
};
