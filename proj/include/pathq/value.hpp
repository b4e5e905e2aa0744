/// @file value.hpp
/// Tagged data values stored in graph properties, and exact rational
/// arithmetic used by the constraint solver.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

namespace pathq {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact rational over 64-bit integers, always normalized (den > 0, gcd 1).
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integral() const { return den_ == 1; }

  Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw error("rational division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rat& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  /// Largest integer <= value.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  /// Smallest integer >= value.
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ == 0) throw error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }
  long long num_;
  long long den_;
};

/// Minutes-since-midnight time of day. Kept distinct from plain integers so
/// that strict value equality can distinguish the tags.
struct TimeOfDay {
  long long minutes = 0;
  bool operator==(const TimeOfDay& o) const { return minutes == o.minutes; }
};

enum class ValueTag { Int, Rational, Text, Time, Bool };

/// A stored property value: integer, rational, text, time of day, or boolean.
class Value {
 public:
  Value() : v_(static_cast<long long>(0)) {}
  static Value integer(long long n) { return Value(n); }
  static Value rational(Rat r) { return Value(std::move(r)); }
  static Value text(std::string s) { return Value(std::move(s)); }
  static Value time(long long minutes) {
    if (minutes < 0) throw error("time-of-day value must be nonnegative");
    return Value(TimeOfDay{minutes});
  }
  static Value boolean(bool b) { return Value(b); }

  ValueTag tag() const { return static_cast<ValueTag>(v_.index()); }

  bool is_numeric() const {
    return tag() == ValueTag::Int || tag() == ValueTag::Rational || tag() == ValueTag::Time;
  }
  /// Numeric view of int/rational/time values; throws on text/bool.
  Rat as_rat() const {
    switch (tag()) {
      case ValueTag::Int: return Rat(std::get<long long>(v_));
      case ValueTag::Rational: return std::get<Rat>(v_);
      case ValueTag::Time: return Rat(std::get<TimeOfDay>(v_).minutes);
      default: throw error("value is not numeric");
    }
  }
  const std::string& as_text() const {
    if (tag() != ValueTag::Text) throw error("value is not text");
    return std::get<std::string>(v_);
  }
  bool as_bool() const {
    if (tag() != ValueTag::Bool) throw error("value is not boolean");
    return std::get<bool>(v_);
  }
  long long as_int() const {
    if (tag() == ValueTag::Int) return std::get<long long>(v_);
    if (tag() == ValueTag::Time) return std::get<TimeOfDay>(v_).minutes;
    throw error("value is not an integer");
  }

  /// Strict equality: defined within each tag, false across tags.
  bool operator==(const Value& o) const { return v_ == o.v_; }
  bool operator!=(const Value& o) const { return !(*this == o); }

  std::string str() const {
    switch (tag()) {
      case ValueTag::Int: return std::to_string(std::get<long long>(v_));
      case ValueTag::Rational: return std::get<Rat>(v_).str();
      case ValueTag::Text: return "\"" + std::get<std::string>(v_) + "\"";
      case ValueTag::Time: return std::to_string(std::get<TimeOfDay>(v_).minutes) + "m";
      case ValueTag::Bool: return std::get<bool>(v_) ? "true" : "false";
    }
    return "?";
  }

 private:
  explicit Value(long long n) : v_(n) {}
  explicit Value(Rat r) : v_(std::move(r)) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(TimeOfDay t) : v_(t) {}
  explicit Value(bool b) : v_(b) {}
  std::variant<long long, Rat, std::string, TimeOfDay, bool> v_;
};

}  // namespace pathq
