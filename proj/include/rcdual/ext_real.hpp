#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rcdual {

/// A value on the extended real line R u {+inf, -inf}.
///
/// +inf and -inf are explicit tags, not IEEE infinities, so that the one
/// combination with no meaning here (+inf plus -inf) can be rejected as a
/// programming error instead of propagating as NaN.
class ExtReal {
 public:
  enum class Tag { Finite, PlusInf, MinusInf };

  ExtReal() : tag_(Tag::Finite), v_(0.0) {}

  static ExtReal finite(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("ExtReal::finite: value is not finite");
    ExtReal e;
    e.tag_ = Tag::Finite;
    e.v_ = v;
    return e;
  }
  static ExtReal plus_inf() {
    ExtReal e;
    e.tag_ = Tag::PlusInf;
    return e;
  }
  static ExtReal minus_inf() {
    ExtReal e;
    e.tag_ = Tag::MinusInf;
    return e;
  }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_plus_inf() const { return tag_ == Tag::PlusInf; }
  bool is_minus_inf() const { return tag_ == Tag::MinusInf; }

  /// Finite payload; only meaningful when is_finite().
  double value() const {
    if (!is_finite()) throw std::logic_error("ExtReal::value: not finite");
    return v_;
  }

  /// Lossy conversion for ordering/printing: infinities map to IEEE inf.
  double as_double() const {
    switch (tag_) {
      case Tag::Finite: return v_;
      case Tag::PlusInf: return std::numeric_limits<double>::infinity();
      case Tag::MinusInf: return -std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if ((a.is_plus_inf() && b.is_minus_inf()) || (a.is_minus_inf() && b.is_plus_inf()))
      throw std::logic_error("ExtReal: +inf plus -inf has no value; this is a bug in the caller");
    if (a.is_plus_inf() || b.is_plus_inf()) return plus_inf();
    if (a.is_minus_inf() || b.is_minus_inf()) return minus_inf();
    return finite(a.v_ + b.v_);
  }

  friend ExtReal operator-(const ExtReal& a) {
    switch (a.tag_) {
      case Tag::Finite: return finite(-a.v_);
      case Tag::PlusInf: return minus_inf();
      case Tag::MinusInf: return plus_inf();
    }
    return a;
  }

  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  /// Scaling by a positive constant (keeps infinities).
  ExtReal scaled(double s) const {
    if (s <= 0.0) throw std::invalid_argument("ExtReal::scaled: factor must be > 0");
    return is_finite() ? finite(s * v_) : *this;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::Finite || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    return a.as_double() < b.as_double();
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  std::string str() const {
    switch (tag_) {
      case Tag::PlusInf: return "+inf";
      case Tag::MinusInf: return "-inf";
      default: return std::to_string(v_);
    }
  }

 private:
  Tag tag_;
  double v_ = 0.0;
};

inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

}  // namespace rcdual
