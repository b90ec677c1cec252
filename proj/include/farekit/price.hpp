#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "farekit/error.hpp"

namespace farekit {

// Nonnegative extended real. Infinity is a first-class value (formal fare
// systems price out-of-bounds walks at +inf); it absorbs addition and loses
// every min.
class price {
 public:
  price() = default;
  static price of(double v) {
    if (std::isnan(v) || v < 0.0) {
      throw configuration_error("price must be a nonnegative real");
    }
    price p;
    p.v_ = v;
    return p;
  }
  static price infinite() {
    price p;
    p.v_ = std::numeric_limits<double>::infinity();
    return p;
  }

  bool is_infinite() const { return std::isinf(v_); }
  // Finite value; calling this on an infinite price is a programming error.
  double value() const { return v_; }

  friend price operator+(price a, price b) {
    price p;
    p.v_ = a.v_ + b.v_;
    return p;
  }
  friend bool operator==(price a, price b) { return a.v_ == b.v_; }
  friend bool operator<(price a, price b) { return a.v_ < b.v_; }
  friend bool operator<=(price a, price b) { return a.v_ <= b.v_; }
  friend bool operator>(price a, price b) { return a.v_ > b.v_; }
  friend bool operator>=(price a, price b) { return a.v_ >= b.v_; }

  static price min(price a, price b) { return a <= b ? a : b; }

  std::string to_string() const;

 private:
  double v_ = 0.0;
};

// Comparison slack for enumeration checks: a violation must clear this margin
// so that sqrt-based beeline arithmetic cannot produce spurious hits.
inline constexpr double price_check_eps = 1e-9;

// a strictly greater than b, beyond rounding noise.
inline bool definitely_greater(price a, price b) {
  if (a.is_infinite()) return !b.is_infinite();
  if (b.is_infinite()) return false;
  return a.value() > b.value() + price_check_eps;
}

}  // namespace farekit
