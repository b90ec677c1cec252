#pragma once

#include <vector>

#include "farekit/error.hpp"

namespace farekit {

// Zone price table P(1..m) plus a tail rule extending it to every k >= 1:
// either constant (repeat P(m)) or affine (P(m) + (k-m)*slope, slope >= 0).
// P(0) is defined as 0; the short-distance threshold computation relies on it.
class price_function {
 public:
  enum class tail_kind { constant, affine };

  explicit price_function(std::vector<double> table,
                          tail_kind tail = tail_kind::constant,
                          double slope = 0.0);

  double operator()(int k) const;

  int table_size() const { return static_cast<int>(table_.size()); }
  const std::vector<double>& table() const { return table_; }
  tail_kind tail() const { return tail_; }
  double slope() const { return slope_; }

  // Theorem-condition checks default to this horizon.
  int default_horizon() const { return table_size() + 3; }

  // Exact over the whole domain: table prefix plus the tail rule in closed form.
  bool is_increasing() const;
  bool is_strictly_increasing() const;
  // P(k) <= P(i) + P(k-i+1) for all k,i up to k_max (the zone-border form of
  // subadditivity). Witness-bearing evaluation lives in verify.hpp.
  bool is_subadditive_zone_border(int k_max) const;

  friend bool operator==(const price_function& a, const price_function& b) {
    return a.table_ == b.table_ && a.tail_ == b.tail_ && a.slope_ == b.slope_;
  }

  static price_function linear(int upto = 8);  // P(k) = k with affine tail

 private:
  std::vector<double> table_;
  tail_kind tail_ = tail_kind::constant;
  double slope_ = 0.0;
};

}  // namespace farekit
