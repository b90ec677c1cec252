#include "farekit/price_function.hpp"

#include <cmath>
#include <numeric>

namespace farekit {

price_function::price_function(std::vector<double> table, tail_kind tail, double slope)
    : table_(std::move(table)), tail_(tail), slope_(slope) {
  if (table_.empty()) {
    throw configuration_error("price table must not be empty");
  }
  for (double v : table_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw configuration_error("price table entries must be finite nonnegative reals");
    }
  }
  if (tail_ == tail_kind::constant) {
    slope_ = 0.0;
  } else if (!(slope_ >= 0.0) || !std::isfinite(slope_)) {
    throw configuration_error("affine tail slope must be a finite nonnegative real");
  }
}

double price_function::operator()(int k) const {
  if (k < 0) {
    throw configuration_error("zone count must be nonnegative");
  }
  if (k == 0) return 0.0;
  const int m = table_size();
  if (k <= m) return table_[static_cast<size_t>(k - 1)];
  if (tail_ == tail_kind::constant) return table_.back();
  return table_.back() + static_cast<double>(k - m) * slope_;
}

bool price_function::is_increasing() const {
  for (size_t i = 0; i + 1 < table_.size(); ++i) {
    if (table_[i] > table_[i + 1]) return false;
  }
  return true;  // both tail rules are nondecreasing (slope >= 0)
}

bool price_function::is_strictly_increasing() const {
  for (size_t i = 0; i + 1 < table_.size(); ++i) {
    if (!(table_[i] < table_[i + 1])) return false;
  }
  return tail_ == tail_kind::affine && slope_ > 0.0;
}

bool price_function::is_subadditive_zone_border(int k_max) const {
  const auto& p = *this;
  for (int k = 3; k <= k_max; ++k) {
    for (int i = 2; i <= (k + 1) / 2; ++i) {
      if (p(k) > p(i) + p(k - i + 1)) return false;
    }
  }
  return true;
}

price_function price_function::linear(int upto) {
  std::vector<double> t(static_cast<size_t>(upto));
  std::iota(t.begin(), t.end(), 1.0);
  return price_function(std::move(t), tail_kind::affine, 1.0);
}

}  // namespace farekit
