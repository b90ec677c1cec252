#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "farekit/price.hpp"
#include "farekit/price_function.hpp"
#include "farekit/ptn.hpp"
#include "farekit/ticket.hpp"
#include "farekit/zones.hpp"

namespace farekit {

struct distance_tariff {
  double base = 0.0;     // fixed part
  double per_km = 0.0;   // price per kilometer of traveled length
};

struct beeline_tariff {
  double base = 0.0;
  double per_km = 0.0;   // price per kilometer of endpoint airline distance
};

struct flat_tariff {
  double amount = 0.0;
};

struct basic_zone_tariff {
  price_function prices;
};

struct metropolitan_tariff {
  price_function prices;
  double metro_price = 0.0;  // flat price for walks included in the metropolitan zone
};

// Zone tariff with overlap areas; requires an increasing price function.
struct zoa_tariff {
  price_function prices;
};

struct no_double_tariff {
  price_function prices;
};

// Formal tariff: P_S inside the bounds, +inf outside. At least one bound is
// finite; an absent optional means unbounded.
struct short_distance_tariff {
  double short_price = 0.0;
  std::optional<int> max_stations;   // bound on edge count
  std::optional<double> max_length;  // bound on traveled length
};

class fare_system;

struct combined_tariff {
  std::shared_ptr<const fare_system> left;
  std::shared_ptr<const fare_system> right;
};

// One of the ten tariff variants; prices arbitrary walks. Combined tariffs
// nest arbitrarily and take the cheaper child (the left one on ties).
class fare_system {
 public:
  using variant_t =
      std::variant<distance_tariff, beeline_tariff, flat_tariff, basic_zone_tariff,
                   metropolitan_tariff, zoa_tariff, no_double_tariff,
                   short_distance_tariff, combined_tariff>;

  static fare_system distance(double base, double per_km);
  static fare_system beeline(double base, double per_km);
  static fare_system flat(double amount);
  static fare_system basic_zone(price_function p);
  static fare_system metropolitan(price_function p, double metro_price);
  static fare_system zoa(price_function p);
  static fare_system no_double(price_function p);
  static fare_system short_distance(double short_price, std::optional<int> max_stations,
                                    std::optional<double> max_length);
  static fare_system combined(fare_system left, fare_system right);
  // Distance tariff capped by a network-wide flat price.
  static fare_system bounded_distance(double base, double per_km, double cap);
  // Basic zone tariff combined with a short-distance option.
  static fare_system zsd(price_function p, double short_price,
                         std::optional<int> max_stations, std::optional<double> max_length);

  const variant_t& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }
  const char* variant_name() const;

  bool requires_zones() const;
  bool requires_partition() const;
  bool requires_coordinates() const;

  // Price of a walk. `zones` may be null for tariffs that do not use zones;
  // passing an incompatible structure raises configuration_error.
  price price_of(const ptn& g, const zone_structure* zones, const walk& w) const;

  struct priced {
    price value;
    // Variant that priced the walk; for combined tariffs a branch trail such
    // as "left.basic_zone".
    std::string chosen;
  };
  priced price_with_provenance(const ptn& g, const zone_structure* zones, const walk& w) const;

  // Sum of segment prices.
  price ticket_price(const ptn& g, const zone_structure* zones, const ticket& t) const;

 private:
  explicit fare_system(variant_t v) : v_(std::move(v)) {}
  variant_t v_;
};

// Zone count of a walk under double counting: 1 + number of crossed zone
// borders, borders counted with multiplicity. Partition mode only.
int zone_count_basic(const ptn& g, const zone_structure& zs, const walk& w);

// Number of distinct zones visited. Partition mode only.
int zone_count_no_double(const ptn& g, const zone_structure& zs, const walk& w);

struct zoa_assignment {
  std::vector<int> zones;  // chosen zone per visit, aligned with the walk
  int count = 0;           // resulting zone count (1 + minimal border sum)
};

// Minimal per-visit zone assignment of a walk under a zone cover, computed by
// shortest path over the walk-restricted overlaps-resolved layers (never by
// enumerating assignments). Revisited nodes may receive different zones.
zoa_assignment minimal_zone_assignment(const ptn& g, const zone_structure& zs, const walk& w);

int zone_count_zoa(const ptn& g, const zone_structure& zs, const walk& w);

// P_M if the walk stays inside the metropolitan zone, P(z(W)) otherwise.
price metropolitan_price(const price_function& p, double metro_price, const ptn& g,
                         const zone_structure& zs, const walk& w);

price short_distance_price(double short_price, std::optional<int> max_stations,
                           std::optional<double> max_length, const ptn& g, const walk& w);

bool is_short_distance_walk(const ptn& g, const walk& w, std::optional<int> max_stations,
                            std::optional<double> max_length);

// Largest K with P(K) <= P_S < P(K+1), using P(0) = 0. Returns nullopt when
// P_S dominates the whole function up to `horizon` (the short-distance option
// then never beats the zone tariff on that range).
std::optional<int> zsd_threshold(const price_function& p, double short_price, int horizon);

// The two equivalent forms of the combined zone + short-distance price; the
// min form is the operational definition, the threshold form re-expresses it
// through the K threshold. They agree exactly on every walk.
price zsd_price_min_form(const price_function& p, double short_price,
                         std::optional<int> max_stations, std::optional<double> max_length,
                         const ptn& g, const zone_structure& zs, const walk& w);
price zsd_price_threshold_form(const price_function& p, double short_price,
                               std::optional<int> max_stations, std::optional<double> max_length,
                               const ptn& g, const zone_structure& zs, const walk& w);

}  // namespace farekit
