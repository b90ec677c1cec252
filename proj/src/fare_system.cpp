#include "farekit/fare_system.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace farekit {

namespace {

const zone_structure& need_zones(const zone_structure* zs, const char* who) {
  if (!zs) {
    throw configuration_error(std::string(who) + " needs a zone structure");
  }
  return *zs;
}

void need_partition(const zone_structure& zs, const char* who) {
  if (zs.mode() != zone_structure::mode_t::partition) {
    throw configuration_error(std::string(who) + " requires a zone partition, got a cover");
  }
}

}  // namespace

fare_system fare_system::distance(double base, double per_km) {
  if (base < 0 || per_km < 0) throw configuration_error("distance tariff parameters must be >= 0");
  return fare_system(variant_t{distance_tariff{base, per_km}});
}

fare_system fare_system::beeline(double base, double per_km) {
  if (base < 0 || per_km < 0) throw configuration_error("beeline tariff parameters must be >= 0");
  return fare_system(variant_t{beeline_tariff{base, per_km}});
}

fare_system fare_system::flat(double amount) {
  if (amount < 0) throw configuration_error("flat tariff price must be >= 0");
  return fare_system(variant_t{flat_tariff{amount}});
}

fare_system fare_system::basic_zone(price_function p) {
  return fare_system(variant_t{basic_zone_tariff{std::move(p)}});
}

fare_system fare_system::metropolitan(price_function p, double metro_price) {
  if (metro_price < 0) throw configuration_error("metropolitan price must be >= 0");
  return fare_system(variant_t{metropolitan_tariff{std::move(p), metro_price}});
}

fare_system fare_system::zoa(price_function p) {
  if (!p.is_increasing()) {
    throw configuration_error("overlap-area tariffs require an increasing price function");
  }
  return fare_system(variant_t{zoa_tariff{std::move(p)}});
}

fare_system fare_system::no_double(price_function p) {
  return fare_system(variant_t{no_double_tariff{std::move(p)}});
}

fare_system fare_system::short_distance(double short_price, std::optional<int> max_stations,
                                        std::optional<double> max_length) {
  if (short_price < 0) throw configuration_error("short-distance price must be >= 0");
  if (!max_stations && !max_length) {
    throw configuration_error("short-distance tariff needs at least one finite bound");
  }
  if (max_stations && *max_stations < 1) {
    throw configuration_error("short-distance station bound must be >= 1");
  }
  if (max_length && !(*max_length > 0)) {
    throw configuration_error("short-distance length bound must be > 0");
  }
  return fare_system(variant_t{short_distance_tariff{short_price, max_stations, max_length}});
}

fare_system fare_system::combined(fare_system left, fare_system right) {
  combined_tariff c;
  c.left = std::make_shared<fare_system>(std::move(left));
  c.right = std::make_shared<fare_system>(std::move(right));
  return fare_system(variant_t{std::move(c)});
}

fare_system fare_system::bounded_distance(double base, double per_km, double cap) {
  return combined(distance(base, per_km), flat(cap));
}

fare_system fare_system::zsd(price_function p, double short_price,
                             std::optional<int> max_stations, std::optional<double> max_length) {
  if (!p.is_increasing()) {
    throw configuration_error("the zone part of a zone+short-distance tariff must be increasing");
  }
  return combined(basic_zone(std::move(p)),
                  short_distance(short_price, max_stations, max_length));
}

const char* fare_system::variant_name() const {
  struct visitor {
    const char* operator()(const distance_tariff&) const { return "distance"; }
    const char* operator()(const beeline_tariff&) const { return "beeline"; }
    const char* operator()(const flat_tariff&) const { return "flat"; }
    const char* operator()(const basic_zone_tariff&) const { return "basic_zone"; }
    const char* operator()(const metropolitan_tariff&) const { return "metropolitan_zone"; }
    const char* operator()(const zoa_tariff&) const { return "zoa"; }
    const char* operator()(const no_double_tariff&) const { return "zone_no_double"; }
    const char* operator()(const short_distance_tariff&) const { return "short_distance"; }
    const char* operator()(const combined_tariff&) const { return "combined"; }
  };
  return std::visit(visitor{}, v_);
}

bool fare_system::requires_zones() const {
  return std::visit(
      [](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, combined_tariff>) {
          return t.left->requires_zones() || t.right->requires_zones();
        } else {
          return std::is_same_v<T, basic_zone_tariff> || std::is_same_v<T, metropolitan_tariff> ||
                 std::is_same_v<T, zoa_tariff> || std::is_same_v<T, no_double_tariff>;
        }
      },
      v_);
}

bool fare_system::requires_partition() const {
  return std::visit(
      [](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, combined_tariff>) {
          return t.left->requires_partition() || t.right->requires_partition();
        } else {
          return std::is_same_v<T, basic_zone_tariff> || std::is_same_v<T, metropolitan_tariff> ||
                 std::is_same_v<T, no_double_tariff>;
        }
      },
      v_);
}

bool fare_system::requires_coordinates() const {
  return std::visit(
      [](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, combined_tariff>) {
          return t.left->requires_coordinates() || t.right->requires_coordinates();
        } else {
          return std::is_same_v<T, beeline_tariff>;
        }
      },
      v_);
}

int zone_count_basic(const ptn& g, const zone_structure& zs, const walk& w) {
  need_partition(zs, "basic zone counting");
  if (!validate_walk(g, w)) throw invalid_walk_error("node sequence is not a walk");
  int borders = 0;
  for (size_t i = 0; i + 1 < w.nodes.size(); ++i) {
    borders += zs.border_weight(w.nodes[i], w.nodes[i + 1]);
  }
  return 1 + borders;
}

int zone_count_no_double(const ptn& g, const zone_structure& zs, const walk& w) {
  need_partition(zs, "distinct-zone counting");
  if (!validate_walk(g, w)) throw invalid_walk_error("node sequence is not a walk");
  std::vector<char> seen(static_cast<size_t>(zs.zone_count()), 0);
  int count = 0;
  for (int v : w.nodes) {
    int z = zs.zone_of(v);
    if (!seen[static_cast<size_t>(z)]) {
      seen[static_cast<size_t>(z)] = 1;
      ++count;
    }
  }
  return count;
}

zoa_assignment minimal_zone_assignment(const ptn& g, const zone_structure& zs, const walk& w) {
  if (!validate_walk(g, w)) throw invalid_walk_error("node sequence is not a walk");
  const int n = w.size();
  // Layered instance of the overlaps-resolved shortest path, one layer per
  // visit so that revisited nodes can take different zones.
  std::vector<std::vector<int>> cost(static_cast<size_t>(n));
  std::vector<std::vector<int>> back(static_cast<size_t>(n));
  const int inf = std::numeric_limits<int>::max() / 2;

  const auto& first_zones = zs.zones_of(w.nodes[0]);
  cost[0].assign(first_zones.size(), 0);
  back[0].assign(first_zones.size(), -1);
  for (int i = 1; i < n; ++i) {
    const auto& prev_zones = zs.zones_of(w.nodes[static_cast<size_t>(i - 1)]);
    const auto& cur_zones = zs.zones_of(w.nodes[static_cast<size_t>(i)]);
    cost[static_cast<size_t>(i)].assign(cur_zones.size(), inf);
    back[static_cast<size_t>(i)].assign(cur_zones.size(), -1);
    for (size_t c = 0; c < cur_zones.size(); ++c) {
      for (size_t p = 0; p < prev_zones.size(); ++p) {
        int step = cost[static_cast<size_t>(i - 1)][p] + (prev_zones[p] == cur_zones[c] ? 0 : 1);
        if (step < cost[static_cast<size_t>(i)][c]) {
          cost[static_cast<size_t>(i)][c] = step;
          back[static_cast<size_t>(i)][c] = static_cast<int>(p);
        }
      }
    }
  }

  size_t pick = 0;
  const auto& last = cost[static_cast<size_t>(n - 1)];
  for (size_t c = 1; c < last.size(); ++c) {
    if (last[c] < last[pick]) pick = c;  // ties keep the smallest zone index
  }

  zoa_assignment out;
  out.count = 1 + last[pick];
  out.zones.assign(static_cast<size_t>(n), -1);
  int c = static_cast<int>(pick);
  for (int i = n - 1; i >= 0; --i) {
    out.zones[static_cast<size_t>(i)] = zs.zones_of(w.nodes[static_cast<size_t>(i)])[static_cast<size_t>(c)];
    c = back[static_cast<size_t>(i)][static_cast<size_t>(c)];
  }
  return out;
}

int zone_count_zoa(const ptn& g, const zone_structure& zs, const walk& w) {
  return minimal_zone_assignment(g, zs, w).count;
}

price metropolitan_price(const price_function& p, double metro_price, const ptn& g,
                         const zone_structure& zs, const walk& w) {
  need_partition(zs, "metropolitan tariff");
  if (!zs.has_metropolitan()) {
    throw configuration_error("metropolitan tariff needs a metropolitan zone set");
  }
  bool included = true;
  for (int v : w.nodes) {
    if (!zs.node_in_metropolitan(v)) {
      included = false;
      break;
    }
  }
  if (included) return price::of(metro_price);
  return price::of(p(zone_count_basic(g, zs, w)));
}

bool is_short_distance_walk(const ptn& g, const walk& w, std::optional<int> max_stations,
                            std::optional<double> max_length) {
  if (max_stations && station_count(w) > *max_stations) return false;
  if (max_length && walk_length(g, w) > *max_length) return false;
  return true;
}

price short_distance_price(double short_price, std::optional<int> max_stations,
                           std::optional<double> max_length, const ptn& g, const walk& w) {
  if (!validate_walk(g, w)) throw invalid_walk_error("node sequence is not a walk");
  return is_short_distance_walk(g, w, max_stations, max_length) ? price::of(short_price)
                                                                : price::infinite();
}

std::optional<int> zsd_threshold(const price_function& p, double short_price, int horizon) {
  // largest K with P(K) <= P_S < P(K+1); P(0) = 0 covers P_S below P(1)
  for (int k = 0; k <= horizon; ++k) {
    if (p(k + 1) > short_price) return k;
  }
  return std::nullopt;
}

price zsd_price_min_form(const price_function& p, double short_price,
                         std::optional<int> max_stations, std::optional<double> max_length,
                         const ptn& g, const zone_structure& zs, const walk& w) {
  price zone = price::of(p(zone_count_basic(g, zs, w)));
  if (is_short_distance_walk(g, w, max_stations, max_length)) {
    return price::min(price::of(short_price), zone);
  }
  return zone;
}

price zsd_price_threshold_form(const price_function& p, double short_price,
                               std::optional<int> max_stations, std::optional<double> max_length,
                               const ptn& g, const zone_structure& zs, const walk& w) {
  const int z = zone_count_basic(g, zs, w);
  auto k = zsd_threshold(p, short_price, std::max(z, p.default_horizon()));
  if (k && z > *k && is_short_distance_walk(g, w, max_stations, max_length)) {
    return price::of(short_price);
  }
  return price::of(p(z));
}

price fare_system::price_of(const ptn& g, const zone_structure* zones, const walk& w) const {
  return price_with_provenance(g, zones, w).value;
}

fare_system::priced fare_system::price_with_provenance(const ptn& g, const zone_structure* zones,
                                                       const walk& w) const {
  if (!validate_walk(g, w)) throw invalid_walk_error("node sequence is not a walk");

  struct visitor {
    const ptn& g;
    const zone_structure* zs;
    const walk& w;

    priced operator()(const distance_tariff& t) const {
      return {price::of(t.base + t.per_km * walk_length(g, w)), "distance"};
    }
    priced operator()(const beeline_tariff& t) const {
      return {price::of(t.base + t.per_km * beeline_distance(g, w)), "beeline"};
    }
    priced operator()(const flat_tariff& t) const { return {price::of(t.amount), "flat"}; }
    priced operator()(const basic_zone_tariff& t) const {
      return {price::of(t.prices(zone_count_basic(g, need_zones(zs, "basic zone tariff"), w))),
              "basic_zone"};
    }
    priced operator()(const metropolitan_tariff& t) const {
      return {metropolitan_price(t.prices, t.metro_price, g,
                                 need_zones(zs, "metropolitan tariff"), w),
              "metropolitan_zone"};
    }
    priced operator()(const zoa_tariff& t) const {
      return {price::of(t.prices(zone_count_zoa(g, need_zones(zs, "overlap-area tariff"), w))),
              "zoa"};
    }
    priced operator()(const no_double_tariff& t) const {
      const auto& z = need_zones(zs, "zone tariff without double counting");
      return {price::of(t.prices(zone_count_no_double(g, z, w))), "zone_no_double"};
    }
    priced operator()(const short_distance_tariff& t) const {
      return {short_distance_price(t.short_price, t.max_stations, t.max_length, g, w),
              "short_distance"};
    }
    priced operator()(const combined_tariff& c) const {
      priced l = c.left->price_with_provenance(g, zs, w);
      priced r = c.right->price_with_provenance(g, zs, w);
      if (l.value <= r.value) return {l.value, "left." + l.chosen};
      return {r.value, "right." + r.chosen};
    }
  };
  return std::visit(visitor{g, zones, w}, v_);
}

price fare_system::ticket_price(const ptn& g, const zone_structure* zones, const ticket& t) const {
  price total = price::of(0.0);
  for (const auto& seg : t.segments) {
    total = total + price_of(g, zones, seg);
  }
  return total;
}

}  // namespace farekit
