#include "farekit/instance_gen.hpp"

#include <algorithm>
#include <numeric>

namespace farekit {

std::uint64_t test_rng::next() {
  // splitmix64; stable across platforms, unlike the stdlib distributions
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int test_rng::uniform(int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double test_rng::real01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ptn random_connected_ptn(test_rng& rng, const gen_options& opt) {
  const int n = rng.uniform(opt.min_nodes, opt.max_nodes);
  std::vector<node> nodes;
  nodes.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::string id = "n" + std::string(i + 1 < 10 ? "0" : "") + std::to_string(i + 1);
    node nd{id, node_kind::station, {}};
    if (opt.with_coordinates) {
      nd.pos = std::array<double, 2>{static_cast<double>(rng.uniform(0, 9)),
                                     static_cast<double>(rng.uniform(0, 9))};
    }
    nodes.push_back(std::move(nd));
  }
  std::vector<edge> edges;
  for (int v = 1; v < n; ++v) {
    edges.push_back(edge{rng.uniform(0, v - 1), v,
                         static_cast<double>(rng.uniform(1, opt.max_length))});
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool present = false;
      for (const auto& e : edges) {
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) {
          present = true;
          break;
        }
      }
      if (!present && rng.chance(opt.extra_edge_prob * 2.0 / n)) {
        edges.push_back(edge{a, b, static_cast<double>(rng.uniform(1, opt.max_length))});
      }
    }
  }
  return ptn(std::move(nodes), std::move(edges));
}

namespace {

std::string zone_label(int z) { return std::string(1, static_cast<char>('A' + z)); }

zone_structure from_assignment(const ptn& g, const std::vector<int>& zone_of, int zones) {
  std::vector<std::pair<std::string, std::vector<std::string>>> table(
      static_cast<size_t>(zones));
  for (int z = 0; z < zones; ++z) table[static_cast<size_t>(z)].first = zone_label(z);
  for (int v = 0; v < g.node_count(); ++v) {
    table[static_cast<size_t>(zone_of[static_cast<size_t>(v)])].second.push_back(g.node_at(v).id);
  }
  return zone_structure(g, table);
}

}  // namespace

zone_structure random_partition(test_rng& rng, const ptn& g, int zones) {
  zones = std::min(zones, g.node_count());
  std::vector<int> zone_of(static_cast<size_t>(g.node_count()));
  for (auto& z : zone_of) z = rng.uniform(0, zones - 1);
  // repair empty zones by stealing from the largest one
  for (int z = 0; z < zones; ++z) {
    if (std::count(zone_of.begin(), zone_of.end(), z) > 0) continue;
    std::vector<int> tally(static_cast<size_t>(zones), 0);
    for (int x : zone_of) ++tally[static_cast<size_t>(x)];
    const int donor = static_cast<int>(std::max_element(tally.begin(), tally.end()) - tally.begin());
    for (auto& x : zone_of) {
      if (x == donor) {
        x = z;
        break;
      }
    }
  }
  return from_assignment(g, zone_of, zones);
}

zone_structure random_connected_partition(test_rng& rng, const ptn& g, int zones) {
  const int n = g.node_count();
  zones = std::min(zones, n);
  std::vector<int> zone_of(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> frontier(static_cast<size_t>(zones));
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<size_t>(i)],
                                            order[static_cast<size_t>(rng.uniform(0, i))]);
  for (int z = 0; z < zones; ++z) {
    zone_of[static_cast<size_t>(order[static_cast<size_t>(z)])] = z;
    frontier[static_cast<size_t>(z)].push_back(order[static_cast<size_t>(z)]);
  }
  int assigned = zones;
  while (assigned < n) {
    const int z = rng.uniform(0, zones - 1);
    bool grew = false;
    for (int tries = 0; tries < zones && !grew; ++tries) {
      const int zz = (z + tries) % zones;
      auto& fr = frontier[static_cast<size_t>(zz)];
      for (size_t fi = 0; fi < fr.size(); ++fi) {
        for (const auto& [w, e] : g.neighbors(fr[fi])) {
          (void)e;
          if (zone_of[static_cast<size_t>(w)] < 0) {
            zone_of[static_cast<size_t>(w)] = zz;
            fr.push_back(w);
            ++assigned;
            grew = true;
            break;
          }
        }
        if (grew) break;
      }
    }
    if (!grew) break;  // all frontiers exhausted (cannot happen on a connected graph)
  }
  for (auto& z : zone_of) {
    if (z < 0) z = 0;
  }
  return from_assignment(g, zone_of, zones);
}

zone_structure random_one_disconnected(test_rng& rng, const ptn& g, int zones) {
  zones = std::max(zones, 2);
  for (int attempt = 0; attempt < 30; ++attempt) {
    const int regions = std::min(zones + 1, g.node_count());
    if (regions < 3) break;
    zone_structure grown = random_connected_partition(rng, g, regions);
    // merge the last region into a random earlier zone; if the union is
    // disconnected we are done
    const int into = rng.uniform(0, regions - 2);
    std::vector<int> zone_of(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) {
      int z = grown.zones_of(v).front();
      if (z == regions - 1) z = into;
      zone_of[static_cast<size_t>(v)] = z;
    }
    zone_structure merged = from_assignment(g, zone_of, regions - 1);
    auto disc = disconnected_zones(g, merged);
    if (disc.size() == 1) return merged;
  }
  return random_connected_partition(rng, g, zones);
}

zone_structure random_cover(test_rng& rng, const ptn& g, int zones, double overlap_prob) {
  zones = std::min(zones, g.node_count());
  zone_structure base = random_connected_partition(rng, g, zones);
  std::vector<std::pair<std::string, std::vector<std::string>>> table(
      static_cast<size_t>(zones));
  for (int z = 0; z < zones; ++z) table[static_cast<size_t>(z)].first = zone_label(z);
  for (int v = 0; v < g.node_count(); ++v) {
    const int own = base.zones_of(v).front();
    table[static_cast<size_t>(own)].second.push_back(g.node_at(v).id);
    if (zones > 1 && rng.chance(overlap_prob)) {
      int extra = rng.uniform(0, zones - 2);
      if (extra >= own) ++extra;
      table[static_cast<size_t>(extra)].second.push_back(g.node_at(v).id);
    }
  }
  return zone_structure(g, table);
}

std::vector<std::string> random_metropolitan(test_rng& rng, const ptn& g,
                                             const zone_structure& zs, int want_zones) {
  const int zones = zs.zone_count();
  want_zones = std::min(want_zones, zones);
  // grow over the zone adjacency graph so the union stays connected
  std::vector<std::vector<char>> adjacent(static_cast<size_t>(zones),
                                          std::vector<char>(static_cast<size_t>(zones), 0));
  for (const auto& e : g.edges()) {
    const int za = zs.zones_of(e.a).front();
    const int zb = zs.zones_of(e.b).front();
    adjacent[static_cast<size_t>(za)][static_cast<size_t>(zb)] = 1;
    adjacent[static_cast<size_t>(zb)][static_cast<size_t>(za)] = 1;
  }
  std::vector<int> picked{rng.uniform(0, zones - 1)};
  while (static_cast<int>(picked.size()) < want_zones) {
    std::vector<int> candidates;
    for (int z = 0; z < zones; ++z) {
      if (std::find(picked.begin(), picked.end(), z) != picked.end()) continue;
      for (int q : picked) {
        if (adjacent[static_cast<size_t>(q)][static_cast<size_t>(z)]) {
          candidates.push_back(z);
          break;
        }
      }
    }
    if (candidates.empty()) break;
    picked.push_back(candidates[static_cast<size_t>(rng.uniform(
        0, static_cast<int>(candidates.size()) - 1))]);
  }
  std::vector<std::string> names;
  for (int z : picked) names.push_back(zs.zone_name(z));
  return names;
}

price_function random_price_function(test_rng& rng, price_family family, int table_len) {
  std::vector<double> t(static_cast<size_t>(table_len));
  auto tail = price_function::tail_kind::constant;
  double slope = 0.0;
  switch (family) {
    case price_family::affine_increasing: {
      const double f = rng.uniform(0, 3);
      const double per = rng.uniform(0, 3);
      for (int k = 1; k <= table_len; ++k) t[static_cast<size_t>(k - 1)] = f + per * k;
      tail = price_function::tail_kind::affine;
      slope = per;
      break;
    }
    case price_family::concave_increasing: {
      double v = rng.uniform(1, 4);
      double step = rng.uniform(1, 4);
      for (int k = 1; k <= table_len; ++k) {
        t[static_cast<size_t>(k - 1)] = v;
        v += step;
        step = step * 0.5 + 0.5 * rng.real01() * step;
      }
      break;
    }
    case price_family::random_increasing: {
      double v = rng.uniform(1, 3);
      for (int k = 1; k <= table_len; ++k) {
        t[static_cast<size_t>(k - 1)] = v;
        v += rng.uniform(0, 3);
      }
      if (rng.chance(0.5)) {
        tail = price_function::tail_kind::affine;
        slope = rng.uniform(0, 2);
      }
      break;
    }
    case price_family::spiky: {
      double v = rng.uniform(1, 2);
      const int jump_at = rng.uniform(2, table_len);
      for (int k = 1; k <= table_len; ++k) {
        if (k == jump_at) v += rng.uniform(5, 9);
        t[static_cast<size_t>(k - 1)] = v;
        v += rng.real01();
      }
      break;
    }
    case price_family::decreasing: {
      double v = rng.uniform(5, 9);
      for (int k = 1; k <= table_len; ++k) {
        t[static_cast<size_t>(k - 1)] = v;
        v = std::max(0.0, v - rng.uniform(0, 2));
      }
      break;
    }
  }
  return price_function(std::move(t), tail, slope);
}

}  // namespace farekit
