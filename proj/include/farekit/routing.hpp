#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "farekit/fare_system.hpp"
#include "farekit/price.hpp"
#include "farekit/ptn.hpp"
#include "farekit/ticket.hpp"
#include "farekit/zones.hpp"

namespace farekit {

struct route_result {
  walk path;
  price cost;
  std::string tariff;  // pricing provenance, see fare_system::priced
  int zone_count = 0;  // z / z-bar of the walk for zone tariffs, 0 otherwise
  std::optional<std::vector<int>> zone_assignment;  // per-visit zones (overlap tariffs)
};

struct routing_limits {
  long long max_states = 4'000'000;  // exact-solver state budget
  bool compact_overlaps = false;     // drop single-membership plain vertices
};

// Shortest path by traveled length; price base + per_km * l. Ties are broken
// by fewer edges, then lexicographic node id sequence (as everywhere below).
route_result cheapest_path_distance(const ptn& g, double base, double per_km, int from, int to);

// Any path is cheapest for flat and beeline tariffs; returns a breadth-first
// (fewest edges) path.
route_result cheapest_path_flat(const ptn& g, double amount, int from, int to);
route_result cheapest_path_beeline(const ptn& g, double base, double per_km, int from, int to);

// Shortest path with zone border weights; price P(z). Requires a partition
// and an increasing price function.
route_result cheapest_path_basic_zone(const ptn& g, const zone_structure& zs,
                                      const price_function& p, int from, int to);

// Metropolitan dispatch: a path inside the metropolitan zone at the flat
// metro price when one exists, otherwise the basic-zone route. Optimal for
// metro_price <= P(3).
route_result cheapest_path_metropolitan(const ptn& g, const zone_structure& zs,
                                        const price_function& p, double metro_price,
                                        int from, int to);

// For metro_price > P(3) and both endpoints inside the metropolitan zone: the
// cheapest route may leave the zone. Compares the inside price against the
// best stitched leaving route (shortest border-weight trees from both ends
// joined across each boundary edge).
route_result cheapest_path_metropolitan_pm_gt_p3(const ptn& g, const zone_structure& zs,
                                                 const price_function& p, double metro_price,
                                                 int from, int to);

struct priced_ticket {
  ticket t;
  price cost;
};

// Cheapest of the standard ticket and a single-elongation ticket for a trip
// inside the metropolitan zone (relevant when metro_price > P(2)).
priced_ticket metropolitan_elongated_ticket(const ptn& g, const zone_structure& zs,
                                            const price_function& p, double metro_price,
                                            int from, int to);

// Maximum over node pairs inside the metropolitan zone of the minimal zone
// count among connecting walks that stay inside. `stations_only` restricts
// the pairs to station nodes.
int compute_d_max(const ptn& g, const zone_structure& zs, bool stations_only = false);

// Auxiliary graph resolving overlap areas: one vertex per (node, zone)
// membership plus (unless compacted away for single-zone nodes) one plain
// vertex per node attached by weight-1 edges.
struct overlaps_resolved_graph {
  struct vertex {
    int ptn_node = 0;
    int zone = -1;  // -1 for plain copies
  };
  std::vector<vertex> vertices;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (target vertex, weight)
  std::vector<int> plain_of;                          // ptn node -> plain vertex or -1
  std::vector<std::vector<int>> copies_of;            // ptn node -> membership vertices
  long long edge_total = 0;
  bool compact = false;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  long long edge_count() const { return edge_total; }
};

// With `compact`, plain vertices of single-zone nodes are dropped.
overlaps_resolved_graph build_overlaps_resolved(const ptn& g, const zone_structure& zs,
                                                bool compact = false);

// Shortest path in the overlaps-resolved graph, projected back to a walk with
// its minimal assignment; price P(zone count). Cover mode allowed.
route_result cheapest_path_zoa(const ptn& g, const zone_structure& zs, const price_function& p,
                               int from, int to, bool compact = false);

// Minimal per-visit assignment of a given walk (re-exported from fare_system).
std::pair<std::vector<int>, int> minimal_assignment(const ptn& g, const zone_structure& zs,
                                                    const walk& w);

// Zone tariff without double counting when every zone induces a connected
// subgraph: the border-weight shortest path already minimizes distinct zones.
route_result cheapest_path_no_double_connected(const ptn& g, const zone_structure& zs,
                                               const price_function& p, int from, int to);

// Exactly one disconnected zone with k components: directed search where
// entering that zone costs 1/k of a border. Weights are integers scaled by k,
// so the ceiling recovery of the distinct-zone count is exact.
route_result cheapest_path_one_disconnected(const ptn& g, const zone_structure& zs,
                                            const price_function& p, int disconnected_zone,
                                            int from, int to);

enum class search_status { optimal, budget_exhausted };

struct mzp_result {
  search_status status = search_status::optimal;
  walk path;
  int distinct_zones = 0;
  std::optional<bool> decision;  // set when a budget K was given
  long long states_expanded = 0;
};

// Exact minimum distinct-zone walk via best-first search over
// (node, visited-zone-set) states with subset dominance pruning. Exponential
// in the worst case; intended for instances with at most ~20 zones. If
// `budget_k` is set, also answers the decision problem.
mzp_result mzp_exact(const ptn& g, const zone_structure& zs, int from, int to,
                     std::optional<int> budget_k = std::nullopt,
                     const routing_limits& limits = {});

struct mcsip_instance {
  std::vector<std::string> node_ids;
  struct colored_edge {
    std::string a;
    std::string b;
    std::string color;
  };
  std::vector<colored_edge> edges;
  std::string from;
  std::string to;
  int color_budget = 1;
};

struct mzp_instance {
  ptn graph;
  zone_structure zones;
  int from = 0;
  int to = 0;
  int zone_budget = 0;  // K = color budget + 1
};

// Minimum-color single-path reduction: each edge is split through a node
// carrying the edge color as its zone; original nodes share a dummy zone.
mzp_instance mcsip_to_mzp(const mcsip_instance& inst);

// Hop-bounded Bellman-Ford with layered predecessors: minimum-length walk
// from `from` to `to` using at most max_stations edges, returned only if its
// length is within max_length. Absent bounds are clamped to |V|-1 and
// max edge length * |V|.
std::optional<walk> short_distance_path(const ptn& g, std::optional<int> max_stations,
                                        std::optional<double> max_length, int from, int to);

// Zone + short-distance combination: the short-distance walk wins only if it
// exists and P_S is strictly below the best zone price.
route_result cheapest_path_zsd(const ptn& g, const zone_structure& zs, const price_function& p,
                               double short_price, std::optional<int> max_stations,
                               std::optional<double> max_length, int from, int to);

// Cheapest path for an arbitrary variant, recursing through combined tariffs
// (child-wise cheapest, left on ties).
route_result cheapest_path(const ptn& g, const zone_structure* zs, const fare_system& fs,
                           int from, int to, const routing_limits& limits = {});

}  // namespace farekit
