#include "farekit/routing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace farekit {

namespace {

template <class W>
struct search_label {
  W dist{};
  int hops = 0;
  std::vector<int> seq;
};

template <class W>
bool label_less(const search_label<W>& a, const search_label<W>& b,
                const std::vector<int>& rank) {
  if (a.dist != b.dist) return a.dist < b.dist;
  if (a.hops != b.hops) return a.hops < b.hops;
  const size_t n = std::min(a.seq.size(), b.seq.size());
  for (size_t i = 0; i < n; ++i) {
    const int ra = rank[static_cast<size_t>(a.seq[i])];
    const int rb = rank[static_cast<size_t>(b.seq[i])];
    if (ra != rb) return ra < rb;
  }
  return a.seq.size() < b.seq.size();
}

// Dijkstra settling every reachable vertex, deterministic: labels are ordered
// by (distance, hop count, rank-lexicographic vertex sequence). Weights must
// be nonnegative. `arcs(v, emit)` calls emit(target, weight) per outgoing arc.
template <class W, class Arcs>
std::vector<std::optional<search_label<W>>> settle_all(int n, int source, const Arcs& arcs,
                                                       const std::vector<int>& rank) {
  auto heap_cmp = [&rank](const search_label<W>& a, const search_label<W>& b) {
    return label_less(b, a, rank);
  };
  std::priority_queue<search_label<W>, std::vector<search_label<W>>, decltype(heap_cmp)> pq(
      heap_cmp);
  std::vector<std::optional<search_label<W>>> done(static_cast<size_t>(n));
  pq.push(search_label<W>{W{}, 0, {source}});
  int settled = 0;
  while (!pq.empty() && settled < n) {
    search_label<W> cur = pq.top();
    pq.pop();
    const int v = cur.seq.back();
    if (done[static_cast<size_t>(v)]) continue;
    done[static_cast<size_t>(v)] = cur;
    ++settled;
    arcs(v, [&](int w, W weight) {
      if (done[static_cast<size_t>(w)]) return;
      search_label<W> nxt;
      nxt.dist = cur.dist + weight;
      nxt.hops = cur.hops + 1;
      nxt.seq = cur.seq;
      nxt.seq.push_back(w);
      pq.push(std::move(nxt));
    });
  }
  return done;
}

std::vector<int> id_ranks(const ptn& g) {
  std::vector<int> rank(static_cast<size_t>(g.node_count()));
  for (int v = 0; v < g.node_count(); ++v) rank[static_cast<size_t>(v)] = g.id_rank(v);
  return rank;
}

template <class W, class WeightFn>
search_label<W> ptn_best_path(const ptn& g, int from, int to, const WeightFn& wf) {
  auto arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) emit(w, wf(e, v, w));
  };
  auto done = settle_all<W>(g.node_count(), from, arcs, id_ranks(g));
  if (!done[static_cast<size_t>(to)]) {
    throw invalid_reference_error("no route between the requested nodes");
  }
  return *done[static_cast<size_t>(to)];
}

void check_endpoints(const ptn& g, int from, int to) {
  if (from < 0 || from >= g.node_count() || to < 0 || to >= g.node_count()) {
    throw invalid_reference_error("route endpoint out of range");
  }
}

void need_increasing(const price_function& p, const char* who) {
  if (!p.is_increasing()) {
    throw configuration_error(std::string(who) +
                              " routing requires an increasing price function");
  }
}

route_result finish(const ptn& g, const zone_structure* zs, const fare_system& fs, walk w,
                    int zone_count = 0, std::optional<std::vector<int>> assignment = {}) {
  auto priced = fs.price_with_provenance(g, zs, w);
  route_result r;
  r.path = std::move(w);
  r.cost = priced.value;
  r.tariff = std::move(priced.chosen);
  r.zone_count = zone_count;
  r.zone_assignment = std::move(assignment);
  return r;
}

}  // namespace

route_result cheapest_path_distance(const ptn& g, double base, double per_km, int from, int to) {
  check_endpoints(g, from, to);
  auto lab = ptn_best_path<double>(g, from, to,
                                   [&](int e, int, int) { return g.edge_at(e).length; });
  return finish(g, nullptr, fare_system::distance(base, per_km), walk(std::move(lab.seq)));
}

route_result cheapest_path_flat(const ptn& g, double amount, int from, int to) {
  check_endpoints(g, from, to);
  auto lab = ptn_best_path<long long>(g, from, to, [](int, int, int) { return 1LL; });
  return finish(g, nullptr, fare_system::flat(amount), walk(std::move(lab.seq)));
}

route_result cheapest_path_beeline(const ptn& g, double base, double per_km, int from, int to) {
  check_endpoints(g, from, to);
  auto lab = ptn_best_path<long long>(g, from, to, [](int, int, int) { return 1LL; });
  return finish(g, nullptr, fare_system::beeline(base, per_km), walk(std::move(lab.seq)));
}

route_result cheapest_path_basic_zone(const ptn& g, const zone_structure& zs,
                                      const price_function& p, int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "basic zone");
  auto lab = ptn_best_path<long long>(
      g, from, to, [&](int, int a, int b) { return static_cast<long long>(zs.border_weight(a, b)); });
  walk w(std::move(lab.seq));
  const int z = static_cast<int>(lab.dist) + 1;
  return finish(g, &zs, fare_system::basic_zone(p), std::move(w), z);
}

route_result cheapest_path_metropolitan(const ptn& g, const zone_structure& zs,
                                        const price_function& p, double metro_price,
                                        int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "metropolitan");
  if (!zs.has_metropolitan()) {
    throw configuration_error("metropolitan routing needs a metropolitan zone set");
  }
  auto lab = ptn_best_path<long long>(g, from, to, [&](int, int a, int b) {
    return (zs.node_in_metropolitan(a) && zs.node_in_metropolitan(b)) ? 0LL : 1LL;
  });
  const bool included = lab.dist == 0 && zs.node_in_metropolitan(from);
  if (included) {
    walk w(std::move(lab.seq));
    const int z = zone_count_basic(g, zs, w);
    return finish(g, &zs, fare_system::metropolitan(p, metro_price), std::move(w), z);
  }
  auto zone_route = cheapest_path_basic_zone(g, zs, p, from, to);
  return finish(g, &zs, fare_system::metropolitan(p, metro_price), std::move(zone_route.path),
                zone_route.zone_count);
}

route_result cheapest_path_metropolitan_pm_gt_p3(const ptn& g, const zone_structure& zs,
                                                 const price_function& p, double metro_price,
                                                 int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "metropolitan");
  if (!zs.node_in_metropolitan(from) || !zs.node_in_metropolitan(to)) {
    throw configuration_error("both endpoints must lie inside the metropolitan zone");
  }
  const fare_system fs = fare_system::metropolitan(p, metro_price);

  // inside candidate: restrict the border-weight search to the metropolitan zone
  auto inside_arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      if (zs.node_in_metropolitan(w)) {
        emit(w, static_cast<long long>(zs.border_weight(v, w)));
      }
    }
  };
  auto inside = settle_all<long long>(g.node_count(), from, inside_arcs, id_ranks(g));
  if (!inside[static_cast<size_t>(to)]) {
    throw configuration_error("metropolitan zone does not induce a connected subgraph");
  }
  walk inside_walk(inside[static_cast<size_t>(to)]->seq);

  // leaving candidate: stitch shortest border-weight trees across a boundary edge
  auto border_arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      emit(w, static_cast<long long>(zs.border_weight(v, w)));
    }
  };
  auto from_x = settle_all<long long>(g.node_count(), from, border_arcs, id_ranks(g));
  auto from_y = settle_all<long long>(g.node_count(), to, border_arcs, id_ranks(g));

  std::optional<walk> best_leaving;
  long long best_borders = 0;
  for (const auto& e : g.edges()) {
    for (int dir = 0; dir < 2; ++dir) {
      const int u = dir == 0 ? e.a : e.b;
      const int v = dir == 0 ? e.b : e.a;
      if (!zs.node_in_metropolitan(u) || zs.node_in_metropolitan(v)) continue;
      const long long total = from_x[static_cast<size_t>(u)]->dist + 1 +
                              from_y[static_cast<size_t>(v)]->dist;
      if (!best_leaving || total < best_borders) {
        walk w(from_x[static_cast<size_t>(u)]->seq);
        w.nodes.push_back(v);
        walk back(from_y[static_cast<size_t>(v)]->seq);
        std::reverse(back.nodes.begin(), back.nodes.end());
        w.nodes.insert(w.nodes.end(), back.nodes.begin() + 1, back.nodes.end());
        best_leaving = std::move(w);
        best_borders = total;
      }
    }
  }

  const price inside_price = price::of(metro_price);
  if (best_leaving) {
    const price leaving_price = price::of(p(static_cast<int>(best_borders) + 1));
    if (leaving_price < inside_price) {
      return finish(g, &zs, fs, std::move(*best_leaving), static_cast<int>(best_borders) + 1);
    }
  }
  const int inside_z = zone_count_basic(g, zs, inside_walk);
  return finish(g, &zs, fs, std::move(inside_walk), inside_z);
}

priced_ticket metropolitan_elongated_ticket(const ptn& g, const zone_structure& zs,
                                            const price_function& p, double metro_price,
                                            int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "metropolitan");
  if (!zs.node_in_metropolitan(from) || !zs.node_in_metropolitan(to)) {
    throw configuration_error("both endpoints must lie inside the metropolitan zone");
  }
  const fare_system fs = fare_system::metropolitan(p, metro_price);

  // standard candidate (may itself leave the zone when that is cheaper)
  route_result standard = metro_price > p(3)
                              ? cheapest_path_metropolitan_pm_gt_p3(g, zs, p, metro_price, from, to)
                              : cheapest_path_metropolitan(g, zs, p, metro_price, from, to);

  // inside walk with minimal border count, to be elongated out of the zone
  auto inside_arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      if (zs.node_in_metropolitan(w)) {
        emit(w, static_cast<long long>(zs.border_weight(v, w)));
      }
    }
  };
  auto inside = settle_all<long long>(g.node_count(), from, inside_arcs, id_ranks(g));
  if (!inside[static_cast<size_t>(to)]) {
    throw configuration_error("metropolitan zone does not induce a connected subgraph");
  }
  walk inside_walk(inside[static_cast<size_t>(to)]->seq);
  const long long inside_borders = inside[static_cast<size_t>(to)]->dist;

  // cheapest outgoing extensions from either end
  auto border_arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      emit(w, static_cast<long long>(zs.border_weight(v, w)));
    }
  };
  auto reach_from = [&](int s) { return settle_all<long long>(g.node_count(), s, border_arcs, id_ranks(g)); };
  auto from_x = reach_from(from);
  auto from_y = reach_from(to);
  auto best_out = [&](const std::vector<std::optional<search_label<long long>>>& tree)
      -> std::optional<search_label<long long>> {
    std::optional<search_label<long long>> best;
    for (int v = 0; v < g.node_count(); ++v) {
      if (zs.node_in_metropolitan(v) || !tree[static_cast<size_t>(v)]) continue;
      const auto& lab = *tree[static_cast<size_t>(v)];
      if (!best || lab.dist < best->dist ||
          (lab.dist == best->dist && lab.hops < best->hops)) {
        best = lab;
      }
    }
    return best;
  };
  auto out_x = best_out(from_x);
  auto out_y = best_out(from_y);

  priced_ticket result;
  result.t = ticket::standard(standard.path);
  result.cost = standard.cost;

  std::optional<walk> elongated;
  long long elong_borders = 0;
  const bool prefer_y =
      out_y && (!out_x || out_y->dist < out_x->dist ||
                (out_y->dist == out_x->dist && out_y->hops <= out_x->hops));
  if (prefer_y) {
    walk h = inside_walk;
    h.nodes.insert(h.nodes.end(), out_y->seq.begin() + 1, out_y->seq.end());
    elongated = std::move(h);
    elong_borders = inside_borders + out_y->dist;
  } else if (out_x) {
    walk pre(out_x->seq);
    std::reverse(pre.nodes.begin(), pre.nodes.end());
    pre.nodes.insert(pre.nodes.end(), inside_walk.nodes.begin() + 1, inside_walk.nodes.end());
    elongated = std::move(pre);
    elong_borders = inside_borders + out_x->dist;
  }
  if (elongated) {
    const price cost = price::of(p(static_cast<int>(elong_borders) + 1));
    if (cost < result.cost) {
      // the traveled walk is the inside walk; the single segment is its superwalk
      ticket t;
      t.segments = {*elongated};
      t.parts = {{0, inside_walk.size() - 1}};
      result.t = std::move(t);
      result.cost = fs.price_of(g, &zs, result.t.segments.front());
    }
  }
  return result;
}

int compute_d_max(const ptn& g, const zone_structure& zs, bool stations_only) {
  if (!zs.has_metropolitan()) {
    throw configuration_error("maximum metropolitan distance needs a metropolitan zone set");
  }
  std::vector<int> metro_nodes;
  for (int v = 0; v < g.node_count(); ++v) {
    if (!zs.node_in_metropolitan(v)) continue;
    if (stations_only && !g.is_station(v)) continue;
    metro_nodes.push_back(v);
  }
  if (metro_nodes.empty()) {
    throw configuration_error("metropolitan zone has no eligible node");
  }
  auto inside_arcs = [&](int v, auto emit) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      if (zs.node_in_metropolitan(w)) {
        emit(w, static_cast<long long>(zs.border_weight(v, w)));
      }
    }
  };
  long long worst = 0;
  for (int s : metro_nodes) {
    auto tree = settle_all<long long>(g.node_count(), s, inside_arcs, id_ranks(g));
    for (int t : metro_nodes) {
      if (!tree[static_cast<size_t>(t)]) {
        throw configuration_error("metropolitan zone does not induce a connected subgraph");
      }
      worst = std::max(worst, tree[static_cast<size_t>(t)]->dist);
    }
  }
  return static_cast<int>(worst) + 1;
}

overlaps_resolved_graph build_overlaps_resolved(const ptn& g, const zone_structure& zs,
                                                bool compact) {
  overlaps_resolved_graph out;
  out.compact = compact;
  out.plain_of.assign(static_cast<size_t>(g.node_count()), -1);
  out.copies_of.assign(static_cast<size_t>(g.node_count()), {});

  for (int v = 0; v < g.node_count(); ++v) {
    const auto& zl = zs.zones_of(v);
    if (!compact || zl.size() > 1) {
      out.plain_of[static_cast<size_t>(v)] = out.vertex_count();
      out.vertices.push_back({v, -1});
    }
    for (int z : zl) {
      out.copies_of[static_cast<size_t>(v)].push_back(out.vertex_count());
      out.vertices.push_back({v, z});
    }
  }
  out.adj.assign(static_cast<size_t>(out.vertex_count()), {});
  auto add = [&](int a, int b, int w) {
    out.adj[static_cast<size_t>(a)].emplace_back(b, w);
    out.adj[static_cast<size_t>(b)].emplace_back(a, w);
    ++out.edge_total;
  };
  for (int v = 0; v < g.node_count(); ++v) {
    const int plain = out.plain_of[static_cast<size_t>(v)];
    if (plain < 0) continue;
    for (int copy : out.copies_of[static_cast<size_t>(v)]) add(plain, copy, 1);
  }
  for (const auto& e : g.edges()) {
    for (int ca : out.copies_of[static_cast<size_t>(e.a)]) {
      for (int cb : out.copies_of[static_cast<size_t>(e.b)]) {
        add(ca, cb, out.vertices[static_cast<size_t>(ca)].zone ==
                            out.vertices[static_cast<size_t>(cb)].zone
                        ? 0
                        : 1);
      }
    }
  }
  return out;
}

route_result cheapest_path_zoa(const ptn& g, const zone_structure& zs, const price_function& p,
                               int from, int to, bool compact) {
  check_endpoints(g, from, to);
  need_increasing(p, "overlap-area");
  auto og = build_overlaps_resolved(g, zs, compact);

  auto start_of = [&](int v) {
    return og.plain_of[static_cast<size_t>(v)] >= 0 ? og.plain_of[static_cast<size_t>(v)]
                                                    : og.copies_of[static_cast<size_t>(v)].front();
  };
  const int src = start_of(from);
  const int dst = start_of(to);

  std::vector<int> rank(static_cast<size_t>(og.vertex_count()));
  for (int i = 0; i < og.vertex_count(); ++i) rank[static_cast<size_t>(i)] = i;
  auto arcs = [&](int v, auto emit) {
    for (const auto& [w, weight] : og.adj[static_cast<size_t>(v)]) {
      emit(w, static_cast<long long>(weight));
    }
  };
  auto done = settle_all<long long>(og.vertex_count(), src, arcs, rank);
  if (!done[static_cast<size_t>(dst)]) {
    throw invalid_reference_error("no route between the requested nodes");
  }
  const auto& lab = *done[static_cast<size_t>(dst)];

  // drop plain endpoint vertices, project membership vertices to the network
  walk w;
  std::vector<int> assignment;
  for (int vertex : lab.seq) {
    const auto& vx = og.vertices[static_cast<size_t>(vertex)];
    if (vx.zone < 0) continue;
    w.nodes.push_back(vx.ptn_node);
    assignment.push_back(vx.zone);
  }
  long long attach = 0;
  if (og.plain_of[static_cast<size_t>(from)] >= 0) ++attach;
  if (from != to && og.plain_of[static_cast<size_t>(to)] >= 0) ++attach;
  if (from == to) {
    w.nodes = {from};
    assignment = {zs.zones_of(from).front()};
    attach = 0;
  }
  const int z = static_cast<int>(lab.dist - attach) + 1;
  return finish(g, &zs, fare_system::zoa(p), std::move(w), z, std::move(assignment));
}

std::pair<std::vector<int>, int> minimal_assignment(const ptn& g, const zone_structure& zs,
                                                    const walk& w) {
  auto a = minimal_zone_assignment(g, zs, w);
  return {std::move(a.zones), a.count};
}

route_result cheapest_path_no_double_connected(const ptn& g, const zone_structure& zs,
                                               const price_function& p, int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "distinct-zone");
  if (!disconnected_zones(g, zs).empty()) {
    throw unsupported_instance_error(
        "a zone is disconnected; use the one-disconnected routine or the exact solver");
  }
  auto lab = ptn_best_path<long long>(
      g, from, to, [&](int, int a, int b) { return static_cast<long long>(zs.border_weight(a, b)); });
  walk w(std::move(lab.seq));
  const int zbar = zone_count_no_double(g, zs, w);
  return finish(g, &zs, fare_system::no_double(p), std::move(w), zbar);
}

route_result cheapest_path_one_disconnected(const ptn& g, const zone_structure& zs,
                                            const price_function& p, int disconnected_zone,
                                            int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "distinct-zone");
  auto disc = disconnected_zones(g, zs);
  for (int z : disc) {
    if (z != disconnected_zone) {
      throw unsupported_instance_error("more than one disconnected zone; use the exact solver");
    }
  }
  const int k = zone_component_count(g, zs, disconnected_zone);
  // arc weights scaled by k so that the 1/k entering discount stays integral
  auto in_z = [&](int v) { return zs.zone_of(v) == disconnected_zone; };
  auto lab = ptn_best_path<long long>(g, from, to, [&](int, int a, int b) {
    if (in_z(b) && !in_z(a)) return 1LL;
    return static_cast<long long>(zs.border_weight(a, b)) * k;
  });
  const long long scaled = lab.dist;  // k * weight of the walk
  const long long zbar = in_z(from) ? (scaled + k) / k                 // ceil(m + 1/k)
                                    : (scaled + 2LL * k - 1) / k;      // ceil(m + 1)
  walk w(std::move(lab.seq));
  return finish(g, &zs, fare_system::no_double(p), std::move(w), static_cast<int>(zbar));
}

mzp_result mzp_exact(const ptn& g, const zone_structure& zs, int from, int to,
                     std::optional<int> budget_k, const routing_limits& limits) {
  check_endpoints(g, from, to);
  if (zs.mode() != zone_structure::mode_t::partition) {
    throw configuration_error("the exact distinct-zone solver requires a partition");
  }
  if (zs.zone_count() > 62) {
    throw configuration_error("the exact distinct-zone solver handles at most 62 zones");
  }

  struct state {
    std::uint64_t mask;
    int zones;
    int hops;
    std::vector<int> seq;
  };
  const auto rank = id_ranks(g);
  auto state_less = [&rank](const state& a, const state& b) {
    if (a.zones != b.zones) return a.zones < b.zones;
    if (a.hops != b.hops) return a.hops < b.hops;
    const size_t n = std::min(a.seq.size(), b.seq.size());
    for (size_t i = 0; i < n; ++i) {
      const int ra = rank[static_cast<size_t>(a.seq[i])];
      const int rb = rank[static_cast<size_t>(b.seq[i])];
      if (ra != rb) return ra < rb;
    }
    return a.seq.size() < b.seq.size();
  };
  auto heap_cmp = [&](const state& a, const state& b) { return state_less(b, a); };
  std::priority_queue<state, std::vector<state>, decltype(heap_cmp)> pq(heap_cmp);
  // per node: antichain of settled zone sets (supersets are dominated)
  std::vector<std::vector<std::uint64_t>> settled(static_cast<size_t>(g.node_count()));
  auto dominated = [&](int v, std::uint64_t mask) {
    for (std::uint64_t s : settled[static_cast<size_t>(v)]) {
      if ((s & mask) == s) return true;
    }
    return false;
  };

  auto zone_bit = [&](int v) { return std::uint64_t{1} << zs.zone_of(v); };
  pq.push(state{zone_bit(from), 1, 0, {from}});

  mzp_result out;
  std::optional<state> incumbent;  // best target state seen in the queue
  long long expanded = 0;
  while (!pq.empty()) {
    state cur = pq.top();
    pq.pop();
    const int v = cur.seq.back();
    if (dominated(v, cur.mask)) continue;
    if (v == to) {
      out.path = walk(std::move(cur.seq));
      out.distinct_zones = cur.zones;
      out.states_expanded = expanded;
      if (budget_k) out.decision = cur.zones <= *budget_k;
      return out;
    }
    settled[static_cast<size_t>(v)].push_back(cur.mask);
    if (++expanded > limits.max_states) {
      out.status = search_status::budget_exhausted;
      out.states_expanded = expanded;
      if (incumbent) {
        out.path = walk(std::move(incumbent->seq));
        out.distinct_zones = incumbent->zones;
        if (budget_k && incumbent->zones <= *budget_k) out.decision = true;
      }
      return out;
    }
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      const std::uint64_t mask = cur.mask | zone_bit(w);
      if (dominated(w, mask)) continue;
      state nxt{mask, std::popcount(mask), cur.hops + 1, cur.seq};
      nxt.seq.push_back(w);
      if (w == to && (!incumbent || nxt.zones < incumbent->zones)) incumbent = nxt;
      pq.push(std::move(nxt));
    }
  }
  throw invalid_reference_error("no route between the requested nodes");
}

mzp_instance mcsip_to_mzp(const mcsip_instance& inst) {
  if (inst.from == inst.to) {
    throw configuration_error("the colored-path terminals must differ");
  }
  if (inst.color_budget < 1) {
    throw configuration_error("the color budget must be at least 1");
  }
  std::string dummy = "Null";
  {
    bool clash = true;
    while (clash) {
      clash = false;
      for (const auto& e : inst.edges) {
        if (e.color == dummy) {
          dummy += "_";
          clash = true;
          break;
        }
      }
    }
  }

  std::vector<node> nodes;
  nodes.reserve(inst.node_ids.size() + inst.edges.size());
  for (const auto& id : inst.node_ids) nodes.push_back(node{id, node_kind::station, {}});

  std::vector<std::pair<std::string, std::vector<std::string>>> table;
  table.emplace_back(dummy, inst.node_ids);
  auto slot = [&](const std::string& color) -> std::vector<std::string>& {
    for (auto& [name, members] : table) {
      if (name == color) return members;
    }
    table.emplace_back(color, std::vector<std::string>{});
    return table.back().second;
  };

  std::vector<edge> edges;
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < inst.node_ids.size(); ++i) {
    if (!index.emplace(inst.node_ids[i], static_cast<int>(i)).second) {
      throw configuration_error("duplicate node id '" + inst.node_ids[i] + "'");
    }
  }
  auto node_of = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw invalid_reference_error("unknown node id '" + id + "'");
    return it->second;
  };
  for (const auto& e : inst.edges) {
    if (e.color.empty()) throw configuration_error("every edge needs a color");
    const int a = node_of(e.a);
    const int b = node_of(e.b);
    std::string mid_id = e.a + "~" + e.b;
    while (index.count(mid_id)) mid_id += "~";
    const int mid = static_cast<int>(nodes.size());
    index.emplace(mid_id, mid);
    nodes.push_back(node{mid_id, node_kind::station, {}});
    slot(e.color).push_back(mid_id);
    edges.push_back(edge{a, mid, 1.0});
    edges.push_back(edge{mid, b, 1.0});
  }

  ptn graph(std::move(nodes), std::move(edges));
  zone_structure zones(graph, table);
  const int from = graph.require_node(inst.from);
  const int to = graph.require_node(inst.to);
  return mzp_instance{std::move(graph), std::move(zones), from, to, inst.color_budget + 1};
}

std::optional<walk> short_distance_path(const ptn& g, std::optional<int> max_stations,
                                        std::optional<double> max_length, int from, int to) {
  check_endpoints(g, from, to);
  const int n = g.node_count();
  const int s_max = std::min(max_stations.value_or(n - 1), n - 1);
  const double l_cap = g.max_edge_length() * static_cast<double>(n);
  const double l_max = std::min(max_length.value_or(l_cap), l_cap);
  const double inf = std::numeric_limits<double>::infinity();

  // d[s][v]: minimum length of a walk from `from` to v using at most s edges;
  // predecessors are kept per layer and carried forward when a layer does not
  // improve, exactly as the backtracking below expects.
  std::vector<std::vector<double>> d(static_cast<size_t>(s_max + 1),
                                     std::vector<double>(static_cast<size_t>(n), inf));
  std::vector<std::vector<int>> pi(static_cast<size_t>(s_max + 1),
                                   std::vector<int>(static_cast<size_t>(n), -1));
  d[0][static_cast<size_t>(from)] = 0.0;
  for (int s = 1; s <= s_max; ++s) {
    d[static_cast<size_t>(s)] = d[static_cast<size_t>(s - 1)];
    pi[static_cast<size_t>(s)] = pi[static_cast<size_t>(s - 1)];
    for (int v = 0; v < n; ++v) {
      for (const auto& [w, e] : g.neighbors(v)) {
        const double cand = d[static_cast<size_t>(s - 1)][static_cast<size_t>(w)] +
                            g.edge_at(e).length;
        if (d[static_cast<size_t>(s)][static_cast<size_t>(v)] > cand) {
          d[static_cast<size_t>(s)][static_cast<size_t>(v)] = cand;
          pi[static_cast<size_t>(s)][static_cast<size_t>(v)] = w;
        }
      }
    }
  }

  if (!(d[static_cast<size_t>(s_max)][static_cast<size_t>(to)] <= l_max)) {
    return std::nullopt;
  }
  std::vector<int> rev{to};
  int current = to;
  int s = s_max;
  while (current != from) {
    if (s < 0) throw std::logic_error("predecessor backtracking ran out of layers");
    current = pi[static_cast<size_t>(s)][static_cast<size_t>(current)];
    if (current < 0) throw std::logic_error("broken predecessor chain");
    rev.push_back(current);
    --s;
  }
  std::reverse(rev.begin(), rev.end());
  return walk(std::move(rev));
}

route_result cheapest_path_zsd(const ptn& g, const zone_structure& zs, const price_function& p,
                               double short_price, std::optional<int> max_stations,
                               std::optional<double> max_length, int from, int to) {
  check_endpoints(g, from, to);
  need_increasing(p, "zone");
  const fare_system fs = fare_system::zsd(p, short_price, max_stations, max_length);
  auto short_walk = short_distance_path(g, max_stations, max_length, from, to);
  auto zone_route = cheapest_path_basic_zone(g, zs, p, from, to);
  if (short_walk && short_price < p(zone_route.zone_count)) {
    const int z = zone_count_basic(g, zs, *short_walk);
    return finish(g, &zs, fs, std::move(*short_walk), z);
  }
  return finish(g, &zs, fs, std::move(zone_route.path), zone_route.zone_count);
}

route_result cheapest_path(const ptn& g, const zone_structure* zs, const fare_system& fs,
                           int from, int to, const routing_limits& limits) {
  check_endpoints(g, from, to);
  if (fs.requires_zones() && !zs) {
    throw configuration_error("this tariff needs a zone structure");
  }

  if (const auto* t = fs.get_if<distance_tariff>()) {
    return cheapest_path_distance(g, t->base, t->per_km, from, to);
  }
  if (const auto* t = fs.get_if<beeline_tariff>()) {
    return cheapest_path_beeline(g, t->base, t->per_km, from, to);
  }
  if (const auto* t = fs.get_if<flat_tariff>()) {
    return cheapest_path_flat(g, t->amount, from, to);
  }
  if (const auto* t = fs.get_if<basic_zone_tariff>()) {
    return cheapest_path_basic_zone(g, *zs, t->prices, from, to);
  }
  if (const auto* t = fs.get_if<metropolitan_tariff>()) {
    if (!zs->has_metropolitan()) {
      throw configuration_error("metropolitan tariff needs a metropolitan zone set");
    }
    if (t->metro_price > t->prices(3) && zs->node_in_metropolitan(from) &&
        zs->node_in_metropolitan(to)) {
      return cheapest_path_metropolitan_pm_gt_p3(g, *zs, t->prices, t->metro_price, from, to);
    }
    return cheapest_path_metropolitan(g, *zs, t->prices, t->metro_price, from, to);
  }
  if (const auto* t = fs.get_if<zoa_tariff>()) {
    return cheapest_path_zoa(g, *zs, t->prices, from, to, limits.compact_overlaps);
  }
  if (const auto* t = fs.get_if<no_double_tariff>()) {
    need_increasing(t->prices, "distinct-zone");
    auto disc = disconnected_zones(g, *zs);
    if (disc.empty()) {
      return cheapest_path_no_double_connected(g, *zs, t->prices, from, to);
    }
    if (disc.size() == 1) {
      return cheapest_path_one_disconnected(g, *zs, t->prices, disc.front(), from, to);
    }
    auto res = mzp_exact(g, *zs, from, to, std::nullopt, limits);
    if (res.status == search_status::budget_exhausted) {
      throw resource_limit_error("exact distinct-zone search exceeded its state budget");
    }
    return finish(g, zs, fs, std::move(res.path), res.distinct_zones);
  }
  if (const auto* t = fs.get_if<short_distance_tariff>()) {
    auto w = short_distance_path(g, t->max_stations, t->max_length, from, to);
    if (w) return finish(g, nullptr, fs, std::move(*w));
    auto any = cheapest_path_flat(g, 0.0, from, to);
    return finish(g, nullptr, fs, std::move(any.path));
  }
  const auto* c = fs.get_if<combined_tariff>();
  if (!c) throw configuration_error("unhandled tariff variant");

  const auto* zc = c->left->get_if<basic_zone_tariff>();
  const auto* sc = c->right->get_if<short_distance_tariff>();
  if (zc && sc) {
    return cheapest_path_zsd(g, *zs, zc->prices, sc->short_price, sc->max_stations,
                             sc->max_length, from, to);
  }
  route_result l = cheapest_path(g, zs, *c->left, from, to, limits);
  route_result r = cheapest_path(g, zs, *c->right, from, to, limits);
  walk chosen = l.cost <= r.cost ? std::move(l.path) : std::move(r.path);
  int zcount = l.cost <= r.cost ? l.zone_count : r.zone_count;
  auto assignment = l.cost <= r.cost ? std::move(l.zone_assignment) : std::move(r.zone_assignment);
  return finish(g, zs, fs, std::move(chosen), zcount, std::move(assignment));
}

}  // namespace farekit
