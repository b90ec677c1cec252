#include "farekit/zones.hpp"

#include <algorithm>

namespace farekit {

zone_structure::zone_structure(
    const ptn& g, const std::vector<std::pair<std::string, std::vector<std::string>>>& zone_table,
    const std::vector<std::string>& metropolitan) {
  of_node_.assign(static_cast<size_t>(g.node_count()), {});
  for (const auto& [name, node_ids] : zone_table) {
    if (name.empty()) {
      throw configuration_error("empty zone id");
    }
    if (by_name_.count(name)) {
      throw configuration_error("duplicate zone id '" + name + "'");
    }
    int z = static_cast<int>(names_.size());
    by_name_.emplace(name, z);
    names_.push_back(name);
    members_.emplace_back();
    for (const auto& id : node_ids) {
      int v = g.require_node(id);
      auto& zl = of_node_[static_cast<size_t>(v)];
      if (std::find(zl.begin(), zl.end(), z) != zl.end()) {
        throw configuration_error("node '" + id + "' listed twice in zone '" + name + "'");
      }
      zl.push_back(z);
      members_.back().push_back(v);
    }
    if (members_.back().empty()) {
      throw configuration_error("zone '" + name + "' contains no node");
    }
  }

  for (int v = 0; v < g.node_count(); ++v) {
    auto& zl = of_node_[static_cast<size_t>(v)];
    if (zl.empty()) {
      throw configuration_error("node '" + g.node_at(v).id + "' belongs to no zone");
    }
    std::sort(zl.begin(), zl.end());
    if (zl.size() > 1) mode_ = mode_t::cover;
  }

  in_metro_.assign(static_cast<size_t>(g.node_count()), 0);
  for (const auto& name : metropolitan) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
      throw invalid_reference_error("unknown metropolitan zone '" + name + "'");
    }
    metro_zones_.push_back(it->second);
  }
  std::sort(metro_zones_.begin(), metro_zones_.end());
  metro_zones_.erase(std::unique(metro_zones_.begin(), metro_zones_.end()), metro_zones_.end());
  for (int z : metro_zones_) {
    for (int v : members_[static_cast<size_t>(z)]) in_metro_[static_cast<size_t>(v)] = 1;
  }

  if (!metro_zones_.empty()) {
    // the metropolitan union must contain a node and induce a connected subgraph
    int start = -1;
    int metro_nodes = 0;
    for (int v = 0; v < g.node_count(); ++v) {
      if (in_metro_[static_cast<size_t>(v)]) {
        if (start < 0) start = v;
        ++metro_nodes;
      }
    }
    std::vector<char> seen(static_cast<size_t>(g.node_count()), 0);
    std::vector<int> stack{start};
    seen[static_cast<size_t>(start)] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : g.neighbors(v)) {
        (void)e;
        if (in_metro_[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != metro_nodes) {
      throw configuration_error("metropolitan zone does not induce a connected subgraph");
    }
  }
}

std::optional<int> zone_structure::find_zone(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int zone_structure::zone_of(int v) const {
  const auto& zl = of_node_[static_cast<size_t>(v)];
  if (zl.size() != 1) {
    throw configuration_error("zone cover passed where a partition is required");
  }
  return zl.front();
}

int zone_component_count(const ptn& g, const zone_structure& zs, int zone) {
  const auto& members = zs.nodes_in_zone(zone);
  std::vector<char> in_zone(static_cast<size_t>(g.node_count()), 0);
  for (int v : members) in_zone[static_cast<size_t>(v)] = 1;
  std::vector<char> seen(static_cast<size_t>(g.node_count()), 0);
  int comps = 0;
  for (int s : members) {
    if (seen[static_cast<size_t>(s)]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : g.neighbors(v)) {
        (void)e;
        if (in_zone[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return comps;
}

bool zone_is_connected(const ptn& g, const zone_structure& zs, int zone) {
  return zone_component_count(g, zs, zone) == 1;
}

std::vector<int> disconnected_zones(const ptn& g, const zone_structure& zs) {
  std::vector<int> out;
  for (int z = 0; z < zs.zone_count(); ++z) {
    if (!zone_is_connected(g, zs, z)) out.push_back(z);
  }
  return out;
}

expanded_network expand_empty_zones(
    const ptn& g, const zone_structure& zs,
    const std::vector<std::pair<int, std::vector<std::string>>>& crossings) {
  for (const auto& [e, list] : crossings) {
    (void)list;
    if (e < 0 || e >= g.edge_count()) {
      throw invalid_reference_error("empty-zone crossing on a nonexistent edge");
    }
  }

  std::vector<std::vector<std::string>> per_edge(static_cast<size_t>(g.edge_count()));
  for (const auto& [e, list] : crossings) per_edge[static_cast<size_t>(e)] = list;

  std::vector<node> nodes = g.nodes();
  std::vector<edge> edges;
  // zone name -> member node ids; start from the existing assignment
  std::vector<std::pair<std::string, std::vector<std::string>>> table;
  std::unordered_map<std::string, size_t> table_index;
  for (int z = 0; z < zs.zone_count(); ++z) {
    table_index.emplace(zs.zone_name(z), table.size());
    std::vector<std::string> ids;
    for (int v : zs.nodes_in_zone(z)) ids.push_back(g.node_at(v).id);
    table.emplace_back(zs.zone_name(z), std::move(ids));
  }

  auto zone_slot = [&](const std::string& name) -> std::vector<std::string>& {
    auto it = table_index.find(name);
    if (it == table_index.end()) {
      table_index.emplace(name, table.size());
      table.emplace_back(name, std::vector<std::string>{});
      return table.back().second;
    }
    return table[it->second].second;
  };

  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge_at(e);
    const auto& crossed = per_edge[static_cast<size_t>(e)];
    if (crossed.empty()) {
      edges.push_back(ed);
      continue;
    }
    const int k = static_cast<int>(crossed.size());
    const double part = ed.length / static_cast<double>(k + 1);
    int prev = ed.a;
    for (int i = 0; i < k; ++i) {
      std::string vid = g.node_at(ed.a).id + "~" + g.node_at(ed.b).id + "~" +
                        std::to_string(i + 1);
      if (std::any_of(nodes.begin(), nodes.end(), [&](const node& n) { return n.id == vid; })) {
        throw configuration_error("generated virtual node id '" + vid + "' collides");
      }
      int vidx = static_cast<int>(nodes.size());
      nodes.push_back(node{vid, node_kind::virtual_node, std::nullopt});
      zone_slot(crossed[static_cast<size_t>(i)]).push_back(vid);
      edges.push_back(edge{prev, vidx, part});
      prev = vidx;
    }
    edges.push_back(edge{prev, ed.b, part});
  }

  std::vector<std::string> metro;
  for (int z : zs.metropolitan_zones()) metro.push_back(zs.zone_name(z));

  ptn graph(std::move(nodes), std::move(edges));
  zone_structure zones(graph, table, metro);
  return expanded_network{std::move(graph), std::move(zones)};
}

}  // namespace farekit
