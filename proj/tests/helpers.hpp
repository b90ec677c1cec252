#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "farekit/fare_system.hpp"
#include "farekit/ptn.hpp"
#include "farekit/zones.hpp"

namespace testutil {

using namespace farekit;

struct net_builder {
  std::vector<node> nodes;
  std::vector<edge> edges;
  std::map<std::string, int> index;

  net_builder& station(const std::string& id, double x, double y) {
    index[id] = static_cast<int>(nodes.size());
    nodes.push_back(node{id, node_kind::station, std::array<double, 2>{x, y}});
    return *this;
  }
  net_builder& station(const std::string& id) {
    index[id] = static_cast<int>(nodes.size());
    nodes.push_back(node{id, node_kind::station, {}});
    return *this;
  }
  net_builder& virt(const std::string& id) {
    index[id] = static_cast<int>(nodes.size());
    nodes.push_back(node{id, node_kind::virtual_node, {}});
    return *this;
  }
  net_builder& link(const std::string& a, const std::string& b, double length = 1.0) {
    edges.push_back(edge{index.at(a), index.at(b), length});
    return *this;
  }
  ptn build() const { return ptn(nodes, edges); }
};

inline walk W(const ptn& g, std::initializer_list<const char*> ids) {
  walk w;
  for (const char* id : ids) w.nodes.push_back(g.require_node(id));
  return w;
}

using zone_table = std::vector<std::pair<std::string, std::vector<std::string>>>;

// chain s1 - s2 - ... - sk, one singleton zone per node, unit lengths
inline ptn chain_ptn(int k, double length = 1.0) {
  net_builder b;
  for (int i = 1; i <= k; ++i) b.station("s" + std::to_string(i));
  for (int i = 1; i < k; ++i) b.link("s" + std::to_string(i), "s" + std::to_string(i + 1), length);
  return b.build();
}

inline zone_structure chain_zones(const ptn& g, int k, int metro_prefix = 0) {
  zone_table table;
  for (int i = 1; i <= k; ++i) {
    table.emplace_back("Z" + std::to_string(i), std::vector<std::string>{"s" + std::to_string(i)});
  }
  std::vector<std::string> metro;
  for (int i = 1; i <= metro_prefix; ++i) metro.push_back("Z" + std::to_string(i));
  return zone_structure(g, table, metro);
}

}  // namespace testutil
