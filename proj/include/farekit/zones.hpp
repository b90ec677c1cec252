#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "farekit/ptn.hpp"

namespace farekit {

// Per-node zone sets. Partition mode when every node belongs to exactly one
// zone; cover mode when overlap areas assign several. Optionally a set of
// metropolitan zones whose union must induce a connected subgraph.
class zone_structure {
 public:
  enum class mode_t { partition, cover };

  // zone_table preserves declaration order: zone index = position in the table.
  // Every node of g must be covered and every zone must be nonempty.
  zone_structure(const ptn& g,
                 const std::vector<std::pair<std::string, std::vector<std::string>>>& zone_table,
                 const std::vector<std::string>& metropolitan = {});

  mode_t mode() const { return mode_; }
  int zone_count() const { return static_cast<int>(names_.size()); }
  const std::string& zone_name(int z) const { return names_[static_cast<size_t>(z)]; }
  std::optional<int> find_zone(std::string_view name) const;

  // Sorted zone indices of a node; nonempty.
  const std::vector<int>& zones_of(int v) const { return of_node_[static_cast<size_t>(v)]; }
  // Partition mode only.
  int zone_of(int v) const;
  const std::vector<int>& nodes_in_zone(int z) const { return members_[static_cast<size_t>(z)]; }

  // Zone border weight of an edge {a,b}; partition mode only.
  int border_weight(int a, int b) const { return zone_of(a) == zone_of(b) ? 0 : 1; }

  bool has_metropolitan() const { return !metro_zones_.empty(); }
  const std::vector<int>& metropolitan_zones() const { return metro_zones_; }
  bool node_in_metropolitan(int v) const { return in_metro_[static_cast<size_t>(v)]; }

  int node_count() const { return static_cast<int>(of_node_.size()); }

 private:
  mode_t mode_ = mode_t::partition;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> by_name_;
  std::vector<std::vector<int>> of_node_;   // node -> sorted zone indices
  std::vector<std::vector<int>> members_;   // zone -> node indices
  std::vector<int> metro_zones_;            // sorted
  std::vector<char> in_metro_;
};

// Whether the induced subgraph of `zone` is connected in g.
bool zone_is_connected(const ptn& g, const zone_structure& zs, int zone);
// Number of connected components of the induced subgraph of `zone`.
int zone_component_count(const ptn& g, const zone_structure& zs, int zone);
// Indices of zones whose induced subgraph is disconnected.
std::vector<int> disconnected_zones(const ptn& g, const zone_structure& zs);

struct expanded_network {
  ptn graph;
  zone_structure zones;
};

// Subdivides each listed edge by one virtual node per crossed empty zone, in
// the listed order, splitting the edge length into equal parts. Crossing zone
// ids that are not yet part of the structure are appended as new zones.
// `crossings` maps edge index -> ordered zone ids.
expanded_network expand_empty_zones(
    const ptn& g, const zone_structure& zs,
    const std::vector<std::pair<int, std::vector<std::string>>>& crossings);

}  // namespace farekit
