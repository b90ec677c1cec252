#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "farekit/error.hpp"

namespace farekit {

enum class node_kind : std::uint8_t { station, virtual_node };

struct node {
  std::string id;
  node_kind kind = node_kind::station;
  std::optional<std::array<double, 2>> pos;
};

struct edge {
  int a = 0;
  int b = 0;
  double length = 0.0;
};

// Public transport network: an undirected simple connected graph of stations
// (some possibly virtual) with nonnegative edge lengths and an optional planar
// embedding. Immutable after construction.
class ptn {
 public:
  ptn(std::vector<node> nodes, std::vector<edge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const node& node_at(int v) const { return nodes_[static_cast<size_t>(v)]; }
  const edge& edge_at(int e) const { return edges_[static_cast<size_t>(e)]; }
  const std::vector<node>& nodes() const { return nodes_; }
  const std::vector<edge>& edges() const { return edges_; }

  std::optional<int> find_node(std::string_view id) const;
  int require_node(std::string_view id) const;

  // Sorted by neighbor id; pairs of (neighbor node, edge index).
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[static_cast<size_t>(v)];
  }
  std::optional<int> edge_between(int a, int b) const;

  bool is_station(int v) const { return node_at(v).kind == node_kind::station; }
  // Every station has coordinates (beeline tariffs require this).
  bool stations_have_coordinates() const;
  double max_edge_length() const;
  // Rank of a node in id order; used for deterministic tie-breaking.
  int id_rank(int v) const { return id_rank_[static_cast<size_t>(v)]; }

 private:
  std::vector<node> nodes_;
  std::vector<edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> id_rank_;
  std::unordered_map<std::string, int> by_id_;
  std::unordered_map<std::uint64_t, int> edge_by_pair_;
};

// Node sequence along edges of a ptn; revisits are permitted. A single node is
// a valid (edgeless) walk.
struct walk {
  std::vector<int> nodes;

  walk() = default;
  explicit walk(std::vector<int> seq) : nodes(std::move(seq)) {}

  int size() const { return static_cast<int>(nodes.size()); }
  bool empty() const { return nodes.empty(); }
  int front() const { return nodes.front(); }
  int back() const { return nodes.back(); }
  int edge_count() const { return static_cast<int>(nodes.size()) - 1; }

  friend bool operator==(const walk& a, const walk& b) { return a.nodes == b.nodes; }
};

// True iff every consecutive pair is an edge. Throws invalid_reference_error
// on out-of-range node indices, invalid_walk_error on an empty sequence.
bool validate_walk(const ptn& g, const walk& w);

// Sum of traversed edge lengths, edges counted with multiplicity.
double walk_length(const ptn& g, const walk& w);

// Euclidean distance between the coordinates of the first and last node.
double beeline_distance(const ptn& g, const walk& w);

// Number of edges of the walk (the paper-style station count excluding the
// start station).
int station_count(const walk& w);

// Nodes first..last inclusive, 0-based. Throws std::out_of_range.
walk subwalk(const walk& w, int first, int last);

// Concatenation; w1.back() must equal w2.front(), the junction appears once.
walk concat(const walk& w1, const walk& w2);

walk reversed(const walk& w);

std::string walk_to_string(const ptn& g, const walk& w);
walk walk_from_ids(const ptn& g, const std::vector<std::string>& ids);

}  // namespace farekit
