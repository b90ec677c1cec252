#include "farekit/ptn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace farekit {

namespace {

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

ptn::ptn(std::vector<node> nodes, std::vector<edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) {
    throw configuration_error("a network needs at least one node");
  }
  by_id_.reserve(nodes_.size());
  for (int v = 0; v < node_count(); ++v) {
    const auto& n = nodes_[static_cast<size_t>(v)];
    if (n.id.empty()) {
      throw configuration_error("empty node id");
    }
    if (!by_id_.emplace(n.id, v).second) {
      throw configuration_error("duplicate node id '" + n.id + "'");
    }
  }

  adj_.assign(nodes_.size(), {});
  for (int e = 0; e < edge_count(); ++e) {
    const auto& ed = edges_[static_cast<size_t>(e)];
    if (ed.a < 0 || ed.a >= node_count() || ed.b < 0 || ed.b >= node_count()) {
      throw invalid_reference_error("edge endpoint out of range");
    }
    if (ed.a == ed.b) {
      throw configuration_error("loop edge at '" + nodes_[static_cast<size_t>(ed.a)].id + "'");
    }
    if (!(ed.length >= 0.0) || !std::isfinite(ed.length)) {
      throw configuration_error("edge length must be a finite nonnegative real");
    }
    if (!edge_by_pair_.emplace(pair_key(ed.a, ed.b), e).second) {
      throw configuration_error("parallel edge between '" + nodes_[static_cast<size_t>(ed.a)].id +
                                "' and '" + nodes_[static_cast<size_t>(ed.b)].id + "'");
    }
    adj_[static_cast<size_t>(ed.a)].emplace_back(ed.b, e);
    adj_[static_cast<size_t>(ed.b)].emplace_back(ed.a, e);
  }

  id_rank_.resize(nodes_.size());
  {
    std::vector<int> order(nodes_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return nodes_[static_cast<size_t>(a)].id < nodes_[static_cast<size_t>(b)].id;
    });
    for (int r = 0; r < node_count(); ++r) {
      id_rank_[static_cast<size_t>(order[static_cast<size_t>(r)])] = r;
    }
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end(), [&](const auto& x, const auto& y) {
      return id_rank_[static_cast<size_t>(x.first)] < id_rank_[static_cast<size_t>(y.first)];
    });
  }

  // connectivity
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [w, e] : adj_[static_cast<size_t>(v)]) {
      (void)e;
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != nodes_.size()) {
    throw configuration_error("network is not connected");
  }
}

std::optional<int> ptn::find_node(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

int ptn::require_node(std::string_view id) const {
  auto v = find_node(id);
  if (!v) throw invalid_reference_error("unknown node id '" + std::string(id) + "'");
  return *v;
}

std::optional<int> ptn::edge_between(int a, int b) const {
  auto it = edge_by_pair_.find(pair_key(a, b));
  if (it == edge_by_pair_.end()) return std::nullopt;
  return it->second;
}

bool ptn::stations_have_coordinates() const {
  for (const auto& n : nodes_) {
    if (n.kind == node_kind::station && !n.pos) return false;
  }
  return true;
}

double ptn::max_edge_length() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.length);
  return m;
}

bool validate_walk(const ptn& g, const walk& w) {
  if (w.empty()) {
    throw invalid_walk_error("a walk has at least one node");
  }
  for (int v : w.nodes) {
    if (v < 0 || v >= g.node_count()) {
      throw invalid_reference_error("walk node index out of range");
    }
  }
  for (size_t i = 0; i + 1 < w.nodes.size(); ++i) {
    if (!g.edge_between(w.nodes[i], w.nodes[i + 1])) return false;
  }
  return true;
}

double walk_length(const ptn& g, const walk& w) {
  if (!validate_walk(g, w)) {
    throw invalid_walk_error("node sequence is not a walk");
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < w.nodes.size(); ++i) {
    total += g.edge_at(*g.edge_between(w.nodes[i], w.nodes[i + 1])).length;
  }
  return total;
}

double beeline_distance(const ptn& g, const walk& w) {
  if (!validate_walk(g, w)) {
    throw invalid_walk_error("node sequence is not a walk");
  }
  const auto& a = g.node_at(w.front()).pos;
  const auto& b = g.node_at(w.back()).pos;
  if (!a || !b) {
    throw configuration_error("beeline distance needs coordinates on both endpoints");
  }
  return std::hypot((*b)[0] - (*a)[0], (*b)[1] - (*a)[1]);
}

int station_count(const walk& w) {
  if (w.empty()) {
    throw invalid_walk_error("a walk has at least one node");
  }
  return w.edge_count();
}

walk subwalk(const walk& w, int first, int last) {
  if (first < 0 || last < first || last >= w.size()) {
    throw std::out_of_range("subwalk indices out of range");
  }
  return walk(std::vector<int>(w.nodes.begin() + first, w.nodes.begin() + last + 1));
}

walk concat(const walk& w1, const walk& w2) {
  if (w1.empty() || w2.empty()) {
    throw invalid_walk_error("cannot concatenate an empty walk");
  }
  if (w1.back() != w2.front()) {
    throw invalid_walk_error("concatenation junction mismatch");
  }
  walk out = w1;
  out.nodes.insert(out.nodes.end(), w2.nodes.begin() + 1, w2.nodes.end());
  return out;
}

walk reversed(const walk& w) {
  walk out = w;
  std::reverse(out.nodes.begin(), out.nodes.end());
  return out;
}

std::string walk_to_string(const ptn& g, const walk& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.nodes.size(); ++i) {
    if (i) os << " ";
    os << g.node_at(w.nodes[i]).id;
  }
  return os.str();
}

walk walk_from_ids(const ptn& g, const std::vector<std::string>& ids) {
  walk w;
  w.nodes.reserve(ids.size());
  for (const auto& id : ids) w.nodes.push_back(g.require_node(id));
  return w;
}

}  // namespace farekit
