#include "farekit/ticket.hpp"

namespace farekit {

bool is_contiguous_subwalk(const walk& sub, const walk& host) {
  if (sub.empty() || sub.size() > host.size()) return false;
  const int n = host.size();
  const int m = sub.size();
  for (int s = 0; s + m <= n; ++s) {
    bool match = true;
    for (int i = 0; i < m; ++i) {
      if (host.nodes[static_cast<size_t>(s + i)] != sub.nodes[static_cast<size_t>(i)]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool is_valid_ticket(const ptn& g, const ticket& t, const walk& traveled) {
  if (!validate_walk(g, traveled)) return false;
  if (t.segments.empty() || t.segments.size() != t.parts.size()) return false;
  for (const auto& seg : t.segments) {
    if (!validate_walk(g, seg)) return false;
  }
  const int n = traveled.size();
  int expected_first = 0;
  for (size_t j = 0; j < t.parts.size(); ++j) {
    auto [a, b] = t.parts[j];
    if (a != expected_first || b < a || b >= n) return false;
    if (!is_contiguous_subwalk(subwalk(traveled, a, b), t.segments[j])) return false;
    expected_first = b;
  }
  return expected_first == n - 1;
}

bool ticket_covers(const ptn& g, const std::vector<walk>& segments, const walk& traveled) {
  if (!validate_walk(g, traveled)) return false;
  if (segments.empty()) return false;
  for (const auto& seg : segments) {
    if (!validate_walk(g, seg)) return false;
  }
  const int n = traveled.size();
  const int t = static_cast<int>(segments.size());

  // reach[j][a]: nodes 0..a of the traveled walk can be partitioned into
  // parts matched by segments 0..j-1, where part boundaries share a node.
  std::vector<std::vector<char>> reach(static_cast<size_t>(t + 1),
                                       std::vector<char>(static_cast<size_t>(n), 0));
  reach[0][0] = 1;
  for (int j = 0; j < t; ++j) {
    for (int a = 0; a < n; ++a) {
      if (!reach[static_cast<size_t>(j)][static_cast<size_t>(a)]) continue;
      for (int b = a; b < n; ++b) {
        if (is_contiguous_subwalk(subwalk(traveled, a, b), segments[static_cast<size_t>(j)])) {
          reach[static_cast<size_t>(j + 1)][static_cast<size_t>(b)] = 1;
        }
      }
    }
  }
  // every segment must take a part; a part may be a single shared node
  return reach[static_cast<size_t>(t)][static_cast<size_t>(n - 1)] != 0;
}

}  // namespace farekit
