#pragma once

#include <utility>
#include <vector>

#include "farekit/ptn.hpp"

namespace farekit {

// A sequence of bought walks H_1..H_t plus a decomposition witness: part j is
// the 0-based inclusive index range of the traveled walk covered by H_j.
// Consecutive parts share their junction index. The standard ticket of W is
// segments={W}, parts={(0, n-1)}.
struct ticket {
  std::vector<walk> segments;
  std::vector<std::pair<int, int>> parts;

  static ticket standard(const walk& w) {
    return ticket{{w}, {{0, w.size() - 1}}};
  }
};

// True iff `sub` occurs as a contiguous subwalk of `host`.
bool is_contiguous_subwalk(const walk& sub, const walk& host);

// Validates the stored decomposition: parts partition `traveled` consecutively
// and each part is a contiguous subwalk of its segment. Segments must be valid
// walks of g.
bool is_valid_ticket(const ptn& g, const ticket& t, const walk& traveled);

// Search entry point for tickets without a stored decomposition: dynamic
// programming over (position in traveled, segment index) decides whether any
// consecutive decomposition exists.
bool ticket_covers(const ptn& g, const std::vector<walk>& segments, const walk& traveled);

}  // namespace farekit
