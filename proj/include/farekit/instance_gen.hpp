#pragma once

#include <cstdint>
#include <optional>

#include "farekit/price_function.hpp"
#include "farekit/ptn.hpp"
#include "farekit/zones.hpp"

namespace farekit {

// Deterministic generator for randomized suites. std::mt19937_64 raw output
// is portable; the distribution helpers below avoid the stdlib distribution
// classes whose sequences differ between standard libraries.
class test_rng {
 public:
  explicit test_rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next();
  int uniform(int lo, int hi);  // inclusive bounds
  double real01();
  bool chance(double p) { return real01() < p; }

 private:
  std::uint64_t state_;
};

struct gen_options {
  int min_nodes = 6;
  int max_nodes = 12;
  int min_zones = 2;
  int max_zones = 5;
  double extra_edge_prob = 0.35;
  int max_length = 9;  // integer edge lengths in [1, max_length]
  bool with_coordinates = true;
};

// Random spanning tree plus extra edges; integer lengths, grid-ish coordinates.
ptn random_connected_ptn(test_rng& rng, const gen_options& opt = {});

// Random partition into `zones` nonempty zones (zones may be disconnected).
zone_structure random_partition(test_rng& rng, const ptn& g, int zones);

// Partition grown region by region so that every zone induces a connected
// subgraph.
zone_structure random_connected_partition(test_rng& rng, const ptn& g, int zones);

// Connected partition with exactly one zone split into >= 2 components.
// Falls back to a connected partition when the graph cannot support it
// (caller can detect via disconnected_zones).
zone_structure random_one_disconnected(test_rng& rng, const ptn& g, int zones);

// Cover: a partition plus overlap memberships added to random nodes.
zone_structure random_cover(test_rng& rng, const ptn& g, int zones, double overlap_prob = 0.3);

// Adds a connected metropolitan zone set to a partition (choosing zones whose
// union induces a connected subgraph).
std::vector<std::string> random_metropolitan(test_rng& rng, const ptn& g,
                                             const zone_structure& zs, int want_zones);

enum class price_family {
  affine_increasing,   // f + k*p, satisfies the no-stopover condition
  concave_increasing,  // increasing with shrinking steps (subadditive)
  random_increasing,   // increasing, steps arbitrary (may violate)
  spiky,               // deliberately violating
  decreasing,
};

price_function random_price_function(test_rng& rng, price_family family, int table_len = 6);

}  // namespace farekit
