#pragma once

#include <optional>
#include <string>
#include <vector>

#include "farekit/fare_system.hpp"
#include "farekit/ptn.hpp"
#include "farekit/routing.hpp"
#include "farekit/ticket.hpp"
#include "farekit/zones.hpp"

namespace farekit {

// Enumeration bounds. The properties quantify over all walks; the checkers
// decide them over walks with at most max_edges edges, so "holds" always
// means "holds within budget".
struct enum_budget {
  int max_edges = 7;
  int max_segments = 3;
  int max_elongation_edges = 2;
  long long max_walks = 5'000'000;
};

struct check_options {
  enum_budget budget;
  bool forbid_virtual_endpoints = false;
};

enum class fare_property { no_stopover, no_elongation, standard_ticket_optimality };

const char* property_name(fare_property p);

struct property_counterexample {
  walk traveled;
  // no_stopover: split index into traveled (0-based node position).
  int split = -1;
  // no_elongation: lhs prices the prefix, rhs the full walk.
  // standard_ticket_optimality: the cheaper ticket.
  std::optional<ticket> better;
  price lhs;  // the side required to be <= rhs
  price rhs;
  std::string detail;
};

struct property_report {
  fare_property property = fare_property::no_stopover;
  bool holds = true;
  std::optional<property_counterexample> counterexample;
  enum_budget budget;
  long long walks_checked = 0;
};

// Enumerates all walks within budget (deterministic order: start nodes by id,
// depth-first with id-sorted neighbors) and all single split points.
property_report check_no_stopover(const fare_system& fs, const ptn& g,
                                  const zone_structure* zs, const check_options& opt = {});

// Tests every walk against its one-node-shorter prefix; reversed walks are
// enumerated as walks of their own, which covers suffix truncation.
property_report check_no_elongation(const fare_system& fs, const ptn& g,
                                    const zone_structure* zs, const check_options& opt = {});

// Compares each walk's standard ticket price with the brute-force cheapest
// ticket of that walk.
property_report check_standard_ticket_optimality(const fare_system& fs, const ptn& g,
                                                 const zone_structure* zs,
                                                 const check_options& opt = {});

struct condition_witness {
  int k = 0;
  int i = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct condition_report {
  bool holds = true;
  std::optional<condition_witness> witness;
  int horizon = 0;
};

// P(k) <= P(i) + P(k-i+1), checked for k <= k_max over the reduced index
// range i in {2..floor((k+1)/2)}; affine tails additionally get the residual
// closed-form checks (i-1)*slope <= P(i).
condition_report condition_eq2(const price_function& p, int k_max);

// P(k1+k2) <= P(k1) + P(k2) for k1+k2 <= k_max, plus affine tail residuals.
condition_report condition_subadditive(const price_function& p, int k_max);

// P(d+k) <= P_M + P(k+1) for k <= k_max, plus the affine tail residual
// (d-1)*slope <= P_M.
condition_report condition_metropolitan(const price_function& p, double metro_price, int d,
                                        int k_max);

struct zsd_condition_report {
  std::optional<int> threshold_k;  // nullopt: P_S dominates P up to the horizon
  bool holds = true;
  condition_report zone_subadd;       // condition on P alone
  condition_report cap_two_shorts;    // P(k) <= 2 P_S for k >= 2K+1
  condition_report cap_one_short;     // P(k) <= P(i) + P_S for k >= K+1, i <= k-K
  condition_report short_not_beaten;  // P_S <= P(i) + P(k-i+1) on the middle band
  int horizon = 0;
};

zsd_condition_report condition_zsd(const price_function& p, double short_price,
                                   std::optional<int> max_stations, int k_max);

struct cheapest_ticket_result {
  ticket best;
  price cost;
  long long walks_seen = 0;
};

// Enumerates all from-to walks within budget, all consecutive decompositions
// into at most max_segments parts, and all elongations of each part by at
// most max_elongation_edges extra edges; returns a minimum-price ticket.
cheapest_ticket_result brute_force_cheapest_ticket(const fare_system& fs, const ptn& g,
                                                   const zone_structure* zs, int from, int to,
                                                   const check_options& opt = {});

struct gadget {
  ptn graph;
  zone_structure zones;
};

enum class violation_kind { eq2, metropolitan, zoa_subadd, zsd_cond };

struct violation_witness {
  int k = 0;
  int i = 0;          // eq2 / zsd conditions with an i component
  int d = 0;          // metropolitan
  int k2 = 0;         // zoa_subadd second summand
  int condition = 0;  // zsd: which of the four conditions failed (1..4)
  std::optional<int> max_stations;
  std::optional<double> max_length;
};

// Counterexample networks matching the violated condition: a chain of
// singleton zones for eq2, a chain with a metropolitan prefix, an overlap
// chain, or a two-leg network with lengths tuned to the short-distance
// bounds. Applying the offending tariff on the result makes
// check_no_stopover report a violation.
gadget gadget_from_violation(violation_kind kind, const violation_witness& w);

}  // namespace farekit
