#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "farekit/fare_system.hpp"
#include "farekit/ptn.hpp"
#include "farekit/routing.hpp"
#include "farekit/zones.hpp"

namespace farekit {

struct query_spec {
  std::string from;
  std::string to;
  std::optional<int> max_zones;  // decision bound for reduced instances
};

// One self-contained instance document: network + zones + fare (+ optional
// default query). Edges may declare crossed empty zones; those are expanded
// into virtual nodes at parse time, so `graph` never has empty zones left.
struct instance {
  ptn graph;
  std::optional<zone_structure> zones;
  fare_system fare;
  std::optional<query_spec> query;
};

instance parse_instance(const nlohmann::json& doc);
instance load_instance(const std::string& path);
nlohmann::json instance_to_json(const instance& inst);

// Semantic id-for-id equality (node/edge/zone sets, fare parameters, query).
bool semantically_equal(const instance& a, const instance& b);

fare_system parse_fare(const nlohmann::json& doc);
nlohmann::json fare_to_json(const fare_system& fs);

price_function parse_price_function(const nlohmann::json& doc);
nlohmann::json price_function_to_json(const price_function& p);

mcsip_instance parse_mcsip(const nlohmann::json& doc);
mcsip_instance load_mcsip(const std::string& path);

// Serializes a reduced minimum-zone-path instance as a regular instance file
// (zone tariff without double counting with a strictly increasing price
// table, query preset to the terminals).
nlohmann::json mzp_instance_to_json(const mzp_instance& inst);

}  // namespace farekit
