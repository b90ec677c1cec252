#include "farekit/instance.hpp"

#include <fstream>
#include <set>

namespace farekit {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw parse_error(what); }

const json& need(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string need_string(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double need_number(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> opt_bound(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) {
    if (it->get<std::string>() == "inf") return std::nullopt;
    bad(std::string("field '") + key + "' must be a number or \"inf\"");
  }
  if (!it->is_number()) bad(std::string("field '") + key + "' must be a number or \"inf\"");
  return it->get<double>();
}

}  // namespace

price_function parse_price_function(const json& doc) {
  if (doc.is_array()) {
    return price_function(doc.get<std::vector<double>>());
  }
  if (!doc.is_object()) bad("price function must be an array or an object");
  const json& table = need(doc, "table");
  if (!table.is_array()) bad("price table must be an array");
  auto values = table.get<std::vector<double>>();
  auto tail = price_function::tail_kind::constant;
  double slope = 0.0;
  if (auto it = doc.find("tail"); it != doc.end()) {
    if (it->is_string()) {
      const auto s = it->get<std::string>();
      if (s == "constant") {
        tail = price_function::tail_kind::constant;
      } else if (s == "affine") {
        bad("affine tail needs a slope: use {\"kind\": \"affine\", \"slope\": ...}");
      } else {
        bad("unknown tail kind '" + s + "'");
      }
    } else if (it->is_object()) {
      const auto kind = need_string(*it, "kind");
      if (kind == "constant") {
        tail = price_function::tail_kind::constant;
      } else if (kind == "affine") {
        tail = price_function::tail_kind::affine;
        slope = need_number(*it, "slope");
      } else {
        bad("unknown tail kind '" + kind + "'");
      }
    } else {
      bad("tail must be \"constant\" or an object");
    }
  }
  try {
    return price_function(std::move(values), tail, slope);
  } catch (const configuration_error& e) {
    bad(e.what());
  }
}

json price_function_to_json(const price_function& p) {
  json out;
  out["table"] = p.table();
  if (p.tail() == price_function::tail_kind::affine) {
    out["tail"] = {{"kind", "affine"}, {"slope", p.slope()}};
  } else {
    out["tail"] = "constant";
  }
  return out;
}

fare_system parse_fare(const json& doc) {
  if (!doc.is_object()) bad("fare must be an object");
  const std::string type = need_string(doc, "type");
  try {
    if (type == "distance") {
      return fare_system::distance(need_number(doc, "base"), need_number(doc, "per_km"));
    }
    if (type == "beeline") {
      return fare_system::beeline(need_number(doc, "base"), need_number(doc, "per_km"));
    }
    if (type == "flat") {
      return fare_system::flat(need_number(doc, "amount"));
    }
    if (type == "basic_zone") {
      return fare_system::basic_zone(parse_price_function(need(doc, "prices")));
    }
    if (type == "metropolitan_zone") {
      return fare_system::metropolitan(parse_price_function(need(doc, "prices")),
                                       need_number(doc, "metropolitan_price"));
    }
    if (type == "zoa") {
      return fare_system::zoa(parse_price_function(need(doc, "prices")));
    }
    if (type == "zone_no_double") {
      return fare_system::no_double(parse_price_function(need(doc, "prices")));
    }
    if (type == "short_distance") {
      auto stations = opt_bound(doc, "max_stations");
      auto length = opt_bound(doc, "max_length");
      std::optional<int> s;
      if (stations) s = static_cast<int>(*stations);
      return fare_system::short_distance(need_number(doc, "price"), s, length);
    }
    if (type == "combined") {
      return fare_system::combined(parse_fare(need(doc, "left")), parse_fare(need(doc, "right")));
    }
    if (type == "bounded_distance") {
      return fare_system::bounded_distance(need_number(doc, "base"), need_number(doc, "per_km"),
                                           need_number(doc, "cap"));
    }
    if (type == "zsd") {
      auto stations = opt_bound(doc, "max_stations");
      auto length = opt_bound(doc, "max_length");
      std::optional<int> s;
      if (stations) s = static_cast<int>(*stations);
      return fare_system::zsd(parse_price_function(need(doc, "prices")),
                              need_number(doc, "short_price"), s, length);
    }
  } catch (const configuration_error& e) {
    bad(e.what());
  }
  bad("unknown fare type '" + type + "'");
}

json fare_to_json(const fare_system& fs) {
  json out;
  out["type"] = fs.variant_name();
  if (const auto* t = fs.get_if<distance_tariff>()) {
    out["base"] = t->base;
    out["per_km"] = t->per_km;
  } else if (const auto* t = fs.get_if<beeline_tariff>()) {
    out["base"] = t->base;
    out["per_km"] = t->per_km;
  } else if (const auto* t = fs.get_if<flat_tariff>()) {
    out["amount"] = t->amount;
  } else if (const auto* t = fs.get_if<basic_zone_tariff>()) {
    out["prices"] = price_function_to_json(t->prices);
  } else if (const auto* t = fs.get_if<metropolitan_tariff>()) {
    out["prices"] = price_function_to_json(t->prices);
    out["metropolitan_price"] = t->metro_price;
  } else if (const auto* t = fs.get_if<zoa_tariff>()) {
    out["prices"] = price_function_to_json(t->prices);
  } else if (const auto* t = fs.get_if<no_double_tariff>()) {
    out["prices"] = price_function_to_json(t->prices);
  } else if (const auto* t = fs.get_if<short_distance_tariff>()) {
    out["price"] = t->short_price;
    out["max_stations"] = t->max_stations ? json(*t->max_stations) : json("inf");
    out["max_length"] = t->max_length ? json(*t->max_length) : json("inf");
  } else if (const auto* t = fs.get_if<combined_tariff>()) {
    out["left"] = fare_to_json(*t->left);
    out["right"] = fare_to_json(*t->right);
  }
  return out;
}

instance parse_instance(const json& doc) {
  if (!doc.is_object()) bad("instance document must be an object");

  const json& jnodes = need(doc, "nodes");
  if (!jnodes.is_array() || jnodes.empty()) bad("'nodes' must be a nonempty array");
  std::vector<node> nodes;
  for (const auto& jn : jnodes) {
    node n;
    n.id = need_string(jn, "id");
    if (auto it = jn.find("kind"); it != jn.end()) {
      const auto kind = it->get<std::string>();
      if (kind == "station") {
        n.kind = node_kind::station;
      } else if (kind == "virtual") {
        n.kind = node_kind::virtual_node;
      } else {
        bad("node kind must be \"station\" or \"virtual\"");
      }
    }
    const bool has_x = jn.contains("x");
    const bool has_y = jn.contains("y");
    if (has_x != has_y) bad("node '" + n.id + "' needs both x and y or neither");
    if (has_x) {
      n.pos = std::array<double, 2>{jn["x"].get<double>(), jn["y"].get<double>()};
    }
    nodes.push_back(std::move(n));
  }

  const json& jedges = need(doc, "edges");
  if (!jedges.is_array()) bad("'edges' must be an array");
  std::vector<edge> edges;
  std::vector<std::pair<int, std::vector<std::string>>> crossings;
  {
    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i].id] = static_cast<int>(i);
    auto resolve = [&](const std::string& id) {
      auto it = index.find(id);
      if (it == index.end()) bad("edge references unknown node '" + id + "'");
      return it->second;
    };
    for (const auto& je : jedges) {
      edge e;
      e.a = resolve(need_string(je, "a"));
      e.b = resolve(need_string(je, "b"));
      e.length = je.contains("length") ? je["length"].get<double>() : 1.0;
      if (auto it = je.find("empty_zones"); it != je.end() && !it->empty()) {
        crossings.emplace_back(static_cast<int>(edges.size()),
                               it->get<std::vector<std::string>>());
      }
      edges.push_back(e);
    }
  }

  ptn graph = [&] {
    try {
      return ptn(std::move(nodes), std::move(edges));
    } catch (const configuration_error& e) {
      bad(e.what());
    } catch (const invalid_reference_error& e) {
      bad(e.what());
    }
  }();

  std::optional<zone_structure> zones;
  if (auto it = doc.find("zones"); it != doc.end()) {
    if (!it->is_object()) bad("'zones' must map zone ids to node id lists");
    std::vector<std::pair<std::string, std::vector<std::string>>> table;
    for (auto zit = it->begin(); zit != it->end(); ++zit) {
      table.emplace_back(zit.key(), zit.value().get<std::vector<std::string>>());
    }
    std::vector<std::string> metro;
    if (auto mit = doc.find("metropolitan"); mit != doc.end()) {
      metro = mit->get<std::vector<std::string>>();
    }
    try {
      zones.emplace(graph, table, metro);
    } catch (const configuration_error& e) {
      bad(e.what());
    } catch (const invalid_reference_error& e) {
      bad(e.what());
    }
  } else if (doc.contains("metropolitan")) {
    bad("'metropolitan' needs a 'zones' section");
  }

  if (!crossings.empty()) {
    if (!zones) bad("empty-zone crossings need a 'zones' section");
    try {
      expanded_network ex = expand_empty_zones(graph, *zones, crossings);
      graph = std::move(ex.graph);
      zones.emplace(std::move(ex.zones));
    } catch (const configuration_error& e) {
      bad(e.what());
    }
  }

  fare_system fare = parse_fare(need(doc, "fare"));
  if (fare.requires_zones() && !zones) bad("this fare needs a 'zones' section");
  if (fare.requires_partition() && zones && zones->mode() != zone_structure::mode_t::partition) {
    bad("this fare requires a zone partition, but the zones overlap");
  }
  if (fare.requires_coordinates() && !graph.stations_have_coordinates()) {
    bad("a beeline fare requires coordinates on every station");
  }
  if (fare.get_if<metropolitan_tariff>() && (!zones || !zones->has_metropolitan())) {
    bad("a metropolitan fare needs a 'metropolitan' zone list");
  }

  std::optional<query_spec> query;
  if (auto it = doc.find("query"); it != doc.end()) {
    query_spec q;
    q.from = need_string(*it, "from");
    q.to = need_string(*it, "to");
    if (it->contains("max_zones")) q.max_zones = (*it)["max_zones"].get<int>();
    if (!graph.find_node(q.from) || !graph.find_node(q.to)) {
      bad("query references an unknown node");
    }
    query = std::move(q);
  }

  return instance{std::move(graph), std::move(zones), std::move(fare), std::move(query)};
}

instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

json instance_to_json(const instance& inst) {
  json out;
  out["nodes"] = json::array();
  for (const auto& n : inst.graph.nodes()) {
    json jn{{"id", n.id}};
    if (n.kind == node_kind::virtual_node) jn["kind"] = "virtual";
    if (n.pos) {
      jn["x"] = (*n.pos)[0];
      jn["y"] = (*n.pos)[1];
    }
    out["nodes"].push_back(std::move(jn));
  }
  out["edges"] = json::array();
  for (const auto& e : inst.graph.edges()) {
    out["edges"].push_back(json{{"a", inst.graph.node_at(e.a).id},
                                {"b", inst.graph.node_at(e.b).id},
                                {"length", e.length}});
  }
  if (inst.zones) {
    json jz = json::object();
    for (int z = 0; z < inst.zones->zone_count(); ++z) {
      json members = json::array();
      for (int v : inst.zones->nodes_in_zone(z)) members.push_back(inst.graph.node_at(v).id);
      jz[inst.zones->zone_name(z)] = std::move(members);
    }
    out["zones"] = std::move(jz);
    if (inst.zones->has_metropolitan()) {
      json metro = json::array();
      for (int z : inst.zones->metropolitan_zones()) {
        metro.push_back(inst.zones->zone_name(z));
      }
      out["metropolitan"] = std::move(metro);
    }
  }
  out["fare"] = fare_to_json(inst.fare);
  if (inst.query) {
    json q{{"from", inst.query->from}, {"to", inst.query->to}};
    if (inst.query->max_zones) q["max_zones"] = *inst.query->max_zones;
    out["query"] = std::move(q);
  }
  return out;
}

bool semantically_equal(const instance& a, const instance& b) {
  return instance_to_json(a) == instance_to_json(b);
}

mcsip_instance parse_mcsip(const json& doc) {
  if (!doc.is_object()) bad("colored-path document must be an object");
  mcsip_instance inst;
  inst.node_ids = need(doc, "nodes").get<std::vector<std::string>>();
  for (const auto& je : need(doc, "edges")) {
    inst.edges.push_back({need_string(je, "a"), need_string(je, "b"), need_string(je, "color")});
  }
  inst.from = need_string(doc, "from");
  inst.to = need_string(doc, "to");
  inst.color_budget = static_cast<int>(need_number(doc, "k"));
  return inst;
}

mcsip_instance load_mcsip(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return parse_mcsip(doc);
}

json mzp_instance_to_json(const mzp_instance& inst) {
  instance wrapped{
      inst.graph, inst.zones,
      fare_system::no_double(price_function::linear(std::max(inst.zones.zone_count(), 2))),
      query_spec{inst.graph.node_at(inst.from).id, inst.graph.node_at(inst.to).id,
                 inst.zone_budget}};
  return instance_to_json(wrapped);
}

}  // namespace farekit
