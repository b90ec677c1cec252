#include "farekit/commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "farekit/instance.hpp"
#include "farekit/verify.hpp"

namespace farekit {

namespace {

using nlohmann::json;

check_options make_check_options(const command_options& opt) {
  check_options c;
  c.budget.max_edges = opt.budget_edges;
  c.budget.max_segments = opt.budget_segments;
  c.budget.max_elongation_edges = opt.budget_elongation;
  c.forbid_virtual_endpoints = opt.forbid_virtual_endpoints;
  return c;
}

json price_json(price p) {
  return p.is_infinite() ? json("inf") : json(p.value());
}

json walk_json(const ptn& g, const walk& w) {
  json out = json::array();
  for (int v : w.nodes) out.push_back(g.node_at(v).id);
  return out;
}

void require_station_endpoints(const instance& inst, const walk& w, bool forbid_virtual) {
  if (!forbid_virtual) return;
  if (!inst.graph.is_station(w.front()) || !inst.graph.is_station(w.back())) {
    throw invalid_reference_error("virtual nodes are not allowed as walk endpoints");
  }
}

struct audit_condition {
  std::string name;
  bool holds = true;
  std::string detail;
};

void describe_condition(const condition_report& r, const char* prefix, json& jout,
                        std::vector<audit_condition>& lines, const std::string& name) {
  audit_condition line;
  line.name = name;
  line.holds = r.holds;
  json j{{"holds", r.holds}, {"horizon", r.horizon}};
  if (r.witness) {
    std::ostringstream os;
    os << "violated at k=" << r.witness->k;
    if (r.witness->i > 0) os << ", i=" << r.witness->i;
    os << " (" << r.witness->lhs << " > " << r.witness->rhs << ")";
    line.detail = os.str();
    j["witness"] = {{"k", r.witness->k},
                    {"i", r.witness->i},
                    {"lhs", r.witness->lhs},
                    {"rhs", r.witness->rhs}};
  }
  jout[prefix] = std::move(j);
  lines.push_back(std::move(line));
}

// Closed-form theorem conditions applicable to a fare tree.
void collect_conditions(const fare_system& fs, const instance& inst, const command_options& opt,
                        json& jout, std::vector<audit_condition>& lines,
                        const std::string& path) {
  const std::string at = path.empty() ? "" : path + ": ";
  if (const auto* t = fs.get_if<basic_zone_tariff>()) {
    describe_condition(condition_eq2(t->prices, t->prices.default_horizon()),
                       ("zone_no_stopover" + path).c_str(), jout, lines,
                       at + "zone no-stopover condition");
    lines.push_back({at + "zone no-elongation condition (increasing prices)",
                     t->prices.is_increasing(), ""});
  } else if (const auto* t = fs.get_if<no_double_tariff>()) {
    describe_condition(condition_eq2(t->prices, t->prices.default_horizon()),
                       ("zone_no_stopover" + path).c_str(), jout, lines,
                       at + "distinct-zone no-stopover condition");
    lines.push_back({at + "zone no-elongation condition (increasing prices)",
                     t->prices.is_increasing(), ""});
  } else if (const auto* t = fs.get_if<zoa_tariff>()) {
    describe_condition(condition_subadditive(t->prices, t->prices.default_horizon()),
                       ("subadditivity" + path).c_str(), jout, lines,
                       at + "overlap-area subadditivity condition");
  } else if (const auto* t = fs.get_if<metropolitan_tariff>()) {
    const int d = compute_d_max(inst.graph, *inst.zones, opt.forbid_virtual_endpoints);
    jout["d_max"] = d;
    describe_condition(condition_metropolitan(t->prices, t->metro_price, d,
                                              t->prices.default_horizon()),
                       ("metropolitan_no_stopover" + path).c_str(), jout, lines,
                       at + "metropolitan no-stopover condition (d=" + std::to_string(d) + ")");
    lines.push_back({at + "metropolitan no-elongation condition (P_M <= P(2))",
                     t->metro_price <= t->prices(2) + price_check_eps, ""});
  } else if (const auto* c = fs.get_if<combined_tariff>()) {
    const auto* zc = c->left->get_if<basic_zone_tariff>();
    const auto* sc = c->right->get_if<short_distance_tariff>();
    if (zc && sc) {
      auto rep = condition_zsd(zc->prices, sc->short_price, sc->max_stations,
                               zc->prices.default_horizon());
      json j{{"holds", rep.holds}, {"horizon", rep.horizon}};
      if (rep.threshold_k) j["threshold_k"] = *rep.threshold_k;
      jout["zsd"] = std::move(j);
      const std::string k_str =
          rep.threshold_k ? "K=" + std::to_string(*rep.threshold_k) : "K beyond horizon";
      lines.push_back({at + "zone+short-distance conditions (" + k_str + ")", rep.holds, ""});
      describe_condition(rep.zone_subadd, "zsd_zone_condition", jout, lines,
                         at + "  zone condition");
      describe_condition(rep.cap_two_shorts, "zsd_two_shorts", jout, lines,
                         at + "  two short legs cap");
      describe_condition(rep.cap_one_short, "zsd_one_short", jout, lines,
                         at + "  one short leg cap");
      describe_condition(rep.short_not_beaten, "zsd_middle_band", jout, lines,
                         at + "  short price not beaten");
      return;
    }
    collect_conditions(*c->left, inst, opt, jout, lines, path + ".left");
    collect_conditions(*c->right, inst, opt, jout, lines, path + ".right");
  }
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const configuration_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const resource_limit_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_resource_limit;
  } catch (const invalid_reference_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_query;
  } catch (const invalid_walk_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_query;
  }
}

}  // namespace

int cmd_price(const std::string& file, const std::vector<std::string>& walk_ids,
              const command_options& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    instance inst = load_instance(file);
    if (walk_ids.empty()) {
      throw invalid_reference_error("price needs a walk (one or more node ids)");
    }
    walk w = walk_from_ids(inst.graph, walk_ids);
    if (!validate_walk(inst.graph, w)) {
      throw invalid_walk_error("node sequence is not a walk of the network");
    }
    require_station_endpoints(inst, w, opt.forbid_virtual_endpoints);
    const zone_structure* zs = inst.zones ? &*inst.zones : nullptr;
    auto priced = inst.fare.price_with_provenance(inst.graph, zs, w);
    if (opt.json) {
      out << json{{"price", price_json(priced.value)}, {"tariff", priced.chosen}}.dump(2) << "\n";
    } else {
      out << "price: " << priced.value.to_string() << "\n";
      out << "tariff: " << priced.chosen << "\n";
    }
    return exit_ok;
  });
}

int cmd_route(const std::string& file, const std::optional<std::string>& from,
              const std::optional<std::string>& to, bool want_ticket,
              const command_options& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    instance inst = load_instance(file);
    std::string from_id, to_id;
    if (from && to) {
      from_id = *from;
      to_id = *to;
    } else if (inst.query) {
      from_id = inst.query->from;
      to_id = inst.query->to;
    } else {
      throw invalid_reference_error("route needs two node ids (or a query in the file)");
    }
    const int x = inst.graph.require_node(from_id);
    const int y = inst.graph.require_node(to_id);
    if (opt.forbid_virtual_endpoints &&
        (!inst.graph.is_station(x) || !inst.graph.is_station(y))) {
      throw invalid_reference_error("virtual nodes are not allowed as route endpoints");
    }
    const zone_structure* zs = inst.zones ? &*inst.zones : nullptr;
    routing_limits limits;
    limits.max_states = opt.budget_states;
    limits.compact_overlaps = opt.compact;
    route_result r = cheapest_path(inst.graph, zs, inst.fare, x, y, limits);

    json j;
    j["walk"] = walk_json(inst.graph, r.path);
    j["price"] = price_json(r.cost);
    j["tariff"] = r.tariff;
    if (r.zone_count > 0) j["zone_count"] = r.zone_count;
    if (!opt.json) {
      out << "walk: " << walk_to_string(inst.graph, r.path) << "\n";
      out << "price: " << r.cost.to_string() << "\n";
      out << "tariff: " << r.tariff << "\n";
      if (r.zone_count > 0) out << "zones: " << r.zone_count << "\n";
    }
    if (r.zone_assignment && inst.zones) {
      json ja = json::array();
      std::ostringstream oa;
      for (size_t i = 0; i < r.zone_assignment->size(); ++i) {
        const auto& zn = inst.zones->zone_name((*r.zone_assignment)[i]);
        ja.push_back(zn);
        if (i) oa << " ";
        oa << zn;
      }
      j["assignment"] = std::move(ja);
      if (!opt.json) out << "assignment: " << oa.str() << "\n";
    }

    if (inst.query && inst.query->max_zones && inst.fare.get_if<no_double_tariff>()) {
      auto res = mzp_exact(inst.graph, *inst.zones, x, y, inst.query->max_zones, limits);
      if (res.status == search_status::budget_exhausted) {
        throw resource_limit_error("exact distinct-zone search exceeded its state budget");
      }
      j["within_zone_budget"] = *res.decision;
      if (!opt.json) {
        out << "within " << *inst.query->max_zones
            << " zones: " << (*res.decision ? "yes" : "no") << "\n";
      }
    }

    if (want_ticket) {
      auto copt = make_check_options(opt);
      auto stopover = check_no_stopover(inst.fare, inst.graph, zs, copt);
      auto elongation = check_no_elongation(inst.fare, inst.graph, zs, copt);
      json jt;
      if (stopover.holds && elongation.holds) {
        jt["method"] = "standard (properties verified within budget)";
        jt["segments"] = json::array({walk_json(inst.graph, r.path)});
        jt["price"] = price_json(r.cost);
        if (!opt.json) {
          out << "ticket: standard (properties verified within budget)\n";
          out << "  segment: " << walk_to_string(inst.graph, r.path) << "\n";
          out << "  total: " << r.cost.to_string() << "\n";
        }
      } else {
        auto oracle = brute_force_cheapest_ticket(inst.fare, inst.graph, zs, x, y, copt);
        jt["method"] = "oracle (budget-bounded)";
        jt["segments"] = json::array();
        for (const auto& seg : oracle.best.segments) {
          jt["segments"].push_back(walk_json(inst.graph, seg));
        }
        jt["price"] = price_json(oracle.cost);
        if (!opt.json) {
          out << "ticket: oracle (budget-bounded)\n";
          for (const auto& seg : oracle.best.segments) {
            out << "  segment: " << walk_to_string(inst.graph, seg) << "\n";
          }
          out << "  total: " << oracle.cost.to_string() << "\n";
        }
      }
      j["ticket"] = std::move(jt);
    }

    if (opt.json) out << j.dump(2) << "\n";
    return exit_ok;
  });
}

int cmd_audit(const std::string& file, const command_options& opt, std::ostream& out,
              std::ostream& err) {
  return run_guarded(err, [&]() {
    instance inst = load_instance(file);
    const zone_structure* zs = inst.zones ? &*inst.zones : nullptr;
    auto copt = make_check_options(opt);

    json j;
    j["fare"] = inst.fare.variant_name();
    j["seed"] = opt.seed;
    j["budget"] = {{"edges", copt.budget.max_edges},
                   {"segments", copt.budget.max_segments},
                   {"elongation", copt.budget.max_elongation_edges}};

    auto render_property = [&](const property_report& rep) {
      json jp{{"holds", rep.holds}, {"walks_checked", rep.walks_checked}};
      std::ostringstream line;
      line << property_name(rep.property) << ": " << (rep.holds ? "PASS" : "FAIL");
      if (!rep.holds && rep.counterexample) {
        const auto& cx = *rep.counterexample;
        jp["counterexample"] = {{"walk", walk_json(inst.graph, cx.traveled)},
                                {"lhs", price_json(cx.lhs)},
                                {"rhs", price_json(cx.rhs)},
                                {"detail", cx.detail}};
        if (cx.split >= 0) jp["counterexample"]["split"] = cx.split;
        line << "  (walk " << walk_to_string(inst.graph, cx.traveled);
        if (cx.split >= 0) line << ", split at " << cx.split;
        line << ": " << cx.lhs.to_string() << " > " << cx.rhs.to_string() << ")";
      } else {
        line << "  (within budget)";
      }
      j[property_name(rep.property)] = std::move(jp);
      if (!opt.json) out << line.str() << "\n";
    };

    if (!opt.json) out << "fare: " << inst.fare.variant_name() << "\n";
    render_property(check_no_stopover(inst.fare, inst.graph, zs, copt));
    render_property(check_no_elongation(inst.fare, inst.graph, zs, copt));

    std::vector<audit_condition> lines;
    collect_conditions(inst.fare, inst, opt, j, lines, "");
    if (!opt.json && !lines.empty()) out << "conditions:\n";
    for (const auto& line : lines) {
      if (!opt.json) {
        out << "  " << line.name << ": " << (line.holds ? "PASS" : "FAIL");
        if (!line.detail.empty()) out << "  " << line.detail;
        out << "\n";
      }
    }

    if (zs && zs->mode() == zone_structure::mode_t::partition) {
      auto disc = disconnected_zones(inst.graph, *zs);
      json jd = json::array();
      for (int z : disc) jd.push_back(zs->zone_name(z));
      j["disconnected_zones"] = std::move(jd);
      if (!opt.json) {
        if (disc.empty()) {
          out << "zone connectivity: all zones connected\n";
        } else {
          out << "zone connectivity:";
          for (int z : disc) {
            out << " " << zs->zone_name(z) << " (" << zone_component_count(inst.graph, *zs, z)
                << " components)";
          }
          out << "\n";
        }
      }
    }
    if (!opt.json) {
      out << "seed: " << opt.seed << "\n";
      out << "budget: edges<=" << copt.budget.max_edges
          << " segments<=" << copt.budget.max_segments
          << " elongation<=" << copt.budget.max_elongation_edges << "\n";
    } else {
      out << j.dump(2) << "\n";
    }
    return exit_ok;
  });
}

int cmd_reduce(const std::string& file, const std::optional<std::string>& out_path,
               const command_options& opt, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    mcsip_instance inst = load_mcsip(file);
    mzp_instance reduced = mcsip_to_mzp(inst);
    json doc = mzp_instance_to_json(reduced);
    if (out_path) {
      std::ofstream f(*out_path);
      if (!f) throw parse_error("cannot write '" + *out_path + "'");
      f << doc.dump(2) << "\n";
    }
    if (opt.json) {
      json j{{"k", reduced.zone_budget}};
      if (out_path) {
        j["written"] = *out_path;
      } else {
        j["instance"] = std::move(doc);
      }
      out << j.dump(2) << "\n";
    } else {
      out << "K: " << reduced.zone_budget << "\n";
      if (out_path) {
        out << "wrote: " << *out_path << "\n";
      } else {
        out << doc.dump(2) << "\n";
      }
    }
    return exit_ok;
  });
}

}  // namespace farekit
