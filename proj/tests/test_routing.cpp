#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "farekit/instance_gen.hpp"
#include "farekit/routing.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace farekit;
using namespace testutil;

TEST_CASE("distance routing follows the shorter of two parallel routes") {
  net_builder b;
  b.station("x").station("a").station("b").station("y");
  b.link("x", "a", 1).link("a", "y", 2).link("x", "b", 2).link("b", "y", 3);
  ptn g = b.build();
  auto r = cheapest_path_distance(g, 1, 1, g.require_node("x"), g.require_node("y"));
  CHECK(r.path == W(g, {"x", "a", "y"}));
  CHECK(r.cost.value() == doctest::Approx(4.0));

  auto trivial = cheapest_path_distance(g, 1.5, 1, g.require_node("x"), g.require_node("x"));
  CHECK(trivial.path == W(g, {"x"}));
  CHECK(trivial.cost.value() == doctest::Approx(1.5));
}

TEST_CASE("beeline routing prices the endpoints regardless of the route") {
  net_builder b;
  b.station("x1", 0, 0).station("x2", 5, 0).station("x3", 4, 0);
  b.link("x1", "x2", 5).link("x2", "x3", 1);
  ptn g = b.build();
  auto r = cheapest_path_beeline(g, 0, 1, g.require_node("x1"), g.require_node("x2"));
  CHECK(r.cost.value() == doctest::Approx(5.0));
}

TEST_CASE("zone routing minimizes crossed borders") {
  SUBCASE("inside a single zone") {
    ptn g = chain_ptn(3);
    zone_structure zs(g, {{"A", {"s1", "s2", "s3"}}});
    auto r = cheapest_path_basic_zone(g, zs, price_function::linear(4), 0, 2);
    CHECK(r.zone_count == 1);
    CHECK(r.cost.value() == 1.0);
  }
  SUBCASE("a unique chain visits every zone") {
    ptn g = chain_ptn(5);
    zone_structure zs = chain_zones(g, 5);
    auto r = cheapest_path_basic_zone(g, zs, price_function::linear(8), 0, 4);
    CHECK(r.zone_count == 5);
    CHECK(r.cost.value() == 5.0);
  }
  SUBCASE("two borders beat three") {
    net_builder b;
    b.station("x").station("a").station("b1").station("b2").station("y");
    b.link("x", "a", 1).link("a", "y", 1);
    b.link("x", "b1", 1).link("b1", "b2", 1).link("b2", "y", 1);
    ptn g = b.build();
    zone_structure zs(g, {{"X", {"x"}},
                          {"A", {"a"}},
                          {"B1", {"b1"}},
                          {"B2", {"b2"}},
                          {"Y", {"y"}}});
    auto r = cheapest_path_basic_zone(g, zs, price_function::linear(8), g.require_node("x"),
                                      g.require_node("y"));
    CHECK(r.path == W(g, {"x", "a", "y"}));
    CHECK(r.zone_count == 3);
  }
  SUBCASE("a decreasing price function is rejected") {
    ptn g = chain_ptn(3);
    zone_structure zs = chain_zones(g, 3);
    CHECK_THROWS_AS(
        cheapest_path_basic_zone(g, zs, price_function({5, 4, 3}), 0, 2),
        configuration_error);
  }
}

TEST_CASE("zone routing result minimizes the zone count over all walks") {
  test_rng rng(201);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 30; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_partition(rng, g, rng.uniform(2, 4));
    const int x = rng.uniform(0, g.node_count() - 1);
    const int y = rng.uniform(0, g.node_count() - 1);
    auto r = cheapest_path_basic_zone(g, zs, price_function::linear(10), x, y);
    int best = 1000;
    for (const auto& w : oracle::all_walks(g, g.node_count() - 1, x, y)) {
      best = std::min(best, zone_count_basic(g, zs, w));
    }
    CHECK(r.zone_count == best);
  }
}

TEST_CASE("metropolitan routing") {
  ptn g = chain_ptn(6);
  zone_structure zs = chain_zones(g, 6, 0);
  zone_table t;
  for (int i = 1; i <= 6; ++i) {
    t.emplace_back("Z" + std::to_string(i), std::vector<std::string>{"s" + std::to_string(i)});
  }
  zone_structure metro(g, t, {"Z2", "Z3", "Z4", "Z5", "Z6"});
  price_function lin = price_function::linear(8);

  SUBCASE("a trip inside the metropolitan zone gets the flat price") {
    auto r = cheapest_path_metropolitan(g, metro, lin, 2, 1, 5);
    CHECK(r.cost.value() == 2.0);
    CHECK(r.path == W(g, {"s2", "s3", "s4", "s5", "s6"}));
  }
  SUBCASE("a trip entering from outside is priced by zones") {
    auto r = cheapest_path_metropolitan(g, metro, lin, 2, 0, 5);
    CHECK(r.cost.value() == 6.0);
    CHECK(r.zone_count == 6);
  }
  SUBCASE("the dispatcher handles both") {
    auto fs = fare_system::metropolitan(lin, 2);
    CHECK(cheapest_path(g, &metro, fs, 1, 5).cost.value() == 2.0);
    CHECK(cheapest_path(g, &metro, fs, 0, 5).cost.value() == 6.0);
  }
}

TEST_CASE("expensive metropolitan price makes leaving routes attractive") {
  net_builder b;
  b.station("x1").station("x2").station("x3");
  b.link("x1", "x2", 1).link("x1", "x3", 1).link("x3", "x2", 1);
  ptn g = b.build();
  zone_structure zs(g, {{"M1", {"x1"}}, {"M2", {"x2"}}, {"C", {"x3"}}}, {"M1", "M2"});
  price_function lin = price_function::linear(6);
  const int x = g.require_node("x1");
  const int y = g.require_node("x2");

  SUBCASE("cheap flat price keeps the trip inside") {
    auto r = cheapest_path_metropolitan_pm_gt_p3(g, zs, lin, 2, x, y);
    CHECK(r.cost.value() == 2.0);
    CHECK(r.path == W(g, {"x1", "x2"}));
  }
  SUBCASE("expensive flat price pushes the trip through the outside zone") {
    auto r = cheapest_path_metropolitan_pm_gt_p3(g, zs, lin, 10, x, y);
    CHECK(r.cost.value() == 3.0);
    CHECK(r.path == W(g, {"x1", "x3", "x2"}));
    // reference: cheapest standard ticket over all walks
    auto fs = fare_system::metropolitan(lin, 10);
    CHECK(oracle::cheapest_standard(fs, g, &zs, x, y, 5) == r.cost);
  }
  SUBCASE("with no way out the inside price stands") {
    zone_structure all(g, {{"M1", {"x1"}}, {"M2", {"x2"}}, {"C", {"x3"}}}, {"M1", "M2", "C"});
    auto r = cheapest_path_metropolitan_pm_gt_p3(g, all, lin, 10, x, y);
    CHECK(r.cost.value() == 10.0);
  }
  SUBCASE("the dispatcher picks the leaving route automatically") {
    auto fs = fare_system::metropolitan(lin, 10);
    CHECK(cheapest_path(g, &zs, fs, x, y).cost.value() == 3.0);
  }
}

TEST_CASE("elongated tickets beat the flat price when leaving is cheap") {
  net_builder b;
  b.station("x1").station("x2").station("o");
  b.link("x1", "x2", 1).link("x2", "o", 1);
  ptn g = b.build();
  zone_structure zs(g, {{"M", {"x1", "x2"}}, {"C", {"o"}}}, {"M"});
  price_function lin = price_function::linear(6);
  const int x = g.require_node("x1");
  const int y = g.require_node("x2");

  SUBCASE("flat price below P(2) keeps the standard ticket") {
    auto t = metropolitan_elongated_ticket(g, zs, lin, 2, x, y);
    CHECK(t.cost.value() == 2.0);
    CHECK(t.t.segments.size() == 1);
    CHECK(t.t.segments[0] == W(g, {"x1", "x2"}));
  }
  SUBCASE("expensive flat price is beaten by buying one stop further") {
    auto t = metropolitan_elongated_ticket(g, zs, lin, 5, x, y);
    CHECK(t.cost.value() == 2.0);
    CHECK(t.t.segments.size() == 1);
    CHECK(t.t.segments[0] == W(g, {"x1", "x2", "o"}));
    CHECK(is_valid_ticket(g, t.t, W(g, {"x1", "x2"})));
    // reference: cheapest ticket of any kind within a small budget
    auto fs = fare_system::metropolitan(lin, 5);
    CHECK(oracle::cheapest_ticket_between(fs, g, &zs, x, y, 3, 2, 2) == t.cost);
  }
  SUBCASE("the extension attaches at the end that can leave") {
    net_builder c;
    c.station("o2").station("x1").station("x2");
    c.link("o2", "x1", 1).link("x1", "x2", 1);
    ptn h = c.build();
    zone_structure hz(h, {{"M", {"x1", "x2"}}, {"C", {"o2"}}}, {"M"});
    auto t = metropolitan_elongated_ticket(h, hz, lin, 5, h.require_node("x1"),
                                           h.require_node("x2"));
    CHECK(t.cost.value() == 2.0);
    CHECK(t.t.segments[0] == W(h, {"o2", "x1", "x2"}));
  }
}

TEST_CASE("maximum metropolitan distance") {
  SUBCASE("a single connected zone") {
    ptn g = chain_ptn(3);
    zone_structure zs(g, {{"A", {"s1", "s2", "s3"}}}, {"A"});
    CHECK(compute_d_max(g, zs) == 1);
  }
  SUBCASE("two zones in a chain") {
    ptn g = chain_ptn(3);
    zone_structure zs(g, {{"A", {"s1", "s2"}}, {"B", {"s3"}}}, {"A", "B"});
    CHECK(compute_d_max(g, zs) == 2);
  }
  SUBCASE("three zones can force a distance of four") {
    net_builder b;
    b.station("x1").station("x2").station("x3").station("x4").station("x5");
    b.link("x1", "x2").link("x2", "x3").link("x3", "x4").link("x4", "x5");
    ptn g = b.build();
    zone_structure zs(g, {{"A", {"x1", "x4"}}, {"B", {"x2"}}, {"C", {"x3"}}, {"D", {"x5"}}},
                      {"A", "B", "C"});
    CHECK(compute_d_max(g, zs) == 4);
  }
  SUBCASE("every internal pair is reachable within the bound and some pair attains it") {
    test_rng rng(202);
    gen_options opt;
    opt.min_nodes = 6;
    opt.max_nodes = 9;
    for (int round = 0; round < 20; ++round) {
      ptn g = random_connected_ptn(rng, opt);
      zone_structure parts = random_connected_partition(rng, g, rng.uniform(2, 4));
      auto metro_names = random_metropolitan(rng, g, parts, rng.uniform(1, parts.zone_count()));
      zone_table t;
      for (int z = 0; z < parts.zone_count(); ++z) {
        std::vector<std::string> ids;
        for (int v : parts.nodes_in_zone(z)) ids.push_back(g.node_at(v).id);
        t.emplace_back(parts.zone_name(z), std::move(ids));
      }
      zone_structure zs(g, t, metro_names);
      const int d = compute_d_max(g, zs);
      int attained = 0;
      for (int a = 0; a < g.node_count(); ++a) {
        if (!zs.node_in_metropolitan(a)) continue;
        for (int bnode = 0; bnode < g.node_count(); ++bnode) {
          if (!zs.node_in_metropolitan(bnode)) continue;
          int best = 1000;
          for (const auto& w : oracle::all_walks(g, g.node_count() - 1, a, bnode)) {
            bool inside = true;
            for (int v : w.nodes) inside = inside && zs.node_in_metropolitan(v);
            if (inside) best = std::min(best, zone_count_basic(g, zs, w));
          }
          CHECK(best <= d);
          attained = std::max(attained, best);
        }
      }
      CHECK(attained == d);
    }
  }
}

TEST_CASE("overlaps-resolved graph sizes") {
  SUBCASE("singleton memberships double the vertices") {
    ptn g = chain_ptn(4);
    zone_structure zs = chain_zones(g, 4);
    auto og = build_overlaps_resolved(g, zs);
    CHECK(og.vertex_count() == 2 * g.node_count());
    CHECK(og.edge_count() == g.node_count() + g.edge_count());
  }
  SUBCASE("an overlap node is represented once per membership") {
    net_builder b;
    b.station("x").station("v").station("y");
    b.link("x", "v").link("v", "y");
    ptn g = b.build();
    zone_structure zs(g, {{"L", {"x", "v"}}, {"R", {"v", "y"}}});
    auto og = build_overlaps_resolved(g, zs);
    CHECK(og.vertex_count() == 3 + 4);
    CHECK(og.copies_of[static_cast<size_t>(g.require_node("v"))].size() == 2);
    auto r = cheapest_path_zoa(g, zs, price_function::linear(4), g.require_node("x"),
                               g.require_node("y"));
    CHECK(r.zone_count == 2);
  }
  SUBCASE("membership products govern the cross-edge count") {
    net_builder b;
    b.station("x").station("y");
    b.link("x", "y");
    ptn g = b.build();
    zone_structure zs(g, {{"A", {"x", "y"}}, {"B", {"x", "y"}}, {"C", {"y"}}});
    auto og = build_overlaps_resolved(g, zs);
    // 2 plain attachment sets (2 + 3) and one edge contributing 2*3 pairs
    CHECK(og.edge_count() == 5 + 6);
  }
  SUBCASE("compaction drops plain vertices of single-zone nodes") {
    ptn g = chain_ptn(4);
    zone_structure zs = chain_zones(g, 4);
    auto og = build_overlaps_resolved(g, zs, true);
    CHECK(og.vertex_count() == g.node_count());
  }
}

TEST_CASE("overlap-area routing finds minimal assignments") {
  net_builder b;
  for (int i = 1; i <= 5; ++i) b.station("x" + std::to_string(i));
  b.link("x1", "x2").link("x2", "x3").link("x3", "x4").link("x2", "x4").link("x2", "x5");
  ptn g = b.build();
  zone_structure zs(g, {{"L", {"x1", "x2", "x3"}}, {"R", {"x2", "x4", "x5"}}});
  price_function lin = price_function::linear(4);

  auto r13 = cheapest_path_zoa(g, zs, lin, g.require_node("x1"), g.require_node("x3"));
  CHECK(r13.zone_count == 1);
  CHECK(r13.cost.value() == 1.0);

  auto r15 = cheapest_path_zoa(g, zs, lin, g.require_node("x1"), g.require_node("x5"));
  CHECK(r15.zone_count == 2);
  CHECK(r15.cost.value() == 2.0);
  REQUIRE(r15.zone_assignment.has_value());
  CHECK(r15.zone_assignment->size() == static_cast<size_t>(r15.path.size()));

  SUBCASE("single-zone cover prices everything at one zone") {
    zone_structure one(g, {{"A", {"x1", "x2", "x3", "x4", "x5"}}});
    auto r = cheapest_path_zoa(g, one, lin, 0, 4);
    CHECK(r.zone_count == 1);
  }
  SUBCASE("compact and full graphs agree") {
    test_rng rng(203);
    gen_options opt;
    opt.min_nodes = 5;
    opt.max_nodes = 8;
    for (int round = 0; round < 25; ++round) {
      ptn rg = random_connected_ptn(rng, opt);
      zone_structure rz = random_cover(rng, rg, rng.uniform(2, 4));
      const int x = rng.uniform(0, rg.node_count() - 1);
      const int y = rng.uniform(0, rg.node_count() - 1);
      auto full = cheapest_path_zoa(rg, rz, lin, x, y, false);
      auto compact = cheapest_path_zoa(rg, rz, lin, x, y, true);
      CHECK(full.zone_count == compact.zone_count);
      CHECK(full.cost == compact.cost);
    }
  }
  SUBCASE("the count matches bounded enumeration over assignments") {
    test_rng rng(204);
    gen_options opt;
    opt.min_nodes = 5;
    opt.max_nodes = 7;
    for (int round = 0; round < 20; ++round) {
      ptn rg = random_connected_ptn(rng, opt);
      zone_structure rz = random_cover(rng, rg, rng.uniform(2, 3));
      const int x = rng.uniform(0, rg.node_count() - 1);
      const int y = rng.uniform(0, rg.node_count() - 1);
      auto r = cheapest_path_zoa(rg, rz, lin, x, y);
      int best = 1000;
      for (const auto& w : oracle::all_walks(rg, rg.node_count() - 1, x, y)) {
        best = std::min(best, oracle::zoa_count_enumerated(rg, rz, w));
      }
      CHECK(r.zone_count == best);
    }
  }
}

TEST_CASE("distinct-zone routing with connected zones") {
  test_rng rng(205);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 9;
  price_function lin = price_function::linear(10);
  for (int round = 0; round < 50; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_connected_partition(rng, g, rng.uniform(2, 4));
    REQUIRE(disconnected_zones(g, zs).empty());
    const int x = rng.uniform(0, g.node_count() - 1);
    const int y = rng.uniform(0, g.node_count() - 1);
    auto r = cheapest_path_no_double_connected(g, zs, lin, x, y);
    // the returned walk revisits no zone
    CHECK(r.zone_count == zone_count_basic(g, zs, r.path));
    auto exact = mzp_exact(g, zs, x, y);
    REQUIRE(exact.status == search_status::optimal);
    CHECK(r.zone_count == exact.distinct_zones);
  }
}

TEST_CASE("distinct-zone routing with one disconnected zone") {
  price_function lin = price_function::linear(10);

  SUBCASE("full borders count whole, entries into the split zone fractionally") {
    net_builder b;
    b.station("x1").station("x2").station("x3").station("x4").station("x5").station("x6");
    b.link("x1", "x2").link("x2", "x3").link("x3", "x4");
    b.link("x1", "x5").link("x2", "x6");
    ptn g = b.build();
    zone_structure zs(g, {{"A", {"x1"}}, {"B", {"x2"}}, {"C", {"x3"}}, {"Z", {"x4", "x5", "x6"}}});
    REQUIRE(zone_component_count(g, zs, zs.find_zone("Z").value()) == 3);
    auto r = cheapest_path_one_disconnected(g, zs, lin, zs.find_zone("Z").value(),
                                            g.require_node("x1"), g.require_node("x4"));
    CHECK(r.zone_count == 4);
    CHECK(r.zone_count == zone_count_no_double(g, zs, r.path));
  }
  SUBCASE("a walk staying inside the zone counts it once") {
    net_builder b;
    b.station("z1").station("z2").station("a").station("z3");
    b.link("z1", "z2").link("z2", "a").link("a", "z3");
    ptn g = b.build();
    zone_structure zs(g, {{"Z", {"z1", "z2", "z3"}}, {"A", {"a"}}});
    auto r = cheapest_path_one_disconnected(g, zs, lin, zs.find_zone("Z").value(),
                                            g.require_node("z1"), g.require_node("z2"));
    CHECK(r.zone_count == 1);
  }
  SUBCASE("entering the split zone twice can beat a detour") {
    test_rng rng(206);
    gen_options opt;
    opt.min_nodes = 6;
    opt.max_nodes = 12;
    int exercised = 0;
    for (int round = 0; round < 400 && exercised < 200; ++round) {
      ptn g = random_connected_ptn(rng, opt);
      zone_structure zs = random_one_disconnected(rng, g, rng.uniform(3, 5));
      auto disc = disconnected_zones(g, zs);
      if (disc.size() != 1) continue;
      ++exercised;
      const int x = rng.uniform(0, g.node_count() - 1);
      const int y = rng.uniform(0, g.node_count() - 1);
      auto r = cheapest_path_one_disconnected(g, zs, lin, disc.front(), x, y);
      auto exact = mzp_exact(g, zs, x, y);
      REQUIRE(exact.status == search_status::optimal);
      CHECK(r.zone_count == exact.distinct_zones);
      CHECK(zone_count_no_double(g, zs, r.path) == r.zone_count);
    }
    CHECK(exercised >= 200);
  }
  SUBCASE("two disconnected zones are refused") {
    net_builder b;
    b.station("a1").station("b1").station("a2").station("b2");
    b.link("a1", "b1").link("b1", "a2").link("a2", "b2");
    ptn g = b.build();
    zone_structure zs(g, {{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}});
    CHECK_THROWS_AS(
        cheapest_path_one_disconnected(g, zs, lin, 0, 0, 3),
        unsupported_instance_error);
  }
}

TEST_CASE("exact distinct-zone search") {
  price_function lin = price_function::linear(10);

  SUBCASE("agrees with set-union counting on enumerated walks") {
    test_rng rng(207);
    gen_options opt;
    opt.min_nodes = 5;
    opt.max_nodes = 8;
    for (int round = 0; round < 30; ++round) {
      ptn g = random_connected_ptn(rng, opt);
      zone_structure zs = random_partition(rng, g, rng.uniform(2, 4));
      const int x = rng.uniform(0, g.node_count() - 1);
      const int y = rng.uniform(0, g.node_count() - 1);
      auto exact = mzp_exact(g, zs, x, y);
      REQUIRE(exact.status == search_status::optimal);
      CHECK(exact.distinct_zones ==
            oracle::min_distinct_zones(g, zs, x, y, g.node_count() + 2));
      CHECK(zone_count_no_double(g, zs, exact.path) == exact.distinct_zones);
    }
  }
  SUBCASE("decision answers respect the budget") {
    ptn g = chain_ptn(4);
    zone_structure zs = chain_zones(g, 4);
    auto yes = mzp_exact(g, zs, 0, 3, 4);
    CHECK(yes.decision.value());
    auto no = mzp_exact(g, zs, 0, 3, 3);
    CHECK_FALSE(no.decision.value());
  }
  SUBCASE("a tiny state budget reports exhaustion") {
    test_rng rng(208);
    gen_options opt;
    opt.min_nodes = 10;
    opt.max_nodes = 12;
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_partition(rng, g, 5);
    routing_limits limits;
    limits.max_states = 1;
    auto r = mzp_exact(g, zs, 0, g.node_count() - 1, std::nullopt, limits);
    CHECK(r.status == search_status::budget_exhausted);
  }
}

TEST_CASE("colored-path reduction") {
  SUBCASE("a single edge becomes a three-node path") {
    mcsip_instance inst;
    inst.node_ids = {"a", "b"};
    inst.edges = {{"a", "b", "red"}};
    inst.from = "a";
    inst.to = "b";
    inst.color_budget = 1;
    auto red = mcsip_to_mzp(inst);
    CHECK(red.graph.node_count() == 3);
    CHECK(red.graph.edge_count() == 2);
    CHECK(red.zone_budget == 2);
    CHECK(red.zones.zone_count() == 2);  // dummy + one color
    auto r = mzp_exact(red.graph, red.zones, red.from, red.to, red.zone_budget);
    CHECK(r.decision.value());
  }
  SUBCASE("sizes follow the construction") {
    mcsip_instance inst;
    inst.node_ids = {"a", "b", "c", "d"};
    inst.edges = {{"a", "b", "r"}, {"b", "c", "g"}, {"c", "d", "r"}, {"a", "d", "b"},
                  {"b", "d", "g"}};
    inst.from = "a";
    inst.to = "c";
    inst.color_budget = 2;
    auto red = mcsip_to_mzp(inst);
    CHECK(red.graph.node_count() == 4 + 5);
    CHECK(red.graph.edge_count() == 2 * 5);
  }
  SUBCASE("a triangle with distinct colors is solvable with one color") {
    mcsip_instance inst;
    inst.node_ids = {"a", "b", "c"};
    inst.edges = {{"a", "b", "red"}, {"b", "c", "blue"}, {"a", "c", "green"}};
    inst.from = "a";
    inst.to = "c";
    inst.color_budget = 1;
    auto red = mcsip_to_mzp(inst);
    auto r = mzp_exact(red.graph, red.zones, red.from, red.to, red.zone_budget);
    CHECK(r.decision.value());
  }
  SUBCASE("reduction decisions match exhaustive color search") {
    test_rng rng(209);
    for (int round = 0; round < 200; ++round) {
      const int n = rng.uniform(3, 5);
      const int m = rng.uniform(n - 1, 8);
      // random connected colored graph
      oracle::colored_graph cg;
      cg.n = n;
      cg.adj.assign(static_cast<size_t>(n), {});
      mcsip_instance inst;
      for (int i = 0; i < n; ++i) inst.node_ids.push_back("v" + std::to_string(i));
      std::set<std::pair<int, int>> used;
      auto add = [&](int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        if (!used.insert({a, b}).second) return;
        const int color = rng.uniform(0, 2);
        cg.adj[static_cast<size_t>(a)].push_back({b, color});
        cg.adj[static_cast<size_t>(b)].push_back({a, color});
        inst.edges.push_back({"v" + std::to_string(a), "v" + std::to_string(b),
                              "c" + std::to_string(color)});
      };
      for (int v = 1; v < n; ++v) add(rng.uniform(0, v - 1), v);
      for (int extra = static_cast<int>(inst.edges.size()); extra < m; ++extra) {
        add(rng.uniform(0, n - 1), rng.uniform(0, n - 1));
      }
      inst.from = "v0";
      inst.to = "v" + std::to_string(n - 1);
      auto truth = oracle::mcsip_exhaustive(cg, 0, n - 1);
      REQUIRE(truth.has_value());
      for (int k = 1; k <= 3; ++k) {
        inst.color_budget = k;
        auto red = mcsip_to_mzp(inst);
        auto r = mzp_exact(red.graph, red.zones, red.from, red.to, red.zone_budget);
        REQUIRE(r.status == search_status::optimal);
        CHECK(r.decision.value() == (*truth <= k));
      }
    }
  }
}

TEST_CASE("hop-bounded shortest walks") {
  SUBCASE("the trivial query returns the start node") {
    ptn g = chain_ptn(3);
    auto w = short_distance_path(g, 2, 10.0, 0, 0);
    REQUIRE(w.has_value());
    CHECK(*w == W(g, {"s1"}));
  }
  SUBCASE("both bounds must be met by one walk") {
    net_builder b;
    b.station("x").station("a").station("b1").station("b2").station("b3").station("y");
    b.link("x", "a", 5).link("a", "y", 5);
    b.link("x", "b1", 1).link("b1", "b2", 1).link("b2", "b3", 1).link("b3", "y", 1);
    ptn g = b.build();
    const int x = g.require_node("x");
    const int y = g.require_node("y");
    CHECK_FALSE(short_distance_path(g, 3, 9.0, x, y).has_value());
    auto w = short_distance_path(g, 4, 9.0, x, y);
    REQUIRE(w.has_value());
    CHECK(*w == W(g, {"x", "b1", "b2", "b3", "y"}));
    CHECK(walk_length(g, *w) == doctest::Approx(4.0));
  }
  SUBCASE("bounded search matches exhaustive enumeration") {
    test_rng rng(210);
    gen_options opt;
    opt.min_nodes = 5;
    opt.max_nodes = 9;
    for (int round = 0; round < 60; ++round) {
      ptn g = random_connected_ptn(rng, opt);
      const int x = rng.uniform(0, g.node_count() - 1);
      const int y = rng.uniform(0, g.node_count() - 1);
      const int smax = rng.uniform(1, 4);
      const double lmax = rng.uniform(1, 12);
      auto w = short_distance_path(g, smax, lmax, x, y);
      auto best = oracle::min_length_bounded(g, x, y, smax);
      const bool feasible = best && *best <= lmax;
      CHECK(w.has_value() == feasible);
      if (w) {
        CHECK(station_count(*w) <= smax);
        CHECK(walk_length(g, *w) == doctest::Approx(*best));
      }
    }
  }
}

TEST_CASE("zone plus short-distance routing") {
  ptn g = chain_ptn(5, 2.0);
  zone_structure zs = chain_zones(g, 5);
  price_function p({1, 2, 6, 7, 8}, price_function::tail_kind::affine, 1);

  SUBCASE("no short walk within bounds falls back to the zone route") {
    auto r = cheapest_path_zsd(g, zs, p, 2.5, 1, 1.0, 0, 4);
    CHECK(r.cost.value() == 8.0);
  }
  SUBCASE("an exact price tie keeps the zone route") {
    // P_S = P(2) while the best route visits two zones
    auto r = cheapest_path_zsd(g, zs, p, 2.0, 4, 20.0, 0, 1);
    CHECK(r.cost.value() == 2.0);
    CHECK(r.zone_count == 2);
    CHECK(r.tariff == "left.basic_zone");
  }
  SUBCASE("a short-distance price below P(1) wins next door") {
    auto r = cheapest_path_zsd(g, zs, p, 0.5, 2, 10.0, 0, 1);
    CHECK(r.cost.value() == 0.5);
    CHECK(r.tariff == "right.short_distance");
  }
  SUBCASE("dispatching through the combined tree uses the same algorithm") {
    auto fs = fare_system::zsd(p, 2.5, 3, 10.0);
    auto direct = cheapest_path_zsd(g, zs, p, 2.5, 3, 10.0, 0, 3);
    auto via = cheapest_path(g, &zs, fs, 0, 3);
    CHECK(direct.cost == via.cost);
  }
}

TEST_CASE("combined routing equals the better child on every tested instance") {
  test_rng rng(211);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 40; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_connected_partition(rng, g, rng.uniform(2, 4));
    auto left = fare_system::basic_zone(random_price_function(rng, price_family::affine_increasing));
    auto right = fare_system::distance(rng.uniform(0, 2), rng.uniform(0, 2));
    auto fs = fare_system::combined(left, right);
    const int x = rng.uniform(0, g.node_count() - 1);
    const int y = rng.uniform(0, g.node_count() - 1);
    auto l = cheapest_path(g, &zs, left, x, y);
    auto r = cheapest_path(g, &zs, right, x, y);
    auto c = cheapest_path(g, &zs, fs, x, y);
    CHECK(c.cost == price::min(l.cost, r.cost));
    // reference price over bounded walks
    CHECK(c.cost == oracle::cheapest_standard(fs, g, &zs, x, y, g.node_count() - 1));
  }
}

TEST_CASE("bounded distance routing caps the fare") {
  net_builder b;
  b.station("a").station("b").station("c").station("d");
  b.link("a", "b", 3).link("b", "c", 4).link("c", "d", 5).link("a", "d", 9);
  ptn g = b.build();
  auto fs = fare_system::bounded_distance(1, 1, 8);
  auto r = cheapest_path(g, nullptr, fs, g.require_node("a"), g.require_node("d"));
  CHECK(r.cost.value() == 8.0);  // the cap beats 1 + 9
  CHECK(r.tariff == "right.flat");
}
