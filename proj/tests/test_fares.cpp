#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "farekit/fare_system.hpp"
#include "farekit/instance_gen.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace farekit;
using namespace testutil;

namespace {

// two same-zone stations, then an edge crossing two further zones before the
// last station: the zone count jumps to four while the length stays at four
struct combined_net {
  ptn g;
  zone_structure zs;
  combined_net()
      : g(net_builder{}
              .station("x1")
              .station("x2")
              .virt("v1")
              .virt("v2")
              .station("x3")
              .link("x1", "x2", 2)
              .link("x2", "v1", 0.5)
              .link("v1", "v2", 0.75)
              .link("v2", "x3", 0.75)
              .build()),
        zs(g, {{"A", {"x1", "x2"}}, {"B", {"v1"}}, {"C", {"v2"}}, {"D", {"x3"}}}) {}
};

price_function table(std::initializer_list<double> t,
                     price_function::tail_kind tail = price_function::tail_kind::constant,
                     double slope = 0) {
  return price_function(std::vector<double>(t), tail, slope);
}

}  // namespace

TEST_CASE("price values behave like extended reals") {
  const price two = price::of(2.0);
  CHECK((two + price::infinite()).is_infinite());
  CHECK(price::min(price::infinite(), two) == two);
  CHECK(price::min(two, price::infinite()) == two);
  CHECK(price::infinite().to_string() == "inf");
  CHECK_THROWS_AS(price::of(-1.0), configuration_error);
}

TEST_CASE("price functions evaluate tables and tails") {
  price_function constant = table({1, 2, 4});
  CHECK(constant(0) == 0.0);
  CHECK(constant(1) == 1.0);
  CHECK(constant(3) == 4.0);
  CHECK(constant(9) == 4.0);
  CHECK(constant.is_increasing());
  CHECK_FALSE(constant.is_strictly_increasing());

  price_function affine = table({2, 3}, price_function::tail_kind::affine, 0.5);
  CHECK(affine(4) == doctest::Approx(4.0));
  CHECK(affine.is_strictly_increasing());

  CHECK_FALSE(table({3, 1}).is_increasing());
  CHECK_THROWS_AS(price_function({}), configuration_error);
  CHECK_THROWS_AS(price_function({1, -2}), configuration_error);
  CHECK_THROWS_AS(price_function({1, 2}, price_function::tail_kind::affine, -1), configuration_error);
}

TEST_CASE("flat and distance pricing") {
  net_builder b;
  b.station("x1", 0, 0).station("x2", 5, 0).station("x3", 4, 0);
  b.link("x1", "x2", 5).link("x2", "x3", 1);
  ptn g = b.build();

  CHECK(fare_system::flat(2).price_of(g, nullptr, W(g, {"x1", "x2", "x3"})).value() == 2.0);

  auto dist = fare_system::distance(0, 1);
  CHECK(dist.price_of(g, nullptr, W(g, {"x1", "x2"})).value() == 5.0);
  auto dist2 = fare_system::distance(1.5, 2);
  CHECK(dist2.price_of(g, nullptr, W(g, {"x1", "x2"})).value() == doctest::Approx(11.5));

  auto bee = fare_system::beeline(0, 1);
  CHECK(bee.price_of(g, nullptr, W(g, {"x1", "x2"})).value() == doctest::Approx(5.0));
  CHECK(bee.price_of(g, nullptr, W(g, {"x1", "x2", "x3"})).value() == doctest::Approx(4.0));
}

TEST_CASE("zone counting with double counting") {
  ptn g = chain_ptn(3);
  zone_structure zs = chain_zones(g, 3);
  CHECK(zone_count_basic(g, zs, W(g, {"s1"})) == 1);
  CHECK(zone_count_basic(g, zs, W(g, {"s1", "s2", "s3"})) == 3);
  // crossing the same border back and forth counts every crossing
  CHECK(zone_count_basic(g, zs, W(g, {"s1", "s2", "s1"})) == 3);

  zone_structure one(g, {{"A", {"s1", "s2", "s3"}}});
  CHECK(zone_count_basic(g, one, W(g, {"s1", "s2", "s3"})) == 1);

  zone_structure cover(g, {{"A", {"s1", "s2"}}, {"B", {"s2", "s3"}}});
  CHECK_THROWS_AS(zone_count_basic(g, cover, W(g, {"s1", "s2"})), configuration_error);
}

TEST_CASE("distinct-zone counting ignores revisits") {
  ptn g = chain_ptn(4);
  zone_table t{{"A", {"s1", "s3"}}, {"B", {"s2"}}, {"C", {"s4"}}};
  zone_structure zs(g, t);
  CHECK(zone_count_no_double(g, zs, W(g, {"s2"})) == 1);
  CHECK(zone_count_no_double(g, zs, W(g, {"s1", "s2", "s1"})) == 2);
  CHECK(zone_count_basic(g, zs, W(g, {"s1", "s2", "s1"})) == 3);
  // zones A, B, A, C in visit order collapse to three
  CHECK(zone_count_no_double(g, zs, W(g, {"s1", "s2", "s3", "s4"})) == 3);
}

TEST_CASE("overlap-area counting picks a minimal assignment per visit") {
  net_builder b;
  for (int i = 1; i <= 5; ++i) b.station("x" + std::to_string(i));
  b.link("x1", "x2").link("x2", "x3").link("x3", "x4").link("x2", "x4").link("x2", "x5");
  ptn g = b.build();
  zone_structure zs(g, {{"L", {"x1", "x2", "x3"}}, {"R", {"x2", "x4", "x5"}}});
  REQUIRE(zs.mode() == zone_structure::mode_t::cover);

  CHECK(zone_count_zoa(g, zs, W(g, {"x1", "x2", "x3"})) == 1);
  CHECK(zone_count_zoa(g, zs, W(g, {"x4", "x2", "x5"})) == 1);  // x2 joins R
  CHECK(zone_count_zoa(g, zs, W(g, {"x1", "x2", "x5"})) == 2);

  walk revisit = W(g, {"x1", "x2", "x3", "x4", "x2", "x5"});
  auto a = minimal_zone_assignment(g, zs, revisit);
  CHECK(a.count == 2);
  const int left = zs.find_zone("L").value();
  const int right = zs.find_zone("R").value();
  CHECK(a.zones[1] == left);   // first visit of x2
  CHECK(a.zones[4] == right);  // second visit of x2

  auto short_a = minimal_zone_assignment(g, zs, W(g, {"x4", "x2", "x5"}));
  CHECK(short_a.count == 1);
  CHECK(short_a.zones[1] == right);
}

TEST_CASE("overlap-area counting matches assignment enumeration") {
  test_rng rng(101);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 30; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_cover(rng, g, rng.uniform(2, 4));
    for (const auto& w : oracle::all_walks(g, 4)) {
      if (rng.chance(0.85)) continue;  // sample
      CHECK(zone_count_zoa(g, zs, w) == oracle::zoa_count_enumerated(g, zs, w));
    }
  }
}

TEST_CASE("overlap-area count never exceeds a fixed assignment") {
  test_rng rng(102);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 15; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_cover(rng, g, 3);
    for (const auto& w : oracle::all_walks(g, 4)) {
      if (rng.chance(0.9)) continue;
      // fixed rule: everyone takes their smallest zone index
      int borders = 0;
      for (int i = 0; i + 1 < w.size(); ++i) {
        if (zs.zones_of(w.nodes[static_cast<size_t>(i)]).front() !=
            zs.zones_of(w.nodes[static_cast<size_t>(i + 1)]).front()) {
          ++borders;
        }
      }
      CHECK(zone_count_zoa(g, zs, w) <= borders + 1);
      // subwalks never count more zones
      if (w.size() >= 2) {
        CHECK(zone_count_zoa(g, zs, subwalk(w, 0, w.size() - 2)) <= zone_count_zoa(g, zs, w));
      }
    }
  }
}

TEST_CASE("distinct-zone count is bounded by the double-counting one") {
  test_rng rng(103);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 20; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_partition(rng, g, rng.uniform(2, 4));
    for (const auto& w : oracle::all_walks(g, 4)) {
      if (rng.chance(0.9)) continue;
      CHECK(zone_count_no_double(g, zs, w) <= zone_count_basic(g, zs, w));
    }
  }
}

TEST_CASE("metropolitan pricing") {
  ptn g = chain_ptn(6);
  zone_structure zs = [&] {
    zone_table t;
    for (int i = 1; i <= 6; ++i) {
      t.emplace_back("Z" + std::to_string(i), std::vector<std::string>{"s" + std::to_string(i)});
    }
    return zone_structure(g, t, {"Z2", "Z3", "Z4", "Z5", "Z6"});
  }();
  price_function lin = price_function::linear(8);

  walk whole = W(g, {"s1", "s2", "s3", "s4", "s5", "s6"});
  CHECK(metropolitan_price(lin, 2, g, zs, whole).value() == 6.0);
  CHECK(metropolitan_price(lin, 2, g, zs, W(g, {"s2", "s3", "s4", "s5", "s6"})).value() == 2.0);
  CHECK(metropolitan_price(lin, 2, g, zs, W(g, {"s3"})).value() == 2.0);

  auto fs = fare_system::metropolitan(lin, 2);
  CHECK(fs.price_of(g, &zs, W(g, {"s1", "s2"})).value() == 2.0);  // P(2), leaves the zone
}

TEST_CASE("short-distance pricing applies both bounds inclusively") {
  ptn g = chain_ptn(4, 2.0);
  CHECK(short_distance_price(1, 2, 10, g, W(g, {"s1"})).value() == 1.0);
  CHECK(short_distance_price(1, 2, 10, g, W(g, {"s1", "s2", "s3", "s4"})).is_infinite());
  CHECK(short_distance_price(1, std::nullopt, 4.0, g, W(g, {"s1", "s2", "s3"})).value() == 1.0);
  CHECK(short_distance_price(1, std::nullopt, 3.9, g, W(g, {"s1", "s2", "s3"})).is_infinite());
  CHECK_THROWS_AS(fare_system::short_distance(1, std::nullopt, std::nullopt),
                  configuration_error);
}

TEST_CASE("zone plus short-distance price forms agree") {
  ptn g = chain_ptn(5, 2.0);
  zone_structure zs = chain_zones(g, 5);
  price_function p = table({1, 2, 6, 7, 8}, price_function::tail_kind::affine, 1);
  const double ps = 2.5;

  // threshold: P(2) = 2 <= 2.5 < 6 = P(3)
  CHECK(zsd_threshold(p, ps, 8).value() == 2);

  walk in_zone = W(g, {"s1", "s2"});                     // z = 2 <= K, short
  walk crossing = W(g, {"s1", "s2", "s3"});              // z = 3 > K, short if bounds allow
  walk long_walk = W(g, {"s1", "s2", "s3", "s4", "s5"});  // z = 5, 8 km

  auto check_both = [&](std::optional<int> smax, std::optional<double> lmax, const walk& w,
                        double expected) {
    CHECK(zsd_price_min_form(p, ps, smax, lmax, g, zs, w).value() == doctest::Approx(expected));
    CHECK(zsd_price_threshold_form(p, ps, smax, lmax, g, zs, w).value() ==
          doctest::Approx(expected));
  };
  check_both(3, 10.0, in_zone, 2.0);     // zone price wins below the threshold
  check_both(3, 10.0, crossing, 2.5);    // short-distance price above it
  check_both(2, 6.0, long_walk, 8.0);    // not a short-distance walk

  test_rng rng(104);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 25; ++round) {
    ptn rg = random_connected_ptn(rng, opt);
    zone_structure rz = random_partition(rng, rg, rng.uniform(2, 4));
    price_function rp = random_price_function(rng, price_family::random_increasing);
    const double rps = rng.uniform(0, 9) + 0.5;
    std::optional<int> smax;
    std::optional<double> lmax = 6.0;
    if (rng.chance(0.5)) smax = rng.uniform(1, 4);
    for (const auto& w : oracle::all_walks(rg, 4)) {
      if (rng.chance(0.9)) continue;
      const price a = zsd_price_min_form(rp, rps, smax, lmax, rg, rz, w);
      const price b = zsd_price_threshold_form(rp, rps, smax, lmax, rg, rz, w);
      CHECK(a == b);
    }
  }
}

TEST_CASE("combined pricing takes the cheaper side, left on ties") {
  combined_net net;
  auto fs = fare_system::combined(
      fare_system::basic_zone(price_function::linear(8)), fare_system::distance(0, 1));

  walk w1 = W(net.g, {"x1", "x2"});
  walk w2 = W(net.g, {"x2", "v1", "v2", "x3"});
  walk whole = W(net.g, {"x1", "x2", "v1", "v2", "x3"});

  auto left = fare_system::basic_zone(price_function::linear(8));
  auto right = fare_system::distance(0, 1);
  CHECK(left.price_of(net.g, &net.zs, w1).value() == 1.0);
  CHECK(left.price_of(net.g, &net.zs, w2).value() == 4.0);
  CHECK(left.price_of(net.g, &net.zs, whole).value() == 4.0);
  CHECK(right.price_of(net.g, &net.zs, w1).value() == doctest::Approx(2.0));
  CHECK(right.price_of(net.g, &net.zs, w2).value() == doctest::Approx(2.0));
  CHECK(right.price_of(net.g, &net.zs, whole).value() == doctest::Approx(4.0));

  CHECK(fs.price_of(net.g, &net.zs, w1).value() == doctest::Approx(1.0));
  CHECK(fs.price_of(net.g, &net.zs, w2).value() == doctest::Approx(2.0));
  CHECK(fs.price_of(net.g, &net.zs, whole).value() == doctest::Approx(4.0));

  // the tie on the whole walk reports the left child
  CHECK(fs.price_with_provenance(net.g, &net.zs, whole).chosen == "left.basic_zone");
  CHECK(fs.price_with_provenance(net.g, &net.zs, w2).chosen == "right.distance");
}

TEST_CASE("combined price is bounded by both children and attained by one") {
  test_rng rng(105);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 20; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    zone_structure zs = random_partition(rng, g, rng.uniform(2, 4));
    auto left = fare_system::basic_zone(random_price_function(rng, price_family::random_increasing));
    auto right = fare_system::distance(rng.uniform(0, 2), rng.uniform(0, 2));
    auto both = fare_system::combined(left, right);
    for (const auto& w : oracle::all_walks(g, 3)) {
      if (rng.chance(0.9)) continue;
      const price pl = left.price_of(g, &zs, w);
      const price pr = right.price_of(g, &zs, w);
      const price pc = both.price_of(g, &zs, w);
      CHECK(pc <= pl);
      CHECK(pc <= pr);
      CHECK((pc == pl || pc == pr));
    }
  }
}

TEST_CASE("distance, flat and beeline tariffs never reward stopovers") {
  test_rng rng(106);
  gen_options opt;
  opt.min_nodes = 5;
  opt.max_nodes = 8;
  for (int round = 0; round < 15; ++round) {
    ptn g = random_connected_ptn(rng, opt);
    std::vector<fare_system> systems{fare_system::distance(rng.uniform(0, 3), rng.uniform(0, 3)),
                                     fare_system::flat(rng.uniform(0, 5)),
                                     fare_system::beeline(rng.uniform(0, 3), rng.uniform(0, 3))};
    for (const auto& w1 : oracle::all_walks(g, 3)) {
      if (rng.chance(0.93)) continue;
      for (const auto& w2 : oracle::all_walks(g, 3, w1.back())) {
        if (rng.chance(0.9)) continue;
        walk both = concat(w1, w2);
        for (const auto& fs : systems) {
          CHECK_FALSE(definitely_greater(fs.price_of(g, nullptr, both),
                                         fs.price_of(g, nullptr, w1) +
                                             fs.price_of(g, nullptr, w2)));
        }
      }
    }
  }
}

TEST_CASE("zone tariffs reject missing or mismatched zone data") {
  ptn g = chain_ptn(3);
  auto fs = fare_system::basic_zone(price_function::linear(4));
  CHECK_THROWS_AS(fs.price_of(g, nullptr, W(g, {"s1", "s2"})), configuration_error);
  CHECK_THROWS_AS(fare_system::zoa(table({3, 1})), configuration_error);
}
