#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "farekit/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fare-system modeling: price walks, find cheapest paths and tickets, audit tariff properties"};
  app.require_subcommand(1);

  farekit::command_options opt;
  app.add_flag("--json", opt.json, "structured output");
  app.add_flag("--forbid-virtual-endpoints", opt.forbid_virtual_endpoints,
               "disallow virtual nodes as walk endpoints and split points");
  app.add_flag("--compact", opt.compact, "compact the overlaps-resolved graph");
  app.add_option("--budget-edges", opt.budget_edges, "walk edge budget for checks and oracles");
  app.add_option("--budget-segments", opt.budget_segments, "ticket segment budget");
  app.add_option("--budget-elongation", opt.budget_elongation,
                 "extra edges allowed per elongated segment");
  app.add_option("--budget-states", opt.budget_states, "exact-solver state budget");
  app.add_option("--seed", opt.seed, "seed echoed into reports");

  std::string file;
  std::vector<std::string> walk_ids;
  auto* price = app.add_subcommand("price", "price a walk under the instance fare");
  price->add_option("file", file, "instance file")->required();
  price->add_option("walk", walk_ids, "node ids along the walk")->required();

  std::string from, to;
  bool want_ticket = false;
  auto* route = app.add_subcommand("route", "cheapest path (and ticket) between two nodes");
  route->add_option("file", file, "instance file")->required();
  route->add_option("from", from, "start node (defaults to the file query)");
  route->add_option("to", to, "end node (defaults to the file query)");
  route->add_flag("--ticket", want_ticket, "also derive a cheapest ticket");

  auto* audit = app.add_subcommand("audit", "property checks and tariff-condition report");
  audit->add_option("file", file, "instance file")->required();

  std::string out_path;
  auto* reduce = app.add_subcommand("reduce", "rewrite a colored-path instance as a zone instance");
  reduce->add_option("file", file, "colored-path file")->required();
  reduce->add_option("-o,--out", out_path, "write the reduced instance here");

  CLI11_PARSE(app, argc, argv);

  if (price->parsed()) {
    return farekit::cmd_price(file, walk_ids, opt, std::cout, std::cerr);
  }
  if (route->parsed()) {
    std::optional<std::string> f, t;
    if (!from.empty()) f = from;
    if (!to.empty()) t = to;
    return farekit::cmd_route(file, f, t, want_ticket, opt, std::cout, std::cerr);
  }
  if (audit->parsed()) {
    return farekit::cmd_audit(file, opt, std::cout, std::cerr);
  }
  if (reduce->parsed()) {
    std::optional<std::string> o;
    if (!out_path.empty()) o = out_path;
    return farekit::cmd_reduce(file, o, opt, std::cout, std::cerr);
  }
  return 0;
}
