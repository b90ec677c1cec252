#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace farekit {

// Exit codes shared by all commands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_parse_error = 2;
inline constexpr int exit_invalid_query = 3;
inline constexpr int exit_resource_limit = 4;

struct command_options {
  bool json = false;
  bool forbid_virtual_endpoints = false;
  bool compact = false;  // overlaps-resolved compaction
  int budget_edges = 7;
  int budget_segments = 3;
  int budget_elongation = 2;
  long long budget_states = 4'000'000;  // exact-solver state budget
  std::uint64_t seed = 1;               // echoed into reports
};

int cmd_price(const std::string& file, const std::vector<std::string>& walk_ids,
              const command_options& opt, std::ostream& out, std::ostream& err);

int cmd_route(const std::string& file, const std::optional<std::string>& from,
              const std::optional<std::string>& to, bool want_ticket,
              const command_options& opt, std::ostream& out, std::ostream& err);

int cmd_audit(const std::string& file, const command_options& opt, std::ostream& out,
              std::ostream& err);

int cmd_reduce(const std::string& file, const std::optional<std::string>& out_path,
               const command_options& opt, std::ostream& out, std::ostream& err);

}  // namespace farekit
