#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rmst/instance.hpp"

namespace rmst {

using AnyInstance = std::variant<MinMaxInstance, TwoStageInstance>;

// Compact JSON with sorted object keys and every floating value written with
// 17 significant digits. Identical values always produce identical bytes.
std::string canonical_dump(const nlohmann::json& value);

// Instance document:
//   {"edges": [[u,v],...], "first_stage_costs": [...] (optional),
//    "name": str, "num_vertices": int, "scenarios": [[...],...]}
// A "first_stage_costs" member selects TwoStageInstance.
// Throws kSchemaError (message carries the JSON pointer), kRowLengthMismatch
// and kDisconnectedGraph.
AnyInstance load_instance(std::string_view text);
AnyInstance load_instance_file(const std::string& path);

nlohmann::json instance_to_json(const MinMaxInstance& inst);
nlohmann::json instance_to_json(const TwoStageInstance& inst);
std::string save_instance(const AnyInstance& inst);
std::string save_instance(const MinMaxInstance& inst);
std::string save_instance(const TwoStageInstance& inst);

struct SolveReport {
  std::string algorithm;
  std::string status;
  std::uint64_t seed = 0;
  std::optional<double> value;
  std::optional<std::vector<EdgeId>> tree_edges;
  std::optional<std::vector<EdgeId>> first_stage_edges;
  std::optional<std::map<int, std::vector<EdgeId>>> completions;
  std::optional<double> lp_bound;
  std::int64_t iterations = 0;
  double wall_time_ms = 0.0;
};

nlohmann::json report_to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& doc);
std::string save_report(const SolveReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace rmst
