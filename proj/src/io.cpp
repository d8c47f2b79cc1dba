#include "rmst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rmst/error.hpp"

namespace rmst {

using nlohmann::json;

namespace {

void dump_into(const json& value, std::string& out) {
  switch (value.type()) {
    case json::value_t::object: {
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      out += '{';
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const json& item : value) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      double d = value.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      break;
    }
    default:
      out += value.dump();
  }
}

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(at, "missing member \"" + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& at) {
  if (!v.is_number_integer()) schema_error(at, "expected integer");
  auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) schema_error(at, "integer out of range");
  return static_cast<int>(x);
}

double as_double(const json& v, const std::string& at) {
  if (!v.is_number()) schema_error(at, "expected number");
  return v.get<double>();
}

CostRow as_row(const json& v, const std::string& at) {
  if (!v.is_array()) schema_error(at, "expected array of numbers");
  CostRow row;
  row.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) row.push_back(as_double(v[i], at + "/" + std::to_string(i)));
  return row;
}

std::vector<EdgeId> as_index_list(const json& v, const std::string& at) {
  if (!v.is_array()) schema_error(at, "expected array of integers");
  std::vector<EdgeId> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], at + "/" + std::to_string(i)));
  return out;
}

json row_json(const CostRow& row) {
  json arr = json::array();
  for (double c : row) arr.push_back(c);
  return arr;
}

json graph_members(const Graph& g, const std::string& name) {
  json doc = json::object();
  doc["name"] = name;
  doc["num_vertices"] = g.num_vertices();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.u, e.v}));
  doc["edges"] = std::move(edges);
  return doc;
}

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

AnyInstance load_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("", "expected object");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) schema_error("/name", "expected string");
    name = it->get<std::string>();
  }
  const int n = as_int(member(doc, "num_vertices", ""), "/num_vertices");
  if (n < 1) schema_error("/num_vertices", "must be positive");

  const json& edges_json = member(doc, "edges", "");
  if (!edges_json.is_array()) schema_error("/edges", "expected array");
  std::vector<Edge> edges;
  for (size_t i = 0; i < edges_json.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const json& pair = edges_json[i];
    if (!pair.is_array() || pair.size() != 2) schema_error(at, "expected [u, v]");
    Edge e{as_int(pair[0], at + "/0"), as_int(pair[1], at + "/1")};
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) schema_error(at, "endpoint out of range");
    if (e.u == e.v) schema_error(at, "self-loop");
    edges.push_back(e);
  }

  const json& sc_json = member(doc, "scenarios", "");
  if (!sc_json.is_array() || sc_json.empty()) schema_error("/scenarios", "expected nonempty array");
  std::vector<CostRow> scenarios;
  for (size_t s = 0; s < sc_json.size(); ++s) {
    scenarios.push_back(as_row(sc_json[s], "/scenarios/" + std::to_string(s)));
  }

  Graph graph(n, std::move(edges));
  if (auto it = doc.find("first_stage_costs"); it != doc.end()) {
    CostRow first = as_row(*it, "/first_stage_costs");
    return TwoStageInstance(std::move(graph), std::move(first), std::move(scenarios), std::move(name));
  }
  return MinMaxInstance(std::move(graph), std::move(scenarios), std::move(name));
}

AnyInstance load_instance_file(const std::string& path) { return load_instance(read_text_file(path)); }

json instance_to_json(const MinMaxInstance& inst) {
  json doc = graph_members(inst.graph(), inst.name());
  json rows = json::array();
  for (const CostRow& row : inst.scenarios()) rows.push_back(row_json(row));
  doc["scenarios"] = std::move(rows);
  return doc;
}

json instance_to_json(const TwoStageInstance& inst) {
  json doc = graph_members(inst.graph(), inst.name());
  doc["first_stage_costs"] = row_json(inst.first_stage());
  json rows = json::array();
  for (const CostRow& row : inst.scenarios()) rows.push_back(row_json(row));
  doc["scenarios"] = std::move(rows);
  return doc;
}

std::string save_instance(const MinMaxInstance& inst) { return canonical_dump(instance_to_json(inst)) + "\n"; }
std::string save_instance(const TwoStageInstance& inst) { return canonical_dump(instance_to_json(inst)) + "\n"; }
std::string save_instance(const AnyInstance& inst) {
  return std::visit([](const auto& i) { return save_instance(i); }, inst);
}

json report_to_json(const SolveReport& r) {
  json doc = json::object();
  doc["algorithm"] = r.algorithm;
  doc["status"] = r.status;
  doc["seed"] = r.seed;
  doc["value"] = r.value ? json(*r.value) : json(nullptr);
  doc["tree_edges"] = r.tree_edges ? json(*r.tree_edges) : json(nullptr);
  doc["first_stage_edges"] = r.first_stage_edges ? json(*r.first_stage_edges) : json(nullptr);
  if (r.completions) {
    json comp = json::object();
    for (const auto& [s, edges] : *r.completions) comp[std::to_string(s)] = edges;
    doc["completions"] = std::move(comp);
  } else {
    doc["completions"] = nullptr;
  }
  doc["lp_bound"] = r.lp_bound ? json(*r.lp_bound) : json(nullptr);
  doc["iterations"] = r.iterations;
  doc["wall_time_ms"] = r.wall_time_ms;
  return doc;
}

SolveReport report_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("", "expected object");
  SolveReport r;
  if (auto it = doc.find("algorithm"); it != doc.end() && it->is_string()) r.algorithm = *it;
  if (auto it = doc.find("status"); it != doc.end() && it->is_string()) r.status = *it;
  if (auto it = doc.find("seed"); it != doc.end() && it->is_number_unsigned()) r.seed = *it;
  if (auto it = doc.find("value"); it != doc.end() && !it->is_null()) r.value = as_double(*it, "/value");
  if (auto it = doc.find("tree_edges"); it != doc.end() && !it->is_null()) {
    r.tree_edges = as_index_list(*it, "/tree_edges");
  }
  if (auto it = doc.find("first_stage_edges"); it != doc.end() && !it->is_null()) {
    r.first_stage_edges = as_index_list(*it, "/first_stage_edges");
  }
  if (auto it = doc.find("completions"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) schema_error("/completions", "expected object");
    std::map<int, std::vector<EdgeId>> comp;
    for (auto c = it->begin(); c != it->end(); ++c) {
      const std::string at = "/completions/" + c.key();
      int s = 0;
      try {
        size_t used = 0;
        s = std::stoi(c.key(), &used);
        if (used != c.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        schema_error(at, "scenario key must be an integer");
      }
      comp[s] = as_index_list(c.value(), at);
    }
    r.completions = std::move(comp);
  }
  if (auto it = doc.find("lp_bound"); it != doc.end() && !it->is_null()) {
    r.lp_bound = as_double(*it, "/lp_bound");
  }
  if (auto it = doc.find("iterations"); it != doc.end() && it->is_number_integer()) r.iterations = *it;
  if (auto it = doc.find("wall_time_ms"); it != doc.end() && it->is_number()) r.wall_time_ms = *it;
  return r;
}

std::string save_report(const SolveReport& report) { return canonical_dump(report_to_json(report)) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace rmst
