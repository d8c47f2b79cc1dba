#include "rmst/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "rmst/error.hpp"
#include "rmst/rng.hpp"

namespace rmst {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

// ---------------------------------------------------------------------------
// Label Cover

void validate_label_cover(const LabelCoverInstance& lc) {
  if (lc.num_left < 0 || lc.num_right < 0 || lc.num_labels < 1) invalid("bad Label Cover sizes");
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < lc.edges.size(); ++i) {
    const LabelCoverEdge& e = lc.edges[i];
    const std::string at = "Label Cover edge " + std::to_string(i);
    if (e.v < 0 || e.v >= lc.num_left || e.w < 0 || e.w >= lc.num_right) invalid(at + ": endpoint out of range");
    if (!seen.insert({e.v, e.w}).second) invalid(at + ": repeated vertex pair");
    if (e.pairs.size() < 2) invalid(at + ": relations need at least two label pairs");
    std::set<std::pair<int, int>> pairs;
    for (auto [a, b] : e.pairs) {
      if (a < 1 || a > lc.num_labels || b < 1 || b > lc.num_labels) invalid(at + ": label out of range");
      if (!pairs.insert({a, b}).second) invalid(at + ": repeated label pair");
    }
  }
}

// A label edge is addressed as (Label Cover edge, pair index).
using LabelRef = std::pair<int, int>;

// Calls `emit` once per non-zero scenario, in construction order: left
// vertices, then right vertices (skipped for g = 1), each by g-subsets of
// incident components and then by tuples, both lexicographic. `emit` may
// return false to stop.
void for_each_label_scenario(const LabelCoverInstance& lc, int g,
                             const std::function<bool(const std::vector<LabelRef>&)>& emit) {
  bool go = true;
  std::vector<LabelRef> tuple;
  std::vector<int> used;

  auto side = [&](int count, bool left) {
    std::vector<std::vector<int>> incident(static_cast<size_t>(count));
    for (int i = 0; i < static_cast<int>(lc.edges.size()); ++i) {
      incident[static_cast<size_t>(left ? lc.edges[i].v : lc.edges[i].w)].push_back(i);
    }
    for (int x = 0; x < count && go; ++x) {
      const std::vector<int>& comps = incident[static_cast<size_t>(x)];
      if (static_cast<int>(comps.size()) < g) continue;
      std::vector<int> chosen;
      // Picks one label edge per chosen component with pairwise distinct
      // labels at x.
      std::function<void(size_t)> pick = [&](size_t depth) {
        if (!go) return;
        if (depth == chosen.size()) {
          go = emit(tuple);
          return;
        }
        const LabelCoverEdge& e = lc.edges[static_cast<size_t>(chosen[depth])];
        for (int p = 0; p < static_cast<int>(e.pairs.size()) && go; ++p) {
          const int label = left ? e.pairs[p].first : e.pairs[p].second;
          if (std::find(used.begin(), used.end(), label) != used.end()) continue;
          used.push_back(label);
          tuple.emplace_back(chosen[depth], p);
          pick(depth + 1);
          tuple.pop_back();
          used.pop_back();
        }
      };
      std::function<void(size_t)> choose = [&](size_t start) {
        if (!go) return;
        if (static_cast<int>(chosen.size()) == g) {
          pick(0);
          return;
        }
        for (size_t i = start; i < comps.size() && go; ++i) {
          chosen.push_back(comps[i]);
          choose(i + 1);
          chosen.pop_back();
        }
      };
      choose(0);
    }
  };
  side(lc.num_left, true);
  if (g > 1) side(lc.num_right, false);
}

}  // namespace

std::int64_t label_cover_scenario_count(const LabelCoverInstance& lc, int g, std::int64_t cap) {
  if (g < 1) invalid("g must be at least 1");
  validate_label_cover(lc);
  std::int64_t count = 1;  // zero scenario
  for_each_label_scenario(lc, g, [&](const std::vector<LabelRef>&) { return ++count <= cap; });
  return count;
}

LabelCoverReduction gen_label_cover(const LabelCoverInstance& lc, int g, std::int64_t scenario_cap) {
  const std::int64_t count = label_cover_scenario_count(lc, g, scenario_cap);
  if (count > scenario_cap) {
    throw Error(ErrorCode::kScenarioBlowup, "more than " + std::to_string(scenario_cap) +
                                                " scenarios (counted " + std::to_string(count) +
                                                " before stopping)");
  }

  int n = 0;
  const VertexId hub = n++;
  std::vector<VertexId> left(static_cast<size_t>(lc.num_left));
  for (VertexId& v : left) v = n++;

  std::vector<Edge> edges;
  std::vector<EdgeId> hub_edges;
  for (VertexId v : left) {
    hub_edges.push_back(static_cast<EdgeId>(edges.size()));
    edges.push_back({hub, v});
  }
  std::vector<VertexId> right_copy;
  std::vector<std::vector<EdgeId>> label_edges;
  std::vector<std::optional<LabelEdgeInfo>> info(edges.size());
  for (int i = 0; i < static_cast<int>(lc.edges.size()); ++i) {
    const LabelCoverEdge& le = lc.edges[static_cast<size_t>(i)];
    const VertexId copy = n++;
    right_copy.push_back(copy);
    std::vector<EdgeId> ids;
    for (auto [a, b] : le.pairs) {
      const VertexId u = n++;
      ids.push_back(static_cast<EdgeId>(edges.size()));
      edges.push_back({left[static_cast<size_t>(le.v)], u});
      info.push_back(LabelEdgeInfo{i, le.v, le.w, a, b});
      edges.push_back({u, copy});  // dummy edge
      info.emplace_back();
    }
    label_edges.push_back(std::move(ids));
  }

  const size_t m = edges.size();
  std::vector<CostRow> scenarios;
  scenarios.reserve(static_cast<size_t>(count));
  for_each_label_scenario(lc, g, [&](const std::vector<LabelRef>& tuple) {
    CostRow row(m, 0.0);
    for (auto [comp, p] : tuple) row[static_cast<size_t>(label_edges[comp][p])] = 1.0;
    scenarios.push_back(std::move(row));
    return true;
  });
  scenarios.emplace_back(m, 0.0);

  Graph graph(n, std::move(edges));
  LabelCoverReduction out{MinMaxInstance(std::move(graph), std::move(scenarios),
                                         "labelcover-g" + std::to_string(g)),
                          g,
                          hub,
                          std::move(left),
                          std::move(right_copy),
                          std::move(hub_edges),
                          std::move(label_edges),
                          std::move(info)};
  return out;
}

json LabelCoverReduction::metadata() const {
  json label = json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(label_info.size()); ++e) {
    if (!label_info[e]) continue;
    const LabelEdgeInfo& li = *label_info[e];
    label.push_back({{"edge", e}, {"lc_edge", li.lc_edge}, {"v", li.v}, {"w", li.w}, {"a", li.a}, {"b", li.b}});
  }
  json dummy = json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(label_info.size()); ++e) {
    if (!label_info[e] && std::find(hub_edges.begin(), hub_edges.end(), e) == hub_edges.end()) dummy.push_back(e);
  }
  return {{"kind", "labelcover"},
          {"g", g},
          {"hub", hub},
          {"left_vertices", left_vertex},
          {"right_copies", right_copy},
          {"hub_edges", hub_edges},
          {"label_edges", label},
          {"dummy_edges", dummy},
          {"num_scenarios", instance.num_scenarios()}};
}

bool labeling_is_total(const LabelCoverInstance& lc, const Labeling& labeling) {
  if (static_cast<int>(labeling.left.size()) != lc.num_left ||
      static_cast<int>(labeling.right.size()) != lc.num_right) {
    return false;
  }
  for (const LabelCoverEdge& e : lc.edges) {
    const auto& la = labeling.left[static_cast<size_t>(e.v)];
    const auto& lb = labeling.right[static_cast<size_t>(e.w)];
    const bool ok = std::any_of(e.pairs.begin(), e.pairs.end(), [&](const std::pair<int, int>& p) {
      return std::find(la.begin(), la.end(), p.first) != la.end() &&
             std::find(lb.begin(), lb.end(), p.second) != lb.end();
    });
    if (!ok) return false;
  }
  return true;
}

int labeling_value(const Labeling& labeling) {
  size_t best = 0;
  for (const auto& s : labeling.left) best = std::max(best, s.size());
  for (const auto& s : labeling.right) best = std::max(best, s.size());
  return static_cast<int>(best);
}

EdgeSet labeling_to_tree(const LabelCoverInstance& lc, const LabelCoverReduction& red,
                         const Labeling& labeling) {
  if (!labeling_is_total(lc, labeling)) {
    throw Error(ErrorCode::kLabelingNotTotal, "labeling does not satisfy every Label Cover edge");
  }
  EdgeSet tree(red.instance.num_edges());
  for (EdgeId e : red.hub_edges) tree.insert(e);
  for (size_t i = 0; i < lc.edges.size(); ++i) {
    const LabelCoverEdge& le = lc.edges[i];
    const auto& la = labeling.left[static_cast<size_t>(le.v)];
    const auto& lb = labeling.right[static_cast<size_t>(le.w)];
    size_t chosen = le.pairs.size();
    for (size_t p = 0; p < le.pairs.size(); ++p) {
      if (std::find(la.begin(), la.end(), le.pairs[p].first) != la.end() &&
          std::find(lb.begin(), lb.end(), le.pairs[p].second) != lb.end()) {
        chosen = p;
        break;
      }
    }
    // Every dummy edge, plus the one label edge that hangs the component on v.
    for (size_t p = 0; p < le.pairs.size(); ++p) {
      const EdgeId label = red.label_edges[i][p];
      tree.insert(label + 1);
      if (p == chosen) tree.insert(label);
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// 3-SAT

void validate_cnf(const CnfFormula& phi) {
  if (phi.num_vars < 1) invalid("formula needs at least one variable");
  if (phi.clauses.empty()) invalid("formula needs at least one clause");
  std::vector<char> pos(static_cast<size_t>(phi.num_vars) + 1, 0);
  std::vector<char> neg(pos.size(), 0);
  for (size_t i = 0; i < phi.clauses.size(); ++i) {
    const auto& c = phi.clauses[i];
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > phi.num_vars) {
        invalid("clause " + std::to_string(i) + ": literal " + std::to_string(lit) + " out of range");
      }
      (lit > 0 ? pos : neg)[static_cast<size_t>(std::abs(lit))] = 1;
    }
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
      invalid("clause " + std::to_string(i) + ": literals must be distinct");
    }
  }
  for (int x = 1; x <= phi.num_vars; ++x) {
    if (!pos[static_cast<size_t>(x)] || !neg[static_cast<size_t>(x)]) {
      invalid("variable " + std::to_string(x) + " must occur both positively and negatively");
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula phi;
  int declared = -1;
  std::vector<int> pending;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      int vars = 0;
      if (!(ls >> fmt >> vars >> declared) || fmt != "cnf" || vars < 1 || declared < 0) {
        invalid("DIMACS line " + std::to_string(line_no) + ": malformed problem line");
      }
      phi.num_vars = vars;
      header = true;
      continue;
    }
    if (!header) invalid("DIMACS line " + std::to_string(line_no) + ": clause before problem line");
    ls.clear();
    ls.str(line);
    long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) {
          invalid("DIMACS line " + std::to_string(line_no) + ": clause has " +
                  std::to_string(pending.size()) + " literals, expected 3");
        }
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(static_cast<int>(lit));
      }
    }
    if (!ls.eof()) invalid("DIMACS line " + std::to_string(line_no) + ": unexpected token");
  }
  if (!header) invalid("DIMACS input has no problem line");
  if (!pending.empty()) invalid("DIMACS input ends inside a clause");
  if (static_cast<int>(phi.clauses.size()) != declared) {
    invalid("DIMACS header declares " + std::to_string(declared) + " clauses, found " +
            std::to_string(phi.clauses.size()));
  }
  validate_cnf(phi);
  return phi;
}

std::string cnf_to_dimacs(const CnfFormula& phi) {
  std::string out = "p cnf " + std::to_string(phi.num_vars) + " " + std::to_string(phi.clauses.size()) + "\n";
  for (const auto& c : phi.clauses) {
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + " 0\n";
  }
  return out;
}

SatReduction gen_3sat(const CnfFormula& phi) {
  validate_cnf(phi);
  const int m = static_cast<int>(phi.clauses.size());
  std::vector<Edge> edges;
  std::vector<std::array<EdgeId, 3>> literal_edges;
  for (int i = 0; i < m; ++i) {
    const VertexId s = 4 * i;
    const VertexId t = 4 * i + 4;
    std::array<EdgeId, 3> lit{};
    for (int j = 0; j < 3; ++j) {
      lit[static_cast<size_t>(j)] = static_cast<EdgeId>(edges.size());
      edges.push_back({s, s + 1 + j});
    }
    for (int j = 0; j < 3; ++j) edges.push_back({s + 1 + j, t});
    literal_edges.push_back(lit);
  }

  const double high = 4.0 * m - 1.0;
  std::vector<CostRow> scenarios;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (int p = 0; p < 3 * m; ++p) {
    for (int q = p + 1; q < 3 * m; ++q) {
      const int lp = phi.clauses[static_cast<size_t>(p / 3)][static_cast<size_t>(p % 3)];
      const int lq = phi.clauses[static_cast<size_t>(q / 3)][static_cast<size_t>(q % 3)];
      if (lp != -lq) continue;
      CostRow row(edges.size(), -1.0);
      row[static_cast<size_t>(literal_edges[p / 3][p % 3])] = high;
      row[static_cast<size_t>(literal_edges[q / 3][q % 3])] = high;
      scenarios.push_back(std::move(row));
      pairs.push_back({{p / 3, p % 3}, {q / 3, q % 3}});
    }
  }
  Graph graph(4 * m + 1, std::move(edges));
  return SatReduction{MinMaxInstance(std::move(graph), std::move(scenarios), "3sat-m" + std::to_string(m)),
                      std::move(literal_edges), std::move(pairs)};
}

json SatReduction::metadata() const {
  json lits = json::array();
  for (size_t i = 0; i < literal_edges.size(); ++i) {
    for (size_t j = 0; j < 3; ++j) lits.push_back({{"edge", literal_edges[i][j]}, {"clause", i}, {"position", j}});
  }
  json sc = json::array();
  for (const auto& [a, b] : scenario_pairs) sc.push_back({{a.first, a.second}, {b.first, b.second}});
  return {{"kind", "3sat"},
          {"num_clauses", literal_edges.size()},
          {"literal_edges", lits},
          {"scenario_pairs", sc},
          {"negative_costs", true}};
}

EdgeSet assignment_to_tree(const CnfFormula& phi, const SatReduction& red,
                           const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != phi.num_vars) {
    invalid("assignment has " + std::to_string(assignment.size()) + " values for " +
            std::to_string(phi.num_vars) + " variables");
  }
  EdgeSet tree(red.instance.num_edges());
  for (size_t i = 0; i < phi.clauses.size(); ++i) {
    int chosen = -1;
    for (int j = 0; j < 3 && chosen < 0; ++j) {
      const int lit = phi.clauses[i][static_cast<size_t>(j)];
      if (assignment[static_cast<size_t>(std::abs(lit) - 1)] == (lit > 0)) chosen = j;
    }
    if (chosen < 0) {
      throw Error(ErrorCode::kAssignmentDoesNotSatisfy, "clause " + std::to_string(i) + " is false");
    }
    const EdgeId first = red.literal_edges[i][0];
    tree.insert(first + chosen);
    for (int j = 0; j < 3; ++j) tree.insert(first + 3 + j);
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Set Cover

void validate_set_cover(const SetCoverInstance& sc) {
  if (sc.num_elements < 1) invalid("ground set must be nonempty");
  if (sc.subsets.empty()) invalid("need at least one subset");
  std::vector<char> covered(static_cast<size_t>(sc.num_elements), 0);
  for (size_t i = 0; i < sc.subsets.size(); ++i) {
    for (int j : sc.subsets[i]) {
      if (j < 0 || j >= sc.num_elements) {
        invalid("subset " + std::to_string(i) + ": element " + std::to_string(j) + " out of range");
      }
      covered[static_cast<size_t>(j)] = 1;
    }
  }
  for (int j = 0; j < sc.num_elements; ++j) {
    if (!covered[static_cast<size_t>(j)]) invalid("element " + std::to_string(j) + " is in no subset");
  }
}

bool is_cover(const SetCoverInstance& sc, const std::vector<int>& chosen) {
  std::vector<char> covered(static_cast<size_t>(sc.num_elements), 0);
  for (int i : chosen) {
    if (i < 0 || i >= static_cast<int>(sc.subsets.size())) return false;
    for (int j : sc.subsets[static_cast<size_t>(i)]) covered[static_cast<size_t>(j)] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

int min_cover_size(const SetCoverInstance& sc) {
  validate_set_cover(sc);
  const int m = static_cast<int>(sc.subsets.size());
  if (m > 24) invalid("min_cover_size enumerates subsets; at most 24 sets");
  int best = m;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    std::vector<int> chosen;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) chosen.push_back(i);
    }
    if (is_cover(sc, chosen)) best = size;
  }
  return best;
}

SetCoverReduction gen_set_cover(const SetCoverInstance& sc) {
  validate_set_cover(sc);
  const int m = static_cast<int>(sc.subsets.size());
  const int n = sc.num_elements;
  const int total = m + n + 1;
  const VertexId root = m + n;

  std::vector<Edge> edges;
  for (VertexId a = 0; a < total; ++a) {
    for (VertexId b = a + 1; b < total; ++b) edges.push_back({a, b});
  }
  const double big = m + 1.0;
  CostRow first(edges.size(), big);
  std::vector<EdgeId> root_edges(static_cast<size_t>(m));
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
    if (edges[e].v == root && edges[e].u < m) {
      first[static_cast<size_t>(e)] = 1.0;
      root_edges[static_cast<size_t>(edges[e].u)] = e;
    }
  }

  std::vector<CostRow> scenarios;
  for (int j = 0; j < n; ++j) {
    std::vector<char> in_cut(static_cast<size_t>(total), 0);
    in_cut[static_cast<size_t>(m + j)] = 1;
    for (int i = 0; i < m; ++i) {
      const auto& s = sc.subsets[static_cast<size_t>(i)];
      if (std::find(s.begin(), s.end(), j) != s.end()) in_cut[static_cast<size_t>(i)] = 1;
    }
    CostRow row(edges.size(), 0.0);
    for (size_t e = 0; e < edges.size(); ++e) {
      if (in_cut[static_cast<size_t>(edges[e].u)] != in_cut[static_cast<size_t>(edges[e].v)]) row[e] = big;
    }
    scenarios.push_back(std::move(row));
  }

  std::vector<VertexId> subset_vertex(static_cast<size_t>(m));
  std::iota(subset_vertex.begin(), subset_vertex.end(), 0);
  std::vector<VertexId> element_vertex(static_cast<size_t>(n));
  std::iota(element_vertex.begin(), element_vertex.end(), m);
  Graph graph(total, std::move(edges));
  return SetCoverReduction{
      TwoStageInstance(std::move(graph), std::move(first), std::move(scenarios),
                       "setcover-n" + std::to_string(n) + "-m" + std::to_string(m)),
      std::move(subset_vertex), std::move(element_vertex), root, std::move(root_edges)};
}

json SetCoverReduction::metadata() const {
  return {{"kind", "setcover"},
          {"subset_vertices", subset_vertex},
          {"element_vertices", element_vertex},
          {"root", root},
          {"root_edges", root_edges}};
}

TwoStageSolution cover_to_solution(const SetCoverInstance& sc, const SetCoverReduction& red,
                                   const std::vector<int>& cover) {
  if (cover.empty() || !is_cover(sc, cover)) throw Error(ErrorCode::kNotACover, "chosen subsets do not cover every element");
  EdgeSet first(red.instance.num_edges());
  for (int i : cover) first.insert(red.root_edges[static_cast<size_t>(i)]);
  TwoStageSolution sol{first, {}};
  for (int s = 0; s < red.instance.num_scenarios(); ++s) {
    sol.completions.push_back(kruskal_complete(red.instance.graph(), red.instance.scenario(s), first));
  }
  return sol;
}

std::vector<int> solution_to_cover(const SetCoverInstance& sc, const SetCoverReduction& red,
                                   const TwoStageSolution& sol) {
  validate_two_stage_solution(red.instance, sol);
  const double big = static_cast<double>(sc.subsets.size()) + 1.0;
  std::vector<int> cover;
  for (EdgeId e : sol.first_stage.indices()) {
    if (red.instance.first_stage()[static_cast<size_t>(e)] >= big) {
      throw Error(ErrorCode::kSolutionUsesForbiddenEdge,
                  "first stage uses edge " + std::to_string(e) + " of cost " + std::to_string(sc.subsets.size() + 1));
    }
    cover.push_back(red.instance.graph().edge(e).u);
  }
  for (int s = 0; s < red.instance.num_scenarios(); ++s) {
    for (EdgeId e : sol.completions[static_cast<size_t>(s)].indices()) {
      if (red.instance.scenario(s)[static_cast<size_t>(e)] >= big) {
        throw Error(ErrorCode::kSolutionUsesForbiddenEdge,
                    "scenario " + std::to_string(s) + " completion uses edge " + std::to_string(e));
      }
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

// ---------------------------------------------------------------------------
// JSON specs

namespace {

[[noreturn]] void schema(const std::string& at, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, at + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) schema(at.empty() ? "/" : at, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(at.empty() ? "/" : at, "missing member \"" + key + "\"");
  return *it;
}

int integer(const json& v, const std::string& at) {
  if (!v.is_number_integer()) schema(at, "expected integer");
  return v.get<int>();
}

std::vector<int> int_list(const json& v, const std::string& at) {
  if (!v.is_array()) schema(at, "expected array");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], at + "/" + std::to_string(i)));
  return out;
}

std::vector<std::vector<int>> int_lists(const json& v, const std::string& at) {
  if (!v.is_array()) schema(at, "expected array");
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(int_list(v[i], at + "/" + std::to_string(i)));
  return out;
}

}  // namespace

LabelCoverInstance label_cover_from_json(const json& doc) {
  LabelCoverInstance lc;
  lc.num_left = integer(field(doc, "left", ""), "/left");
  lc.num_right = integer(field(doc, "right", ""), "/right");
  lc.num_labels = integer(field(doc, "labels", ""), "/labels");
  const json& edges = field(doc, "edges", "");
  if (!edges.is_array()) schema("/edges", "expected array");
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    LabelCoverEdge e;
    e.v = integer(field(edges[i], "v", at), at + "/v");
    e.w = integer(field(edges[i], "w", at), at + "/w");
    for (const auto& p : int_lists(field(edges[i], "pairs", at), at + "/pairs")) {
      if (p.size() != 2) schema(at + "/pairs", "each pair needs two labels");
      e.pairs.emplace_back(p[0], p[1]);
    }
    lc.edges.push_back(std::move(e));
  }
  return lc;
}

json label_cover_to_json(const LabelCoverInstance& lc) {
  json edges = json::array();
  for (const LabelCoverEdge& e : lc.edges) {
    json pairs = json::array();
    for (auto [a, b] : e.pairs) pairs.push_back({a, b});
    edges.push_back({{"v", e.v}, {"w", e.w}, {"pairs", pairs}});
  }
  return {{"left", lc.num_left}, {"right", lc.num_right}, {"labels", lc.num_labels}, {"edges", edges}};
}

Labeling labeling_from_json(const json& doc) {
  return Labeling{int_lists(field(doc, "left", ""), "/left"), int_lists(field(doc, "right", ""), "/right")};
}

SetCoverInstance set_cover_from_json(const json& doc) {
  SetCoverInstance sc;
  sc.num_elements = integer(field(doc, "elements", ""), "/elements");
  sc.subsets = int_lists(field(doc, "subsets", ""), "/subsets");
  return sc;
}

json set_cover_to_json(const SetCoverInstance& sc) {
  return {{"elements", sc.num_elements}, {"subsets", sc.subsets}};
}

// ---------------------------------------------------------------------------
// Random instances

AnyInstance gen_random(const RandomInstanceSpec& spec) {
  auto infeasible = [](const std::string& what) { throw Error(ErrorCode::kParamsInfeasible, what); };
  if (spec.n < 1) infeasible("n must be positive");
  if (spec.num_scenarios < 1) infeasible("K must be positive");
  if (spec.cost_min > spec.cost_max) infeasible("empty cost range");
  if (spec.m < spec.n - 1) infeasible("m < n - 1 cannot connect the graph");
  const std::int64_t max_edges = static_cast<std::int64_t>(spec.n) * (spec.n - 1) / 2;
  if (spec.m > max_edges) infeasible("m exceeds the " + std::to_string(max_edges) + " vertex pairs of a simple graph");

  Rng rng(spec.seed);
  auto shuffle = [&](auto& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
  };

  std::vector<VertexId> perm(static_cast<size_t>(spec.n));
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(perm);
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<Edge> edges;
  auto add = [&](VertexId a, VertexId b) {
    used.insert({std::min(a, b), std::max(a, b)});
    edges.push_back({a, b});
  };
  for (int i = 1; i < spec.n; ++i) add(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(rng.uniform_int(0, i - 1))]);

  const int extra = spec.m - (spec.n - 1);
  if (extra > 0) {
    std::vector<std::pair<VertexId, VertexId>> free_pairs;
    for (VertexId a = 0; a < spec.n; ++a) {
      for (VertexId b = a + 1; b < spec.n; ++b) {
        if (!used.count({a, b})) free_pairs.push_back({a, b});
      }
    }
    // Partial Fisher-Yates: the first `extra` slots become a uniform sample.
    for (int i = 0; i < extra; ++i) {
      const auto j = rng.uniform_int(i, static_cast<std::int64_t>(free_pairs.size()) - 1);
      std::swap(free_pairs[static_cast<size_t>(i)], free_pairs[static_cast<size_t>(j)]);
      auto [a, b] = free_pairs[static_cast<size_t>(i)];
      if (rng.next() & 1) std::swap(a, b);
      add(a, b);
    }
  }
  shuffle(edges);

  const size_t m = edges.size();
  auto draw_row = [&] {
    CostRow row(m);
    for (double& c : row) c = static_cast<double>(rng.uniform_int(spec.cost_min, spec.cost_max));
    return row;
  };
  const std::string name = "random-n" + std::to_string(spec.n) + "-m" + std::to_string(spec.m) + "-k" +
                           std::to_string(spec.num_scenarios) + (spec.two_stage ? "-2s" : "") + "-s" +
                           std::to_string(spec.seed);
  Graph graph(spec.n, std::move(edges));
  if (spec.two_stage) {
    CostRow first = draw_row();
    std::vector<CostRow> rows;
    for (int s = 0; s < spec.num_scenarios; ++s) rows.push_back(draw_row());
    return TwoStageInstance(std::move(graph), std::move(first), std::move(rows), name);
  }
  std::vector<CostRow> rows;
  for (int s = 0; s < spec.num_scenarios; ++s) rows.push_back(draw_row());
  return MinMaxInstance(std::move(graph), std::move(rows), name);
}

}  // namespace rmst
