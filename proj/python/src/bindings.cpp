#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rmst/cli.hpp"
#include "rmst/error.hpp"
#include "rmst/exact.hpp"
#include "rmst/io.hpp"
#include "rmst/reductions.hpp"
#include "rmst/rounding.hpp"

namespace py = pybind11;
using namespace rmst;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

Graph make_graph(int n, const EdgeList& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return Graph(n, std::move(out));
}

EdgeList edge_list(const Graph& g) {
  EdgeList out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

EdgeSet to_set(const Graph& g, const std::vector<EdgeId>& ids) {
  for (EdgeId e : ids) {
    if (e < 0 || e >= g.num_edges()) throw Error(ErrorCode::kIncompatibleSolution, "edge index out of range");
  }
  return EdgeSet(g.num_edges(), ids);
}

TwoStageSolution to_solution(const TwoStageInstance& inst, const std::vector<EdgeId>& first,
                             const std::vector<std::vector<EdgeId>>& completions) {
  TwoStageSolution sol{to_set(inst.graph(), first), {}};
  for (const auto& c : completions) sol.completions.push_back(to_set(inst.graph(), c));
  return sol;
}

py::dict solution_dict(const TwoStageSolution& sol) {
  py::dict d;
  d["first_stage"] = sol.first_stage.indices();
  std::vector<std::vector<EdgeId>> comp;
  for (const EdgeSet& c : sol.completions) comp.push_back(c.indices());
  d["completions"] = comp;
  return d;
}

py::object wrap(AnyInstance inst) {
  return std::visit([](auto&& v) { return py::cast(std::move(v)); }, std::move(inst));
}

py::dict lp_dict(const MinFeasibleBudget& lp) {
  py::dict d;
  d["c_hat"] = lp.c_hat;
  d["x"] = lp.solution.x;
  d["second_stage"] = lp.solution.second_stage;
  d["probes"] = lp.probes;
  d["lp_solves"] = lp.lp_solves;
  return d;
}

ApproxParams params(std::uint64_t seed, int max_restarts, double tol, int threads) {
  ApproxParams p;
  p.seed = seed;
  p.max_restarts = max_restarts;
  p.tol_rel = tol;
  p.threads = threads;
  return p;
}

}  // namespace

PYBIND11_MODULE(_rmst, m) {
  m.doc() = "Robust minimum spanning tree solvers";

  // Leaked on purpose: it must outlive interpreter shutdown.
  static auto* rmst_error = new py::exception<Error>(m, "RmstError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(rmst_error->ptr())(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(rmst_error->ptr(), exc.ptr());
    }
  });

  py::class_<MinMaxInstance>(m, "MinMaxInstance")
      .def(py::init([](int n, const EdgeList& edges, std::vector<CostRow> scenarios, std::string name) {
             return MinMaxInstance(make_graph(n, edges), std::move(scenarios), std::move(name));
           }),
           py::arg("num_vertices"), py::arg("edges"), py::arg("scenarios"), py::arg("name") = "")
      .def_property_readonly("name", &MinMaxInstance::name)
      .def_property_readonly("num_vertices", &MinMaxInstance::num_vertices)
      .def_property_readonly("num_edges", &MinMaxInstance::num_edges)
      .def_property_readonly("num_scenarios", &MinMaxInstance::num_scenarios)
      .def_property_readonly("edges", [](const MinMaxInstance& i) { return edge_list(i.graph()); })
      .def_property_readonly("scenarios", &MinMaxInstance::scenarios)
      .def_property_readonly("has_negative_costs", &MinMaxInstance::has_negative_costs)
      .def("to_json", [](const MinMaxInstance& i) { return save_instance(i); })
      .def("__repr__", [](const MinMaxInstance& i) {
        std::ostringstream s;
        s << "MinMaxInstance(n=" << i.num_vertices() << ", m=" << i.num_edges() << ", K=" << i.num_scenarios() << ")";
        return s.str();
      });

  py::class_<TwoStageInstance>(m, "TwoStageInstance")
      .def(py::init([](int n, const EdgeList& edges, CostRow first, std::vector<CostRow> scenarios, std::string name) {
             return TwoStageInstance(make_graph(n, edges), std::move(first), std::move(scenarios), std::move(name));
           }),
           py::arg("num_vertices"), py::arg("edges"), py::arg("first_stage"), py::arg("scenarios"),
           py::arg("name") = "")
      .def_property_readonly("name", &TwoStageInstance::name)
      .def_property_readonly("num_vertices", &TwoStageInstance::num_vertices)
      .def_property_readonly("num_edges", &TwoStageInstance::num_edges)
      .def_property_readonly("num_scenarios", &TwoStageInstance::num_scenarios)
      .def_property_readonly("edges", [](const TwoStageInstance& i) { return edge_list(i.graph()); })
      .def_property_readonly("first_stage", &TwoStageInstance::first_stage)
      .def_property_readonly("scenarios", &TwoStageInstance::scenarios)
      .def_property_readonly("has_negative_costs", &TwoStageInstance::has_negative_costs)
      .def("to_json", [](const TwoStageInstance& i) { return save_instance(i); })
      .def("__repr__", [](const TwoStageInstance& i) {
        std::ostringstream s;
        s << "TwoStageInstance(n=" << i.num_vertices() << ", m=" << i.num_edges() << ", K=" << i.num_scenarios()
          << ")";
        return s.str();
      });

  // I/O
  m.def("load_instance", [](const std::string& text) { return wrap(load_instance(text)); }, py::arg("text"));
  m.def("load_instance_file", [](const std::string& path) { return wrap(load_instance_file(path)); },
        py::arg("path"));

  // Evaluators
  m.def("evaluate_minmax",
        [](const MinMaxInstance& i, const std::vector<EdgeId>& t) { return evaluate_minmax(i, to_set(i.graph(), t)); },
        py::arg("instance"), py::arg("tree"));
  m.def("evaluate_regret",
        [](const MinMaxInstance& i, const std::vector<EdgeId>& t) { return evaluate_regret(i, to_set(i.graph(), t)); },
        py::arg("instance"), py::arg("tree"));
  m.def("evaluate_2stage",
        [](const TwoStageInstance& i, const std::vector<EdgeId>& first,
           const std::vector<std::vector<EdgeId>>& completions) {
          return evaluate_2stage(i, to_solution(i, first, completions));
        },
        py::arg("instance"), py::arg("first_stage"), py::arg("completions"));

  // Exact solvers
  auto exact_dict = [](const ExactResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["tree"] = r.tree.indices();
    d["nodes_explored"] = r.nodes_explored;
    d["optimal"] = r.optimal;
    return d;
  };
  m.def("brute_force_minmax", [=](const MinMaxInstance& i, std::int64_t limit) { return exact_dict(brute_force_minmax(i, limit)); },
        py::arg("instance"), py::arg("tree_limit") = kDefaultTreeLimit);
  m.def("brute_force_regret", [=](const MinMaxInstance& i, std::int64_t limit) { return exact_dict(brute_force_regret(i, limit)); },
        py::arg("instance"), py::arg("tree_limit") = kDefaultTreeLimit);
  m.def("branch_and_bound_minmax",
        [=](const MinMaxInstance& i, double t) {
          ExactResult r;
          {
            py::gil_scoped_release release;
            r = branch_and_bound_minmax(i, t);
          }
          return exact_dict(r);
        },
        py::arg("instance"), py::arg("time_limit") = 600.0);
  m.def("brute_force_2stage",
        [](const TwoStageInstance& i, int max_edges) {
          ExactTwoStageResult r = brute_force_2stage(i, max_edges);
          py::dict d = solution_dict(r.solution);
          d["value"] = r.value;
          d["nodes_explored"] = r.nodes_explored;
          return d;
        },
        py::arg("instance"), py::arg("max_edges") = kDefaultTwoStageEdgeLimit);
  m.def("baseline_mean_scenario",
        [](const MinMaxInstance& i) {
          BaselineResult r = baseline_mean_scenario(i);
          py::dict d;
          d["value"] = r.value;
          d["tree"] = r.tree.indices();
          return d;
        },
        py::arg("instance"));

  // Relaxation and rounding
  m.def("find_min_feasible_C", [](const MinMaxInstance& i, double tol) { return lp_dict(find_min_feasible_C(i, tol)); },
        py::arg("instance"), py::arg("tol") = 1e-6);
  m.def("find_min_feasible_C_2stage",
        [](const TwoStageInstance& i, double tol) { return lp_dict(find_min_feasible_C_2stage(i, tol)); },
        py::arg("instance"), py::arg("tol") = 1e-6);
  m.def("compute_r_minmax", &compute_r_minmax, py::arg("n"));
  m.def("compute_r_2stage", &compute_r_2stage, py::arg("n"), py::arg("num_scenarios"));
  m.def("per_iteration_bound_multiplier", &per_iteration_bound_multiplier, py::arg("n"), py::arg("num_scenarios"),
        py::arg("f"), py::arg("rho1") = 2.0);
  m.def("solve_minmax_approx",
        [](const MinMaxInstance& i, std::uint64_t seed, int max_restarts, double tol, int threads) {
          MinMaxApproxResult r;
          {
            py::gil_scoped_release release;
            r = solve_minmax_approx(i, params(seed, max_restarts, tol, threads));
          }
          py::dict d;
          d["status"] = r.status == ApproxStatus::kSuccess ? "Success" : "RestartsExhausted";
          d["value"] = r.outcome.value ? py::cast(*r.outcome.value) : py::none();
          d["tree"] = r.outcome.tree ? py::cast(r.outcome.tree->indices()) : py::none();
          d["lp_bound"] = r.lp_bound;
          d["seed"] = r.outcome.seed;
          d["iterations"] = r.total_iterations;
          d["attempts"] = r.attempts;
          return d;
        },
        py::arg("instance"), py::arg("seed") = kDefaultSeed, py::arg("max_restarts") = 3, py::arg("tol") = 1e-6,
        py::arg("threads") = 1);
  m.def("solve_2stage_approx",
        [](const TwoStageInstance& i, std::uint64_t seed, int max_restarts, double tol, int threads) {
          TwoStageApproxResult r;
          {
            py::gil_scoped_release release;
            r = solve_2stage_approx(i, params(seed, max_restarts, tol, threads));
          }
          py::dict d = r.outcome.solution ? solution_dict(*r.outcome.solution) : py::dict();
          d["status"] = r.status == ApproxStatus::kSuccess ? "Success" : "RestartsExhausted";
          d["value"] = r.outcome.value ? py::cast(*r.outcome.value) : py::none();
          d["lp_bound"] = r.lp_bound;
          d["seed"] = r.outcome.seed;
          d["iterations"] = r.total_iterations;
          d["attempts"] = r.attempts;
          return d;
        },
        py::arg("instance"), py::arg("seed") = kDefaultSeed, py::arg("max_restarts") = 3, py::arg("tol") = 1e-6,
        py::arg("threads") = 1);

  // Generators
  m.def("gen_random",
        [](int n, int edges, int k, int cost_min, int cost_max, bool two_stage, std::uint64_t seed) {
          return wrap(gen_random(RandomInstanceSpec{n, edges, k, cost_min, cost_max, two_stage, seed}));
        },
        py::arg("n"), py::arg("m"), py::arg("num_scenarios"), py::arg("cost_min") = 0, py::arg("cost_max") = 9,
        py::arg("two_stage") = false, py::arg("seed") = 1);
  m.def("gen_set_cover",
        [](int elements, const std::vector<std::vector<int>>& subsets) {
          return gen_set_cover(SetCoverInstance{elements, subsets}).instance;
        },
        py::arg("num_elements"), py::arg("subsets"));
  m.def("gen_3sat", [](const std::string& dimacs) { return gen_3sat(parse_dimacs(dimacs)).instance; },
        py::arg("dimacs"));
  m.def("gen_label_cover",
        [](const std::string& spec_json, int g, std::int64_t cap) {
          return gen_label_cover(label_cover_from_json(nlohmann::json::parse(spec_json)), g, cap).instance;
        },
        py::arg("spec_json"), py::arg("g"), py::arg("scenario_cap") = kDefaultScenarioCap);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
