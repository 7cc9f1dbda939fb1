#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vtergm/cli.hpp"
#include "vtergm/error.hpp"
#include "vtergm/graph.hpp"
#include "vtergm/io.hpp"
#include "vtergm/oracle.hpp"
#include "vtergm/rates.hpp"
#include "vtergm/sampler.hpp"
#include "vtergm/triangles.hpp"

namespace py = pybind11;
using namespace vtergm;

namespace {

Graph graph_from_list(std::size_t n, const std::vector<Edge>& edges) {
  return graph_from_edges(n, edges);
}

py::dict chain_to_dict(const ChainSummary& c) {
  py::dict d;
  d["seed"] = c.seed;
  d["step"] = c.step;
  d["v_t"] = c.v_t;
  d["e"] = c.e;
  d["dt_greedy"] = c.dt_greedy;
  d["accepted"] = c.accepted;
  d["acceptance_rate"] = c.acceptance_rate;
  d["final_graph"] = c.final_graph;
  d["final_v_t"] = c.final_stats.v_t;
  return d;
}

ChainConfig make_config(std::uint64_t steps, std::uint64_t burn_in, std::uint64_t thinning,
                        std::uint64_t seed, const std::string& init) {
  ChainConfig c;
  c.steps = steps;
  c.burn_in = burn_in;
  c.thinning = thinning;
  c.seed = seed;
  if (init == "empty") {
    c.init = InitMode::kEmpty;
  } else if (init != "planted") {
    throw DomainError("init must be 'planted' or 'empty'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vertices-in-triangles random graph toolkit";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def(py::init(&graph_from_list), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("has_edge", &Graph::has_edge)
      .def("add_edge", &Graph::add_edge)
      .def("remove_edge", &Graph::remove_edge)
      .def("toggle_edge",
           [](Graph& g, Vertex u, Vertex v) { return g.toggle_edge(u, v) == EdgeChange::kAdded; })
      .def("degree", &Graph::degree)
      .def("neighbors", &Graph::neighbors)
      .def("common_neighbors", &Graph::common_neighbors)
      .def("edges", &Graph::edges)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", edges=" + std::to_string(g.edge_count()) +
               ")";
      });

  m.def("complete_graph", &complete_graph);

  m.def("vertices_in_triangles", [](const Graph& g) { return vertices_in_triangles(g).v_t; });
  m.def("triangle_membership", [](const Graph& g) {
    const auto s = vertices_in_triangles(g);
    return std::vector<bool>(s.in_triangle.begin(), s.in_triangle.end());
  });
  m.def("delta_vt_on_flip", [](const Graph& g, Vertex u, Vertex v) {
    return delta_vt_on_flip(g, vertices_in_triangles(g), u, v);
  });
  m.def("list_triangles", &list_triangles);
  m.def(
      "max_disjoint_triangles",
      [](const Graph& g, bool exact, std::uint64_t node_limit) {
        PackingOptions o;
        o.node_limit = node_limit;
        return max_disjoint_triangles(g, exact ? PackingMode::kExact : PackingMode::kGreedy, o);
      },
      py::arg("g"), py::arg("exact") = true, py::arg("node_limit") = PackingOptions{}.node_limit);
  m.def("is_q_basic", [](const Graph& g) {
    const auto c = is_q_basic(g);
    return py::make_tuple(c.q_basic, c.q);
  });
  m.def("decompose", [](const Graph& g) {
    return decomposition_to_json(decompose_q_basic(g)).dump();
  });
  m.def("verify_decomposition", [](const Graph& g, const std::string& json_text) {
    const auto r = verify_decomposition(g, decomposition_from_json(nlohmann::json::parse(json_text)));
    return py::make_tuple(r.valid, r.violation);
  });

  m.def("lambda_rate", &lambda_rate, py::arg("a"), py::arg("theta"), py::arg("lam"));
  m.def(
      "maximizer",
      [](double theta, double lambda) {
        const auto r = maximizer_a_star(theta, lambda);
        return py::make_tuple(r.a_star, r.value);
      },
      py::arg("theta"), py::arg("lam"));
  m.def(
      "power_law_optimum",
      [](double alpha, double beta, double lambda) {
        const auto r = functional_optimum(PowerLawTilt{alpha, beta, lambda});
        return py::make_tuple(r.a_star, r.value);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("lam") = 1.0);
  m.def("log_prob_vt_tail", &log_prob_vt_tail, py::arg("n"), py::arg("lam"), py::arg("a"));
  m.def(
      "edge_rate",
      [](double x, double a, double lambda) {
        const auto r = edge_rate_function(x, a, lambda);
        return r.finite ? r.numeric : std::numeric_limits<double>::infinity();
      },
      py::arg("x"), py::arg("a"), py::arg("lam"));
  m.def(
      "variational_min",
      [](double q, double c1, double c2, double c3) {
        const auto r = variational_min(q, c1, c2, c3);
        py::dict d;
        d["x1"] = r.x1;
        d["x2"] = r.x2;
        d["x3"] = r.x3;
        d["min_value"] = r.min_value;
        d["multiplier"] = r.multiplier;
        return d;
      },
      py::arg("q"), py::arg("c1") = 0.0, py::arg("c2") = 0.0, py::arg("c3") = 0.0);
  m.def("qbasic_config_bound", &qbasic_config_bound);
  m.def("estimate_linear", [](std::int64_t n, std::int64_t e, std::int64_t vt) {
    const auto r = estimate_linear(n, e, vt);
    return py::make_tuple(r.lambda_hat, r.theta_hat);
  });
  m.def("estimate_power_law", [](std::int64_t n, std::int64_t e, std::int64_t vt, double alpha) {
    const auto r = estimate_power_law(n, e, vt, alpha);
    return py::make_tuple(r.beta_hat, r.lambda_hat, r.in_regime);
  });

  m.def("sample_er", py::overload_cast<std::size_t, double, std::uint64_t>(&sample_er),
        py::arg("n"), py::arg("lam"), py::arg("seed") = 0);
  m.def("sample_planted",
        py::overload_cast<std::size_t, double, double, std::uint64_t>(&sample_planted),
        py::arg("n"), py::arg("a"), py::arg("lam"), py::arg("seed") = 0);
  m.def(
      "mcmc",
      [](std::size_t n, double theta, double lambda, std::uint64_t steps, std::uint64_t burn_in,
         std::uint64_t thinning, std::uint64_t seed, const std::string& init) {
        const auto c = make_config(steps, burn_in, thinning, seed, init);
        ChainSummary s;
        {
          py::gil_scoped_release release;
          s = mcmc_linear(n, LinearTilt{theta, lambda}, c);
        }
        return chain_to_dict(s);
      },
      py::arg("n"), py::arg("theta"), py::arg("lam"), py::arg("steps"), py::arg("burn_in") = 0,
      py::arg("thinning") = 1, py::arg("seed") = 0, py::arg("init") = "planted");
  m.def(
      "mcmc_power_law",
      [](std::size_t n, double alpha, double beta, double lambda, std::uint64_t steps,
         std::uint64_t burn_in, std::uint64_t thinning, std::uint64_t seed,
         const std::string& init) {
        const auto c = make_config(steps, burn_in, thinning, seed, init);
        ChainSummary s;
        {
          py::gil_scoped_release release;
          s = mcmc_functional(n, PowerLawTilt{alpha, beta, lambda}, c);
        }
        return chain_to_dict(s);
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("lam"), py::arg("steps"),
      py::arg("burn_in") = 0, py::arg("thinning") = 1, py::arg("seed") = 0,
      py::arg("init") = "planted");

  m.def(
      "exact_law",
      [](std::size_t n, double lambda) {
        const auto law = enumerate_exact_law(n, lambda);
        py::dict d;
        d["count"] = law.count;
        d["mass"] = law.mass;
        d["total_mass"] = law.total_mass;
        return d;
      },
      py::arg("n"), py::arg("lam"));
  m.def(
      "partition_function",
      [](std::size_t n, double theta, double lambda) {
        const auto law = enumerate_exact_law(n, lambda);
        const auto t = exact_partition_function(law, LinearTilt{theta, lambda});
        return py::make_tuple(t.partition_function, t.mean_vt(), t.mean_e());
      },
      py::arg("n"), py::arg("theta"), py::arg("lam"));

  m.def("parse_graph", [](const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
  });
  m.def("format_graph", py::overload_cast<const Graph&>(&format_graph));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
