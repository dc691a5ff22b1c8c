#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "mdhits/dataio.hpp"
#include "mdhits/metrics.hpp"
#include "mdhits/solver.hpp"

namespace py = pybind11;
using namespace mdhits;

namespace {

std::vector<EdgeRecord> records_from_python(
    const std::vector<std::pair<std::vector<Index>, double>>& raw) {
    std::vector<EdgeRecord> records;
    records.reserve(raw.size());
    for (const auto& [index, weight] : raw) records.push_back({index, weight});
    return records;
}

SolverConfig config_from_kwargs(double tolerance, int max_iterations, const std::string& start,
                                std::uint64_t seed, int threads) {
    SolverConfig sc;
    sc.tolerance = tolerance;
    sc.max_iterations = max_iterations;
    sc.seed = seed;
    sc.threads = threads;
    if (start == "ones") {
        sc.start = StartKind::ones;
    } else if (start == "random") {
        sc.start = StartKind::random_positive;
    } else {
        throw InvalidArgument("start must be 'ones' or 'random'");
    }
    return sc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-dimensional HITS centrality for temporal multilayer networks";

    py::register_exception<Error>(m, "MdhitsError", PyExc_ValueError);

    py::class_<TensorShape>(m, "TensorShape")
        .def(py::init<std::vector<Index>>(), py::arg("mode_sizes"))
        .def_property_readonly("order", &TensorShape::order)
        .def_property_readonly("sizes",
                               [](const TensorShape& s) { return s.sizes(); })
        .def("is_temporal_multilayer", &TensorShape::is_temporal_multilayer)
        .def("__eq__", [](const TensorShape& a, const TensorShape& b) { return a == b; })
        .def("__repr__", [](const TensorShape& s) {
            std::string out = "TensorShape([";
            for (std::size_t i = 0; i < s.sizes().size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(s.sizes()[i]);
            }
            return out + "])";
        });

    py::class_<SupportSlice>(m, "SupportSlice")
        .def_readonly("mode", &SupportSlice::mode)
        .def_readonly("inactive", &SupportSlice::inactive)
        .def_readonly("active", &SupportSlice::active);

    py::class_<SparseTensor>(m, "SparseTensor")
        .def_static(
            "from_edge_list",
            [](const std::vector<std::pair<std::vector<Index>, double>>& records,
               const TensorShape& shape) {
                return SparseTensor::from_edge_list(records_from_python(records), shape);
            },
            py::arg("records"), py::arg("shape"),
            "Build the canonical tensor from ((i_1, ..., i_m), weight) pairs, 0-based.")
        .def_property_readonly("shape", &SparseTensor::shape)
        .def_property_readonly("order", &SparseTensor::order)
        .def_property_readonly("nnz", &SparseTensor::nnz)
        .def("is_zero", &SparseTensor::is_zero)
        .def("entries",
             [](const SparseTensor& t) {
                 std::vector<std::pair<std::vector<Index>, double>> out;
                 for (const EdgeRecord& e : t.entries()) out.emplace_back(e.index, e.weight);
                 return out;
             })
        .def("mode_marginal", &SparseTensor::mode_marginal, py::arg("mode"))
        .def("mode_support", &SparseTensor::mode_support, py::arg("mode"))
        .def(
            "contract",
            [](const SparseTensor& t, Index mode, const std::vector<std::vector<double>>& vectors,
               int threads, bool compensated) {
                return t.contract(mode, vectors, {threads, compensated});
            },
            py::arg("mode"), py::arg("vectors"), py::arg("threads") = 1,
            py::arg("compensated") = false,
            "One-mode contraction; the vector at the contracted slot is ignored.")
        .def("full_contraction",
             [](const SparseTensor& t, const std::vector<std::vector<double>>& vectors) {
                 return t.full_contraction(vectors);
             })
        .def("__eq__", [](const SparseTensor& a, const SparseTensor& b) { return a == b; });

    py::class_<ExponentConfig>(m, "ExponentConfig")
        .def_static("from_alpha", &ExponentConfig::from_alpha, py::arg("alpha"))
        .def_readonly("alpha", &ExponentConfig::alpha)
        .def_readonly("rho", &ExponentConfig::rho)
        .def_readonly("beta", &ExponentConfig::beta)
        .def_property_readonly("feasible", &ExponentConfig::feasible);

    m.def(
        "perron",
        [](const std::vector<double>& alpha) {
            PerronPair p = perron(alpha);
            return std::make_pair(p.rho, p.beta);
        },
        py::arg("alpha"), "Spectral radius and unit-sum Perron vector of the weight matrix.");
    m.def("build_weight_matrix",
          [](const std::vector<double>& alpha) { return build_weight_matrix(alpha); });
    m.def(
        "check_feasible",
        [](const std::vector<double>& alpha) {
            FeasibilityReport r = check_feasible(alpha);
            const char* verdict = r.verdict == Feasibility::feasible     ? "feasible"
                                  : r.verdict == Feasibility::boundary   ? "boundary"
                                                                         : "infeasible";
            return py::make_tuple(verdict, r.rho, r.gershgorin_hint);
        },
        py::arg("alpha"), "(verdict, rho, gershgorin_hint) for an exponent vector.");

    py::class_<TraceEntry>(m, "TraceEntry")
        .def_readonly("iteration", &TraceEntry::iteration)
        .def_readonly("step", &TraceEntry::step)
        .def_readonly("bound", &TraceEntry::bound);

    py::class_<Solution>(m, "Solution")
        .def_property_readonly("c", [](const Solution& s) { return s.c.slices; })
        .def_readonly("lambda_", &Solution::lambda)
        .def_readonly("sigma", &Solution::sigma)
        .def_readonly("iterations", &Solution::iterations)
        .def_readonly("converged", &Solution::converged)
        .def_readonly("trace", &Solution::trace)
        .def_readonly("residual_norm", &Solution::residual_norm)
        .def_readonly("alpha", &Solution::alpha)
        .def_readonly("rho", &Solution::rho)
        .def_readonly("beta", &Solution::beta);

    m.def(
        "solve",
        [](const SparseTensor& tensor, const std::vector<double>& alpha, double tolerance,
           int max_iterations, const std::string& start, std::uint64_t seed, int threads) {
            return solve(tensor, ExponentConfig::from_alpha(alpha),
                         config_from_kwargs(tolerance, max_iterations, start, seed, threads));
        },
        py::arg("tensor"), py::arg("alpha"), py::arg("tolerance") = 1e-6,
        py::arg("max_iterations") = 1000, py::arg("start") = "ones", py::arg("seed") = 0,
        py::arg("threads") = 1,
        "Centrality tuple of a nonnegative tensor by the normalized fixed-point iteration.");

    m.def(
        "residual",
        [](const SparseTensor& tensor, const std::vector<double>& alpha,
           const std::vector<std::vector<double>>& c) {
            CentralityTuple tuple;
            tuple.slices = c;
            return residual(tensor, ExponentConfig::from_alpha(alpha), tuple);
        },
        py::arg("tensor"), py::arg("alpha"), py::arg("c"),
        "(lambda, residual beta-norm) of a normalized conforming tuple.");

    py::class_<MonolayerHits>(m, "MonolayerHits")
        .def_readonly("hub", &MonolayerHits::hub)
        .def_readonly("authority", &MonolayerHits::authority)
        .def_readonly("lambda1", &MonolayerHits::lambda1)
        .def_readonly("lambda2", &MonolayerHits::lambda2)
        .def_readonly("sigma", &MonolayerHits::sigma)
        .def_readonly("iterations", &MonolayerHits::iterations)
        .def_readonly("converged", &MonolayerHits::converged);

    m.def(
        "monolayer_hits",
        [](const SparseTensor& adjacency, double alpha1, double alpha2, double tolerance,
           int max_iterations, const std::string& start, std::uint64_t seed) {
            return monolayer_hits(adjacency, alpha1, alpha2,
                                  config_from_kwargs(tolerance, max_iterations, start, seed, 1));
        },
        py::arg("adjacency"), py::arg("alpha1") = 1.0 / 3, py::arg("alpha2") = 1.0 / 3,
        py::arg("tolerance") = 1e-6, py::arg("max_iterations") = 1000, py::arg("start") = "ones",
        py::arg("seed") = 0, "Nonlinear hub/authority scores of an order-2 adjacency.");

    py::class_<ClassicalHits>(m, "ClassicalHits")
        .def_readonly("hub", &ClassicalHits::hub)
        .def_readonly("authority", &ClassicalHits::authority)
        .def_readonly("lambda1", &ClassicalHits::lambda1)
        .def_readonly("lambda2", &ClassicalHits::lambda2)
        .def_readonly("sigma", &ClassicalHits::sigma)
        .def_readonly("iterations", &ClassicalHits::iterations)
        .def_readonly("converged", &ClassicalHits::converged);

    m.def(
        "classical_hits",
        [](const SparseTensor& adjacency, double tolerance, int max_iterations) {
            return classical_hits(adjacency, config_from_kwargs(tolerance, max_iterations,
                                                                "ones", 0, 1));
        },
        py::arg("adjacency"), py::arg("tolerance") = 1e-6, py::arg("max_iterations") = 1000,
        "Linear HITS baseline; start-dependent on disconnected inputs.");

    py::class_<RankedList>(m, "RankedList")
        .def_readonly("ids", &RankedList::ids)
        .def_readonly("scores", &RankedList::scores);

    m.def(
        "top_k", [](const std::vector<double>& scores, Index k) { return top_k(scores, k); },
        py::arg("scores"), py::arg("k"));
    m.def("rank_all", [](const std::vector<double>& scores) { return rank_all(scores); });
    m.def("intersection_similarity", &intersection_similarity, py::arg("list1"), py::arg("list2"),
          py::arg("k"));
    m.def(
        "kendall_tau",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return kendall_tau(a, b);
        },
        py::arg("scores1"), py::arg("scores2"));
    m.def("aggregate_degree", &aggregate_degree, py::arg("tensor"));

    m.def(
        "load_tensor",
        [](const std::string& path, const std::string& format, std::optional<char> delimiter,
           bool header, bool one_based) {
            EdgeRecordFormat fmt;
            fmt.tag = edge_format_from_name(format);
            fmt.delimiter = delimiter;
            fmt.header = header;
            fmt.one_based = one_based;
            return load_tensor(path, fmt);
        },
        py::arg("path"), py::arg("format") = "coo5", py::arg("delimiter") = std::nullopt,
        py::arg("header") = false, py::arg("one_based") = true,
        "Parse a delimited edge list into a canonical tensor.");
    m.def(
        "generate_random",
        [](Index n_v, std::uint64_t seed) { return generate_random({n_v, seed}); },
        py::arg("n_v"), py::arg("seed") = 0,
        "Seeded sparse random tensor: n_L = n_V, n_T = round(n_V^(1/3)), n_V * n_L entries.");
    m.def(
        "write_solution",
        [](const Solution& s, const std::string& path, const std::string& format) {
            write_solution(s, path, format == "csv" ? OutputFormat::csv : OutputFormat::json);
        },
        py::arg("solution"), py::arg("path"), py::arg("format") = "json");
    m.def("read_solution", &read_solution, py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
