#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ree_lab/criteria.hpp"
#include "ree_lab/entropy.hpp"
#include "ree_lab/errors.hpp"
#include "ree_lab/harness.hpp"
#include "ree_lab/ree_solver.hpp"
#include "ree_lab/state_io.hpp"

namespace py = pybind11;
using namespace ree_lab;

namespace {

using Dims = std::pair<int, int>;

BipartiteDims to_dims(Dims d) { return {d.first, d.second}; }

std::optional<Dims> from_dims(const std::optional<BipartiteDims>& d) {
  if (!d) return std::nullopt;
  return Dims{d->dA, d->dB};
}

DensityMatrix make_density(const CMatrix& m, std::optional<Dims> dims) {
  std::optional<BipartiteDims> bd;
  if (dims) bd = to_dims(*dims);
  return DensityMatrix(HermitianMatrix(m), bd);
}

py::dict verdict_dict(const CriterionVerdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["witness_eigenvalue"] = v.witness_eigenvalue;
  d["witness_vector"] = CVector(v.witness_vector);
  return d;
}

py::object entropy_value(const EntropyValue& v) { return py::float_(v.bits()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relative entropy of entanglement toolkit";

  // later registrations are tried first, so derived types follow the base
  const auto& base = py::register_exception<Error>(m, "ReeLabError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<InvalidStateError>(m, "InvalidStateError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<StateParseError>(m, "StateParseError", base.ptr());

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init(&make_density), py::arg("matrix"), py::arg("dims") = py::none())
      .def_property_readonly("matrix", [](const DensityMatrix& r) { return CMatrix(r.matrix()); })
      .def_property_readonly("dims", [](const DensityMatrix& r) { return from_dims(r.dims()); })
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def("with_dims", [](const DensityMatrix& r, Dims d) { return r.with_dims(to_dims(d)); })
      .def("__repr__", [](const DensityMatrix& r) {
        std::string s = "DensityMatrix(dim=" + std::to_string(r.dim());
        if (r.dims()) s += ", dims=(" + std::to_string(r.dims()->dA) + ", " + std::to_string(r.dims()->dB) + ")";
        return s + ")";
      });

  // states
  m.def("singlet", &singlet);
  m.def("werner", &werner, py::arg("fidelity"));
  m.def("bell_diagonal", &bell_diagonal, py::arg("p"));
  m.def("maximally_mixed", [](Dims d) { return DensityMatrix::maximally_mixed(to_dims(d)); },
        py::arg("dims"));
  m.def("random_density",
        [](Dims d, int rank, std::uint64_t seed) { return random_density(to_dims(d), rank, seed); },
        py::arg("dims"), py::arg("rank"), py::arg("seed"));
  m.def("pure_from_schmidt",
        [](const std::vector<double>& alpha, Dims d) {
          return pure_from_schmidt(alpha, to_dims(d)).density();
        },
        py::arg("alpha"), py::arg("dims"));
  m.def("partial_trace", [](const DensityMatrix& r, char side) {
        if (side != 'A' && side != 'B') throw InputError("side must be 'A' or 'B'");
        return side == 'B' ? partial_trace_B(r) : partial_trace_A(r);
      },
      py::arg("rho"), py::arg("traced_out") = 'B',
      "Trace out subsystem `traced_out` ('A' or 'B').");
  m.def("partial_transpose",
        [](const DensityMatrix& r) { return CMatrix(partial_transpose_B(r).matrix()); },
        py::arg("rho"));
  m.def("tensor_bipartite", &tensor_bipartite, py::arg("r1"), py::arg("r2"));

  // entropies
  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
  m.def("relative_entropy",
        [](const DensityMatrix& s, const DensityMatrix& r) { return entropy_value(relative_entropy(s, r)); },
        py::arg("sigma"), py::arg("rho"), "S(sigma||rho) in bits; inf off support.");
  m.def("lemma2_bound", &lemma2_bound, py::arg("sigma"));
  m.def("negative_conditional_entropy",
        [](const DensityMatrix& s, char side) {
          return negative_conditional_entropy(s, side == 'B' ? Side::B : Side::A);
        },
        py::arg("sigma"), py::arg("side") = 'A');

  // criteria
  m.def("ppt_criterion", [](const DensityMatrix& r, double tol) { return verdict_dict(ppt_criterion(r, tol)); },
        py::arg("rho"), py::arg("tol") = kDefaultPsdTol);
  m.def("reduction_criterion",
        [](const DensityMatrix& r, double tol) { return verdict_dict(reduction_criterion(r, tol)); },
        py::arg("rho"), py::arg("tol") = kDefaultPsdTol);
  m.def("loewner_matrix_psd",
        [](const std::string& f, const std::vector<double>& pts) {
          return loewner_matrix_psd_check(functions::by_name(f), pts).psd;
        },
        py::arg("function"), py::arg("points"));
  m.def("operator_monotone_counterexample",
        [](const std::string& f, int dim, int trials, std::uint64_t seed) -> py::object {
          const auto ce = operator_monotone_search(functions::by_name(f), dim, trials, seed);
          if (!ce) return py::none();
          py::dict d;
          d["a"] = CMatrix(ce->a.matrix());
          d["b"] = CMatrix(ce->b.matrix());
          d["violation"] = ce->violation;
          d["trials_used"] = ce->trials_used;
          return std::move(d);
        },
        py::arg("function"), py::arg("dim"), py::arg("trials"), py::arg("seed") = 0);

  // solver
  py::class_<ReeOptions>(m, "ReeOptions")
      .def(py::init<>())
      .def_readwrite("max_iters", &ReeOptions::max_iters)
      .def_readwrite("grad_tol", &ReeOptions::grad_tol)
      .def_readwrite("eps", &ReeOptions::eps)
      .def_readwrite("dykstra_max", &ReeOptions::dykstra_max)
      .def_readwrite("dykstra_tol", &ReeOptions::dykstra_tol);
  py::class_<ReeResult>(m, "ReeResult")
      .def_readonly("value_bits", &ReeResult::value_bits)
      .def_readonly("closest_state", &ReeResult::closest_state)
      .def_readonly("iterations", &ReeResult::iterations)
      .def_readonly("converged", &ReeResult::converged)
      .def_readonly("final_grad_norm", &ReeResult::final_grad_norm)
      .def_readonly("objective_history", &ReeResult::objective_history);
  m.def("ree_ppt", &ree_ppt, py::arg("sigma"), py::arg("options") = ReeOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("concurrence", &concurrence, py::arg("sigma"));
  m.def("eof_two_qubit", &eof_two_qubit, py::arg("sigma"));
  m.def("bell_diagonal_ree_oracle",
        [](const std::array<double, 4>& p, int steps) {
          const auto r = bell_diagonal_ree_oracle(p, steps);
          return py::make_tuple(r.value_bits, r.resolution_bits, r.minimizer);
        },
        py::arg("p"), py::arg("grid_steps") = 2000);

  // files and suites
  m.def("serialize_state", &serialize_state, py::arg("rho"));
  m.def("parse_state", [](const std::string& s) { return parse_state(s); }, py::arg("text"));
  m.def("load_state", &load_state_file, py::arg("path"));
  m.def("save_state", &save_state_file, py::arg("path"), py::arg("rho"));
  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& suite, int trials, std::uint64_t seed, Dims dims, int threads) {
          SuiteConfig c;
          c.suite = suite;
          c.trials = trials;
          c.seed = seed;
          c.dims = to_dims(dims);
          c.threads = threads;
          SuiteReport r;
          {
            py::gil_scoped_release release;
            r = run_suite(c);
          }
          return format_report(r);
        },
        py::arg("suite"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("dims") = Dims{2, 2},
        py::arg("threads") = 0, "Run a suite and return its line-delimited JSON report.");
}
