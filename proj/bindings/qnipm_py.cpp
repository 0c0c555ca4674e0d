#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnipm/checks.hpp"
#include "qnipm/io.hpp"

namespace py = pybind11;
using namespace qnipm;

PYBIND11_MODULE(_qnipm, mod) {
  mod.doc() = "quasi-Newton interior point LP solver";

  py::register_exception<ContractViolation>(mod, "ContractViolation");
  py::register_exception<NumericError>(mod, "NumericError");
  py::register_exception<ConfigError>(mod, "QnipmConfigError");
  py::register_exception<GenerationError>(mod, "QnipmGenerationError");
  py::register_exception<IoError>(mod, "QnipmIoError");

  py::class_<Problem>(mod, "Problem")
      .def_static("create",
                  [](const Mat& A, const Vec& b, const Vec& c) {
                    return Problem::create(A, b, c);
                  },
                  py::arg("A"), py::arg("b"), py::arg("c"))
      .def_readonly("A", &Problem::A)
      .def_readonly("b", &Problem::b)
      .def_readonly("c", &Problem::c)
      .def_readonly("m", &Problem::m)
      .def_readonly("n", &Problem::n);

  py::class_<IteratePoint>(mod, "IteratePoint")
      .def(py::init([](const Vec& x, const Vec& lam, const Vec& z) {
             IteratePoint p;
             p.x = x;
             p.lambda = lam;
             p.z = z;
             return p;
           }),
           py::arg("x"), py::arg("lam"), py::arg("z"))
      .def_readwrite("x", &IteratePoint::x)
      .def_readwrite("lam", &IteratePoint::lambda)
      .def_readwrite("z", &IteratePoint::z)
      .def("interior", &IteratePoint::interior);

  py::enum_<Variant>(mod, "Variant")
      .value("FeasibleN2", Variant::FeasibleN2)
      .value("FeasibleNs", Variant::FeasibleNs)
      .value("InfeasibleNs", Variant::InfeasibleNs);

  py::enum_<Mode>(mod, "Mode")
      .value("Theory", Mode::Theory)
      .value("Adaptive", Mode::Adaptive);

  py::enum_<Status>(mod, "Status")
      .value("Converged", Status::Converged)
      .value("IterLimit", Status::IterLimit)
      .value("StepFailure", Status::StepFailure);

  py::class_<SolverOptions>(mod, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("variant", &SolverOptions::variant)
      .def_readwrite("mode", &SolverOptions::mode)
      .def_readwrite("theta", &SolverOptions::theta)
      .def_readwrite("gamma", &SolverOptions::gamma)
      .def_readwrite("beta", &SolverOptions::beta)
      .def_readwrite("sigma_min", &SolverOptions::sigma_min)
      .def_readwrite("sigma_max", &SolverOptions::sigma_max)
      .def_readwrite("alpha_dec", &SolverOptions::alpha_dec)
      .def_readwrite("sigma", &SolverOptions::sigma)
      .def_readwrite("epsilon", &SolverOptions::epsilon)
      .def_readwrite("max_iters", &SolverOptions::max_iters)
      .def_readwrite("ell", &SolverOptions::ell);

  py::class_<StepRecord>(mod, "StepRecord")
      .def_readonly("k", &StepRecord::k)
      .def_readonly("step_type", &StepRecord::step_type)
      .def_readonly("alpha", &StepRecord::alpha)
      .def_readonly("sigma", &StepRecord::sigma)
      .def_readonly("mu_before", &StepRecord::mu_before)
      .def_readonly("mu_after", &StepRecord::mu_after)
      .def_readonly("prox_n2", &StepRecord::prox_n2)
      .def_readonly("ns_min_ratio", &StepRecord::ns_min_ratio)
      .def_readonly("ns_max_ratio", &StepRecord::ns_max_ratio)
      .def_readonly("norm_rb", &StepRecord::norm_rb)
      .def_readonly("norm_rc", &StepRecord::norm_rc)
      .def_readonly("nu", &StepRecord::nu)
      .def_readonly("gamma1", &StepRecord::gamma1)
      .def_readonly("dx_dot_dz", &StepRecord::dx_dot_dz);

  py::class_<RunResult>(mod, "RunResult")
      .def_readonly("status", &RunResult::status)
      .def_readonly("trace", &RunResult::trace)
      .def_readonly("mu0", &RunResult::mu0)
      .def_readonly("init_residual_norm", &RunResult::init_residual_norm)
      .def_readonly("final_point", &RunResult::final_point);

  py::class_<CheckEntry>(mod, "CheckEntry")
      .def_readonly("name", &CheckEntry::name)
      .def_readonly("k", &CheckEntry::k)
      .def_readonly("lhs", &CheckEntry::lhs)
      .def_readonly("rhs", &CheckEntry::rhs)
      .def_readonly("margin", &CheckEntry::margin)
      .def_readonly("pass_", &CheckEntry::pass);

  py::class_<CheckReport>(mod, "CheckReport")
      .def_readonly("entries", &CheckReport::entries)
      .def("all_pass", &CheckReport::all_pass)
      .def("failures", &CheckReport::failures);

  py::class_<GeneratedInstance>(mod, "GeneratedInstance")
      .def_readonly("problem", &GeneratedInstance::problem)
      .def_readonly("optimal", &GeneratedInstance::optimal)
      .def_readonly("central_start", &GeneratedInstance::central_start)
      .def_readonly("xi", &GeneratedInstance::xi)
      .def_readonly("seed", &GeneratedInstance::seed);

  mod.def("mu", &mu, py::arg("point"));
  mod.def("n2_proximity", &n2_proximity, py::arg("point"));
  mod.def("generate_centered_lp", &generate_centered_lp, py::arg("n"),
          py::arg("m"), py::arg("mu0"), py::arg("seed"));
  mod.def("generate_solved_lp", &generate_solved_lp, py::arg("n"),
          py::arg("m"), py::arg("seed"));
  mod.def("cold_start", &cold_start, py::arg("xi"), py::arg("n"),
          py::arg("m"));
  mod.def("run", &run, py::arg("problem"), py::arg("start"),
          py::arg("options"));
  mod.def("verify_trace", &verify_trace, py::arg("result"),
          py::arg("problem"), py::arg("options"));
  mod.def("composite_error_check", &composite_error_check, py::arg("result"),
          py::arg("options"));
  mod.def("complexity_fit",
          [](const std::vector<std::pair<double, double>>& pts) {
            const FitResult f = complexity_fit(pts);
            return py::make_tuple(f.exponent, f.r_squared);
          },
          py::arg("points"));
  mod.def("save_instance", &save_instance, py::arg("path"), py::arg("inst"));
  mod.def("load_instance", &load_instance, py::arg("path"));
  mod.def("save_trace", &save_trace, py::arg("path"), py::arg("result"),
          py::arg("full") = false);
  mod.def("load_trace", &load_trace, py::arg("path"));
}
