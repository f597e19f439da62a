#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coxflow/experiment.hpp"
#include "coxflow/oracle.hpp"

namespace py = pybind11;
using namespace coxflow;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cox-process functional classification pipeline";

  py::class_<CountingPath>(m, "CountingPath")
      .def(py::init<>())
      .def(py::init([](double horizon, std::vector<double> jumps, int cap) {
             CountingPath x{horizon, std::move(jumps), cap};
             x.validate();
             return x;
           }),
           py::arg("horizon"), py::arg("jump_times"), py::arg("cap"))
      .def_readwrite("horizon", &CountingPath::horizon)
      .def_readwrite("jump_times", &CountingPath::jump_times)
      .def_readwrite("cap", &CountingPath::cap);

  py::class_<CovariatePath>(m, "CovariatePath")
      .def(py::init<>())
      .def(py::init([](std::vector<double> grid, std::vector<double> values,
                       int dim) {
             CovariatePath z{std::move(grid), std::move(values), dim};
             z.validate();
             return z;
           }),
           py::arg("grid"), py::arg("values"), py::arg("dim"))
      .def_readwrite("grid", &CovariatePath::grid)
      .def_readwrite("values", &CovariatePath::values)
      .def_readwrite("dim", &CovariatePath::dim)
      .def("value_at", [](const CovariatePath& z, double t) {
        auto v = z.value_at(t);
        return std::vector<double>(v.begin(), v.end());
      });

  py::class_<LabeledSample>(m, "LabeledSample")
      .def(py::init<>())
      .def_readwrite("x", &LabeledSample::x)
      .def_readwrite("z", &LabeledSample::z)
      .def_readwrite("y", &LabeledSample::y);

  py::class_<IntensityModel>(m, "IntensityModel")
      .def_readonly("eps", &IntensityModel::eps)
      .def_readonly("dmax", &IntensityModel::dmax)
      .def_readonly("p_plus", &IntensityModel::p_plus)
      .def_readonly("p_minus", &IntensityModel::p_minus)
      .def_readonly("horizon", &IntensityModel::horizon)
      .def_readonly("dim", &IntensityModel::dim);

  py::class_<Dictionary>(m, "Dictionary")
      .def_readonly("horizon", &Dictionary::horizon)
      .def_readonly("dim", &Dictionary::dim)
      .def_readonly("description", &Dictionary::description)
      .def("eval",
           [](const Dictionary& d, int j, double t, std::vector<double> z) {
             return d.eval(j, t, z);
           })
      .def("sup_bound", [](const Dictionary& d, int J) { return d.sup_bound(J); });

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("grid_steps", &SimConfig::grid_steps)
      .def_readwrite("covariate_kind", &SimConfig::covariate_kind)
      .def_readwrite("scenario", &SimConfig::scenario)
      .def_readwrite("p_plus", &SimConfig::p_plus)
      .def_readwrite("u", &SimConfig::u)
      .def_readwrite("horizon", &SimConfig::horizon)
      .def_readwrite("dim", &SimConfig::dim)
      .def_readwrite("threads", &SimConfig::threads);

  py::class_<FeatureMatrix>(m, "FeatureMatrix")
      .def_readonly("n", &FeatureMatrix::n)
      .def_readonly("B", &FeatureMatrix::B)
      .def_readonly("phi", &FeatureMatrix::phi)
      .def_readonly("psi", &FeatureMatrix::psi)
      .def_readonly("labels", &FeatureMatrix::labels)
      .def_readonly("bound_U", &FeatureMatrix::bound_U);

  py::class_<Coefficients>(m, "Coefficients")
      .def(py::init<>())
      .def_readwrite("a", &Coefficients::a)
      .def_readwrite("b", &Coefficients::b)
      .def_readwrite("c", &Coefficients::c)
      .def_readwrite("radius", &Coefficients::radius);

  py::class_<FitReport>(m, "FitReport")
      .def_readonly("coef", &FitReport::coef)
      .def_readonly("risk", &FitReport::risk)
      .def_readonly("iterations", &FitReport::iterations)
      .def_readonly("converged", &FitReport::converged);

  py::class_<SelectionRow>(m, "SelectionRow")
      .def_readonly("k", &SelectionRow::k)
      .def_readonly("B", &SelectionRow::B)
      .def_readonly("risk", &SelectionRow::risk)
      .def_readonly("pen", &SelectionRow::pen)
      .def_readonly("score", &SelectionRow::score)
      .def_readonly("chosen", &SelectionRow::chosen);

  py::class_<SelectionReport>(m, "SelectionReport")
      .def_readonly("trace", &SelectionReport::trace)
      .def_readonly("k_hat", &SelectionReport::k_hat)
      .def_readonly("final", &SelectionReport::final);

  py::class_<Posterior>(m, "Posterior")
      .def_readonly("eta_plus", &Posterior::eta_plus)
      .def_readonly("eta_minus", &Posterior::eta_minus);

  py::class_<RiskEstimate>(m, "RiskEstimate")
      .def_readonly("value", &RiskEstimate::value)
      .def_readonly("std_error", &RiskEstimate::std_error)
      .def_readonly("n_eval", &RiskEstimate::n_eval);

  m.def("tau", &tau, py::arg("x"));
  m.def("stop_pair", &stop_pair, py::arg("x"), py::arg("z"));
  m.def("scenario_by_name", &scenario_by_name, py::arg("name"),
        py::arg("p_plus") = 0.5);
  m.def("cosine_dictionary", &cosine_dictionary, py::arg("dim"),
        py::arg("horizon"));
  m.def("eta_from_xi", &eta_from_xi, py::arg("xi"), py::arg("p_plus"));
  m.def("simulate_dataset", &simulate_dataset, py::arg("model"),
        py::arg("config"));
  m.def("girsanov_log_weight",
        [](const IntensityModel& model, bool plus, const CountingPath& x,
           const CovariatePath& z) {
          return girsanov_log_weight(
              plus ? model.lambda_plus : model.lambda_minus, x, z);
        },
        py::arg("model"), py::arg("plus"), py::arg("x"), py::arg("z"));
  m.def("compute_phi", &compute_phi, py::arg("dict"), py::arg("j"),
        py::arg("x"), py::arg("z"), py::arg("quad_nodes") = 16);
  m.def("compute_psi", &compute_psi, py::arg("dict"), py::arg("j"),
        py::arg("x"), py::arg("z"));
  m.def("feature_matrix", &feature_matrix, py::arg("data"), py::arg("dict"),
        py::arg("B"), py::arg("u"), py::arg("threads") = 1);
  m.def("logit_loss", &logit_loss);
  m.def("logit_loss_deriv", &logit_loss_deriv);
  m.def("project_l1", &project_l1, py::arg("v"), py::arg("radius"));
  m.def("empirical_risk",
        [](const Coefficients& c, const FeatureMatrix& fm) {
          return empirical_risk(c, fm);
        });
  m.def("fit_erm",
        [](const FeatureMatrix& fm, int B) { return fit_erm(fm, B); },
        py::arg("features"), py::arg("B"));
  m.def("default_schedule", &default_schedule, py::arg("alpha"), py::arg("k"));
  m.def("penalty_for_B", &penalty_for_B, py::arg("B_k"), py::arg("alpha"),
        py::arg("delta"), py::arg("c_pen"), py::arg("U"), py::arg("n"));
  m.def("fit_penalized",
        [](const Dataset& data, const Dictionary& dict, int k_max,
           const std::string& selector, double c_pen, int u) {
          SelectionPlan plan;
          plan.k_max = k_max;
          plan.selector = selector;
          plan.c_pen = c_pen;
          return fit_penalized(data, dict, plan, u);
        },
        py::arg("data"), py::arg("dict"), py::arg("k_max") = 5,
        py::arg("selector") = "penalized", py::arg("c_pen") = 1.0,
        py::arg("u") = 20);
  m.def("xi", &xi, py::arg("x"), py::arg("z"), py::arg("model"),
        py::arg("quad_nodes") = 16);
  m.def("posterior", &posterior, py::arg("x"), py::arg("z"), py::arg("model"));
  m.def("bayes_classify", &bayes_classify, py::arg("x"), py::arg("z"),
        py::arg("model"));
  m.def("mc_bayes_risk", &mc_bayes_risk, py::arg("model"), py::arg("eval_set"));
  m.def("read_dataset", &read_dataset_file, py::arg("path"));
  m.def("write_dataset", &write_dataset_file, py::arg("path"), py::arg("data"));
  m.def("dataset_to_string", [](const Dataset& d) {
    std::ostringstream ss;
    write_dataset(ss, d);
    return ss.str();
  });
}
