#include "nnts/core.hpp"
#include "nnts/dataio.hpp"
#include "nnts/likelihood.hpp"
#include "nnts/optimizer.hpp"
#include "nnts/selection.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <stdexcept>

namespace py = pybind11;
using namespace nnts;

namespace {

CalendarConvention parse_convention(const std::string& name) {
  if (name == "common") {
    return CalendarConvention::kCommonYear;
  }
  if (name == "leap") {
    return CalendarConvention::kLeapAveraged;
  }
  throw InvalidArgument("unknown calendar convention '" + name + "' (common, leap)");
}

Retraction parse_retraction(const std::string& name) {
  if (name == "shifted") {
    return Retraction::kShifted;
  }
  if (name == "direction") {
    return Retraction::kDirection;
  }
  throw InvalidArgument("unknown retraction '" + name + "' (shifted, direction)");
}

py::array_t<double> map_angles(const py::array_t<double, py::array::forcecast>& thetas,
                                const std::function<double(double)>& f) {
  py::array_t<double> out(thetas.request().shape);
  auto* dst = out.mutable_data();
  const double* src = thetas.data();
  for (py::ssize_t i = 0; i < thetas.size(); ++i) {
    dst[i] = f(src[i]);
  }
  return out;
}

// Dataset is a std::variant of types without default constructors, which
// the variant caster cannot build; bind one overload per sample type.
template <class Sample>
void bind_per_sample(py::module_& m) {
  m.def(
      "loglik", [](const NntsParams& p, const Sample& s) { return loglik(p, Dataset(s)); },
      py::arg("params"), py::arg("data"));
  m.def(
      "riemannian_grad", [](const NntsParams& p, const Sample& s) { return riemannian_grad(p, s).eta; },
      py::arg("params"), py::arg("data"));
}

template <class Sample>
void bind_fits(py::module_& m) {
  m.def(
      "fit",
      [](const Sample& s, int order, const SolverConfig& config) {
        py::gil_scoped_release release;
        return fit(Dataset(s), order, config);
      },
      py::arg("data"), py::arg("order"), py::arg("config") = SolverConfig{});
  m.def(
      "fit_baseline",
      [](const Sample& s, int order, const SolverConfig& config) {
        py::gil_scoped_release release;
        return fit_baseline(Dataset(s), order, config);
      },
      py::arg("data"), py::arg("order"), py::arg("config") = SolverConfig{});
}

}  // namespace

PYBIND11_MODULE(_nnts, m) {
  m.doc() = "Nonnegative trigonometric sum densities on the circle";

  auto base = py::register_exception<Error>(m, "NntsError", PyExc_ValueError);
  py::register_exception<ZeroDensityAtDatum>(m, "ZeroDensityAtDatum", base.ptr());
  py::register_exception<ZeroCellProbability>(m, "ZeroCellProbability", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NoAcceptableModel>(m, "NoAcceptableModel", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<NntsParams>(m, "NntsParams")
      .def_static("from_coefficients", &NntsParams::from_coefficients, py::arg("c"))
      .def_static("uniform", &NntsParams::uniform, py::arg("order"))
      .def_property_readonly("order", &NntsParams::order)
      .def_property_readonly("coefficients", [](const NntsParams& p) { return p.coefficients(); })
      .def("__repr__", [](const NntsParams& p) {
        return "<NntsParams order=" + std::to_string(p.order()) + ">";
      });

  m.def("canonicalize", [](const ComplexVector& c) { return canonicalize(c); }, py::arg("c"));
  m.def("density", py::overload_cast<const NntsParams&, double>(&density), py::arg("params"),
        py::arg("theta"));
  m.def(
      "density",
      [](const NntsParams& p, const py::array_t<double, py::array::forcecast>& thetas) {
        return map_angles(thetas, [&](double t) { return density(p, t); });
      },
      py::arg("params"), py::arg("theta"));
  m.def("cdf", &cdf, py::arg("params"), py::arg("b"));
  m.def("interval_matrix", &interval_matrix, py::arg("a"), py::arg("b"), py::arg("order"));

  py::class_<Partition>(m, "Partition")
      .def_static("from_bounds", &Partition::from_bounds, py::arg("bounds"))
      .def_property_readonly("cells", &Partition::cells)
      .def_property_readonly("bounds", [](const Partition& p) { return p.bounds(); })
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });
  m.def("equal_partition", &equal_partition, py::arg("cells"));
  m.def(
      "calendar_partition",
      [](const std::string& convention) { return calendar_partition(parse_convention(convention)); },
      py::arg("convention") = "common");

  py::class_<AngularSample>(m, "AngularSample")
      .def(py::init<std::vector<double>>(), py::arg("thetas"))
      .def("__len__", &AngularSample::size)
      .def_property_readonly("thetas", [](const AngularSample& s) {
        return std::vector<double>(s.thetas().begin(), s.thetas().end());
      });

  py::class_<GroupedSample>(m, "GroupedSample")
      .def(py::init<Partition, std::vector<std::int64_t>>(), py::arg("partition"), py::arg("counts"))
      .def_property_readonly("partition", &GroupedSample::partition)
      .def_property_readonly("counts", [](const GroupedSample& s) {
        return std::vector<std::int64_t>(s.counts().begin(), s.counts().end());
      })
      .def_property_readonly("total", &GroupedSample::total);

  bind_per_sample<AngularSample>(m);
  bind_per_sample<GroupedSample>(m);
  m.def("fisher_info", &fisher_info, py::arg("count"), py::arg("params"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("grad_tol", &SolverConfig::grad_tol)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("restarts", &SolverConfig::restarts)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("step_guard", &SolverConfig::step_guard)
      .def_readwrite("max_halvings", &SolverConfig::max_halvings)
      .def_readwrite("record_trace", &SolverConfig::record_trace)
      .def_property(
          "retraction",
          [](const SolverConfig& c) {
            return std::string(c.retraction == Retraction::kShifted ? "shifted" : "direction");
          },
          [](SolverConfig& c, const std::string& name) { c.retraction = parse_retraction(name); });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("params", &FitResult::params)
      .def_readonly("loglik", &FitResult::loglik)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("grad_norm", &FitResult::grad_norm)
      .def_readonly("start", &FitResult::start)
      .def_property_readonly("trace", [](const FitResult& r) {
        std::vector<double> out;
        for (const auto& t : r.trace) {
          out.push_back(t.loglik);
        }
        return out;
      });

  bind_fits<AngularSample>(m);
  bind_fits<GroupedSample>(m);

  m.def("aic", &aic, py::arg("loglik"), py::arg("order"));
  m.def("bic", &bic, py::arg("loglik"), py::arg("order"), py::arg("n"));
  m.def("chi_square_sf", &chi_square_sf, py::arg("x"), py::arg("df"));

  py::class_<LrTest>(m, "LrTest")
      .def_readonly("stat", &LrTest::stat)
      .def_readonly("df", &LrTest::df)
      .def_readonly("pvalue", &LrTest::pvalue);
  m.def("lr_test", &lr_test, py::arg("loglik_m"), py::arg("loglik_s"), py::arg("order"),
        py::arg("saturated_order"));

  py::class_<SelectionRow>(m, "SelectionRow")
      .def_readonly("order", &SelectionRow::order)
      .def_readonly("loglik", &SelectionRow::loglik)
      .def_readonly("aic", &SelectionRow::aic)
      .def_readonly("bic", &SelectionRow::bic)
      .def_readonly("lr", &SelectionRow::lr)
      .def_readonly("best_aic", &SelectionRow::best_aic)
      .def_readonly("best_bic", &SelectionRow::best_bic)
      .def_readonly("parsimonious", &SelectionRow::parsimonious);

  py::class_<SelectionTable>(m, "SelectionTable")
      .def_readonly("rows", &SelectionTable::rows)
      .def_readonly("sample_size", &SelectionTable::sample_size)
      .def_readonly("saturated", &SelectionTable::saturated)
      .def("best_aic_order", &best_aic_order)
      .def("best_bic_order", &best_bic_order)
      .def("parsimonious_order", &select_parsimonious, py::arg("alpha"));

  m.def(
      "selection_table",
      [](const std::vector<std::pair<int, double>>& fits, double n, std::optional<int> saturated,
         double alpha) {
        std::vector<OrderFit> in;
        for (const auto& [order, ll] : fits) {
          in.push_back({order, ll});
        }
        return build_selection_table(std::move(in), n, saturated, alpha);
      },
      py::arg("fits"), py::arg("n"), py::arg("saturated") = std::nullopt, py::arg("alpha") = 0.01);

  m.def(
      "load_continuous",
      [](const std::filesystem::path& path, const std::string& unit, const std::string& column) {
        DatasetSpec spec;
        spec.path = path;
        spec.unit = parse_unit(unit);
        spec.theta_column = column;
        return load_continuous(spec);
      },
      py::arg("path"), py::arg("unit") = "radians", py::arg("column") = "theta");
  m.def(
      "load_grouped",
      [](const std::filesystem::path& path, std::optional<Partition> partition) {
        DatasetSpec spec;
        spec.path = path;
        spec.kind = DataKind::kGrouped;
        return load_grouped(spec, partition);
      },
      py::arg("path"), py::arg("partition") = std::nullopt);
}
