#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "focklab/approx.hpp"
#include "focklab/checks.hpp"
#include "focklab/config.hpp"
#include "focklab/frames.hpp"
#include "focklab/localization.hpp"
#include "focklab/model.hpp"
#include "focklab/operators.hpp"
#include "focklab/runner.hpp"
#include "focklab/symbols.hpp"
#include "focklab/translations.hpp"

namespace py = pybind11;
using namespace focklab;

namespace {

// The C++ side hands out shared_ptr<const FockModel>; wrap it so pybind11
// never needs a mutable holder.
struct PyModel {
  ModelPtr ptr;
  const FockModel& ref() const { return *ptr; }
};

// Accepts the same operator grammar as the CLI configs; a bare expression is
// treated as a symbol.
OpMatrix toeplitz_from_spec(const PyModel& m, const std::string& spec) {
  if (spec.rfind("preset:", 0) == 0) return preset_operator(m.ptr, spec.substr(7));
  if (spec.rfind("symbol:", 0) == 0)
    return toeplitz_function(m.ptr, parse_symbol(spec.substr(7)));
  return toeplitz_function(m.ptr, parse_symbol(spec));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Numerical toolkit for weighted entire-function spaces: truncated "
      "models, Toeplitz compressions, localization and translation "
      "estimators, and the reproducibility battery.";
  mod.attr("__version__") = "0.1.0";

  py::class_<PyModel>(mod, "Model")
      .def_static(
          "classical",
          [](double alpha, int dim) {
            return PyModel{make_model(Weight::classical(alpha), dim)};
          },
          py::arg("alpha") = 1.0, py::arg("dim") = 60)
      .def_static(
          "fock_sobolev",
          [](double alpha, double m, double shift, int dim) {
            return PyModel{make_model(Weight::fock_sobolev(alpha, m, shift), dim)};
          },
          py::arg("alpha"), py::arg("m"), py::arg("shift"), py::arg("dim") = 60)
      .def_property_readonly("dim", [](const PyModel& m) { return m.ref().dim(); })
      .def_property_readonly("alpha", [](const PyModel& m) { return m.ref().alpha(); })
      .def_property_readonly("weight_label",
                             [](const PyModel& m) { return m.ref().weight().label(); })
      .def_property_readonly("trust_radius",
                             [](const PyModel& m) { return m.ref().trust_radius(); })
      .def_property_readonly("r_cut", [](const PyModel& m) { return m.ref().r_cut(); })
      .def("trusted", [](const PyModel& m, Complex z) { return m.ref().trusted(z); },
           py::arg("z"))
      .def("moment",
           [](const PyModel& m, int k) { return m.ref().moments().moment(k); },
           py::arg("k"))
      .def("log_moment",
           [](const PyModel& m, int k) { return m.ref().moments().log_moment(k); },
           py::arg("k"))
      .def("moment_rel_err",
           [](const PyModel& m, int k) { return m.ref().moments().rel_err(k); },
           py::arg("k"))
      .def("tail_fraction",
           [](const PyModel& m, int k, double r) {
             return m.ref().moments().tail_fraction(k, r);
           },
           py::arg("k"), py::arg("r"))
      .def("kernel",
           [](const PyModel& m, Complex z, Complex w) { return m.ref().kernel(z, w); },
           py::arg("z"), py::arg("w"))
      .def("kernel_diag",
           [](const PyModel& m, double r) { return m.ref().kernel_diag(r); },
           py::arg("r"))
      .def("basis_at",
           [](const PyModel& m, Complex z) { return m.ref().basis_at(z); },
           py::arg("z"))
      .def("eval",
           [](const PyModel& m, const CVector& coeffs, Complex z) {
             return m.ref().eval(coeffs, z);
           },
           py::arg("coeffs"), py::arg("z"))
      .def("p_norm",
           [](const PyModel& m, const CVector& coeffs, double p) {
             return m.ref().p_norm(coeffs, p);
           },
           py::arg("coeffs"), py::arg("p") = 2.0)
      .def("__repr__", [](const PyModel& m) {
        return "<focklab.Model " + m.ref().weight().label() +
               " dim=" + std::to_string(m.ref().dim()) + ">";
      });

  py::class_<OpMatrix>(mod, "Operator")
      .def_property_readonly("dim", &OpMatrix::dim)
      .def("matrix", [](const OpMatrix& a) { return a.mat(); })
      .def("adjoint", &OpMatrix::adjoint)
      .def("compose", &OpMatrix::compose, py::arg("rhs"))
      .def("__matmul__", &OpMatrix::compose)
      .def("__add__", &OpMatrix::add)
      .def("__sub__", &OpMatrix::sub)
      .def("__mul__", &OpMatrix::scaled)
      .def("__rmul__", &OpMatrix::scaled)
      .def("scaled", &OpMatrix::scaled, py::arg("factor"))
      .def("trace", &OpMatrix::trace)
      .def("leading_block", &OpMatrix::leading_block, py::arg("drop") = 5)
      .def("norm", [](const OpMatrix& a) { return op_norm(a); })
      .def("__repr__", [](const OpMatrix& a) {
        return "<focklab.Operator dim=" + std::to_string(a.dim()) + ">";
      });

  mod.def("identity_op", [](const PyModel& m) { return identity_op(m.ptr); },
          py::arg("model"));
  mod.def("zero_op", [](const PyModel& m) { return zero_op(m.ptr); }, py::arg("model"));
  mod.def("toeplitz", &toeplitz_from_spec, py::arg("model"), py::arg("spec"),
          "Compression from an operator spec: 'preset:NAME', 'symbol:EXPR', or a "
          "bare symbol expression.");
  mod.def(
      "toeplitz_pointmasses",
      [](const PyModel& m, const std::vector<std::pair<Complex, Complex>>& atoms) {
        DiscreteMeasure mu;
        for (const auto& [point, mass] : atoms) mu.atoms.push_back({point, mass});
        return toeplitz_measure(m.ptr, mu);
      },
      py::arg("model"), py::arg("atoms"),
      "Compression of a finite atomic measure given as (point, mass) pairs.");
  mod.def("preset_catalog", &preset_catalog);
  mod.def("op_norm", [](const OpMatrix& a) { return op_norm(a); }, py::arg("op"));
  mod.def("matrix_norm", [](const CMatrix& a) { return op_norm(a); }, py::arg("mat"));
  mod.def("berezin", &berezin, py::arg("op"), py::arg("z"));
  mod.def("kernel_correlation", &kernel_correlation, py::arg("op"), py::arg("z"),
          py::arg("w"));

  py::class_<DecayCurve>(mod, "DecayCurve")
      .def_readonly("radii", &DecayCurve::radii)
      .def_readonly("values", &DecayCurve::values)
      .def_readonly("n_samples", &DecayCurve::n_samples)
      .def_readonly("trusted", &DecayCurve::trusted);
  mod.def("decay_profile", &decay_profile, py::arg("op"), py::arg("radii"),
          py::arg("seed") = 20240901u, py::arg("base_points") = 8,
          py::arg("directions") = 32);
  mod.def("compactness_indicator", &compactness_indicator, py::arg("op"),
          py::arg("cap_radius"), py::arg("t_values"));
  mod.def("tail_norm", &tail_norm, py::arg("op"), py::arg("r"));
  mod.def("local_norm",
          [](const OpMatrix& a, Complex z, double d) { return local_norm(a, z, d); },
          py::arg("op"), py::arg("z"), py::arg("d"));

  py::class_<EssNormReport>(mod, "EssNormReport")
      .def_readonly("radii", &EssNormReport::radii)
      .def_readonly("tail_values", &EssNormReport::tail_values)
      .def_readonly("far_field_values", &EssNormReport::far_field_values)
      .def_readonly("trusted", &EssNormReport::trusted)
      .def_readonly("scale", &EssNormReport::scale);
  mod.def("toeplitz_essnorm_check", &toeplitz_essnorm_check, py::arg("op"),
          py::arg("carleson_scale"), py::arg("r_list"));

  py::class_<SymbolPoly>(mod, "SymbolPoly")
      .def(py::init<>())
      .def_static("monomial", &SymbolPoly::monomial, py::arg("a"), py::arg("b"),
                  py::arg("c") = Complex(1.0, 0.0))
      .def("set", &SymbolPoly::set, py::arg("a"), py::arg("b"), py::arg("c"))
      .def("coeff", &SymbolPoly::coeff, py::arg("a"), py::arg("b"))
      .def("terms", [](const SymbolPoly& p) { return p.terms(); })
      .def("plus", &SymbolPoly::plus)
      .def("minus", &SymbolPoly::minus)
      .def("times", &SymbolPoly::times)
      .def("scaled", &SymbolPoly::scaled)
      .def("dz", &SymbolPoly::dz)
      .def("dzbar", &SymbolPoly::dzbar)
      .def("eval", &SymbolPoly::eval, py::arg("z"));
  mod.def("sharp_product", &sharp_product, py::arg("f"), py::arg("g"),
          py::arg("alpha"));
  mod.def("toeplitz_poly",
          [](const PyModel& m, const SymbolPoly& p) { return toeplitz_poly(m.ptr, p); },
          py::arg("model"), py::arg("poly"));
  mod.def(
      "verify_sharp",
      [](const PyModel& m, const SymbolPoly& f, const SymbolPoly& g) {
        const SharpCheck c = verify_sharp(m.ptr, f, g);
        return py::make_tuple(c.sharp, c.residual);
      },
      py::arg("model"), py::arg("f"), py::arg("g"),
      "Returns (sharp_poly, interior_block_residual).");

  py::class_<HeatCurve>(mod, "HeatCurve")
      .def_readonly("times", &HeatCurve::times)
      .def_readonly("deviations", &HeatCurve::deviations);
  mod.def(
      "heat_convergence_curve",
      [](const PyModel& m, const std::string& symbol, const std::vector<double>& times,
         double half, double h) {
        return heat_convergence_curve(m.ptr, parse_symbol(symbol), times, half, h);
      },
      py::arg("model"), py::arg("symbol"), py::arg("times"), py::arg("half") = 4.0,
      py::arg("h") = 0.05);

  py::class_<PointMassCurve>(mod, "PointMassCurve")
      .def_readonly("eps", &PointMassCurve::eps)
      .def_readonly("deviations", &PointMassCurve::deviations);
  mod.def(
      "point_mass_limit_curve",
      [](const PyModel& m, Complex w, const std::vector<double>& eps_list) {
        return point_mass_limit_curve(m.ptr, w, eps_list);
      },
      py::arg("model"), py::arg("w"), py::arg("eps_list"));

  py::class_<ThetaValue>(mod, "ThetaValue")
      .def_readonly("value", &ThetaValue::value)
      .def_readonly("modulus_gap", &ThetaValue::modulus_gap)
      .def_readonly("residual", &ThetaValue::residual);
  mod.def(
      "theta_pairing",
      [](const PyModel& m, Complex z, Complex w) { return theta_pairing(m.ptr, z, w); },
      py::arg("model"), py::arg("z"), py::arg("w"));

  py::class_<TranslationOp>(mod, "Translation")
      .def_readonly("z", &TranslationOp::z)
      .def_readonly("op", &TranslationOp::op)
      .def_readonly("column_deficit", &TranslationOp::column_deficit)
      .def_readonly("trusted_cols", &TranslationOp::trusted_cols);
  mod.def(
      "weighted_translation",
      [](const PyModel& m, Complex z) { return weighted_translation(m.ptr, z); },
      py::arg("model"), py::arg("z"));

  py::class_<BerezinEquivalence>(mod, "BerezinEquivalence")
      .def_readonly("radii", &BerezinEquivalence::radii)
      .def_readonly("berezin_sup", &BerezinEquivalence::berezin_sup)
      .def_readonly("correlation_sup", &BerezinEquivalence::correlation_sup);
  mod.def("berezin_equiv_check", &berezin_equiv_check, py::arg("op"),
          py::arg("cap_radius"), py::arg("radii"));

  py::class_<FrameScan>(mod, "FrameScan")
      .def_readonly("bases", &FrameScan::bases)
      .def_readonly("norms", &FrameScan::norms)
      .def_readonly("min_norm", &FrameScan::min_norm)
      .def_readonly("max_norm", &FrameScan::max_norm)
      .def("spread", &FrameScan::spread);
  mod.def(
      "frame_norm_scan",
      [](const PyModel& m, int window, const std::vector<Complex>& bases) {
        return frame_norm_scan(m.ptr, window, bases);
      },
      py::arg("model"), py::arg("window"), py::arg("bases"));
  mod.def(
      "identity_quadrature",
      [](const PyModel& m, double cell, double radius) {
        return identity_quadrature(m.ptr, cell, radius);
      },
      py::arg("model"), py::arg("cell"), py::arg("radius"));
  mod.def("leading_block_deviation", &leading_block_deviation, py::arg("mat"),
          py::arg("block"));

  py::class_<CheckResult>(mod, "CheckResult")
      .def_readonly("id", &CheckResult::id)
      .def_readonly("title", &CheckResult::title)
      .def_readonly("passed", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail)
      .def("__repr__", [](const CheckResult& c) {
        return "<focklab.CheckResult " + std::to_string(c.id) + " " +
               (c.pass ? "pass" : "FAIL") + " " + c.title + ">";
      });
  py::class_<BatteryResult>(mod, "BatteryResult")
      .def_readonly("checks", &BatteryResult::checks)
      .def_readonly("manifest_json", &BatteryResult::manifest_json)
      .def_readonly("manifest_hash", &BatteryResult::manifest_hash)
      .def_readonly("all_pass", &BatteryResult::all_pass);
  mod.def("run_battery", &run_battery, py::arg("verbose") = false,
          py::call_guard<py::gil_scoped_release>());

  py::class_<RunResult>(mod, "RunResult")
      .def_readonly("kind", &RunResult::kind)
      .def_readonly("artifacts", &RunResult::artifacts)
      .def_readonly("manifest_json", &RunResult::manifest_json)
      .def_readonly("manifest_hash", &RunResult::manifest_hash);
  mod.def(
      "run_experiment",
      [](const std::string& config_text) {
        return run_experiment(Config::parse(config_text));
      },
      py::arg("config_text"),
      "Runs one experiment from config text (same format as the CLI).");
  mod.def("write_run", &write_run, py::arg("result"), py::arg("out_dir"));
}
