#include "cmrff/classifier.hpp"
#include "cmrff/dataio.hpp"
#include "cmrff/errors.hpp"
#include "cmrff/evalbench.hpp"
#include "cmrff/experiments.hpp"
#include "cmrff/features.hpp"
#include "cmrff/io.hpp"
#include "cmrff/masses.hpp"
#include "cmrff/sampler.hpp"
#include "cmrff/spectral.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cmrff;

namespace {

ExperimentConfig parse_config(const std::string& command, const std::string& text) {
  ExperimentConfig base = default_config(command);
  return text.empty() ? base : config_from_json(nlohmann::json::parse(text), base);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random Fourier features for asymmetric shift-invariant kernels";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DegenerateMeasureError>(m, "DegenerateMeasureError", PyExc_ValueError);
  py::register_exception<EnvelopeFailureError>(m, "EnvelopeFailureError", PyExc_RuntimeError);
  py::register_exception<SpectralOverflowError>(m, "SpectralOverflowError", PyExc_OverflowError);

  py::enum_<KernelFamily>(m, "KernelFamily")
      .value("Gaussian", KernelFamily::Gaussian)
      .value("ShiftGaussian", KernelFamily::ShiftGaussian)
      .value("SinhGaussian", KernelFamily::SinhGaussian)
      .value("CoshGaussian", KernelFamily::CoshGaussian);

  py::enum_<Part>(m, "Part")
      .value("RealPos", Part::RealPos)
      .value("RealNeg", Part::RealNeg)
      .value("ImagPos", Part::ImagPos)
      .value("ImagNeg", Part::ImagNeg);

  py::class_<SpectralKernel>(m, "SpectralKernel")
      .def_static("gaussian", &SpectralKernel::gaussian, py::arg("dim"), py::arg("sigma"))
      .def_static("shift_gaussian", &SpectralKernel::shift_gaussian, py::arg("sigma"), py::arg("shift"))
      .def_static("sinh_gaussian", &SpectralKernel::sinh_gaussian, py::arg("sigma"), py::arg("skew"))
      .def_static("cosh_gaussian", &SpectralKernel::cosh_gaussian, py::arg("sigma"), py::arg("skew"))
      .def_static(
          "from_json",
          [](const std::string& text) { return kernel_from_json(nlohmann::json::parse(text)); })
      .def("to_json", [](const SpectralKernel& k) { return kernel_to_json(k).dump(); })
      .def_property_readonly("family", &SpectralKernel::family)
      .def_property_readonly("dim", &SpectralKernel::dim)
      .def_property_readonly("sigma", &SpectralKernel::sigma)
      .def("eval", [](const SpectralKernel& k, const Vector& d) { return k.eval(d); })
      .def("density", [](const SpectralKernel& k, const Vector& w) { return k.density(w); })
      .def("part_density",
           [](const SpectralKernel& k, Part p, const Vector& w) { return k.part_density(p, w); })
      .def("__repr__", &SpectralKernel::describe);

  py::class_<FrequencyBank>(m, "FrequencyBank")
      .def_readonly("omega", &FrequencyBank::omega)
      .def_readonly("zeta", &FrequencyBank::zeta)
      .def_readonly("nu", &FrequencyBank::nu)
      .def_readonly("seed", &FrequencyBank::seed)
      .def_readonly("m", &FrequencyBank::m)
      .def_readonly("dim", &FrequencyBank::dim);

  m.def("sample_bank",
        [](const SpectralKernel& k, int mm, std::uint64_t seed) { return sample_bank(k, mm, seed); },
        py::arg("kernel"), py::arg("m"), py::arg("seed"));
  m.def("sample_part",
        [](const SpectralKernel& k, Part p, int mm, std::uint64_t seed) {
          return sample_part(k, p, mm, seed);
        },
        py::arg("kernel"), py::arg("part"), py::arg("m"), py::arg("seed"));

  py::class_<MassSet>(m, "MassSet")
      .def(py::init([](double a, double b, double c) {
             MassSet s;
             s.xi1 = a;
             s.xi2 = b;
             s.xi3 = c;
             return s;
           }),
           py::arg("xi1"), py::arg("xi2"), py::arg("xi3"))
      .def_readonly("xi1", &MassSet::xi1)
      .def_readonly("xi2", &MassSet::xi2)
      .def_readonly("xi3", &MassSet::xi3)
      .def_readonly("constraint_residual", &MassSet::constraint_residual)
      .def_property_readonly("source", [](const MassSet& s) { return std::string(to_string(s.source)); })
      .def("total_mass", &MassSet::total_mass);

  m.def("masses_quadrature", [](const SpectralKernel& k) { return masses_quadrature(k); });
  m.def("masses_analytic", &masses_analytic);
  m.def("masses_subset_ls",
        [](const SpectralKernel& k, const FrequencyBank& b, const Matrix& s) {
          return masses_subset_ls(k, b, s);
        },
        py::arg("kernel"), py::arg("bank"), py::arg("subset"));

  py::class_<FeatureMap>(m, "FeatureMap")
      .def(py::init<FrequencyBank, MassSet>(), py::arg("bank"), py::arg("masses"))
      .def("approx_kernel",
           [](const FeatureMap& f, const Vector& x, const Vector& y) { return f.approx_kernel(x, y); })
      .def("transform",
           [](const FeatureMap& f, const Matrix& x, bool left) {
             return f.transform(x, left ? Side::Left : Side::Right);
           },
           py::arg("data"), py::arg("left") = true)
      .def("transform_symmetric", [](const FeatureMap& f, const Matrix& x) { return f.transform_symmetric(x); })
      .def("transform_concat", [](const FeatureMap& f, const Matrix& x) { return f.transform_concat(x); });

  m.def("gram_exact", [](const SpectralKernel& k, const Matrix& r, const Matrix& c) {
    return gram_exact(k, r, c);
  });
  m.def("gram_approx", [](const FeatureMap& f, const Matrix& r, const Matrix& c) {
    return gram_approx(f, r, c);
  });
  m.def("relative_error", [](const Matrix& a, const Matrix& b) { return relative_error(a, b); });
  m.def("beta_d", &beta_d);
  m.def("bound_min_features",
        [](int d, double l, double eps, double delta, double total_mass, double alpha) {
          BoundInputs b;
          b.d = d;
          b.l = l;
          b.eps = eps;
          b.delta = delta;
          b.total_mass = total_mass;
          b.alpha_mu = alpha;
          return bound_min_features(b);
        },
        py::arg("d"), py::arg("l"), py::arg("eps"), py::arg("delta"), py::arg("total_mass"),
        py::arg("alpha_mu"));

  m.def("parse_libsvm", [](const std::string& text) {
    std::istringstream in(text);
    const LibsvmData data = parse_libsvm(in);
    return std::make_pair(to_dense(data, data.max_index()), data.labels);
  });
  m.def("kfold_split", [](int n, int k, std::uint64_t seed) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (auto& f : kfold_split(n, k, seed)) out.emplace_back(f.train, f.validation);
    return out;
  });

  py::class_<Classifier>(m, "Classifier")
      .def_static("train",
                  [](const Matrix& x, const std::vector<int>& y, double c) {
                    return Classifier::train(x, y, c);
                  },
                  py::arg("features"), py::arg("labels"), py::arg("C"))
      .def("predict", [](const Classifier& c, const Matrix& x) { return c.predict(x); })
      .def_property_readonly("classes", &Classifier::classes)
      .def_property_readonly("C", &Classifier::C)
      .def("to_json", [](const Classifier& c) { return classifier_to_json(c).dump(); })
      .def_static("from_json",
                  [](const std::string& t) { return classifier_from_json(nlohmann::json::parse(t)); });
  m.def("evaluate", [](const Classifier& c, const Matrix& x, const std::vector<int>& y) {
    return evaluate(c, x, y);
  });
  m.def("cv_select",
        [](const Matrix& x, const std::vector<int>& y, const std::vector<double>& grid,
           std::uint64_t seed) {
          const CvResult r = cv_select(x, y, grid, seed);
          return py::make_tuple(r.best_c, r.accuracy);
        },
        py::arg("features"), py::arg("labels"), py::arg("grid"), py::arg("seed"));

  m.def("cmd_masses", [](const std::string& config) {
    return cmd_masses(parse_config("masses", config)).dump();
  }, py::arg("config") = "");
  m.def("cmd_approx", [](const std::string& config) {
    return cmd_approx(parse_config("approx", config));
  }, py::arg("config") = "");
  m.def("cmd_classify", [](const std::string& config) {
    return cmd_classify(parse_config("classify", config)).dump();
  }, py::arg("config") = "");
}
