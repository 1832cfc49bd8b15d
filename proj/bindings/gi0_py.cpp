#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gi0/estimators.hpp"
#include "gi0/gof.hpp"
#include "gi0/harness.hpp"
#include "gi0/model.hpp"
#include "gi0/thresholds.hpp"

namespace py = pybind11;

namespace {

gi0::Sample to_sample(const std::vector<double>& values) {
    return gi0::Sample(values);
}

}  // namespace

PYBIND11_MODULE(_gi0, m) {
    m.doc() = "Single-look G0 (GPD type II) texture model: densities, sampling, "
              "estimators, threshold rules and Monte Carlo summaries";

    py::class_<gi0::TextureParams>(m, "TextureParams")
        .def(py::init([](double alpha, double gamma) {
                 return gi0::TextureParams{alpha, gamma};
             }),
             py::arg("alpha"), py::arg("gamma"))
        .def_readwrite("alpha", &gi0::TextureParams::alpha)
        .def_readwrite("gamma", &gi0::TextureParams::gamma)
        .def_property_readonly("gpd_shape", &gi0::TextureParams::gpd_shape)
        .def_property_readonly("gpd_scale", &gi0::TextureParams::gpd_scale)
        .def_property_readonly("tail_index", &gi0::TextureParams::tail_index)
        .def("__repr__", [](const gi0::TextureParams& p) {
            return "TextureParams(alpha=" + std::to_string(p.alpha) +
                   ", gamma=" + std::to_string(p.gamma) + ")";
        });

    m.def("density", [](double z, const gi0::TextureParams& p) { return gi0::density(z, p); },
          py::arg("z"), py::arg("params"));
    m.def("density_multilook", &gi0::density_multilook, py::arg("z"), py::arg("alpha"),
          py::arg("gamma"), py::arg("looks"));
    m.def("cdf", [](double z, const gi0::TextureParams& p) { return gi0::cdf(z, p); },
          py::arg("z"), py::arg("params"));
    m.def("quantile", [](double u, const gi0::TextureParams& p) { return gi0::quantile(u, p); },
          py::arg("u"), py::arg("params"));
    m.def("moment", [](double r, const gi0::TextureParams& p) { return gi0::moment(r, p); },
          py::arg("r"), py::arg("params"));
    m.def("pwm_population",
          [](int s, const gi0::TextureParams& p) { return gi0::pwm_population(s, p); },
          py::arg("s"), py::arg("params"));
    m.def("log_gamma", &gi0::log_gamma, py::arg("t"));

    m.def("sample",
          [](std::size_t n, const gi0::TextureParams& p, std::uint64_t seed) {
              return gi0::sample(n, p, seed).values();
          },
          py::arg("n"), py::arg("params"), py::arg("seed"));
    m.def("sample_contaminated",
          [](std::size_t n, const gi0::TextureParams& p, double epsilon, double c_value,
             std::uint64_t seed) {
              return gi0::sample_contaminated(n, p, {epsilon, c_value}, seed).values();
          },
          py::arg("n"), py::arg("params"), py::arg("epsilon"), py::arg("c_value"),
          py::arg("seed"));
    m.def("stylized_sample",
          [](std::size_t n, const gi0::TextureParams& p) {
              return gi0::stylized_sample(n, p).values();
          },
          py::arg("n"), py::arg("params"));

    py::class_<gi0::FitResult>(m, "FitResult")
        .def_readonly("params", &gi0::FitResult::params)
        .def_property_readonly("status",
                               [](const gi0::FitResult& r) {
                                   return std::string(gi0::status_name(r.status));
                               })
        .def_readonly("objective", &gi0::FitResult::objective)
        .def_readonly("iterations", &gi0::FitResult::iterations)
        .def_readonly("wall_time", &gi0::FitResult::wall_time)
        .def("__repr__", [](const gi0::FitResult& r) {
            return "FitResult(alpha=" + std::to_string(r.params.alpha) +
                   ", gamma=" + std::to_string(r.params.gamma) + ", status=" +
                   gi0::status_name(r.status) + ")";
        });

    m.def("fit",
          [](const std::vector<double>& values, const std::string& method) {
              return gi0::fit(to_sample(values), gi0::config_for(method));
          },
          py::arg("values"), py::arg("method") = "MLE",
          "Fit a sample with one of MLE, MPLE, MOM, PWM, LME, MDPD, MGF:<stat>");
    m.def("loglik",
          [](const std::vector<double>& values, const gi0::TextureParams& p) {
              return gi0::loglik(to_sample(values), p);
          },
          py::arg("values"), py::arg("params"));

    m.def("gof_stat",
          [](const std::string& stat, const std::vector<double>& values,
             const gi0::TextureParams& p) {
              return gi0::gof_stat(gi0::gof_from_name(stat),
                                   gi0::uniformize(to_sample(values), p));
          },
          py::arg("stat"), py::arg("values"), py::arg("params"));

    m.def("select_threshold",
          [](const std::vector<double>& values, const std::string& rule) {
              gi0::ThresholdRule r;
              if (rule == "u0") {
                  r = gi0::ThresholdRule::u0();
              } else if (rule == "q10") {
                  r = gi0::ThresholdRule::quantile(0.10);
              } else if (rule == "q20") {
                  r = gi0::ThresholdRule::quantile(0.20);
              } else if (rule == "hill") {
                  r = gi0::ThresholdRule::hill();
              } else if (rule == "ad") {
                  r = gi0::ThresholdRule::ad_auto();
              } else {
                  throw std::invalid_argument("unknown rule: " + rule);
              }
              gi0::ThresholdResult t = gi0::select_threshold(to_sample(values), r);
              return py::make_tuple(t.u, t.excesses.values(), t.retained_fraction);
          },
          py::arg("values"), py::arg("rule"),
          "Returns (u, excesses, retained_fraction) for rule u0|q10|q20|hill|ad");

    m.def("seif_curve",
          [](const std::string& method, std::size_t n, const gi0::TextureParams& p,
             const std::vector<double>& c_grid) {
              gi0::SeifCurve c = gi0::seif_curve(gi0::config_for(method), n, p, c_grid);
              return py::make_tuple(c.c_grid, c.estimates);
          },
          py::arg("method"), py::arg("n"), py::arg("params"), py::arg("c_grid"));
}
