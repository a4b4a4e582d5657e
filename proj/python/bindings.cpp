#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <numbers>

#include "symreach/certificate.hpp"
#include "symreach/errors.hpp"
#include "symreach/euler.hpp"
#include "symreach/explorer.hpp"
#include "symreach/normal_form.hpp"
#include "symreach/propagate.hpp"
#include "symreach/pulse_optim.hpp"
#include "symreach/verify.hpp"

namespace py = pybind11;
using namespace symreach;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Mat2 to_mat(const Array& a) {
  if (a.size() != 4) throw DomainError("expected a 2x2 matrix");
  const double* p = a.data();
  return {p[0], p[1], p[2], p[3]};
}

Array to_array(const Mat2& m) {
  Array out({2, 2});
  double* p = out.mutable_data();
  p[0] = m.m11;
  p[1] = m.m12;
  p[2] = m.m21;
  p[3] = m.m22;
  return out;
}

ControlSystem to_system(const Array& a, const Array& b) {
  return {AlgebraElement(to_mat(a)), AlgebraElement(to_mat(b))};
}

OptimSettings settings_from(std::size_t slices, double u_max, double tol, std::size_t restarts,
                            double init_spread, double wall_limit) {
  OptimSettings s;
  s.slices = slices;
  s.u_max = u_max;
  s.u_min = -u_max;
  s.tol = tol;
  s.restarts = restarts;
  s.init_spread = init_spread;
  s.wall_limit = wall_limit;
  return s;
}

py::dict record_dict(const ReachRecord& r) {
  py::dict d;
  d["c"] = r.c;
  d["T"] = r.T;
  d["theta"] = r.theta;
  d["z"] = r.z;
  d["phi"] = r.phi;
  d["status"] = std::string(to_string(r.status));
  d["epsilon"] = r.epsilon;
  d["seed"] = r.seed;
  d["wall_time"] = r.wall_time;
  if (r.pulse) d["pulse"] = *r.pulse;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symplectic reachability core";

  py::register_exception<Error>(m, "SymreachError", PyExc_ValueError);
  py::register_exception<IoError>(m, "SymreachIoError", PyExc_OSError);

  m.def("classify", [](const Array& a) {
    const AlgebraElement e(to_mat(a));
    return py::make_tuple(std::string(to_string(classify(e))), trace_sq(e));
  }, py::arg("m"), "Stability class name and Tr[M^2].");
  m.def("basis_coords", [](const Array& a) {
    const BasisCoords c = to_basis_coords(AlgebraElement(to_mat(a)));
    return py::make_tuple(c.x, c.y, c.z);
  }, py::arg("m"));
  m.def("from_coords", [](double x, double y, double z) {
    return to_array(AlgebraElement::from_coords(x, y, z).mat());
  }, py::arg("x"), py::arg("y"), py::arg("z"));
  m.def("expm", [](const Array& a, double t) {
    return to_array(expm(AlgebraElement(to_mat(a)), t).mat());
  }, py::arg("m"), py::arg("t"));
  m.def("commutator", [](const Array& a, const Array& b) {
    return to_array(commutator(AlgebraElement(to_mat(a)), AlgebraElement(to_mat(b))).mat());
  });
  m.def("trace_identity_residual", [](const Array& a, const Array& b) {
    return trace_identity_residual(AlgebraElement(to_mat(a)), AlgebraElement(to_mat(b)));
  });
  m.def("rank_criterion", [](const Array& a, const Array& b) {
    return rank_criterion(AlgebraElement(to_mat(a)), AlgebraElement(to_mat(b)));
  });

  m.def("decompose", [](const Array& s, double theta0, double phi0) {
    const EulerTriple e = decompose(to_mat(s), RangeOffsets{theta0, phi0});
    return py::make_tuple(e.theta, e.z, e.phi);
  }, py::arg("s"), py::arg("theta0") = 0.0, py::arg("phi0") = std::numbers::pi / 2.0);
  m.def("compose", [](double theta, double z, double phi) {
    return to_array(compose({theta, z, phi}).mat());
  }, py::arg("theta"), py::arg("z"), py::arg("phi"));
  m.def("identity_limit_triple", [] {
    const EulerTriple e = identity_limit_triple();
    return py::make_tuple(e.theta, e.z, e.phi);
  });

  m.def("f_of_matrix", [](const Array& x) { return f_of_matrix(to_mat(x)); });
  m.def("fz_of_triple", [](double theta, double z, double phi) {
    return fz_of_triple({theta, z, phi});
  }, py::arg("theta"), py::arg("z"), py::arg("phi"));
  m.def("g_factor", &g_factor, py::arg("z"), py::arg("phi"));
  m.def("min_z_for_f", &min_z_for_f, py::arg("d"));
  m.def("f_along_trajectory", [](double b, std::vector<double> values, double T,
                                 std::size_t per_slice) {
    return f_along_trajectory(b, Pulse{std::move(values), T}, per_slice);
  }, py::arg("b"), py::arg("values"), py::arg("T"), py::arg("per_slice") = 50);

  m.def("example_system", [](double c) {
    const ControlSystem s = example_system(c);
    return py::make_tuple(to_array(s.drift.mat()), to_array(s.control.mat()));
  }, py::arg("c"));
  m.def("is_unstable", [](const Array& a, const Array& b) { return is_unstable(to_system(a, b)); });
  m.def("normalize", [](const Array& a, const Array& b) {
    const NormalForm nf = normalize(to_system(a, b));
    py::dict d;
    d["b"] = nf.b;
    d["time_scale"] = nf.time_scale;
    d["u_offset"] = nf.u_offset;
    d["u_scale"] = nf.u_scale;
    d["time_reversed"] = nf.time_reversed;
    d["P"] = to_array(nf.P.mat());
    return d;
  }, py::arg("A"), py::arg("B"));

  m.def("propagate", [](const Array& a, const Array& b, std::vector<double> values, double T) {
    return to_array(propagate(to_system(a, b), Pulse{std::move(values), T}).mat());
  }, py::arg("A"), py::arg("B"), py::arg("values"), py::arg("T"));
  m.def("fidelity_error", [](const Array& s, const Array& t) {
    return fidelity_error(to_mat(s), to_mat(t));
  });
  m.def("objective_and_gradient", [](const Array& a, const Array& b, const Array& target,
                                     std::vector<double> values, double T) {
    const Pulse p{std::move(values), T};
    std::vector<double> g(p.slices());
    const double eps = objective_and_gradient(to_system(a, b), to_mat(target), p, g);
    return py::make_tuple(eps, g);
  }, py::arg("A"), py::arg("B"), py::arg("target"), py::arg("values"), py::arg("T"));

  m.def("reach", [](double c, double T, double theta, double z, double phi, std::size_t slices,
                    double u_max, double tol, std::size_t restarts, double init_spread,
                    double wall_limit, std::uint64_t seed) {
    ReachRecord r;
    {
      py::gil_scoped_release release;
      r = reach_point(c, T, {theta, z, phi},
                      settings_from(slices, u_max, tol, restarts, init_spread, wall_limit), seed,
                      true);
    }
    return record_dict(r);
  }, py::arg("c"), py::arg("T"), py::arg("theta"), py::arg("z"), py::arg("phi"),
     py::arg("slices") = 10, py::arg("u_max") = 20.0, py::arg("tol") = 1e-3,
     py::arg("restarts") = 5, py::arg("init_spread") = 5.0, py::arg("wall_limit") = 10.0,
     py::arg("seed") = 0);

  m.def("run_grid", [](std::vector<double> c_values, std::vector<double> T_values,
                       double angular_step, std::size_t z_levels, double z_max,
                       std::size_t restarts, std::uint64_t seed, std::size_t workers) {
    SweepSpec spec;
    spec.c_values = std::move(c_values);
    spec.T_values = std::move(T_values);
    spec.grid.angular_step = angular_step;
    spec.grid.z_levels = z_levels;
    spec.grid.z_max = z_max;
    spec.settings.restarts = restarts;
    spec.seed = seed;
    spec.workers = workers;
    std::vector<ReachRecord> records;
    {
      py::gil_scoped_release release;
      records = run_grid(spec);
    }
    py::list out;
    for (const ReachRecord& r : records) out.append(record_dict(r));
    return out;
  }, py::arg("c_values"), py::arg("T_values"), py::arg("angular_step") = std::numbers::pi / 6.0,
     py::arg("z_levels") = 5, py::arg("z_max") = 10.0, py::arg("restarts") = 5,
     py::arg("seed") = 0, py::arg("workers") = 1);

  m.def("verify", [](double scale, std::uint64_t seed) {
    VerifyOptions opts;
    opts.scale = scale;
    opts.seed = seed;
    VerifyReport report;
    {
      py::gil_scoped_release release;
      report = verify_suite(opts);
    }
    py::list props;
    for (const PropertyResult& p : report.properties) {
      props.append(py::make_tuple(p.name, p.samples, p.passed, p.worst));
    }
    return py::make_tuple(report.all_passed(), props);
  }, py::arg("scale") = 1.0, py::arg("seed") = VerifyOptions{}.seed);
}
