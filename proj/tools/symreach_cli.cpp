// symreach: command line front end for the symplectic reachability library.
//
// Every subcommand prints JSON on stdout. Exit codes: 0 success, 1 usage
// error, 2 I/O error, 3 verification failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symreach/certificate.hpp"
#include "symreach/errors.hpp"
#include "symreach/euler.hpp"
#include "symreach/explorer.hpp"
#include "symreach/normal_form.hpp"
#include "symreach/propagate.hpp"
#include "symreach/pulse_optim.hpp"
#include "symreach/sp2.hpp"
#include "symreach/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace symreach;

constexpr int kUsage = 1;
constexpr int kIo = 2;
constexpr int kVerify = 3;

json to_json(const Mat2& m) { return json::array({m.m11, m.m12, m.m21, m.m22}); }
json to_json(const EulerTriple& e) { return {{"theta", e.theta}, {"z", e.z}, {"phi", e.phi}}; }

Mat2 to_mat(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

CLI::Option* add_matrix(CLI::App* cmd, std::vector<double>& dst, const std::string& name,
                        const std::string& help) {
  return cmd->add_option(name, dst, help)->delimiter(',')->expected(4);
}

struct Optim {
  std::size_t slices = 10;
  double umax = 20.0;
  std::optional<double> umin;
  double tol = 1e-3;
  std::size_t restarts = 5;
  double init_spread = 5.0;
  double wall_limit = 10.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--slices", slices, "piecewise-constant slices Q")->capture_default_str();
    cmd->add_option("--umax", umax, "control bound")->capture_default_str();
    cmd->add_option("--umin", umin, "lower control bound (default -umax)");
    cmd->add_option("--tol", tol, "infidelity threshold")->capture_default_str();
    cmd->add_option("--restarts", restarts, "optimizer starts")->capture_default_str();
    cmd->add_option("--init-spread", init_spread, "initial pulses uniform in [-s, s]")
        ->capture_default_str();
    cmd->add_option("--wall-limit", wall_limit, "seconds per start")->capture_default_str();
  }

  OptimSettings settings() const {
    OptimSettings s;
    s.slices = slices;
    s.u_max = umax;
    s.u_min = umin.value_or(-umax);
    s.tol = tol;
    s.restarts = restarts;
    s.init_spread = init_spread;
    s.wall_limit = wall_limit;
    return s;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json normal_form_json(const NormalForm& nf) {
  return {{"b", nf.b},
          {"time_scale", nf.time_scale},
          {"u_offset", nf.u_offset},
          {"u_scale", nf.u_scale},
          {"time_reversed", nf.time_reversed},
          {"P", to_json(nf.P.mat())}};
}

json record_json(const ReachRecord& r) {
  json j = json::parse(records_to_json({r}));
  return j.at(0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability analysis and pulse design for single-mode symplectic control"};
  app.require_subcommand(1);

  std::vector<double> matrix;
  double t = 1.0;
  double theta = 0.0;
  double z = 1.0;
  double phi = 0.0;
  double theta0 = 0.0;
  double phi0 = std::numbers::pi / 2.0;

  auto* classify_cmd = app.add_subcommand("classify", "stability class of an sp(2,R) element");
  add_matrix(classify_cmd, matrix, "--matrix", "m11,m12,m21,m22")->required();

  auto* expm_cmd = app.add_subcommand("expm", "closed-form exponential exp(M t)");
  add_matrix(expm_cmd, matrix, "--matrix", "m11,m12,m21,m22")->required();
  expm_cmd->add_option("--t", t, "time")->capture_default_str();

  auto* svd_cmd = app.add_subcommand("svd", "unique Euler decomposition S = R_theta Z R_phi");
  add_matrix(svd_cmd, matrix, "--matrix", "m11,m12,m21,m22")->required();
  svd_cmd->add_option("--theta0", theta0, "theta range offset")->capture_default_str();
  svd_cmd->add_option("--phi0", phi0, "phi range offset")->capture_default_str();

  auto* compose_cmd = app.add_subcommand("compose", "matrix for an Euler triple");
  compose_cmd->add_option("--theta", theta)->required();
  compose_cmd->add_option("--z", z)->required();
  compose_cmd->add_option("--phi", phi)->required();

  auto* cert_cmd = app.add_subcommand("certificate", "certificate f of a matrix or f_z of a triple");
  auto* cert_matrix = add_matrix(cert_cmd, matrix, "--matrix", "m11,m12,m21,m22");
  auto* cert_theta = cert_cmd->add_option("--theta", theta);
  auto* cert_z = cert_cmd->add_option("--z", z);
  auto* cert_phi = cert_cmd->add_option("--phi", phi);
  cert_theta->excludes(cert_matrix);
  cert_z->excludes(cert_matrix);
  cert_phi->excludes(cert_matrix);

  double c = 0.0;
  std::vector<double> a_mat;
  std::vector<double> b_mat;
  auto* norm_cmd = app.add_subcommand("normalize", "reduce an unstable system to normal form");
  auto* norm_c = norm_cmd->add_option("--c", c, "example system parameter");
  auto* norm_a = add_matrix(norm_cmd, a_mat, "--A", "drift m11,m12,m21,m22");
  auto* norm_b = add_matrix(norm_cmd, b_mat, "--B", "control m11,m12,m21,m22");
  norm_a->excludes(norm_c)->needs(norm_b);
  norm_b->excludes(norm_c)->needs(norm_a);

  double T = 1.0;
  std::uint64_t seed = 0;
  Optim optim;
  auto* reach_cmd = app.add_subcommand("reach", "optimize a pulse for one target");
  reach_cmd->add_option("--c", c, "example system parameter")->required();
  reach_cmd->add_option("--T", T, "evolution time")->required();
  reach_cmd->add_option("--target-theta", theta)->required();
  reach_cmd->add_option("--target-z", z)->required();
  reach_cmd->add_option("--target-phi", phi)->required();
  reach_cmd->add_option("--seed", seed)->capture_default_str();
  optim.attach(reach_cmd);

  std::string config;
  std::string out;
  std::string in;
  std::string format_name;
  std::size_t jobs = 0;
  bool keep_pulses = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep over (c, T)");
  sweep_cmd->add_option("--config", config, "sweep description (json)")->required();
  sweep_cmd->add_option("--jobs", jobs, "worker threads (overrides the config)");
  sweep_cmd->add_option("--out", out, "output file; stdout when omitted");
  sweep_cmd->add_option("--format", format_name, "json or csv (default from --out)");
  sweep_cmd->add_flag("--keep-pulses", keep_pulses, "store pulses in json output");

  std::string projection_name = "theta-phi";
  std::optional<double> filter_c;
  std::optional<double> filter_T;
  auto* plot_cmd = app.add_subcommand("plot", "scatter projection of sweep records as SVG");
  plot_cmd->add_option("--in", in, "records (json or csv)")->required();
  plot_cmd->add_option("--projection", projection_name, "theta-phi, z-theta or z-phi")
      ->capture_default_str();
  plot_cmd->add_option("--out", out, "svg path")->required();
  plot_cmd->add_option("--c", filter_c, "keep only records with this c");
  plot_cmd->add_option("--T", filter_T, "keep only records with this T");

  double scale = 1.0;
  double perturb_g = 0.0;
  std::uint64_t verify_seed = VerifyOptions{}.seed;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--scale", scale, "sample count multiplier")->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed)->capture_default_str();
  verify_cmd->add_option("--perturb-g", perturb_g, "add a constant to g(z, phi) (fault injection)");

  std::vector<std::string> fix;
  std::string axis_name = "z";
  std::vector<double> bracket;
  double angular_tol = 1e-2;
  double z_rel_tol = 1e-2;
  auto* boundary_cmd = app.add_subcommand("boundary", "bisect the reachable boundary along one axis");
  boundary_cmd->add_option("--fix", fix, "two of theta=R z=R phi=R")->expected(2)->required();
  boundary_cmd->add_option("--axis", axis_name, "theta, z or phi")->capture_default_str();
  boundary_cmd->add_option("--bracket", bracket, "lo,hi")->delimiter(',')->expected(2)->required();
  boundary_cmd->add_option("--c", c)->capture_default_str();
  boundary_cmd->add_option("--T", T)->capture_default_str();
  boundary_cmd->add_option("--seed", seed)->capture_default_str();
  boundary_cmd->add_option("--angular-tol", angular_tol)->capture_default_str();
  boundary_cmd->add_option("--z-rel-tol", z_rel_tol)->capture_default_str();
  optim.attach(boundary_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify_cmd) {
      const AlgebraElement m(to_mat(matrix));
      emit({{"class", to_string(classify(m))}, {"trace_sq", trace_sq(m)}});
    } else if (*expm_cmd) {
      emit(to_json(expm(AlgebraElement(to_mat(matrix)), t).mat()));
    } else if (*svd_cmd) {
      emit(to_json(decompose(to_mat(matrix), RangeOffsets{theta0, phi0})));
    } else if (*compose_cmd) {
      if (!(z >= 1.0)) throw DomainError("compose: z must be >= 1");
      emit(to_json(compose({theta, z, phi}).mat()));
    } else if (*cert_cmd) {
      if (!matrix.empty()) {
        emit({{"f", f_of_matrix(to_mat(matrix))}});
      } else if (cert_theta->count() && cert_z->count() && cert_phi->count()) {
        emit({{"fz", fz_of_triple({theta, z, phi})}});
      } else {
        std::cerr << "certificate: give --matrix or all of --theta --z --phi\n";
        return kUsage;
      }
    } else if (*norm_cmd) {
      ControlSystem sys;
      if (!a_mat.empty()) {
        sys = {AlgebraElement(to_mat(a_mat)), AlgebraElement(to_mat(b_mat))};
      } else if (norm_c->count()) {
        sys = example_system(c);
      } else {
        std::cerr << "normalize: give --c or --A and --B\n";
        return kUsage;
      }
      emit(normal_form_json(normalize(sys)));
    } else if (*reach_cmd) {
      const ControlSystem sys = example_system(c);
      const EulerTriple target{theta, z, phi};
      const ReachRecord rec = reach_point(c, T, target, optim.settings(), seed, true);
      json j = record_json(rec);
      if (is_unstable(sys) && rank_criterion(sys.drift, sys.control)) {
        const NormalForm nf = normalize(sys);
        json n = normal_form_json(nf);
        n["tau"] = nf.time_scale * T;
        n["target_fz"] = fz_of_triple(target);
        if (rec.pulse) {
          const auto f = f_along_trajectory(nf.b, nf.to_normal(Pulse{*rec.pulse, T}));
          bool monotone = true;
          for (std::size_t k = 1; k < f.size(); ++k) monotone = monotone && f[k] >= f[k - 1] - 1e-9;
          n["f_final"] = f.back();
          n["f_monotone"] = monotone;
        }
        j["normal_form"] = n;
      }
      emit(j);
    } else if (*sweep_cmd) {
      SweepSpec spec = sweep_spec_from_json(slurp(config));
      if (jobs > 0) spec.workers = jobs;
      spec.keep_pulses = keep_pulses;
      const auto records = run_grid(spec);
      if (out.empty()) {
        const Format f = format_name.empty() ? Format::Json : parse_format(format_name);
        std::cout << (f == Format::Json ? records_to_json(records) : records_to_csv(records));
        if (f == Format::Json) std::cout << '\n';
      } else {
        const Format f = format_name.empty() ? format_from_path(out) : parse_format(format_name);
        export_records(records, out, f);
        std::size_t reached = 0;
        for (const auto& r : records) reached += r.reached() ? 1 : 0;
        emit({{"records", records.size()}, {"reached", reached}, {"out", out}});
      }
    } else if (*plot_cmd) {
      auto records = import_records(in);
      std::erase_if(records, [&](const ReachRecord& r) {
        return (filter_c && r.c != *filter_c) || (filter_T && r.T != *filter_T);
      });
      render_scatter(records, parse_projection(projection_name), out);
      emit({{"points", records.size()}, {"out", out}});
    } else if (*verify_cmd) {
      VerifyOptions opts;
      opts.seed = verify_seed;
      opts.scale = scale;
      if (perturb_g != 0.0) {
        opts.fz_override = [perturb_g](const EulerTriple& e) {
          return std::cos(2.0 * e.theta) * std::cos(2.0 * e.phi) -
                 (g_factor(e.z, e.phi) + perturb_g) * std::sin(2.0 * e.theta);
        };
      }
      const VerifyReport report = verify_suite(opts);
      print_report(std::cout, report);
      return report.all_passed() ? 0 : kVerify;
    } else if (*boundary_cmd) {
      BoundarySpec spec;
      spec.c = c;
      spec.T = T;
      spec.axis = parse_axis(axis_name);
      spec.lo = bracket[0];
      spec.hi = bracket[1];
      spec.settings = optim.settings();
      spec.seed = seed;
      spec.angular_tol = angular_tol;
      spec.z_rel_tol = z_rel_tol;
      spec.fixed = {0.0, 1.0, 0.0};
      for (const std::string& kv : fix) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw DomainError("--fix expects name=value, got '" + kv + "'");
        const Axis a = parse_axis(kv.substr(0, eq));
        if (a == spec.axis) throw DomainError("--fix must not set the bisection axis");
        const double v = std::stod(kv.substr(eq + 1));
        (a == Axis::Theta ? spec.fixed.theta : a == Axis::Z ? spec.fixed.z : spec.fixed.phi) = v;
      }
      const BoundaryPoint bp = bisect_boundary(spec);
      emit({{"axis", to_string(bp.axis)},
            {"point", to_json(bp.point)},
            {"lo", bp.lo},
            {"hi", bp.hi},
            {"lo_status", to_string(bp.lo_status)},
            {"hi_status", to_string(bp.hi_status)},
            {"midpoint", bp.midpoint},
            {"width", bp.width},
            {"probes", bp.probes}});
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
