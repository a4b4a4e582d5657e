#include "symreach/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "symreach/certificate.hpp"
#include "symreach/normal_form.hpp"
#include "symreach/propagate.hpp"
#include "symreach/pulse_optim.hpp"

namespace symreach {

namespace {

constexpr double kPi = std::numbers::pi;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  EulerTriple triple(const RangeOffsets& o = {}) {
    return {uniform(o.theta0 - kPi, o.theta0 + kPi), std::pow(100.0, uniform(0.0, 1.0)),
            uniform(o.phi0 - kPi / 2.0, o.phi0 + kPi / 2.0)};
  }

  AlgebraElement element(double bound) {
    return AlgebraElement::from_coords(uniform(-bound, bound), uniform(-bound, bound),
                                       uniform(-bound, bound));
  }

  AlgebraElement hyperbolic(double bound) {
    while (true) {
      const AlgebraElement m = element(bound);
      const BasisCoords c = m.coords();
      if (c.x * c.x + c.y * c.y - c.z * c.z > 1e-3 * bound * bound) return m;
    }
  }

  Pulse pulse(std::size_t q, double umax, double T) {
    Pulse p{std::vector<double>(q), T};
    for (double& v : p.values) v = uniform(-umax, umax);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

std::size_t scaled(std::size_t n, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * scale)));
}

PropertyResult finish(std::string name, std::size_t samples, double worst, double limit) {
  PropertyResult r{std::move(name), samples, worst <= limit, worst, {}};
  std::ostringstream d;
  d << "worst " << std::setprecision(3) << worst << " (limit " << limit << ")";
  r.detail = d.str();
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

VerifyReport verify_suite(const VerifyOptions& options) {
  const auto fz = options.fz_override ? options.fz_override
                                      : std::function<double(const EulerTriple&)>(fz_of_triple);
  Sampler rng(options.seed);
  VerifyReport report;
  auto& out = report.properties;

  {
    const double e1 = (commutator(Kx(), Ky()).mat() + Kz().mat()).frobenius();
    const double e2 = (commutator(Ky(), Kz()).mat() - Kx().mat()).frobenius();
    const double e3 = (commutator(Kz(), Kx()).mat() - Ky().mat()).frobenius();
    out.push_back(finish("structure constants", 3, std::max({e1, e2, e3}), 0.0));
  }
  {
    const std::size_t n = scaled(10000, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement m = rng.element(5.0);
      const AlgebraElement k = rng.element(5.0);
      const double s = std::max(m.mat().frobenius(), k.mat().frobenius());
      worst = std::max(worst, std::abs(trace_identity_residual(m, k)) / (1.0 + std::pow(s, 4)));
    }
    out.push_back(finish("trace identity", n, worst, 1e-9));
  }
  {
    const std::size_t n = scaled(2000, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement m = rng.element(10.0);
      const double t1 = rng.uniform(-0.5, 0.5);
      const double t2 = rng.uniform(-0.5, 0.5);
      const Mat2 lhs = (expm(m, t1) * expm(m, t2)).mat();
      const Mat2 rhs = expm(m, t1 + t2).mat();
      worst = std::max(worst, (lhs - rhs).frobenius() / (1.0 + rhs.frobenius()));
      worst = std::max(worst, symplectic_defect(expm(m, 10.0 * t1).mat()));
    }
    out.push_back(finish("expm group law and det", n, worst, 1e-10));
  }
  {
    const std::size_t n = scaled(10000, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const SymplecticMatrix s = compose(rng.triple());
      const EulerTriple e = decompose(s);
      const double rel = (compose(e).mat() - s.mat()).frobenius() / s.mat().frobenius();
      worst = std::max(worst, in_range(e, {}) ? rel : 1.0);
    }
    out.push_back(finish("svd reconstruction and range", n, worst, 1e-10));
  }
  {
    const std::size_t n = scaled(100000, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const EulerTriple e = rng.triple();
      worst = std::max(worst, std::abs(f_of_matrix(compose(e).mat()) - fz(e)) /
                                  std::max(1.0, e.z * e.z));
    }
    out.push_back(finish("certificate coordinate change", n, worst, 1e-10));
  }
  {
    const std::size_t n = scaled(100000, options.scale);
    double worst = 0.0;
    std::size_t hits = 0;
    for (double d : {1.0, 2.0, 3.0, 7.0}) {
      const double bound = min_z_for_f(d);
      for (std::size_t i = 0; i < n; ++i) {
        const EulerTriple e = rng.triple();
        if (fz(e) > d) {
          ++hits;
          worst = std::max(worst, bound - e.z);
        }
      }
    }
    PropertyResult r = finish("z lower bound from f", 4 * n, worst, 1e-9);
    r.detail += ", " + std::to_string(hits) + " samples above d";
    out.push_back(r);
  }
  {
    const std::size_t n = scaled(10000, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement m = rng.hyperbolic(5.0);
      const auto [p, scale] = hyperbolic_to_ky(m);
      const Mat2 diff = conjugate(p, m).mat() - (scale * Ky()).mat();
      worst = std::max(worst, diff.frobenius() / (1.0 + m.mat().frobenius()));
    }
    out.push_back(finish("conjugation to K_y", n, worst, 1e-10));
  }
  {
    const std::size_t n = scaled(200, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double b = rng.uniform(-0.999, 0.999);
      const auto f = f_along_trajectory(b, rng.pulse(10, 5.0, rng.uniform(0.1, 2.0)));
      worst = std::max(worst, std::abs(f.front() - 1.0));
      for (std::size_t k = 1; k < f.size(); ++k) worst = std::max(worst, f[k - 1] - f[k]);
    }
    out.push_back(finish("certificate monotone along trajectories", n, worst, 1e-9));
  }
  {
    const std::size_t n = scaled(20, options.scale);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const ControlSystem sys = example_system(rng.uniform(-2.0, 2.0));
      Pulse p = rng.pulse(10, 1.0, rng.uniform(0.1, 5.0));
      const Mat2 target = compose(rng.triple()).mat();
      std::vector<double> g(p.slices());
      objective_and_gradient(sys, target, p, g);
      for (std::size_t k = 0; k < p.slices(); ++k) {
        const double h = 1e-6;
        const double u = p.values[k];
        p.values[k] = u + h;
        const double fp = objective_and_gradient(sys, target, p, {});
        p.values[k] = u - h;
        const double fm = objective_and_gradient(sys, target, p, {});
        p.values[k] = u;
        const double fd = (fp - fm) / (2.0 * h);
        worst = std::max(worst, std::abs(g[k] - fd) / (1.0 + std::abs(fd)));
      }
    }
    out.push_back(finish("gradient vs finite differences", n, worst, 1e-6));
  }
  {
    const std::size_t n = scaled(2000, options.scale);
    double worst = 0.0;
    std::size_t used = 0;
    while (used < n) {
      const ControlSystem sys{rng.element(3.0), rng.element(3.0)};
      if (!is_unstable(sys) || !rank_criterion(sys.drift, sys.control)) continue;
      ++used;
      const NormalForm nf = normalize(sys);
      const ControlSystem back = nf.reconstruct();
      const double err = (back.drift.mat() - sys.drift.mat()).frobenius() +
                         (back.control.mat() - sys.control.mat()).frobenius();
      worst = std::max(worst, std::abs(nf.b) < 1.0 ? err : 1.0);
    }
    out.push_back(finish("normal form soundness", n, worst, 1e-9));
  }
  return report;
}

void print_report(std::ostream& os, const VerifyReport& report) {
  for (const PropertyResult& p : report.properties) {
    os << (p.passed ? "[PASS] " : "[FAIL] ") << p.name << " (" << p.samples
       << " samples): " << p.detail << '\n';
  }
  os << (report.all_passed() ? "all properties passed" : "some properties FAILED") << '\n';
}

}  // namespace symreach
