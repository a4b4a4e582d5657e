#include "symreach/box_lbfgs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

#include "symreach/errors.hpp"

namespace symreach {

namespace {

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double projected_grad_norm(const std::vector<double>& x, const std::vector<double>& g,
                           std::span<const double> lo, std::span<const double> hi) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = std::clamp(x[i] - g[i], lo[i], hi[i]) - x[i];
    m = std::max(m, std::abs(step));
  }
  return m;
}

bool is_free(double x, double g, double lo, double hi) {
  return !((x <= lo && g > 0.0) || (x >= hi && g < 0.0));
}

}  // namespace

BoxLbfgsResult minimize_box(const Objective& objective, std::vector<double> x0,
                            std::span<const double> lower, std::span<const double> upper,
                            const BoxLbfgsOptions& opt) {
  const std::size_t n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    throw DomainError("minimize_box: bound sizes do not match the variable count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] < upper[i])) throw DomainError("minimize_box: empty box");
    x0[i] = std::clamp(x0[i], lower[i], upper[i]);
  }

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  BoxLbfgsResult res;
  res.x = std::move(x0);
  std::vector<double> g(n);
  res.f = objective(res.x, g);
  res.evaluations = 1;
  res.history.push_back(res.f);

  std::deque<CurvaturePair> memory;
  std::vector<double> d(n), q(n), alpha(opt.memory), x_new(n), g_new(n);
  std::vector<char> free_mask(n);

  while (true) {
    res.projected_grad_norm = projected_grad_norm(res.x, g, lower, upper);
    if (res.f < opt.target) {
      res.stop = BoxLbfgsStop::Target;
      break;
    }
    if (res.projected_grad_norm <= opt.gtol) {
      res.stop = BoxLbfgsStop::Gradient;
      break;
    }
    if (res.iterations >= opt.max_iterations) {
      res.stop = BoxLbfgsStop::MaxIterations;
      break;
    }
    if (opt.wall_limit > 0.0 && elapsed() > opt.wall_limit) {
      res.stop = BoxLbfgsStop::TimeLimit;
      break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      free_mask[i] = is_free(res.x[i], g[i], lower[i], upper[i]);
    }
    const auto masked = [&](std::span<const double> v, std::span<double> out) {
      for (std::size_t i = 0; i < n; ++i) out[i] = free_mask[i] ? v[i] : 0.0;
    };

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      // Two-loop recursion on the free subspace.
      masked(g, q);
      const std::size_t m = memory.size();
      for (std::size_t k = m; k-- > 0;) {
        alpha[k] = memory[k].rho * dot(memory[k].s, q);
        for (std::size_t i = 0; i < n; ++i) {
          if (free_mask[i]) q[i] -= alpha[k] * memory[k].y[i];
        }
      }
      double gamma = 1.0;
      if (m > 0) gamma = dot(memory.back().s, memory.back().y) / dot(memory.back().y, memory.back().y);
      for (std::size_t i = 0; i < n; ++i) q[i] *= gamma;
      for (std::size_t k = 0; k < m; ++k) {
        const double beta = memory[k].rho * dot(memory[k].y, q);
        for (std::size_t i = 0; i < n; ++i) {
          if (free_mask[i]) q[i] += (alpha[k] - beta) * memory[k].s[i];
        }
      }
      masked(q, d);
      for (double& v : d) v = -v;

      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        memory.clear();
        masked(g, d);
        for (double& v : d) v = -v;
        slope = dot(g, d);
        if (!(slope < 0.0)) break;
      }

      double step = 1.0;
      if (memory.empty()) {
        double dmax = 0.0;
        for (double v : d) dmax = std::max(dmax, std::abs(v));
        step = std::min(1.0, 1.0 / dmax);
      }
      for (int ls = 0; ls < 60; ++ls) {
        for (std::size_t i = 0; i < n; ++i) {
          x_new[i] = std::clamp(res.x[i] + step * d[i], lower[i], upper[i]);
        }
        const double f_new = objective(x_new, g_new);
        ++res.evaluations;
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x_new[i] - res.x[i]);
        if (std::isfinite(f_new) && f_new < res.f && f_new <= res.f + 1e-4 * decrease) {
          accepted = true;
          CurvaturePair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
          for (std::size_t i = 0; i < n; ++i) {
            pair.s[i] = x_new[i] - res.x[i];
            pair.y[i] = g_new[i] - g[i];
          }
          const double sy = dot(pair.s, pair.y);
          if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
            pair.rho = 1.0 / sy;
            memory.push_back(std::move(pair));
            if (memory.size() > opt.memory) memory.pop_front();
          }
          const double f_old = res.f;
          res.x.swap(x_new);
          g.swap(g_new);
          res.f = f_new;
          res.history.push_back(f_new);
          ++res.iterations;
          if (f_old - f_new <= opt.ftol * std::max({std::abs(f_old), std::abs(f_new), 1.0})) {
            res.projected_grad_norm = projected_grad_norm(res.x, g, lower, upper);
            res.stop = res.f < opt.target ? BoxLbfgsStop::Target : BoxLbfgsStop::Stalled;
            return res;
          }
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        if (memory.empty()) break;
        memory.clear();
      }
    }
    if (!accepted) {
      res.stop = BoxLbfgsStop::Stalled;
      break;
    }
  }
  return res;
}

}  // namespace symreach
