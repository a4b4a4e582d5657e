#pragma once

// Limited-memory BFGS restricted to a box. Variables sitting on a bound with
// the gradient pushing outward are frozen for the step; the remaining ones get
// the usual two-loop direction, and a projected backtracking (Armijo) search
// keeps every accepted iterate feasible and strictly better.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace symreach {

struct BoxLbfgsOptions {
  std::size_t memory = 10;
  /// Stop when the projected gradient's infinity norm drops below this.
  double gtol = 1e-8;
  /// Stop when (f_old - f_new) <= ftol * max(|f_old|, |f_new|, 1).
  double ftol = 2.2e-9;
  std::size_t max_iterations = 500;
  /// Stop as soon as f < target.
  double target = -1.0;
  /// Seconds; non-positive disables the limit.
  double wall_limit = 0.0;
};

enum class BoxLbfgsStop { Target, Gradient, Stalled, MaxIterations, TimeLimit };

struct BoxLbfgsResult {
  std::vector<double> x;
  double f = 0.0;
  double projected_grad_norm = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  BoxLbfgsStop stop = BoxLbfgsStop::Stalled;
  /// Objective value after every accepted iterate, starting with f(x0).
  std::vector<double> history;
};

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

BoxLbfgsResult minimize_box(const Objective& objective, std::vector<double> x0,
                            std::span<const double> lower, std::span<const double> upper,
                            const BoxLbfgsOptions& options);

}  // namespace symreach
