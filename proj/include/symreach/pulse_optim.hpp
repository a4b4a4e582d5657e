#pragma once

// Piecewise-constant pulse optimization for Sp(2,R) targets.
//
// Objective: eps = 1/8 |S(T) - S_target|_F^2. Gradients are exact: the
// derivative of each slice propagator comes from exponentiating the block
// matrix [[G dt, B dt], [0, G dt]], whose upper-right block is dS_k/du_k.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "symreach/system.hpp"

namespace symreach {

/// Weight of the squared Frobenius distance for 2x2 matrices.
inline constexpr double kFidelityWeight = 1.0 / 8.0;

/// Top-left and top-right blocks of exp([[X, E], [0, X]]).
struct BlockExp {
  Mat2 exp;
  Mat2 frechet;
};

/// Scaling-and-squaring Taylor evaluation of the augmented exponential.
BlockExp expm_augmented(const Mat2& x, const Mat2& e);

double fidelity_error(const Mat2& s, const Mat2& target);
inline double fidelity_error(const SymplecticMatrix& s, const SymplecticMatrix& target) {
  return fidelity_error(s.mat(), target.mat());
}

/// Optimizer and pulse-shape settings shared by single problems and sweeps.
struct OptimSettings {
  std::size_t slices = 10;
  double u_min = -20.0;
  double u_max = 20.0;
  double tol = 1e-3;
  std::size_t restarts = 5;
  /// Initial pulses are uniform in [-init_spread, init_spread] (clipped to bounds).
  double init_spread = 5.0;
  /// Seconds per start.
  double wall_limit = 10.0;
  std::size_t memory = 10;
  double gtol = 1e-8;
  double ftol = 2.2e-9;
  std::size_t max_iterations = 500;
};

struct PulseProblem {
  ControlSystem system;
  SymplecticMatrix target;
  double T = 1.0;
  std::uint64_t seed = 0;
  OptimSettings settings;
};

/// Throws DomainError on T <= 0, zero slices, empty bounds or tol <= 0.
void validate(const PulseProblem& problem);

enum class OptimStatus { Reached, LocalMinimum, TimeLimit };

std::string_view to_string(OptimStatus s);
OptimStatus parse_status(std::string_view s);

struct OptimResult {
  OptimStatus status = OptimStatus::LocalMinimum;
  double epsilon = 0.0;
  Pulse pulse;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  /// Starts actually run (optimize stops at the first Reached start).
  std::size_t starts = 0;
};

/// eps and d eps / d u_k for every slice.
double objective_and_gradient(const ControlSystem& sys, const Mat2& target,
                              const Pulse& pulse, std::span<double> grad);

std::vector<double> gradient(const PulseProblem& problem, const Pulse& pulse);

/// Single start from `initial`.
OptimResult optimize_from(const PulseProblem& problem, const Pulse& initial);

/// Up to `restarts` starts; start i draws its initial pulse from a stream
/// seeded by (seed, i). Returns the first Reached start or the best one.
OptimResult optimize(const PulseProblem& problem);

}  // namespace symreach
